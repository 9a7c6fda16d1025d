"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Kernel micro-benchmarks call both backends in-process.  The end-to-end
workload (singular loci of every Schubert variety of one type) runs in a
subprocess per backend, since the backend is fixed at import time.
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from schublocus import kernels
from schublocus.roots import CartanType, RootSystem
from schublocus.symalg import MASK, Poly, _divinfo, _reflinfo

END_TO_END = """
import time
from schublocus.roots import build_root_system
from schublocus.singularity import singular_locus, rationally_singular_locus
from schublocus.weyl import weyl_group
t = time.perf_counter()
rs = build_root_system({name!r})
for w in weyl_group(rs):
    singular_locus(rs, w)
    rationally_singular_locus(rs, w)
print(time.perf_counter() - t)
"""


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def random_poly(rank, rng, terms=12, deg=5):
    d = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, deg) for _ in range(rank))
        d[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
    return Poly.from_dict(rank, d).terms


def kernel_cases(quick):
    rs = RootSystem(CartanType.parse("B4" if quick else "F4"))
    gens = list(rs.simple_reflection_table)
    N = rs.num_positive
    perms, lmul = kernels.load_backend("python").closure(gens, N, 10**6)
    lengths = [sum(1 for k in p if k >= N) for p in perms]
    rng = random.Random(0)
    pairs = [(rng.choice(perms), rng.choice(perms)) for _ in range(20000)]
    polys = [(random_poly(4, rng), random_poly(4, rng)) for _ in range(40)]
    sh, nbrs = _reflinfo(rs, 1)
    div = _divinfo(4, rs.positive_roots[-1])

    def case(label, body):
        return label, body

    return [
        case(f"closure {rs.cartan_type}", lambda k: k.closure(gens, N, 10**6)),
        case(f"bruhat_matrix {rs.cartan_type}", lambda k: k.bruhat_matrix(lmul, lengths)),
        case("compose x20000", lambda k: [k.compose(u, v, N) for u, v in pairs]),
        case("poly_mul x40", lambda k: [k.poly_mul(p, q) for p, q in polys]),
        case("poly_reflect x80", lambda k: [k.poly_reflect(p, sh, nbrs, MASK) for pq in polys for p in pq]),
        case("poly_divmod_linear x80", lambda k: [k.poly_divmod_linear(p, *div, MASK) for pq in polys for p in pq]),
    ]


def end_to_end(name, backend):
    env = dict(os.environ)
    if backend == "python":
        env["SCHUBLOCUS_PURE_PYTHON"] = "1"
    else:
        env.pop("SCHUBLOCUS_PURE_PYTHON", None)
    env.pop("SCHUBLOCUS_CACHE_DIR", None)
    out = subprocess.run(
        [sys.executable, "-c", END_TO_END.format(name=name)], env=env, capture_output=True, text=True, check=True
    )
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    mods = {b: kernels.load_backend(b) for b in backends}
    print(f"backends: {', '.join(backends)} (default: {kernels.BACKEND})")
    header = f"{'workload':32s}" + "".join(f"{b:>12s}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10s}"
    print(header)
    for label, body in kernel_cases(args.quick):
        ts = {b: best_of(lambda: body(m), args.repeat) for b, m in mods.items()}
        row = f"{label:32s}" + "".join(f"{ts[b]:11.4f}s" for b in backends)
        if len(backends) > 1:
            row += f"{ts['python'] / ts['cython']:9.1f}x"
        print(row)
    for name in (("B3",) if args.quick else ("B4", "F4")):
        ts = {b: min(end_to_end(name, b) for _ in range(args.repeat)) for b in backends}
        row = f"{'loci of all X(w) in ' + name:32s}" + "".join(f"{ts[b]:11.4f}s" for b in backends)
        if len(backends) > 1:
            row += f"{ts['python'] / ts['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
