"""Command-line front end.

Exit codes: 0 success, 1 user error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__, cache
from .equimult import emult_recursive, emult_subexpr, joseph_poly
from .errors import InvariantViolation, ParseError, SchubertError
from .gkm import (
    expand_in_schubert_basis,
    schubert_class,
    schubert_restriction,
    specialize_to_ordinary,
    tuple_mul,
    verify_gkm,
)
from .roots import CartanType, build_root_system
from .singularity import (
    is_rationally_smooth_at,
    point_data,
    rationally_singular_locus,
    report,
    singular_locus,
)
from .weyl import DEFAULT_CAP, bruhat_leq, from_word, identity, weyl_group

SCHEMA = "1"
SCAN_GUARD = 2000

log = logging.getLogger("schublocus")


def parse_element(rs, text: str):
    """Parse ``"1 2 1"``, ``"s1*s2*s1"`` or ``"e"`` into a Weyl group element."""
    s = text.strip()
    if s in ("e", "id"):
        return identity(rs)
    tokens = [t for t in re.split(r"[\s*]+", s) if t]
    if not tokens:
        raise ParseError(f"empty element {text!r}")
    word = []
    for tok in tokens:
        m = re.fullmatch(r"s?(\d+)", tok)
        if not m:
            raise ParseError(f"malformed token {tok!r} in element {text!r}")
        word.append(int(m.group(1)))
    return from_word(rs, word)


def format_element(w) -> str:
    """Word form used in structured output, e.g. ``"2 1 2"``."""
    return " ".join(map(str, w.word)) if w.word else "e"


def show(w) -> str:
    """Text form, e.g. ``s2*s1*s2``."""
    return repr(w)


def point_record(rs, w, x):
    rep = report(rs, w, x)
    return {
        "schema": SCHEMA,
        "type": str(rs.cartan_type),
        "w": format_element(w),
        "x": format_element(x),
        "length_w": w.length,
        "is_point": rep.is_point,
        "e_num": str(rep.e.num),
        "e_den_roots": [list(r) for r in rep.e.den_roots()],
        "J": str(rep.J),
        "phi": [list(r) for r in sorted(rep.phi, key=lambda r: rs.index[r])],
        "smooth": rep.smooth,
        "rationally_smooth": rep.rationally_smooth,
    }


# -- command handlers -----------------------------------------------------------


def cmd_roots(rs, args, out):
    if args.format == "json":
        out.emit(
            {
                "schema": SCHEMA,
                "type": str(rs.cartan_type),
                "cartan": [list(r) for r in rs.cartan],
                "positive_roots": [list(r) for r in rs.positive_roots],
            }
        )
        return
    out.line(f"type {rs.cartan_type}, rank {rs.rank}, {rs.num_positive} positive roots")
    out.line("cartan matrix (row i, column j = <a_j, a_i^vee>):")
    for row in rs.cartan:
        out.line("  " + " ".join(f"{c:2d}" for c in row))
    for r in rs.positive_roots:
        out.line(f"  {rs.format_root(r)}")


def cmd_weyl(rs, args, out):
    if args.w is None:
        group = weyl_group(rs, args.cap, args.cache_dir)
        rec = {
            "schema": SCHEMA,
            "type": str(rs.cartan_type),
            "order": len(group),
            "longest": format_element(group.longest),
        }
        if args.format == "json":
            out.emit(rec)
        else:
            out.line(f"|W({rs.cartan_type})| = {len(group)}; longest element {show(group.longest)}")
        return
    w = parse_element(rs, args.w)
    rec = {
        "schema": SCHEMA,
        "type": str(rs.cartan_type),
        "w": format_element(w),
        "length": w.length,
        "action": [list(r) for r in w.action],
    }
    if args.format == "json":
        out.emit(rec)
    else:
        out.line(f"w = {show(w)}  length {w.length}")
        for i, r in enumerate(w.action, 1):
            out.line(f"  w(a{i}) = {rs.format_root(r)}")


def cmd_bruhat(rs, args, out):
    x, w = parse_element(rs, args.x), parse_element(rs, args.w)
    ans = bruhat_leq(x, w)
    if args.format == "json":
        out.emit({"schema": SCHEMA, "type": str(rs.cartan_type), "x": format_element(x), "w": format_element(w), "leq": ans})
    else:
        out.line("true" if ans else "false")


def cmd_emult(rs, args, out):
    w, x = parse_element(rs, args.w), parse_element(rs, args.x)
    if args.engine == "subexpr":
        e = emult_subexpr(rs, w.word, x)
    else:
        e = emult_recursive(rs, w, x)
    if args.format == "json":
        rec = {
            "schema": SCHEMA,
            "type": str(rs.cartan_type),
            "w": format_element(w),
            "x": format_element(x),
            "length_w": w.length,
            "e_num": str(e.num),
            "e_den_roots": [list(r) for r in e.den_roots()],
        }
        if bruhat_leq(x, w):
            rec.update(point_record(rs, w, x))
        out.emit(rec)
    else:
        out.line(str(e))


def cmd_joseph(rs, args, out):
    w, x = parse_element(rs, args.w), parse_element(rs, args.x)
    J = joseph_poly(rs, x, w)
    if args.format == "json":
        out.emit(point_record(rs, w, x))
    else:
        out.line(str(J))


def cmd_smooth(rs, args, out):
    w, x = parse_element(rs, args.w), parse_element(rs, args.x)
    pd = point_data(rs, w, x) if bruhat_leq(x, w) else None
    if pd is None:
        from .errors import NotBelowError

        raise NotBelowError(x, w)
    rsm = is_rationally_smooth_at(rs, w, x)
    if args.format == "json":
        out.emit(point_record(rs, w, x))
    else:
        head = "SMOOTH" if pd.smooth else "SINGULAR"
        out.line(f"{head} (J = {pd.J}); rationally smooth: {'yes' if rsm else 'no'}")


def cmd_rsmooth(rs, args, out):
    w, x = parse_element(rs, args.w), parse_element(rs, args.x)
    rsm = is_rationally_smooth_at(rs, w, x)
    if args.format == "json":
        out.emit(point_record(rs, w, x))
    else:
        pd = point_data(rs, w, x)
        if rsm:
            out.line(f"RATIONALLY SMOOTH (d = {pd.J.constant_term()})")
        else:
            out.line("RATIONALLY SINGULAR")


def cmd_locus(rs, args, out):
    w = parse_element(rs, args.w)
    weyl_group(rs, args.cap, args.cache_dir)
    fn = rationally_singular_locus if args.rational else singular_locus
    pts = fn(rs, w, all_points=args.all)
    kind = "rationally singular" if args.rational else "singular"
    if args.format == "json":
        out.emit(
            {
                "schema": SCHEMA,
                "type": str(rs.cartan_type),
                "w": format_element(w),
                "kind": kind,
                "all": args.all,
                "points": [format_element(p) for p in pts],
            }
        )
    elif not pts:
        out.line(f"X({show(w)}) is {'rationally smooth' if args.rational else 'smooth'}")
    else:
        label = "points" if args.all else "maximal points"
        out.line(f"{kind} {label} of X({show(w)}): " + ", ".join(show(p) for p in pts))


def cmd_gkm_restrict(rs, args, out):
    w, x = parse_element(rs, args.w), parse_element(rs, args.x)
    p = schubert_restriction(rs, w, x)
    if args.format == "json":
        out.emit({"schema": SCHEMA, "type": str(rs.cartan_type), "w": format_element(w), "x": format_element(x), "restriction": str(p)})
    else:
        out.line(str(p))


def cmd_gkm_verify(rs, args, out):
    group = weyl_group(rs, args.cap, args.cache_dir)
    targets = [parse_element(rs, args.w)] if args.w else list(group)
    total = 0
    for w in targets:
        bad = verify_gkm(schubert_class(rs, w, verify=False))
        total += len(bad)
        if args.format == "json":
            out.emit(
                {
                    "schema": SCHEMA,
                    "type": str(rs.cartan_type),
                    "w": format_element(w),
                    "violations": [
                        {"x": format_element(v.x), "root": list(v.root), "remainder": str(v.remainder)} for v in bad
                    ],
                }
            )
        else:
            status = "OK" if not bad else f"{len(bad)} violations"
            out.line(f"xi({show(w)}): {status}")
            for v in bad:
                out.line(f"  {v}")
    if total:
        raise InvariantViolation(f"{total} GKM congruences violated by Schubert classes")


def cmd_gkm_mult(rs, args, out):
    weyl_group(rs, args.cap, args.cache_dir)
    u, v = parse_element(rs, args.u), parse_element(rs, args.v)
    prod = tuple_mul(schubert_class(rs, u), schubert_class(rs, v))
    coeffs = expand_in_schubert_basis(prod)
    if args.ordinary:
        coeffs = specialize_to_ordinary(coeffs)
    items = sorted(coeffs.items(), key=lambda kv: (kv[0].length, kv[0].word))
    if args.format == "json":
        out.emit(
            {
                "schema": SCHEMA,
                "type": str(rs.cartan_type),
                "u": format_element(u),
                "v": format_element(v),
                "ordinary": args.ordinary,
                "coefficients": {format_element(w): str(c) for w, c in items},
            }
        )
    else:
        if not items:
            out.line("0")
        for w, c in items:
            out.line(f"xi({show(w)}): {c}")


# -- scan -----------------------------------------------------------------------------

PREDICATES = ("singular", "rsingular", "smooth", "rsmooth", "singular-rsmooth")


def _scan_one(type_str, word, predicate, cap, cache_dir):
    rs = build_root_system(type_str)
    weyl_group(rs, cap, cache_dir)
    w = from_word(rs, word)
    sing = singular_locus(rs, w)
    rsing = rationally_singular_locus(rs, w) if predicate != "singular" and predicate != "smooth" else None
    if predicate == "singular":
        holds, locus = bool(sing), sing
    elif predicate == "smooth":
        holds, locus = not sing, sing
    elif predicate == "rsingular":
        holds, locus = bool(rsing), rsing
    elif predicate == "rsmooth":
        holds, locus = not rsing, rsing
    else:
        holds, locus = bool(sing) and not rsing, sing
    return {
        "schema": SCHEMA,
        "type": type_str,
        "w": format_element(w),
        "length_w": w.length,
        "predicate": predicate,
        "holds": holds,
        "locus": [format_element(p) for p in locus],
    }


def cmd_scan(rs, args, out):
    order = rs.cartan_type.weyl_order
    if order > SCAN_GUARD and not args.yes:
        if sys.stdin.isatty():
            ans = input(f"W({rs.cartan_type}) has {order} elements; scan anyway? [y/N] ")
            if ans.strip().lower() not in ("y", "yes"):
                raise SchubertError("scan aborted")
        else:
            raise SchubertError(f"|W| = {order} > {SCAN_GUARD}; rerun with --yes to scan anyway")
    group = weyl_group(rs, args.cap, args.cache_dir)
    max_len = rs.num_positive if args.max_length is None else args.max_length
    targets = [w for w in group if w.length <= max_len]
    jobs = [(str(rs.cartan_type), w.word, args.predicate, args.cap, args.cache_dir) for w in targets]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = pool.map(_scan_one, *zip(*jobs), chunksize=8) if jobs else []
            _emit_scan(results, args, out)
    else:
        _emit_scan((_scan_one(*j) for j in jobs), args, out)


def _emit_scan(results, args, out):
    for rec in results:
        if args.format == "json":
            if rec["holds"] or args.all:
                out.emit(rec)
        elif rec["holds"] or args.all:
            loc = ", ".join(_show_word(u) for u in rec["locus"]) or "-"
            out.line(f"{_show_word(rec['w'])}\t{rec['predicate']}={'yes' if rec['holds'] else 'no'}\tlocus: {loc}")
        out.flush()


def _show_word(word: str) -> str:
    return "e" if word == "e" else "*".join("s" + t for t in word.split())


# -- plumbing -------------------------------------------------------------------------


class _Out:
    def __init__(self, stream):
        self.stream = stream

    def line(self, s):
        print(s, file=self.stream)

    def emit(self, rec):
        print(json.dumps(rec, sort_keys=False), file=self.stream)

    def flush(self):
        self.stream.flush()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: UsageError: {message}", file=sys.stderr)
        sys.exit(1)


COMMANDS = {
    "roots": (cmd_roots, ()),
    "weyl": (cmd_weyl, ("w?",)),
    "bruhat": (cmd_bruhat, ("x", "w")),
    "emult": (cmd_emult, ("w", "x")),
    "joseph": (cmd_joseph, ("w", "x")),
    "smooth": (cmd_smooth, ("w", "x")),
    "rsmooth": (cmd_rsmooth, ("w", "x")),
    "locus": (cmd_locus, ("w",)),
    "gkm-restrict": (cmd_gkm_restrict, ("w", "x")),
    "gkm-verify": (cmd_gkm_verify, ("w?",)),
    "gkm-mult": (cmd_gkm_mult, ("u", "v")),
    "scan": (cmd_scan, ()),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    common.add_argument(
        "--cache-dir",
        default=None,
        help=f"directory for cached Weyl group tables (default: ${cache.ENV_VAR})",
    )
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum |W| to enumerate")
    common.add_argument("--clear-cache", action="store_true", help="delete cached tables before running")

    p = _Parser(prog="schublocus", description=__doc__.splitlines()[0], allow_abbrev=False)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, params) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], allow_abbrev=False)
        sp.add_argument("type", help="Cartan type, e.g. B3")
        for prm in params:
            opt = prm.rstrip("?")
            sp.add_argument(f"--{opt}", required=not prm.endswith("?"), help="element as a word, e.g. '1 2 1' or 'e'")
        if name == "emult":
            sp.add_argument("--engine", choices=("recursive", "subexpr"), default="recursive")
        if name == "locus":
            sp.add_argument("--rational", action="store_true", help="rationally singular locus")
            sp.add_argument("--all", action="store_true", help="list all points, not only maximal ones")
        if name == "gkm-mult":
            sp.add_argument("--ordinary", action="store_true", help="specialize to ordinary cohomology")
        if name == "scan":
            sp.add_argument("--predicate", choices=PREDICATES, default="singular")
            sp.add_argument("--max-length", type=int, default=None)
            sp.add_argument("--jobs", type=int, default=1)
            sp.add_argument("--yes", action="store_true", help="skip the size guard")
            sp.add_argument("--all", action="store_true", help="also print elements failing the predicate")
    return p


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    out = _Out(stdout or sys.stdout)
    if args.cache_dir is None:
        args.cache_dir = os.environ.get(cache.ENV_VAR)
    try:
        if args.clear_cache:
            n = cache.clear(args.cache_dir)
            log.info("removed %s cache files", n)
        rs = build_root_system(CartanType.parse(args.type))
        handler = COMMANDS[args.command][0]
        handler(rs, args, out)
    except InvariantViolation as exc:
        print(f"error: InvariantViolation: {exc}", file=sys.stderr)
        return 2
    except SchubertError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
