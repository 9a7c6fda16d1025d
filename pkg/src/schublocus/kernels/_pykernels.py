"""Pure-Python kernels.

These are the reference implementations; ``_ckernels.pyx`` mirrors every
function here with identical signatures and results.

Weyl group elements are encoded as *signed permutations*: a tuple ``w`` of
length ``N`` (number of positive roots) with ``w[k]`` the signed index of the
image of positive root ``k`` (``j < N`` positive, ``j >= N`` the negative of
root ``j - N``).

Polynomials are dicts ``{key: coeff}`` with packed monomial keys::

    key = (degree << (B*l)) | sum(e_j << (B*(l-1-j)))

so monomial multiplication is integer addition and ascending key order is
graded-lex order (``a1 > a2 > ...``).
"""

from fractions import Fraction
from math import comb


def compose(u, v, N):
    out = []
    for t in v:
        if t < N:
            out.append(u[t])
        else:
            j = u[t - N]
            out.append(j + N if j < N else j - N)
    return tuple(out)


def inverse(w, N):
    out = [0] * N
    for k, t in enumerate(w):
        if t < N:
            out[t] = k
        else:
            out[t - N] = k + N
    return tuple(out)


def count_negative(w, N):
    return sum(1 for t in w if t >= N)


def closure(gens, N, cap):
    """Breadth-first closure of the identity under left multiplication.

    Returns ``(perms, lmul)`` where ``perms`` is in nondecreasing length order
    and ``lmul[i][k]`` is the index of ``gens[i] * perms[k]``; ``None`` when
    more than ``cap`` elements would be produced.
    """
    ident = tuple(range(N))
    perms = [ident]
    index = {ident: 0}
    lmul = [[] for _ in gens]
    k = 0
    while k < len(perms):
        w = perms[k]
        for i, g in enumerate(gens):
            p = compose(g, w, N)
            j = index.get(p)
            if j is None:
                if len(perms) >= cap:
                    return None
                j = len(perms)
                index[p] = j
                perms.append(p)
            lmul[i].append(j)
        k += 1
    return perms, lmul


def bruhat_matrix(lmul, lengths):
    """Full Bruhat order as a flat ``n*n`` bytearray, ``M[w*n + x] = (x <= w)``.

    Elements must be indexed in nondecreasing length with the identity at 0.
    Row ``w`` is derived from row ``s*w`` for a left descent ``s`` by the
    lifting property.
    """
    n = len(lengths)
    M = bytearray(n * n)
    M[0] = 1
    for w in range(1, n):
        lw = lengths[w]
        for row in lmul:
            v = row[w]
            if lengths[v] < lw:
                break
        base_v = v * n
        base_w = w * n
        for x in range(n):
            y = row[x]
            if lengths[y] < lengths[x]:
                M[base_w + x] = M[base_v + y]
            else:
                M[base_w + x] = M[base_v + x]
    return M


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(c, b):
    if type(c) is int and c % b == 0:
        return c // b
    return _norm(Fraction(c) / b)


def poly_add(a, b, scale=1):
    """``a + scale*b``."""
    out = dict(a)
    for k, c in b.items():
        if scale != 1:
            c = c * scale
        s = out.get(k, 0) + c
        if s:
            out[k] = _norm(s)
        else:
            out.pop(k, None)
    return out


def poly_mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: _norm(c) for k, c in out.items() if c}


def poly_reflect(p, sh_i, nbrs, mask):
    """Substitute ``a_i -> -a_i`` and ``a_j -> a_j + m*a_i`` for each
    neighbour ``(sh_j, m)`` in ``nbrs``; ``sh`` are bit shifts of exponent
    fields."""
    out = {}
    get = out.get
    unit_i = 1 << sh_i
    for key, c in p.items():
        if (key >> sh_i) & mask & 1:
            c = -c
        terms = [(key, c)]
        for sh_j, m in nbrs:
            e = (key >> sh_j) & mask
            if not e:
                continue
            step = unit_i - (1 << sh_j)
            new = []
            mt = 1
            for t in range(e + 1):
                f = comb(e, t) * mt
                d = t * step
                for k0, c0 in terms:
                    new.append((k0 + d, c0 * f))
                mt *= m
            terms = new
        for k0, c0 in terms:
            out[k0] = get(k0, 0) + c0
    return {k: c for k, c in out.items() if c}


def poly_divmod_linear(p, sh_v, vkey, bv, rest, mask):
    """Divide ``p`` by the linear form ``bv*a_v + sum(b*mono)`` where ``rest``
    lists ``(mono_key, b)`` for variables after ``a_v``.

    Returns ``(q, r)`` with ``p = lin*q + r`` and ``r`` free of ``a_v``.
    """
    groups = {}
    for key, c in p.items():
        e = (key >> sh_v) & mask
        g = groups.get(e)
        if g is None:
            g = groups[e] = {}
        g[key - e * vkey] = c
    if not groups:
        return {}, {}
    top = max(groups)
    if top == 0:
        return {}, dict(p)
    q = {}
    Qk = {k: _div(c, bv) for k, c in groups[top].items()}
    for k in range(top - 1, -1, -1):
        shift = k * vkey
        for key, c in Qk.items():
            q[key + shift] = c
        P = dict(groups.get(k, ()))
        for rk, rb in rest:
            for key, c in Qk.items():
                kk = key + rk
                s = P.get(kk, 0) - c * rb
                if s:
                    P[kk] = s
                else:
                    P.pop(kk, None)
        if k == 0:
            return q, {kk: _norm(c) for kk, c in P.items()}
        Qk = {kk: _div(c, bv) for kk, c in P.items()}
    raise AssertionError("unreachable")
