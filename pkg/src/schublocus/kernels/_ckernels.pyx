# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as ``_pykernels``."""

from cpython.array cimport array, clone
from fractions import Fraction
from math import comb

cdef array _int_template = array("i", [])


def compose(tuple u, tuple v, int N):
    cdef Py_ssize_t k, n = len(v)
    cdef int t, j
    cdef list out = [None] * n
    for k in range(n):
        t = v[k]
        if t < N:
            out[k] = u[t]
        else:
            j = u[t - N]
            out[k] = j + N if j < N else j - N
    return tuple(out)


def inverse(tuple w, int N):
    cdef Py_ssize_t k
    cdef int t
    cdef list out = [0] * N
    for k in range(N):
        t = w[k]
        if t < N:
            out[t] = k
        else:
            out[t - N] = k + N
    return tuple(out)


def count_negative(tuple w, int N):
    cdef Py_ssize_t k
    cdef int c = 0
    for k in range(len(w)):
        if <int>w[k] >= N:
            c += 1
    return c


def closure(list gens, int N, long cap):
    cdef Py_ssize_t ngen = len(gens), i, k, pos
    cdef int t, j
    cdef array G = clone(_int_template, ngen * N, False)
    cdef int* g = G.data.as_ints
    for i in range(ngen):
        for k in range(N):
            g[i * N + k] = gens[i][k]
    cdef array flat = array("i", range(N))
    cdef array buf = clone(_int_template, N, False)
    cdef int* b = buf.data.as_ints
    cdef int* f
    ident = tuple(range(N))
    cdef list perms = [ident]
    cdef dict index = {ident: 0}
    cdef list lmul = [[] for _ in range(ngen)]
    pos = 0
    while pos < len(perms):
        for i in range(ngen):
            f = flat.data.as_ints + pos * N
            for k in range(N):
                t = f[k]
                if t < N:
                    b[k] = g[i * N + t]
                else:
                    j = g[i * N + t - N]
                    b[k] = j + N if j < N else j - N
            p = tuple([b[k] for k in range(N)])
            jj = index.get(p)
            if jj is None:
                if len(perms) >= cap:
                    return None
                jj = len(perms)
                index[p] = jj
                perms.append(p)
                flat.extend(buf)
            (<list>lmul[i]).append(jj)
        pos += 1
    return perms, lmul


def bruhat_matrix(list lmul, lengths):
    cdef Py_ssize_t n = len(lengths), nrow = len(lmul), w, x, r, s, v, y
    cdef array L = array("i", lengths)
    cdef int[:] ln = L
    cdef array T = clone(_int_template, nrow * n, False)
    cdef int[:] tab = T
    for r in range(nrow):
        for x in range(n):
            tab[r * n + x] = lmul[r][x]
    M = bytearray(n * n)
    cdef unsigned char[:] m = M
    m[0] = 1
    for w in range(1, n):
        s = 0
        for r in range(nrow):
            if ln[tab[r * n + w]] < ln[w]:
                s = r
                break
        v = tab[s * n + w]
        for x in range(n):
            y = tab[s * n + x]
            if ln[y] < ln[x]:
                m[w * n + x] = m[v * n + y]
            else:
                m[w * n + x] = m[v * n + x]
    return M


cdef inline object _norm(object c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


cdef inline object _div(object c, object b):
    if type(c) is int and c % b == 0:
        return c // b
    return _norm(Fraction(c) / b)


def poly_add(dict a, dict b, scale=1):
    cdef dict out = dict(a)
    for k, c in b.items():
        if scale != 1:
            c = c * scale
        s = out.get(k, 0) + c
        if s:
            out[k] = _norm(s)
        else:
            out.pop(k, None)
    return out


def poly_mul(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef list ia = list(a.items())
    cdef list ib = list(b.items())
    cdef dict out = {}
    cdef Py_ssize_t p, q, na = len(ia), nb = len(ib)
    cdef tuple ta, tb
    for q in range(nb):
        tb = <tuple>ib[q]
        kb = tb[0]
        cb = tb[1]
        for p in range(na):
            ta = <tuple>ia[p]
            k = ta[0] + kb
            c = out.get(k)
            if c is None:
                out[k] = ta[1] * cb
            else:
                out[k] = c + ta[1] * cb
    return {k: _norm(c) for k, c in out.items() if c}


def poly_reflect(dict p, int sh_i, list nbrs, long mask):
    cdef dict out = {}
    cdef long e, t, m, sh_j
    cdef list terms, new
    cdef Py_ssize_t q
    # Python ints: shifts exceed 32 bits from rank 5 on
    cdef object one = 1
    unit_i = one << sh_i
    for key, c in p.items():
        if (key >> sh_i) & mask & 1:
            c = -c
        terms = [(key, c)]
        for nb in nbrs:
            sh_j = nb[0]
            m = nb[1]
            e = (key >> sh_j) & mask
            if e == 0:
                continue
            step = unit_i - (one << sh_j)
            new = []
            mt = 1
            for t in range(e + 1):
                f = comb(e, t) * mt
                d = t * step
                for q in range(len(terms)):
                    k0, c0 = <tuple>terms[q]
                    new.append((k0 + d, c0 * f))
                mt *= m
            terms = new
        for q in range(len(terms)):
            k0, c0 = <tuple>terms[q]
            v = out.get(k0)
            out[k0] = c0 if v is None else v + c0
    return {k: c for k, c in out.items() if c}


def poly_divmod_linear(dict p, int sh_v, vkey, bv, list rest, long mask):
    cdef dict groups = {}
    cdef dict g, P, Qk, q
    cdef long long e
    cdef long k, top
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
    Qk = {kk: _div(c, bv) for kk, c in (<dict>groups[top]).items()}
    for k in range(top - 1, -1, -1):
        shift = k * vkey
        for kk, c in Qk.items():
            q[kk + shift] = c
        P = dict(groups.get(k, ()))
        for rk, rb in rest:
            for kk, c in Qk.items():
                k2 = kk + rk
                s = P.get(k2, 0) - c * rb
                if s:
                    P[k2] = s
                else:
                    P.pop(k2, None)
        if k == 0:
            return q, {kk: _norm(c) for kk, c in P.items()}
        Qk = {kk: _div(c, bv) for kk, c in P.items()}
    raise AssertionError("unreachable")
