"""Equivariant multiplicities of Schubert varieties at torus-fixed points.

Two independent engines compute ``e_x X(w)``:

* :func:`emult_recursive` peels the first letter ``s_i`` off the canonical
  word of ``w = s_i tau`` and uses

      e_x X(w) = (e_x X(tau) - s_i(e_{s_i x} X(tau))) / a_i

* :func:`emult_subexpr` sums, over all subexpressions ``(s_1, ..., s_n)`` of
  a reduced word with product ``x``, the terms
  ``prod_j (s_1...s_j)(a_{i_j})^{-1}``.

Sign conventions: the tangent weights at ``x`` are ``x(Phi+)`` and the
roots of ``B`` are negative, so for instance ``e_w X(w)`` is the inverse
product of ``Phi- & w(Phi+)`` taken with their signs.
"""

from __future__ import annotations

from collections import Counter

from . import kernels
from .errors import EnumerationCapError, InvariantViolation, NotBelowError, NotReducedError
from .symalg import Poly, RootFraction, _lform, _reduced
from .weyl import (
    WeylElt,
    _check_same,
    _reflection_perms,
    bruhat_leq,
    from_word,
)

SUBEXPR_MAX_LENGTH = 14


def _leq_perm(rs, xperm, w):
    group = rs._cache.get("group")
    if group is not None and group.has_table:
        ix = group.index[xperm]
        return bool(group._bruhat[group.index[w.perm] * group.size + ix])
    return bruhat_leq(WeylElt(rs, xperm), w)


def phi_indices(rs, x: WeylElt, w: WeylElt) -> list:
    """Signed indices of ``Phi(x, w) = {a in x(Phi+) : s_a x <= w}``, sorted."""
    _check_same(rs, x, w)
    N = rs.num_positive
    refl = _reflection_perms(rs)
    out = []
    for k in range(N):
        # a = x(beta_k) gives s_a x = x s_beta
        if _leq_perm(rs, kernels.compose(x.perm, refl[k], N), w):
            out.append(x.perm[k])
    out.sort()
    return out


def phi_set(rs, x: WeylElt, w: WeylElt) -> frozenset:
    """``Phi(x, w)`` as a set of roots (possibly negative)."""
    return frozenset(rs.roots[k] for k in phi_indices(rs, x, w))


# -- subexpression engine --------------------------------------------------------


def emult_subexpr(rs, word, x: WeylElt, max_length=SUBEXPR_MAX_LENGTH) -> RootFraction:
    """``e_x X(w)`` for ``w`` given by the reduced word ``word``.

    Cost is ``2**len(word)``; words longer than ``max_length`` are refused
    (pass ``max_length=None`` to lift the limit).
    """
    word = tuple(word)
    w = from_word(rs, word)
    _check_same(rs, x)
    if w.length != len(word):
        raise NotReducedError(f"word {word} is not reduced (length {w.length})")
    if max_length is not None and len(word) > max_length:
        raise EnumerationCapError(
            f"subexpression sum over a word of length {len(word)} exceeds max_length={max_length}"
        )
    N = rs.num_positive
    simple = rs.simple_index
    tables = rs.simple_reflection_table
    target = x.perm
    terms = Counter()
    n = len(word)

    def walk(j, prefix, sign, den):
        if j == n:
            if prefix == target:
                terms[tuple(sorted(den))] += sign
            return
        i0 = word[j] - 1
        for p in (prefix, kernels.compose(prefix, tables[i0], N)):
            k = p[simple[i0]]
            if k >= N:
                walk(j + 1, p, -sign, den + [k - N])
            else:
                walk(j + 1, p, sign, den + [k])

    walk(0, tuple(range(N)), 1, [])
    return _sum_root_monomials(rs, terms)


def _sum_root_monomials(rs, terms: Counter) -> RootFraction:
    """``sum(c / prod(den))`` over ``{den tuple: c}`` with a common denominator."""
    terms = {d: c for d, c in terms.items() if c}
    if not terms:
        return RootFraction.zero(rs)
    lcm = Counter()
    for d in terms:
        lcm |= Counter(d)
    num = Poly(rs.rank, {})
    for d, c in terms.items():
        p = Poly.constant(rs.rank, c)
        for k, m in (lcm - Counter(d)).items():
            for _ in range(m):
                p = p * _lform(rs, k)
        num = num + p
    return _reduced(rs, num, lcm, list(lcm))


# -- recursive engine ----------------------------------------------------------------


def _memo(rs):
    return rs._cache.setdefault("emult", {})


def emult_recursive(rs, w: WeylElt, x: WeylElt, memo=None) -> RootFraction:
    """``e_x X(w)`` by the left-descent recursion, memoized over ``(w, x)``.

    ``memo`` defaults to a table shared by all queries on ``rs``; pass a
    fresh dict to confine it to one task.
    """
    _check_same(rs, w, x)
    if memo is None:
        memo = _memo(rs)
    return _erec(rs, w, x, memo)


def _erec(rs, w, x, memo):
    key = (w.perm, x.perm)
    val = memo.get(key)
    if val is not None:
        return val
    if x.length > w.length:
        val = RootFraction.zero(rs)
    elif w.length == 0:
        val = RootFraction.one(rs)  # here x is the identity too
    else:
        word = w.word
        i = word[0]
        tau = w.left_mul_simple(i)
        tau._word = word[1:]
        tau._length = len(word) - 1
        a = _erec(rs, tau, x, memo)
        b = _erec(rs, tau, x.left_mul_simple(i), memo)
        val = (a - b.act_simple(i)).divide_by_root_index(rs.simple_index[i - 1])
    memo[key] = val
    return val


def emult(rs, w: WeylElt, x: WeylElt, engine="recursive") -> RootFraction:
    if engine == "recursive":
        return emult_recursive(rs, w, x)
    if engine == "subexpr":
        return emult_subexpr(rs, w.word, x)
    raise ValueError(f"unknown engine {engine!r}")


# -- closed forms -------------------------------------------------------------------


def emult_flag_point(rs, w: WeylElt) -> RootFraction:
    """``e_w G/B``: inverse product of ``w(Phi+)``."""
    sign = -1 if w.length % 2 else 1
    return RootFraction(rs, Poly.constant(rs.rank, sign), tuple(range(rs.num_positive)))


def emult_at_self(rs, w: WeylElt) -> RootFraction:
    """``e_w X(w)``: inverse product of ``Phi- & w(Phi+)``."""
    N = rs.num_positive
    return RootFraction.make(rs, Poly.one(rs.rank), [k for k in w.perm if k >= N])


def _require_leq(x, w):
    if not bruhat_leq(x, w):
        raise NotBelowError(x, w)


def joseph_poly(rs, x: WeylElt, w: WeylElt, e: RootFraction = None) -> Poly:
    """``J(x, w) = e_x X(w) * prod(Phi(x, w))``, a polynomial over Z."""
    _check_same(rs, x, w)
    _require_leq(x, w)
    if e is None:
        e = emult_recursive(rs, w, x)
    f = e
    for k in phi_indices(rs, x, w):
        f = f.multiply_root_index(k)
    if f.den:
        raise InvariantViolation(f"J({x}, {w}) is not a polynomial: {f}")
    if not f.num.has_integer_coefficients():
        raise InvariantViolation(f"J({x}, {w}) = {f.num} has non-integer coefficients")
    return f.num


def slice_mult(rs, x: WeylElt, w: WeylElt) -> RootFraction:
    """``e_x N_{x,w} = e_x X(w) * prod(Phi- & x(Phi+))``."""
    _check_same(rs, x, w)
    _require_leq(x, w)
    f = emult_recursive(rs, w, x)
    N = rs.num_positive
    for k in x.perm:
        if k >= N:
            f = f.multiply_root_index(k)
    return f


def check_emult_invariants(rs, x: WeylElt, w: WeylElt, e: RootFraction, phi=None):
    """Degree and denominator laws for a nonzero ``e_x X(w)``; returns a list
    of failure descriptions (empty when all hold)."""
    problems = []
    if not e:
        return ["multiplicity is zero"]
    if not e.is_homogeneous():
        problems.append("numerator not homogeneous")
    if e.degree != -w.length:
        problems.append(f"degree {e.degree} != -l(w) = {-w.length}")
    if phi is None:
        phi = phi_indices(rs, x, w)
    N = rs.num_positive
    allowed = {k if k < N else k - N for k in phi}
    cnt = Counter(e.den)
    for k, m in cnt.items():
        if m > 1:
            problems.append(f"root {rs.roots[k]} has multiplicity {m} in the denominator")
        if k not in allowed:
            problems.append(f"denominator root {rs.roots[k]} not in Phi(x, w)")
    return problems


__all__ = [
    "phi_set",
    "phi_indices",
    "emult_subexpr",
    "emult_recursive",
    "emult",
    "emult_flag_point",
    "emult_at_self",
    "joseph_poly",
    "slice_mult",
    "check_emult_invariants",
]
