"""GKM (congruence) model of the equivariant cohomology of G/B.

A class is a tuple ``(f_x)`` of polynomials indexed by W, subject to
``f_x = f_{s_a x} mod a`` for every positive root ``a``.  The Schubert class
of ``X(w)`` restricts to ``x`` as

    xi(w)|_x = e_x X(w) * prod(x(Phi+))

and is supported on ``{x <= w}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .equimult import emult_recursive
from .errors import InvariantViolation, NotInSpanError, RootSystemMismatch
from .symalg import Poly, _lform
from .weyl import WeylElt, _reflection_perms, weyl_group


@dataclass(frozen=True)
class Violation:
    x: WeylElt
    root: tuple
    remainder: Poly

    def __str__(self):
        return f"f({self.x}) - f(s_a {self.x}) not divisible by a = {self.root}: remainder {self.remainder}"


class GkmTuple:
    """A map W -> S; missing entries are zero."""

    __slots__ = ("rs", "values")

    def __init__(self, rs, values: dict):
        self.rs = rs
        self.values = values

    @classmethod
    def constant(cls, rs, f: Poly):
        return cls(rs, {x: f for x in weyl_group(rs)})

    @classmethod
    def zero(cls, rs):
        return cls(rs, {})

    def __getitem__(self, x: WeylElt) -> Poly:
        return self.values.get(x) or Poly.zero(self.rs.rank)

    def support(self):
        return [x for x in weyl_group(self.rs) if self[x]]

    def __eq__(self, other):
        if not isinstance(other, GkmTuple):
            return NotImplemented
        return self.rs is other.rs and all(self[x] == other[x] for x in weyl_group(self.rs))

    def __add__(self, other):
        return tuple_add(self, other)

    def __mul__(self, other):
        return tuple_mul(self, other)


def _same(t, u):
    if t.rs is not u.rs:
        raise RootSystemMismatch("GKM tuples over different root systems")


def schubert_restriction(rs, w: WeylElt, x: WeylElt, memo=None) -> Poly:
    """``xi(w)|_x``; zero unless ``x <= w``."""
    e = emult_recursive(rs, w, x, memo)
    if not e:
        return Poly.zero(rs.rank)
    f = e
    for k in x.perm:
        f = f.multiply_root_index(k)
    if f.den:
        raise InvariantViolation(f"restriction of xi({w}) to {x} is not a polynomial: {f}")
    return f.num


def _class_cache(rs):
    return rs._cache.setdefault("schubert_classes", {})


def schubert_class(rs, w: WeylElt, verify=True) -> GkmTuple:
    cache = _class_cache(rs)
    t = cache.get(w.perm)
    if t is not None:
        return t
    group = weyl_group(rs)
    vals = {}
    for i in group.below(w):
        x = group.elements[i]
        vals[x] = schubert_restriction(rs, w, x)
    t = GkmTuple(rs, vals)
    if not t[w]:
        raise InvariantViolation(f"xi({w}) vanishes at {w}")
    if verify:
        bad = verify_gkm(t)
        if bad:
            raise InvariantViolation(f"xi({w}) violates {len(bad)} GKM congruences, e.g. {bad[0]}")
    cache[w.perm] = t
    return t


def verify_gkm(t: GkmTuple) -> list:
    """All violated congruences ``f_x = f_{s_a x} mod a`` (empty when valid)."""
    rs = t.rs
    N = rs.num_positive
    refl = _reflection_perms(rs)
    out = []
    for x in weyl_group(rs):
        fx = t[x]
        for k in range(N):
            y = WeylElt(rs, kernels.compose(refl[k], x.perm, N))
            diff = fx - t[y]
            if not diff:
                continue
            _, r = diff.divmod_linear(rs.positive_roots[k])
            if r:
                out.append(Violation(x, rs.positive_roots[k], r))
    return out


def tuple_add(t: GkmTuple, u: GkmTuple) -> GkmTuple:
    _same(t, u)
    vals = {}
    for x in set(t.values) | set(u.values):
        s = t[x] + u[x]
        if s:
            vals[x] = s
    return GkmTuple(t.rs, vals)


def tuple_mul(t: GkmTuple, u: GkmTuple) -> GkmTuple:
    _same(t, u)
    vals = {}
    for x in set(t.values) & set(u.values):
        p = t[x] * u[x]
        if p:
            vals[x] = p
    return GkmTuple(t.rs, vals)


def tuple_scale(f, t: GkmTuple) -> GkmTuple:
    """Multiply every entry by the polynomial or scalar ``f``."""
    vals = {}
    for x, v in t.values.items():
        p = v * f
        if p:
            vals[x] = p
    return GkmTuple(t.rs, vals)


def expand_in_schubert_basis(t: GkmTuple) -> dict:
    """Coefficients ``c_w`` in S with ``t = sum(c_w * xi(w))``.

    Elements are processed by decreasing (length, ShortLex word); only
    nonzero coefficients are returned.
    """
    rs = t.rs
    group = weyl_group(rs)
    residual = {x: v for x, v in t.values.items() if v}
    coeffs = {}
    for w in reversed(group.elements):
        r = residual.get(w)
        if not r:
            continue
        xi = schubert_class(rs, w)
        c = _divide_by_root_product(rs, r, w)
        if c is None:
            raise NotInSpanError(
                f"tuple not in the span over S: {r} at {w} is not divisible by xi({w})|_{w} = {xi[w]}"
            )
        coeffs[w] = c
        for x, v in xi.values.items():
            s = residual.get(x, Poly.zero(rs.rank)) - c * v
            if s:
                residual[x] = s
            else:
                residual.pop(x, None)
    if residual:
        raise InvariantViolation(f"nonzero remainder after basis expansion at {sorted(residual, key=str)[:3]}")
    return coeffs


def _divide_by_root_product(rs, p: Poly, w: WeylElt):
    """``p / xi(w)|_w`` where ``xi(w)|_w`` is the product of ``Phi+ & w(Phi+)``."""
    N = rs.num_positive
    for k in w.perm:
        if k < N:
            p = p.divide_by_linear(rs.positive_roots[k])
            if p is None:
                return None
    return p


def reconstruct(rs, coeffs: dict) -> GkmTuple:
    """``sum(c_w * xi(w))``."""
    out = GkmTuple.zero(rs)
    for w, c in coeffs.items():
        out = tuple_add(out, tuple_scale(c, schubert_class(rs, w)))
    return out


def specialize_to_ordinary(data) -> dict:
    """Constant terms of an expansion (or of the expansion of a tuple): the
    image in ordinary cohomology.  Zero entries are dropped."""
    if isinstance(data, GkmTuple):
        data = expand_in_schubert_basis(data)
    out = {}
    for w, c in data.items():
        v = c.constant_term() if isinstance(c, Poly) else c
        if v:
            out[w] = Fraction(v) if not isinstance(v, int) else v
    return out


def point_class_value(rs) -> Poly:
    """``xi(e)|_e = prod(Phi+)``."""
    p = Poly.one(rs.rank)
    for k in range(rs.num_positive):
        p = p * _lform(rs, k)
    return p
