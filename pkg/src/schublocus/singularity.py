"""Smoothness and rational smoothness of Schubert varieties at fixed points.

Smoothness at ``x`` is decided by ``J(x, w) == 1`` (Kumar).  Rational
smoothness at ``x`` needs, for every ``y`` with ``x <= y < w``, both

* ``J(y, w)`` constant (Kumar), and
* ``|Phi(y, w)| == l(w)`` (Carrell-Peterson);

the two tests are always run together and any disagreement is reported as
an :class:`~schublocus.errors.InvariantViolation`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .equimult import emult_recursive, joseph_poly, phi_indices
from .errors import InvariantViolation, NotBelowError
from .symalg import Poly, RootFraction
from .weyl import WeylElt, _check_same, bruhat_leq, interval, weyl_group


@dataclass(frozen=True)
class PointData:
    J: Poly
    phi: tuple  # signed root indices
    length_w: int

    @property
    def smooth(self):
        return self.J == 1

    @property
    def kumar_constant(self):
        return self.J.is_constant()

    @property
    def cp_equal(self):
        return len(self.phi) == self.length_w


@dataclass
class PointReport:
    x: WeylElt
    w: WeylElt
    e: RootFraction
    J: Poly
    phi: tuple
    phi_count: int
    length_w: int
    smooth: bool
    rationally_smooth: bool
    is_point: bool = True
    d: int | None = None
    notes: list = field(default_factory=list)


def _point_cache(rs, w):
    cache = rs._cache.setdefault("jcache", {})
    return cache.setdefault(w.perm, {})


def point_data(rs, w: WeylElt, y: WeylElt) -> PointData:
    """J(y, w) and Phi(y, w), memoized per ``w``."""
    cache = _point_cache(rs, w)
    pd = cache.get(y.perm)
    if pd is None:
        phi = tuple(phi_indices(rs, y, w))
        J = joseph_poly(rs, y, w)
        pd = PointData(J, phi, w.length)
        if pd.kumar_constant != pd.cp_equal:
            raise InvariantViolation(
                f"Kumar and Carrell-Peterson criteria disagree at y={y}, w={w}: "
                f"J={J}, |Phi|={len(phi)}, l(w)={w.length}"
            )
        if len(phi) < w.length:
            raise InvariantViolation(f"|Phi({y},{w})| = {len(phi)} < l(w) = {w.length}")
        cache[y.perm] = pd
    return pd


def is_smooth_at(rs, w: WeylElt, x: WeylElt) -> bool:
    _check_same(rs, w, x)
    if not bruhat_leq(x, w):
        raise NotBelowError(x, w)
    return point_data(rs, w, x).smooth


def is_rationally_smooth_at(rs, w: WeylElt, x: WeylElt) -> bool:
    _check_same(rs, w, x)
    if not bruhat_leq(x, w):
        raise NotBelowError(x, w)
    for y in interval(rs, x, w):
        if y == w:
            continue
        if not point_data(rs, w, y).kumar_constant:
            return False
    return True


def _scan(rs, w):
    """Per-point data for every ``x <= w`` in group order."""
    group = weyl_group(rs)
    below = group.below(w)
    return group, below, {i: point_data(rs, w, group.elements[i]) for i in below}


def _maximal(group, members):
    return [
        i
        for i in members
        if not any(j != i and group.leq_index(i, j) for j in members)
    ]


def _check_down_closed(group, below, members, what, w):
    for s in members:
        for y in below:
            if group.leq_index(y, s) and y not in members:
                raise InvariantViolation(
                    f"{what} set of X({w}) is not downward closed: "
                    f"{group.elements[s]} is in it but {group.elements[y]} is not"
                )


def singular_set(rs, w: WeylElt) -> list:
    group, below, data = _scan(rs, w)
    members = {i for i in below if not data[i].smooth}
    _check_down_closed(group, below, members, "singular", w)
    return [group.elements[i] for i in sorted(members)]


def rationally_singular_set(rs, w: WeylElt) -> list:
    group, below, data = _scan(rs, w)
    iw = group.position(w)
    bad = [i for i in below if i != iw and not data[i].kumar_constant]
    members = {x for x in below if any(group.leq_index(x, b) for b in bad)}
    _check_down_closed(group, below, members, "rationally singular", w)
    return [group.elements[i] for i in sorted(members)]


def singular_locus(rs, w: WeylElt, all_points=False) -> list:
    """Bruhat-maximal points where X(w) is singular (or all of them)."""
    pts = singular_set(rs, w)
    if all_points:
        return pts
    group = weyl_group(rs)
    return [group.elements[i] for i in sorted(_maximal(group, [group.position(p) for p in pts]))]


def rationally_singular_locus(rs, w: WeylElt, all_points=False) -> list:
    pts = rationally_singular_set(rs, w)
    if all_points:
        return pts
    group = weyl_group(rs)
    return [group.elements[i] for i in sorted(_maximal(group, [group.position(p) for p in pts]))]


def report(rs, w: WeylElt, x: WeylElt) -> PointReport:
    _check_same(rs, w, x)
    phi = tuple(phi_indices(rs, x, w))
    if not bruhat_leq(x, w):
        return PointReport(
            x=x,
            w=w,
            e=RootFraction.zero(rs),
            J=Poly.zero(rs.rank),
            phi=tuple(rs.roots[k] for k in phi),
            phi_count=len(phi),
            length_w=w.length,
            smooth=False,
            rationally_smooth=False,
            is_point=False,
            notes=[f"{x} is not a point of X({w})"],
        )
    pd = point_data(rs, w, x)
    rsm = is_rationally_smooth_at(rs, w, x)
    if pd.smooth and not rsm:
        raise InvariantViolation(f"smooth but not rationally smooth at {x} in X({w})")
    return PointReport(
        x=x,
        w=w,
        e=emult_recursive(rs, w, x),
        J=pd.J,
        phi=tuple(rs.roots[k] for k in pd.phi),
        phi_count=len(pd.phi),
        length_w=w.length,
        smooth=pd.smooth,
        rationally_smooth=rsm,
        d=pd.J.constant_term() if pd.kumar_constant else None,
    )
