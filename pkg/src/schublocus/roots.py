"""Finite crystallographic root systems in the simple-root basis.

Roots are plain tuples of integers giving coordinates with respect to the
simple roots ``a1, ..., al``.  Simple indices are 1-based in the public API,
matching the usual ``s1, s2, ...`` notation.

Conventions (Bourbaki numbering)::

    cartan[i][j] = <a_j, a_i^vee>          (0-based storage)

so that ``B_l`` has its short simple root last (``<a_{l-1}, a_l^vee> = -2``),
``C_l`` its long simple root last, and ``G2`` has ``a1`` short
(``<a2, a1^vee> = -3``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import CartanTypeError, RootError, SimpleIndexError

Root = tuple  # tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

# classical |W| and |Phi^+|, used for sanity checks and enumeration caps
_CLASSICAL = {
    "E6": (51840, 36),
    "E7": (2903040, 63),
    "E8": (696729600, 120),
    "F4": (1152, 24),
    "G2": (12, 6),
}


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        if fam not in "ABCDEFG" or len(fam) != 1:
            raise CartanTypeError(f"unknown Cartan family {fam!r}; expected one of A-G")
        if not isinstance(n, int) or n < 1:
            raise CartanTypeError(f"rank must be a positive integer, got {n!r}")
        if fam in _MIN_RANK and n < _MIN_RANK[fam]:
            raise CartanTypeError(f"type {fam} requires rank >= {_MIN_RANK[fam]}, got {n}")
        if fam in _FIXED_RANKS and n not in _FIXED_RANKS[fam]:
            allowed = ", ".join(map(str, _FIXED_RANKS[fam]))
            raise CartanTypeError(f"type {fam} requires rank in {{{allowed}}}, got {n}")

    @classmethod
    def parse(cls, text: str) -> CartanType:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise CartanTypeError(f"cannot parse Cartan type {text!r} (expected e.g. 'B3')")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def weyl_order(self) -> int:
        f, n = self.family, self.rank
        if f == "A":
            return _factorial(n + 1)
        if f in "BC":
            return 2**n * _factorial(n)
        if f == "D":
            return 2 ** (n - 1) * _factorial(n)
        return _CLASSICAL[str(self)][0]

    @property
    def num_positive_roots(self) -> int:
        f, n = self.family, self.rank
        if f == "A":
            return n * (n + 1) // 2
        if f in "BC":
            return n * n
        if f == "D":
            return n * (n - 1)
        return _CLASSICAL[str(self)][1]


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def cartan_matrix(t: CartanType) -> tuple:
    n = t.rank
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2

    def link(i, j, ij=-1, ji=-1):
        # 1-based; c[i][j] = <a_j, a_i^vee>
        c[i - 1][j - 1] = ij
        c[j - 1][i - 1] = ji

    f = t.family
    if f in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if f == "B":
            link(n, n - 1, ij=-2, ji=-1)
        elif f == "C":
            link(n - 1, n, ij=-2, ji=-1)
    elif f == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif f == "E":
        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
    elif f == "F":
        link(1, 2)
        link(3, 2, ij=-2, ji=-1)
        link(3, 4)
    elif f == "G":
        link(1, 2, ij=-3, ji=-1)
    return tuple(tuple(row) for row in c)


def height(root: Root) -> int:
    return sum(root)


def negate(root: Root) -> Root:
    return tuple(-c for c in root)


def is_positive(root: Root) -> bool:
    return any(c > 0 for c in root)


def _root_sort_key(root):
    return (height(root), tuple(root))


class RootSystem:
    """Root system of one Cartan type; immutable after construction.

    Positive roots are indexed ``0 .. N-1`` in (height, lex) order; the
    negative of positive root ``k`` has index ``k + N``.  This signed index
    encoding is used throughout the kernels.
    """

    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        self.rank = n = cartan_type.rank
        self.cartan = cartan_matrix(cartan_type)

        roots = self._close_simple_roots()
        pos = sorted((r for r in roots if is_positive(r)), key=_root_sort_key)
        for r in roots:
            if any(c > 0 for c in r) and any(c < 0 for c in r):
                raise RootError(f"mixed-sign vector {r} generated; Cartan matrix is broken")
        self.positive_roots = tuple(pos)
        self.num_positive = N = len(pos)
        self.roots = self.positive_roots + tuple(negate(r) for r in pos)
        self.index = {r: k for k, r in enumerate(self.roots)}
        self.simple_index = tuple(self.index[_unit(n, i)] for i in range(n))
        # image of every positive root (as signed index) under each s_i
        self.simple_reflection_table = tuple(
            tuple(self.index[self._reflect0(i, r)] for r in pos) for i in range(n)
        )
        self._cache = {}

    def _reflect0(self, i, v):
        p = sum(vj * cij for vj, cij in zip(v, self.cartan[i]))
        if p == 0:
            return tuple(v)
        out = list(v)
        out[i] -= p
        return tuple(out)

    def _close_simple_roots(self):
        n = self.rank
        seen = {_unit(n, i) for i in range(n)}
        todo = list(seen)
        while todo:
            r = todo.pop()
            for i in range(n):
                s = self._reflect0(i, r)
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
        return seen

    def __repr__(self):
        return f"RootSystem({self.cartan_type})"

    def __reduce__(self):
        return (build_root_system, (self.cartan_type,))

    def check_simple(self, i: int) -> int:
        """Validate a 1-based simple index and return it 0-based."""
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise SimpleIndexError(f"simple index {i!r} out of range 1..{self.rank}")
        return i - 1

    def root_index(self, v) -> int:
        try:
            return self.index[tuple(v)]
        except (KeyError, TypeError):
            raise RootError(f"{v!r} is not a root of {self.cartan_type}") from None

    def positive_index(self, v) -> int:
        k = self.root_index(v)
        if k >= self.num_positive:
            raise RootError(f"{v!r} is not a positive root of {self.cartan_type}")
        return k

    def neg_index(self, k: int) -> int:
        N = self.num_positive
        return k + N if k < N else k - N

    def simple_root(self, i: int) -> Root:
        return _unit(self.rank, self.check_simple(i))

    def format_root(self, v, compact=True) -> str:
        """Render a root as a linear form, e.g. ``a1+2*a2``."""
        from .symalg import linear_form

        s = str(linear_form(self, v))
        return s.replace(" ", "") if compact else s


def _unit(n, i):
    v = [0] * n
    v[i] = 1
    return tuple(v)


@lru_cache(maxsize=None)
def _build(t: CartanType) -> RootSystem:
    return RootSystem(t)


def build_root_system(t) -> RootSystem:
    """Return the (shared, immutable) root system of a Cartan type.

    ``t`` may be a :class:`CartanType` or a string such as ``"B2"``.
    """
    if isinstance(t, str):
        t = CartanType.parse(t)
    return _build(t)


def pairing(rs: RootSystem, v, i: int) -> int:
    """``<v, a_i^vee>`` for a root ``v`` and 1-based simple index ``i``."""
    i0 = rs.check_simple(i)
    rs.root_index(v)
    return sum(vj * cij for vj, cij in zip(v, rs.cartan[i0]))


def reflect(rs: RootSystem, i: int, v) -> Root:
    """Apply the simple reflection ``s_i`` to the root ``v``."""
    i0 = rs.check_simple(i)
    rs.root_index(v)
    return rs._reflect0(i0, v)
