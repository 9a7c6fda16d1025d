"""Weyl group elements, Bruhat order and group enumeration.

An element is determined by its action on the simple roots; internally it is
stored as the signed permutation it induces on the positive roots (see
:mod:`schublocus.kernels`), which makes composition, inversion counts and
equality cheap.
"""

from __future__ import annotations

from . import kernels
from .errors import (
    EnumerationCapError,
    NotBelowError,
    RootError,
    RootSystemMismatch,
)
from .roots import RootSystem

DEFAULT_CAP = 10**6
# largest group for which a dense Bruhat table (n*n bytes) is built
BRUHAT_TABLE_MAX = 8192


class WeylElt:
    __slots__ = ("rs", "perm", "_length", "_word", "_inv")

    def __init__(self, rs: RootSystem, perm: tuple):
        self.rs = rs
        self.perm = perm
        self._length = None
        self._word = None
        self._inv = None

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, WeylElt):
            return NotImplemented
        return self.perm == other.perm and self.rs is other.rs

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        w = self.word
        return "e" if not w else "*".join(f"s{i}" for i in w)

    # -- structure ------------------------------------------------------------
    @property
    def action(self) -> tuple:
        """Images of the simple roots, as roots."""
        rs = self.rs
        return tuple(rs.roots[self.perm[k]] for k in rs.simple_index)

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = kernels.count_negative(self.perm, self.rs.num_positive)
        return self._length

    @property
    def word(self) -> tuple:
        """ShortLex-minimal reduced word (1-based simple indices)."""
        if self._word is None:
            self._word = _shortlex_word(self)
        return self._word

    def is_identity(self):
        return self.length == 0

    def inverse(self) -> WeylElt:
        if self._inv is None:
            inv = WeylElt(self.rs, kernels.inverse(self.perm, self.rs.num_positive))
            inv._inv = self
            self._inv = inv
        return self._inv

    def __mul__(self, other):
        if not isinstance(other, WeylElt):
            return NotImplemented
        return compose(self.rs, self, other)

    def __call__(self, root):
        return act_on_root(self, root)

    def act_index(self, k: int) -> int:
        """Signed index of the image of the root with signed index ``k``."""
        N = self.rs.num_positive
        if k < N:
            return self.perm[k]
        j = self.perm[k - N]
        return j + N if j < N else j - N

    def left_descents(self):
        """Simple indices ``i`` (1-based) with ``l(s_i w) < l(w)``."""
        inv = self.inverse().perm
        N = self.rs.num_positive
        return [i + 1 for i, k in enumerate(self.rs.simple_index) if inv[k] >= N]

    def right_descents(self):
        N = self.rs.num_positive
        return [i + 1 for i, k in enumerate(self.rs.simple_index) if self.perm[k] >= N]

    def left_mul_simple(self, i: int) -> WeylElt:
        """``s_i * self`` for 1-based ``i``."""
        rs = self.rs
        return WeylElt(rs, kernels.compose(rs.simple_reflection_table[i - 1], self.perm, rs.num_positive))

    def right_mul_simple(self, i: int) -> WeylElt:
        rs = self.rs
        return WeylElt(rs, kernels.compose(self.perm, rs.simple_reflection_table[i - 1], rs.num_positive))

    def __reduce__(self):
        return (_rebuild, (self.rs, self.perm))


def _rebuild(rs, perm):
    return WeylElt(rs, perm)


def _shortlex_word(w: WeylElt) -> tuple:
    rs = w.rs
    N = rs.num_positive
    simple = rs.simple_index
    # left descents of the running element = right descents of its inverse
    u = w.inverse().perm
    word = []
    for _ in range(w.length):
        for i, k in enumerate(simple):
            if u[k] >= N:
                break
        word.append(i + 1)
        u = kernels.compose(u, rs.simple_reflection_table[i], N)
    return tuple(word)


# -- construction ---------------------------------------------------------------


def identity(rs: RootSystem) -> WeylElt:
    e = WeylElt(rs, tuple(range(rs.num_positive)))
    e._word = ()
    return e


def simple_reflection(rs: RootSystem, i: int) -> WeylElt:
    i0 = rs.check_simple(i)
    return WeylElt(rs, rs.simple_reflection_table[i0])


def from_word(rs: RootSystem, word) -> WeylElt:
    """Product ``s_{i1} s_{i2} ...``; the word need not be reduced."""
    perm = tuple(range(rs.num_positive))
    for i in word:
        i0 = rs.check_simple(i)
        perm = kernels.compose(perm, rs.simple_reflection_table[i0], rs.num_positive)
    return WeylElt(rs, perm)


def longest_element(rs: RootSystem) -> WeylElt:
    N = rs.num_positive
    w = identity(rs)
    while w.length < N:
        # any i with w(a_i) > 0 lengthens w
        for i, k in enumerate(rs.simple_index):
            if w.perm[k] < N:
                w = w.right_mul_simple(i + 1)
                break
    return w


def _check_same(rs, *elts):
    for u in elts:
        if u.rs is not rs:
            raise RootSystemMismatch(
                f"element of {u.rs.cartan_type} used with {rs.cartan_type}"
            )


# -- operations -----------------------------------------------------------------


def compose(rs: RootSystem, u: WeylElt, v: WeylElt) -> WeylElt:
    """The element ``root -> u(v(root))``."""
    _check_same(rs, u, v)
    return WeylElt(rs, kernels.compose(u.perm, v.perm, rs.num_positive))


def act_on_root(w: WeylElt, beta):
    rs = w.rs
    k = rs.index.get(tuple(beta))
    if k is not None:
        return rs.roots[w.act_index(k)]
    # arbitrary integer vector: extend linearly from the simple roots
    if len(beta) != rs.rank:
        raise RootError(f"vector {beta!r} has wrong length for rank {rs.rank}")
    out = [0] * rs.rank
    for c, img in zip(beta, w.action):
        if c:
            for j, v in enumerate(img):
                out[j] += c * v
    return tuple(out)


def length(w: WeylElt) -> int:
    return w.length


def reduced_word(w: WeylElt) -> tuple:
    return w.word


def _reflection_perms(rs: RootSystem):
    perms = rs._cache.get("reflections")
    if perms is None:
        N = rs.num_positive
        perms = []
        for beta in rs.positive_roots:
            u = tuple(range(N))
            b = beta
            while sum(b) != 1:
                for i in range(rs.rank):
                    if sum(bj * cij for bj, cij in zip(b, rs.cartan[i])) > 0:
                        break
                b = rs._reflect0(i, b)
                u = kernels.compose(u, rs.simple_reflection_table[i], N)
            j = b.index(1)
            s = kernels.compose(u, rs.simple_reflection_table[j], N)
            perms.append(kernels.compose(s, kernels.inverse(u, N), N))
        rs._cache["reflections"] = perms
    return perms


def reflection(rs: RootSystem, beta) -> WeylElt:
    """The reflection ``s_beta`` for a positive root ``beta``."""
    k = rs.positive_index(beta)
    return WeylElt(rs, _reflection_perms(rs)[k])


def reflection_by_index(rs: RootSystem, k: int) -> WeylElt:
    return WeylElt(rs, _reflection_perms(rs)[k])


def bruhat_leq(x: WeylElt, w: WeylElt) -> bool:
    """Bruhat comparison ``x <= w`` by the lifting recursion."""
    rs = w.rs
    _check_same(rs, x)
    group = rs._cache.get("group")
    if group is not None and group.has_table:
        return group.leq(x, w)
    memo = rs._cache.setdefault("bruhat_memo", {})
    key = (x.perm, w.perm)
    hit = memo.get(key)
    if hit is not None:
        return hit
    trail = []
    while True:
        if x.length > w.length:
            ans = False
            break
        if w.length == 0:
            ans = x.length == 0
            break
        if x.length == w.length:
            ans = x == w
            break
        k = (x.perm, w.perm)
        hit = memo.get(k)
        if hit is not None:
            ans = hit
            break
        trail.append(k)
        i = w.left_descents()[0]
        if i in x.left_descents():
            x = x.left_mul_simple(i)
        w = w.left_mul_simple(i)
    for k in trail:
        memo[k] = ans
    memo[key] = ans
    return ans


# -- materialized groups ----------------------------------------------------------


class WeylGroup:
    """All elements of W in (length, ShortLex) order, with multiplication
    tables and (for groups up to ``BRUHAT_TABLE_MAX``) a dense Bruhat table."""

    def __init__(self, rs, perms, words, lmul, bruhat=None):
        self.rs = rs
        self.size = n = len(perms)
        self.elements = []
        for p, wd in zip(perms, words):
            e = WeylElt(rs, p)
            e._word = tuple(wd)
            e._length = len(wd)
            self.elements.append(e)
        self.index = {p: k for k, p in enumerate(perms)}
        self.lengths = [len(wd) for wd in words]
        self.lmul = lmul
        self._bruhat = bruhat
        if bruhat is None and n <= BRUHAT_TABLE_MAX:
            self._bruhat = kernels.bruhat_matrix(lmul, self.lengths)

    @property
    def has_table(self):
        return self._bruhat is not None

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.elements)

    def position(self, w: WeylElt) -> int:
        return self.index[w.perm]

    def leq_index(self, i: int, j: int) -> bool:
        if self._bruhat is None:
            return bruhat_leq(self.elements[i], self.elements[j])
        return bool(self._bruhat[j * self.size + i])

    def leq(self, x: WeylElt, w: WeylElt) -> bool:
        if self._bruhat is None:
            return bruhat_leq(x, w)
        return bool(self._bruhat[self.index[w.perm] * self.size + self.index[x.perm]])

    def below(self, w: WeylElt):
        """Positions of all x <= w, in group order."""
        if self._bruhat is None:
            return sorted(self.index[p] for p in _down_walk(self.rs, identity(self.rs), w))
        n = self.size
        base = self.index[w.perm] * n
        row = self._bruhat[base : base + n]
        return [i for i in range(n) if row[i]]

    def interval(self, x: WeylElt, w: WeylElt):
        if self._bruhat is None:
            return interval(self.rs, x, w)
        n = self.size
        ix = self.index[x.perm]
        iw = self.index[w.perm]
        M = self._bruhat
        if not M[iw * n + ix]:
            raise NotBelowError(x, w)
        return [
            self.elements[y]
            for y in range(ix, iw + 1)
            if M[y * n + ix] and M[iw * n + y]
        ]

    @property
    def longest(self) -> WeylElt:
        return self.elements[-1]


def _materialize(rs: RootSystem, cap: int):
    gens = list(rs.simple_reflection_table)
    res = kernels.closure(gens, rs.num_positive, cap)
    if res is None:
        raise EnumerationCapError(
            f"|W({rs.cartan_type})| = {rs.cartan_type.weyl_order} exceeds the enumeration cap "
            f"{cap}; pass a larger cap (or --cap) to override"
        )
    perms, lmul = res
    elts = [WeylElt(rs, p) for p in perms]
    order = sorted(range(len(perms)), key=lambda k: (elts[k].length, elts[k].word))
    pos = [0] * len(order)
    for new, old in enumerate(order):
        pos[old] = new
    perms = [perms[k] for k in order]
    words = [elts[k].word for k in order]
    lmul = [[pos[row[k]] for k in order] for row in lmul]
    return perms, words, lmul


def weyl_group(rs: RootSystem, cap: int = DEFAULT_CAP, cache_dir=None) -> WeylGroup:
    """Materialize W, consulting the on-disk cache when ``cache_dir`` is set
    (or ``SCHUBLOCUS_CACHE_DIR`` is in the environment)."""
    group = rs._cache.get("group")
    if group is not None:
        return group
    if rs.cartan_type.weyl_order > cap:
        raise EnumerationCapError(
            f"|W({rs.cartan_type})| = {rs.cartan_type.weyl_order} exceeds the enumeration cap "
            f"{cap}; pass a larger cap (or --cap) to override"
        )
    from . import cache

    data = cache.load(rs.cartan_type, cache_dir)
    if data is not None:
        group = WeylGroup(rs, data["perms"], data["words"], data["lmul"], data.get("bruhat"))
    else:
        perms, words, lmul = _materialize(rs, cap)
        group = WeylGroup(rs, perms, words, lmul)
        cache.store(
            rs.cartan_type,
            {"perms": perms, "words": words, "lmul": lmul, "bruhat": group._bruhat},
            cache_dir,
        )
    rs._cache["group"] = group
    return group


def enumerate_group(rs: RootSystem, cap: int = DEFAULT_CAP, cache_dir=None) -> list:
    """All elements ordered by (length, ShortLex word)."""
    return list(weyl_group(rs, cap, cache_dir).elements)


def interval(rs: RootSystem, x: WeylElt, w: WeylElt) -> list:
    """The closed Bruhat interval [x, w] in (length, ShortLex) order."""
    _check_same(rs, x, w)
    group = rs._cache.get("group")
    if group is None and rs.cartan_type.weyl_order <= BRUHAT_TABLE_MAX:
        group = weyl_group(rs)
    if group is not None and group.has_table:
        return group.interval(x, w)
    if not bruhat_leq(x, w):
        raise NotBelowError(x, w)
    seen = _down_walk(rs, x, w)
    return sorted(seen.values(), key=lambda y: (y.length, y.word))


def _down_walk(rs, x, w) -> dict:
    """``{perm: y}`` for ``x <= y <= w``, found by walking down from ``w``
    through ``s_beta * y < y``; assumes ``x <= w``."""
    seen = {w.perm: w}
    todo = [w]
    refl = [WeylElt(rs, p) for p in _reflection_perms(rs)]
    while todo:
        y = todo.pop()
        for r in refl:
            z = r * y
            if z.length < y.length and z.perm not in seen and bruhat_leq(x, z):
                seen[z.perm] = z
                todo.append(z)
    return seen
