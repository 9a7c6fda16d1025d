"""Exact polynomials in the simple roots and root-denominator fractions.

``Poly`` is a sparse polynomial in ``a1 .. al`` with exact rational
coefficients (``int`` where integral, otherwise ``Fraction``).  A
``RootFraction`` is ``num / prod(den)`` with ``den`` a multiset of positive
roots, kept reduced: no denominator root divides the numerator.  Because
distinct positive roots are non-associate primes of the polynomial ring, the
reduced form is canonical.
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .errors import DegreeOverflowError, DenominatorZeroError, ParseError, RootError

BITS = 8
MASK = (1 << BITS) - 1
MAX_DEGREE = MASK


@lru_cache(maxsize=None)
def _layout(rank):
    shifts = tuple(BITS * (rank - 1 - j) for j in range(rank))
    D = 1 << (BITS * rank)
    return shifts, D


def _key(rank, exps):
    shifts, D = _layout(rank)
    k = sum(exps) * D
    for e, sh in zip(exps, shifts):
        if e < 0 or e > MASK:
            raise DegreeOverflowError(f"exponent {e} outside 0..{MASK}")
        k += e << sh
    return k


def _exps(rank, key):
    shifts, _ = _layout(rank)
    return tuple((key >> sh) & MASK for sh in shifts)


def _fmt_coeff(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _as_coeff(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class Poly:
    """Immutable sparse polynomial over Q in the simple-root variables."""

    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, rank):
        return cls(rank, {})

    @classmethod
    def constant(cls, rank, c):
        c = _as_coeff(c)
        return cls(rank, {0: c} if c else {})

    @classmethod
    def one(cls, rank):
        return cls(rank, {0: 1})

    @classmethod
    def var(cls, rank, i):
        """The variable ``a_i`` (1-based)."""
        exps = [0] * rank
        exps[i - 1] = 1
        return cls(rank, {_key(rank, exps): 1})

    @classmethod
    def from_dict(cls, rank, data):
        """Build from ``{exponent tuple: coefficient}``."""
        terms = {}
        for exps, c in data.items():
            if len(exps) != rank:
                raise ValueError(f"exponent vector {exps} does not have length {rank}")
            c = _as_coeff(c)
            if c:
                k = _key(rank, exps)
                s = terms.get(k, 0) + c
                if s:
                    terms[k] = _as_coeff(s)
                else:
                    del terms[k]
        return cls(rank, terms)

    @classmethod
    def parse(cls, text: str, rank: int) -> Poly:
        """Inverse of ``str``; accepts the canonical form and mild variations."""
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        parts = re.findall(r"[+-][^+-]*", s)
        if "".join(parts) != s:
            raise ParseError(f"malformed polynomial {text!r}")
        out = {}
        for part in parts:
            sign, body = part[0], part[1:]
            if not body:
                raise ParseError(f"malformed polynomial {text!r}")
            coeff = Fraction(1)
            exps = [0] * rank
            for fac in body.split("*"):
                m = re.fullmatch(r"a(\d+)(?:\^(\d+))?", fac)
                if m:
                    i = int(m.group(1))
                    if not 1 <= i <= rank:
                        raise ParseError(f"variable a{i} out of range for rank {rank}")
                    exps[i - 1] += int(m.group(2) or 1)
                elif re.fullmatch(r"\d+(/\d+)?", fac):
                    coeff *= Fraction(fac)
                else:
                    raise ParseError(f"bad factor {fac!r} in {text!r}")
            if sign == "-":
                coeff = -coeff
            t = tuple(exps)
            out[t] = out.get(t, 0) + coeff
        return cls.from_dict(rank, out)

    # -- inspection -----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self):
        return self.terms.get(0, 0)

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.terms) >> (BITS * self.rank)

    def is_homogeneous(self):
        sh = BITS * self.rank
        return len({k >> sh for k in self.terms}) <= 1

    def has_integer_coefficients(self):
        return all(type(c) is int for c in self.terms.values())

    def items(self):
        """``(exponents, coefficient)`` pairs in descending graded-lex order."""
        return [(_exps(self.rank, k), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.rank == other.rank and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.rank != self.rank:
                raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.rank, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly(self.rank, kernels.poly_add(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly(self.rank, kernels.poly_add(self.terms, o.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly(self.rank, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = _as_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        if not c:
            return Poly(self.rank, {})
        return Poly(self.rank, {k: _as_coeff(v * c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return Poly(self.rank, {})
        if self.degree + o.degree > MAX_DEGREE:
            raise DegreeOverflowError(f"product degree exceeds {MAX_DEGREE}")
        return Poly(self.rank, kernels.poly_mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.one(self.rank)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def divmod_linear(self, beta):
        """``(q, r)`` with ``self = lf(beta)*q + r`` and ``r`` free of the
        leading variable of ``beta``."""
        sh_v, vkey, bv, rest = _divinfo(self.rank, tuple(beta))
        q, r = kernels.poly_divmod_linear(self.terms, sh_v, vkey, bv, rest, MASK)
        return Poly(self.rank, q), Poly(self.rank, r)

    def divide_by_linear(self, beta):
        """Exact quotient by the linear form of ``beta``, or ``None``."""
        sh_v, vkey, bv, rest = _divinfo(self.rank, tuple(beta))
        q, r = kernels.poly_divmod_linear(self.terms, sh_v, vkey, bv, rest, MASK)
        if r:
            return None
        return Poly(self.rank, q)

    def reflect(self, rs, i: int) -> Poly:
        """Image under the simple reflection ``s_i`` (1-based)."""
        if not self.terms:
            return self
        sh_i, nbrs = _reflinfo(rs, i - 1)
        return Poly(self.rank, kernels.poly_reflect(self.terms, sh_i, nbrs, MASK))

    def act(self, w) -> Poly:
        p = self
        for i in reversed(w.word):
            p = p.reflect(w.rs, i)
        return p

    def evaluate(self, point):
        point = [Fraction(v) for v in point]
        if len(point) != self.rank:
            raise ValueError(f"point must have {self.rank} coordinates")
        total = Fraction(0)
        for exps, c in self.items():
            t = Fraction(c)
            for v, e in zip(point, exps):
                if e:
                    t *= v**e
            total += t
        return _as_coeff(total)

    # -- text -------------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for exps, c in self.items():
            mono = "*".join(
                f"a{j + 1}" if e == 1 else f"a{j + 1}^{e}" for j, e in enumerate(exps) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(a)}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"


@lru_cache(maxsize=4096)
def _divinfo(rank, beta):
    if len(beta) != rank:
        raise RootError(f"{beta} has wrong length for rank {rank}")
    shifts, D = _layout(rank)
    nz = [j for j, b in enumerate(beta) if b]
    if not nz:
        raise ZeroDivisionError("division by the zero linear form")
    v = nz[0]
    rest = [(D + (1 << shifts[j]), beta[j]) for j in nz[1:]]
    return shifts[v], D + (1 << shifts[v]), beta[v], rest


def _reflinfo(rs, i0):
    info = rs._cache.get("reflinfo")
    if info is None:
        shifts, _ = _layout(rs.rank)
        info = []
        for i in range(rs.rank):
            nbrs = [
                (shifts[j], -rs.cartan[i][j])
                for j in range(rs.rank)
                if j != i and rs.cartan[i][j]
            ]
            info.append((shifts[i], nbrs))
        rs._cache["reflinfo"] = info
    return info[i0]


# -- module-level operations ---------------------------------------------------


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_scale(c, p: Poly) -> Poly:
    return p.scale(c)


def linear_form(rs_or_rank, beta) -> Poly:
    """The degree-one polynomial ``sum(beta_j * a_j)``."""
    rank = rs_or_rank if isinstance(rs_or_rank, int) else rs_or_rank.rank
    beta = tuple(beta)
    if len(beta) != rank:
        raise RootError(f"{beta} has wrong length for rank {rank}")
    shifts, D = _layout(rank)
    return Poly(rank, {D + (1 << shifts[j]): b for j, b in enumerate(beta) if b})


def _lform(rs, k):
    """Linear form of the root with signed index ``k`` (cached per root system)."""
    forms = rs._cache.get("lforms")
    if forms is None:
        forms = rs._cache["lforms"] = [linear_form(rs, r) for r in rs.roots]
    return forms[k]


def divide_by_linear(p: Poly, beta):
    return p.divide_by_linear(beta)


def weyl_act_poly(w, p: Poly) -> Poly:
    return p.act(w)


# -- fractions -------------------------------------------------------------------


class RootFraction:
    """``num / prod(den)`` with ``den`` a sorted tuple of positive-root indices."""

    __slots__ = ("rs", "num", "den", "_hash")

    def __init__(self, rs, num: Poly, den: tuple = ()):
        self.rs = rs
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def make(cls, rs, num: Poly, den=()):
        """Build and reduce; ``den`` may contain signed root indices."""
        N = rs.num_positive
        cnt = Counter()
        for k in den:
            if k >= N:
                num = -num
                k -= N
            cnt[k] += 1
        return _reduced(rs, num, cnt, list(cnt))

    @classmethod
    def zero(cls, rs):
        return cls(rs, Poly(rs.rank, {}), ())

    @classmethod
    def one(cls, rs):
        return cls(rs, Poly.one(rs.rank), ())

    @classmethod
    def from_poly(cls, rs, p: Poly):
        return cls(rs, p, ())

    @classmethod
    def inverse_of_roots(cls, rs, roots):
        """``prod(1/beta)`` over the given roots (any signs)."""
        return cls.make(rs, Poly.one(rs.rank), [rs.root_index(b) for b in roots])

    @classmethod
    def parse(cls, rs, text: str) -> RootFraction:
        """Inverse of ``str``: ``"num / (r1 * r2 ...)"`` or a bare polynomial."""
        s = text.strip()
        num_s, sep, den_s = s.rpartition(" / ")
        if not sep:
            return cls(rs, Poly.parse(s, rs.rank), ())
        num_s, den_s = num_s.strip(), den_s.strip()
        if not (den_s.startswith("(") and den_s.endswith(")")):
            raise ParseError(f"malformed denominator in {text!r}")
        if num_s.startswith("(") and num_s.endswith(")"):
            num_s = num_s[1:-1]
        den = []
        for fac in _split_top(den_s[1:-1]):
            fac = fac.strip()
            if fac.startswith("(") and fac.endswith(")"):
                fac = fac[1:-1]
            p = Poly.parse(fac, rs.rank)
            if p.degree != 1 or not p.is_homogeneous():
                raise ParseError(f"denominator factor {fac!r} is not linear")
            vec = [0] * rs.rank
            for exps, c in p.items():
                if c != int(c):
                    raise ParseError(f"denominator factor {fac!r} is not a root")
                vec[exps.index(1)] = int(c)
            k = rs.index.get(tuple(vec))
            if k is None:
                raise ParseError(f"denominator factor {fac!r} is not a root")
            den.append(k)
        return cls.make(rs, Poly.parse(num_s, rs.rank), den)

    # -- inspection ----------------------------------------------------------
    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self):
        return not self.den

    @property
    def degree(self) -> int:
        """``deg(num) - |den|`` (meaningful for homogeneous numerators)."""
        return self.num.degree - len(self.den)

    def is_homogeneous(self):
        return self.num.is_homogeneous()

    def den_roots(self):
        return [self.rs.roots[k] for k in self.den]

    def __eq__(self, other):
        if isinstance(other, RootFraction):
            return self.rs is other.rs and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction, Poly)):
            return not self.den and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- arithmetic -------------------------------------------------------------
    def __neg__(self):
        return RootFraction(self.rs, -self.num, self.den)

    def _coerce(self, other):
        if isinstance(other, RootFraction):
            if other.rs is not self.rs:
                raise ValueError("fractions over different root systems")
            return other
        if isinstance(other, Poly):
            return RootFraction(self.rs, other, ())
        if isinstance(other, (int, Fraction)):
            return RootFraction(self.rs, Poly.constant(self.rs.rank, other), ())
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return frac_add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return frac_add(self, -o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return frac_mul(self, o)

    __rmul__ = __mul__

    def divide_by_root_index(self, k: int) -> RootFraction:
        """Divide by the root with signed index ``k``."""
        if not self.num.terms:
            return self
        rs = self.rs
        N = rs.num_positive
        num = self.num
        if k >= N:
            num = -num
            k -= N
        cnt = Counter(self.den)
        cnt[k] += 1
        return _reduced(rs, num, cnt, [k])

    def multiply_root_index(self, k: int) -> RootFraction:
        """Multiply by the root with signed index ``k``."""
        if not self.num.terms:
            return self
        rs = self.rs
        N = rs.num_positive
        num = self.num
        if k >= N:
            num = -num
            k -= N
        if k in self.den:
            den = list(self.den)
            den.remove(k)
            return RootFraction(rs, num, tuple(den))
        return RootFraction(rs, num * _lform(rs, k), self.den)

    def act_simple(self, i: int) -> RootFraction:
        """Image under ``s_i`` (1-based)."""
        rs = self.rs
        if not self.num.terms:
            return self
        N = rs.num_positive
        table = rs.simple_reflection_table[i - 1]
        num = self.num.reflect(rs, i)
        den = []
        for k in self.den:
            j = table[k]
            if j >= N:
                num = -num
                j -= N
            den.append(j)
        den.sort()
        return RootFraction(rs, num, tuple(den))

    def act(self, w) -> RootFraction:
        return frac_weyl_act(w, self)

    def evaluate(self, point):
        return frac_eval(self, point)

    def to_poly(self) -> Poly:
        if self.den:
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    # -- text -------------------------------------------------------------------
    def __str__(self):
        if not self.den:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        fmt = []
        for k in self.den:
            r = str(_lform(self.rs, k)).replace(" ", "")
            fmt.append(f"({r})" if len(_lform(self.rs, k).terms) > 1 else r)
        return f"{num} / ({' * '.join(fmt)})"

    def __repr__(self):
        return f"RootFraction({str(self)!r})"


def _split_top(s):
    """Split on ``*`` outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _reduced(rs, num: Poly, cnt: Counter, check) -> RootFraction:
    if not num.terms:
        return RootFraction(rs, num, ())
    roots = rs.positive_roots
    for k in check:
        m = cnt[k]
        while m:
            q = num.divide_by_linear(roots[k])
            if q is None:
                break
            num = q
            m -= 1
        cnt[k] = m
    den = tuple(sorted(cnt.elements()))
    return RootFraction(rs, num, den)


def frac_add(f: RootFraction, g: RootFraction) -> RootFraction:
    if not f.num.terms:
        return g
    if not g.num.terms:
        return f
    rs = f.rs
    if f.den == g.den:
        return _reduced(rs, f.num + g.num, Counter(f.den), set(f.den))
    a, b = Counter(f.den), Counter(g.den)
    lcm = a | b
    na, nb = f.num, g.num
    for k, m in (lcm - a).items():
        for _ in range(m):
            na = na * _lform(rs, k)
    for k, m in (lcm - b).items():
        for _ in range(m):
            nb = nb * _lform(rs, k)
    return _reduced(rs, na + nb, lcm, list(lcm))


def frac_mul(f: RootFraction, g: RootFraction) -> RootFraction:
    rs = f.rs
    if not f.num.terms or not g.num.terms:
        return RootFraction.zero(rs)
    if not g.den and g.num.is_constant():
        return RootFraction(rs, f.num * g.num.constant_term(), f.den)
    if not f.den and f.num.is_constant():
        return RootFraction(rs, g.num * f.num.constant_term(), g.den)
    cnt = Counter(f.den) + Counter(g.den)
    return _reduced(rs, f.num * g.num, cnt, list(cnt))


def frac_weyl_act(w, f: RootFraction) -> RootFraction:
    """``w(f)``; images of denominator roots landing in the negative roots
    are replaced by their positive counterparts with the sign moved into the
    numerator."""
    rs = f.rs
    if not f.num.terms:
        return f
    N = rs.num_positive
    num = f.num.act(w)
    den = []
    for k in f.den:
        j = w.perm[k]
        if j >= N:
            num = -num
            j -= N
        den.append(j)
    den.sort()
    return RootFraction(rs, num, tuple(den))


def frac_eval(f: RootFraction, point):
    """Value of ``f`` at ``a_i = point[i]``."""
    point = [Fraction(v) for v in point]
    den = Fraction(1)
    for k in f.den:
        v = _lform(f.rs, k).evaluate(point)
        if v == 0:
            raise DenominatorZeroError(f.rs.roots[k])
        den *= v
    return _as_coeff(Fraction(f.num.evaluate(point)) / den)
