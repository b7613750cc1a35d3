"""Dyadic rationals and dyadic piecewise-linear homeomorphisms [0, n] -> [0, m]."""

import re
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering


class DyadicError(ValueError):
    pass


class PLMapError(ValueError):
    pass


def _log2_exact(q):
    """Exponent k with q == 2**k, or None if q is not a power of two."""
    q = Fraction(q)
    if q <= 0:
        return None
    num, den = q.numerator, q.denominator
    if num & (num - 1) or den & (den - 1):
        return None
    return num.bit_length() - den.bit_length()


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """``num / 2**exp`` in canonical form (``num`` odd, or ``exp == 0``)."""

    num: int
    exp: int = 0

    def __post_init__(self):
        if self.exp < 0:
            raise DyadicError("negative exponent")
        num, exp = self.num, self.exp
        if num == 0:
            exp = 0
        while exp and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Dyadic):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        q = Fraction(x)
        e = _log2_exact(q.denominator)
        if e is None:
            raise DyadicError(f"{q} is not a dyadic rational")
        return cls(q.numerator, e)

    _TEXT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(?:2\s*\^\s*(\d+)|(\d+)))?\s*$")

    @classmethod
    def parse(cls, text):
        """Accepts ``a/2^k`` as well as ``a/b`` (b a power of 2) and plain integers."""
        m = cls._TEXT.match(text)
        if not m:
            raise DyadicError(f"cannot parse dyadic {text!r}")
        num, k, den = m.groups()
        if k is not None:
            return cls(int(num), int(k))
        if den is not None:
            return cls.coerce(Fraction(int(num), int(den)))
        return cls(int(num))

    def to_fraction(self):
        return Fraction(self.num, 1 << self.exp)

    def __str__(self):
        return f"{self.num}/2^{self.exp}"

    def _align(self, other):
        other = Dyadic.coerce(other)
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp), e

    def __add__(self, other):
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, e = self._align(other)
        return Dyadic(a - b, e)

    def __rsub__(self, other):
        return Dyadic.coerce(other) - self

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __mul__(self, other):
        other = Dyadic.coerce(other)
        return Dyadic(self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ``2**k`` (k may be negative)."""
        if k >= 0:
            if k >= self.exp:
                return Dyadic(self.num << (k - self.exp), 0)
            return Dyadic(self.num, self.exp - k)
        return Dyadic(self.num, self.exp - k)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __lt__(self, other):
        a, b, _ = self._align(other)
        return a < b


ZERO, ONE = Dyadic(0), Dyadic(1)


@dataclass(frozen=True)
class PLMap:
    """Breakpoints ``((x0, y0), ..., (xk, yk))`` of a dyadic PL homeomorphism.

    Always built through :func:`plmap_make`, which validates and removes
    redundant breakpoints, so equal maps have equal breakpoint tuples.
    """

    breakpoints: tuple
    n: int
    m: int

    @cached_property
    def slopes(self):
        """log2 of the slope on each segment."""
        out = []
        for (x0, y0), (x1, y1) in zip(self.breakpoints, self.breakpoints[1:]):
            out.append(_log2_exact((y1 - y0).to_fraction() / (x1 - x0).to_fraction()))
        return out

    def __call__(self, t):
        return plmap_eval(self, t)

    def to_json(self):
        return {
            "n": self.n,
            "m": self.m,
            "breakpoints": [[str(x), str(y)] for x, y in self.breakpoints],
        }

    @classmethod
    def from_json(cls, data):
        return plmap_make([(Dyadic.parse(x), Dyadic.parse(y)) for x, y in data["breakpoints"]],
                          data["n"], data["m"])


def plmap_make(points, n, m):
    """Validate a breakpoint list and return the canonical :class:`PLMap`."""
    if n < 1 or m < 1:
        raise PLMapError("interval ends must be positive integers")
    pts = [(Dyadic.coerce(x), Dyadic.coerce(y)) for x, y in points]
    if len(pts) < 2:
        raise PLMapError("need at least two breakpoints")
    if pts[0] != (ZERO, ZERO) or pts[-1] != (Dyadic(n), Dyadic(m)):
        raise PLMapError(f"map must run from (0,0) to ({n},{m})")
    slopes = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not (x1 > x0 and y1 > y0):
            raise PLMapError("breakpoints must be strictly increasing in both coordinates")
        k = _log2_exact((y1 - y0).to_fraction() / (x1 - x0).to_fraction())
        if k is None:
            raise PLMapError(f"slope on [{x0}, {x1}] is not a power of 2")
        slopes.append(k)
    keep = [pts[0]]
    for i in range(1, len(pts) - 1):
        if slopes[i - 1] != slopes[i]:
            keep.append(pts[i])
    keep.append(pts[-1])
    return PLMap(tuple(keep), n, m)


def identity_map(n=1):
    return plmap_make([(0, 0), (n, n)], n, n)


def plmap_eval(f, t):
    t = Dyadic.coerce(t)
    if t < ZERO or t > Dyadic(f.n):
        raise PLMapError(f"{t} lies outside [0, {f.n}]")
    xs = [x for x, _ in f.breakpoints]
    i = min(bisect_right(xs, t), len(xs) - 1) - 1
    x0, y0 = f.breakpoints[i]
    return y0 + (t - x0).shift(f.slopes[i])


def plmap_invert(f):
    return plmap_make([(y, x) for x, y in f.breakpoints], f.m, f.n)


def plmap_compose(f, g):
    """The map ``t -> f(g(t))``."""
    if g.m != f.n:
        raise PLMapError(f"cannot compose: g lands in [0,{g.m}], f starts from [0,{f.n}]")
    ginv = plmap_invert(g)
    xs = {x for x, _ in g.breakpoints}
    xs.update(plmap_eval(ginv, x) for x, _ in f.breakpoints)
    return plmap_make([(x, plmap_eval(f, plmap_eval(g, x))) for x in sorted(xs)], g.n, f.m)


def plmap_slopes(f):
    """``(log2 f'(0), log2 f'(end))``."""
    s = f.slopes
    return s[0], s[-1]
