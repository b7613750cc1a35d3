"""Finitely supported integer linear combinations keyed by hashable basis labels."""

from collections import defaultdict


def collect(pairs):
    """Sum (key, coeff) pairs into a dict, dropping zero coefficients."""
    acc = defaultdict(int)
    for key, c in pairs:
        acc[key] += c
    return {k: c for k, c in acc.items() if c}


class LinComb:
    """Base class for the polynomial-like types.

    Values are treated as immutable; every operation returns a new object of
    the same subclass.  Subclasses supply ``degree_of(key)`` and, where a
    product exists, ``__mul__``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = collect(terms)
        self.terms = {k: int(c) for k, c in terms.items() if c}

    @classmethod
    def _new(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def from_pairs(cls, pairs):
        return cls._new(collect(pairs))

    @classmethod
    def basis(cls, key, coeff=1):
        return cls._new({key: coeff} if coeff else {})

    @classmethod
    def zero(cls):
        return cls._new({})

    def coeff(self, key):
        return self.terms.get(key, 0)

    def items(self):
        return self.terms.items()

    def keys(self):
        return self.terms.keys()

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return type(self).from_pairs([*self.terms.items(), *other.terms.items()])

    __radd__ = __add__

    def __neg__(self):
        return type(self)._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n):
        if not n:
            return type(self).zero()
        return type(self)._new({k: n * c for k, c in self.terms.items()})

    def __rmul__(self, n):
        if isinstance(n, int):
            return self.scale(n)
        return NotImplemented

    def map_keys(self, fn, target=None):
        """Linear extension of ``fn: key -> LinComb``; the result has type ``target``."""
        target = target or type(self)
        pairs = []
        for k, c in self.terms.items():
            pairs.extend((k2, c * c2) for k2, c2 in fn(k).terms.items())
        return target.from_pairs(pairs)

    def degrees(self):
        return {self.degree_of(k) for k in self.terms}

    def homogeneous_parts(self):
        parts = defaultdict(dict)
        for k, c in self.terms.items():
            parts[self.degree_of(k)][k] = c
        return {d: type(self)._new(t) for d, t in sorted(parts.items())}

    def degree_of(self, key):
        raise NotImplementedError

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kc: self.sort_key(kc[0]))

    def sort_key(self, key):
        return (self.degree_of(key), len(key), key)

    def __repr__(self):
        return f"{type(self).__name__}({self})"
