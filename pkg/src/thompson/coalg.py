"""Diagonal, coproduct on homology, and the cup product ring.

Chain level: the cubical diagonal on ``Z<v, e>``, with ``D(v) = v (x) v`` and
``D(e) = v (x) e + e (x) v^2``, extended multiplicatively with Koszul signs.

Homology level: classes are combinations of ``eps`` and the alternating
words in ``alpha``, ``beta``.  Basis keys are strings: ``""`` is ``eps`` and
e.g. ``"aba"`` is ``alpha beta alpha``.  Cohomology classes carry coordinates
against the dual of the basis ``[A_n, B_n]`` (``[eps]`` in degree 0), where
``A_n`` starts with alpha and ``B_n`` with beta.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb

from . import intlin
from ._lincomb import LinComb, collect
from .ncdga import (
    NCPoly,
    NotACycleError,
    V,
    Z,
    boundary,
    boundary_m,
    contraction,
    format_terms,
    projection,
    rewrite_to_ewz,
    MPoly,
)
from .forest import format_word


def _sign(k):
    return -1 if k & 1 else 1


# -- chain level -------------------------------------------------------------

class TensorPoly(LinComb):
    """Combination of ``x (x) y`` with ``x, y`` words in ``v, e``; keys are pairs."""

    __slots__ = ()

    def degree_of(self, key):
        return key[0].count("e") + key[1].count("e")

    @staticmethod
    def bidegree(key):
        return key[0].count("e"), key[1].count("e")

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        pairs = []
        for (x, y), c in self.terms.items():
            dy = y.count("e")
            for (x2, y2), c2 in other.terms.items():
                pairs.append(((x + x2, y + y2), _sign(dy * x2.count("e")) * c * c2))
        return TensorPoly.from_pairs(pairs)

    @classmethod
    def tensor(cls, p, q):
        return cls.from_pairs(((x, y), a * b) for x, a in p.items() for y, b in q.items())

    def sort_key(self, key):
        return (self.bidegree(key), key)

    def __str__(self):
        def fmt(key):
            x, y = key
            return f"{format_word(x) or '1'}⊗{format_word(y) or '1'}"
        return format_terms(self.sorted_items(), fmt=fmt)


@lru_cache(maxsize=None)
def _diagonal_word(u):
    es = [i for i, ch in enumerate(u) if ch == "e"]
    pairs = []
    for sides in product("LR", repeat=len(es)):
        side = dict(zip(es, sides))
        left = "".join("v" if side.get(i) == "R" else ch for i, ch in enumerate(u))
        right = "".join("vv" if side.get(i) == "L" else ch for i, ch in enumerate(u))
        crossings = sum(1 for a in range(len(sides)) for b in range(a + 1, len(sides))
                        if sides[a] == "R" and sides[b] == "L")
        pairs.append(((left, right), _sign(crossings)))
    return tuple(collect(pairs).items())


def serre_diagonal(p):
    """Cubical diagonal: each ``e`` goes wholly to the left or to the right factor.

    An ``e`` sent right leaves ``v`` behind on the left; one sent left leaves
    ``v^2`` on the right.  The sign counts pairs (right-sent e, later
    left-sent e).
    """
    return TensorPoly.from_pairs(
        (k, c * c2) for u, c in p.items() for k, c2 in _diagonal_word(u)
    )


def tensor_boundary(t):
    """``d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy``."""
    pairs = []
    for (x, y), c in t.items():
        for x2, c2 in boundary(NCPoly.word(x)).items():
            pairs.append(((x2, y), c * c2))
        s = _sign(x.count("e"))
        for y2, c2 in boundary(NCPoly.word(y)).items():
            pairs.append(((x, y2), s * c * c2))
    return TensorPoly.from_pairs(pairs)


def diagonal_left(t):
    """``(D (x) id)`` on a tensor: triples ``(x1, x2, y)``."""
    return collect(((a, b, y), c * c2) for (x, y), c in t.items() for (a, b), c2 in _diagonal_word(x))


def diagonal_right(t):
    """``(id (x) D)`` on a tensor: triples ``(x, y1, y2)``."""
    return collect(((x, a, b), c * c2) for (x, y), c in t.items() for (a, b), c2 in _diagonal_word(y))


# Tensor products of e, w, z chains, for the contraction on R (x) R.

class MTensor(LinComb):
    """Combination of pairs of :class:`MPoly` keys."""

    __slots__ = ()

    def degree_of(self, key):
        return _mdeg(key[0]) + _mdeg(key[1])


def _mdeg(key):
    return key.count("e") + key.count("z")


def tensor_rewrite(t):
    pairs = []
    for (x, y), c in t.items():
        rx = rewrite_to_ewz(NCPoly.word(x))
        ry = rewrite_to_ewz(NCPoly.word(y))
        pairs.extend(((a, b), c * ca * cb) for a, ca in rx.items() for b, cb in ry.items())
    return MTensor.from_pairs(pairs)


def m_tensor_boundary(t):
    pairs = []
    for (x, y), c in t.items():
        pairs.extend(((a, y), c * ca) for a, ca in boundary_m(MPoly.basis(x)).items())
        s = _sign(_mdeg(x))
        pairs.extend(((x, b), s * c * cb) for b, cb in boundary_m(MPoly.basis(y)).items())
    return MTensor.from_pairs(pairs)


def m_tensor_contraction(t):
    """``H = h (x) id + (pi (x) h)`` with the Koszul sign ``(-1)^{|x|}`` on the second term."""
    pairs = []
    for (x, y), c in t.items():
        pairs.extend(((a, y), c * ca) for a, ca in contraction(MPoly.basis(x)).items())
        px = projection(MPoly.basis(x))
        if px:
            s = _sign(_mdeg(x))
            pairs.extend(((x, b), s * c * cb) for b, cb in contraction(MPoly.basis(y)).items())
    return MTensor.from_pairs(pairs)


def m_tensor_projection(t):
    return MTensor({k: c for k, c in t.items()
                    if projection(MPoly.basis(k[0])) and projection(MPoly.basis(k[1]))})


@lru_cache(maxsize=None)
def _word_class_coords(x):
    return tuple(projection(rewrite_to_ewz(NCPoly.word(x))).items())


def tensor_class_of(t):
    """Coordinates of the class of a cycle in ``H(R) (x) H(R)``.

    Returns ``{(p, q): 2x2 matrix}``; row/column 0 is ``zeta^p`` (``[1]`` for
    p = 0) and 1 is ``zeta^p eps`` (``eps``).
    """
    if tensor_boundary(t):
        raise NotACycleError("not a cycle")
    out = {}
    for (x, y), c in t.items():
        for kx, cx in _word_class_coords(x):
            for ky, cy in _word_class_coords(y):
                p, q = _mdeg(kx), _mdeg(ky)
                m = out.setdefault((p, q), [[0, 0], [0, 0]])
                m[int(kx.endswith("v"))][int(ky.endswith("v"))] += c * cx * cy
    return {pq: m for pq, m in sorted(out.items()) if any(any(r) for r in m)}


# -- homology classes --------------------------------------------------------

def alt(start, n):
    """Alternating word of length n beginning with ``start`` ('a' or 'b')."""
    other = "b" if start == "a" else "a"
    return "".join(start if i % 2 == 0 else other for i in range(n))


def hbasis(n):
    return [""] if n == 0 else [alt("a", n), alt("b", n)]


def hname(key):
    return "".join({"a": "α", "b": "β"}[ch] for ch in key) or "ε"


def _mul_basis(x, y):
    if not x and not y:
        return ""
    if not x:
        return y if y[0] == "b" else None
    if not y:
        return x if x[-1] == "a" else None
    return x + y if x[-1] != y[0] else None


class HClass(LinComb):
    """Element of ``H_*(F)`` on the basis ``eps, A_n, B_n``."""

    __slots__ = ()

    def degree_of(self, key):
        return len(key)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        pairs = []
        for x, c in self.terms.items():
            for y, c2 in other.terms.items():
                xy = _mul_basis(x, y)
                if xy is not None:
                    pairs.append((xy, c * c2))
        return HClass.from_pairs(pairs)

    def __pow__(self, n):
        if n < 1:
            raise ValueError("the homology ring has no unit")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def __str__(self):
        return format_terms(self.sorted_items(), fmt=hname)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kc: (len(kc[0]), kc[0]))


EPS = HClass.basis("")
ALPHA = HClass.basis("a")
BETA = HClass.basis("b")
T = BETA * ALPHA


def hclass_mul(x, y):
    return x * y


class HTensor(LinComb):
    """Element of ``H (x) H``; products carry the Koszul sign."""

    __slots__ = ()

    def degree_of(self, key):
        return len(key[0]) + len(key[1])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        pairs = []
        for (x, y), c in self.terms.items():
            for (x2, y2), c2 in other.terms.items():
                a, b = _mul_basis(x, x2), _mul_basis(y, y2)
                if a is not None and b is not None:
                    pairs.append(((a, b), _sign(len(y) * len(x2)) * c * c2))
        return HTensor.from_pairs(pairs)

    @classmethod
    def tensor(cls, p, q):
        return cls.from_pairs(((x, y), a * b) for x, a in p.items() for y, b in q.items())

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kc: (len(kc[0][0]), kc[0]))
        return format_terms(items, fmt=lambda k: f"{hname(k[0])}⊗{hname(k[1])}")


_LETTER_COPRODUCT = {
    "a": HTensor.from_pairs([(("a", ""), 1), (("", "a"), 1)]),
    "b": HTensor.from_pairs([(("b", ""), 1), (("", "b"), 1)]),
}


@lru_cache(maxsize=None)
def _coproduct_key(key):
    if not key:
        return HTensor.basis(("", ""))
    out = _LETTER_COPRODUCT[key[0]]
    for ch in key[1:]:
        out = out * _LETTER_COPRODUCT[ch]
    return out


def hclass_coproduct(x):
    """``D(eps) = eps (x) eps``, alpha and beta primitive, extended multiplicatively."""
    return x.map_keys(_coproduct_key, HTensor)


# -- chain/homology dictionary -----------------------------------------------

_REP = {"a": Z * V, "b": Z - Z * V}


def representative(x):
    """A cycle in ``Z<v, e>`` representing the class ``x``."""
    pairs = []
    for key, c in x.items():
        if not key:
            rep = V
        else:
            rep = _REP[key[0]]
            for ch in key[1:]:
                rep = rep * _REP[ch]
        pairs.extend((w, c * c2) for w, c2 in rep.items())
    return NCPoly.from_pairs(pairs)


def hclass_from_chain_coords(p, idx):
    """The class of the chain basis element (``zeta^p``, ``zeta^p eps``)[idx]."""
    if p == 0:
        if idx == 0:
            raise ValueError("[1] is not a class of the non-unital ring")
        return EPS
    a, b = HClass.basis(alt("a", p)), HClass.basis(alt("b", p))
    if idx == 0:
        return a + b
    return a if p % 2 == 1 else b


def hclass_from_chain(cls):
    out = HClass.zero()
    for idx, c in enumerate((cls.first, cls.second)):
        if c:
            out = out + hclass_from_chain_coords(cls.degree, idx).scale(c)
    return out


def htensor_from_tensor_class(coords):
    out = HTensor.zero()
    for (p, q), m in coords.items():
        for i in range(2):
            for j in range(2):
                if m[i][j]:
                    out = out + HTensor.tensor(hclass_from_chain_coords(p, i),
                                               hclass_from_chain_coords(q, j)).scale(m[i][j])
    return out


def chain_coproduct(x):
    """Coproduct of ``x`` computed through the chain-level diagonal."""
    return htensor_from_tensor_class(tensor_class_of(serre_diagonal(representative(x))))


# -- cohomology --------------------------------------------------------------

@dataclass(frozen=True)
class CohomClass:
    degree: int
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != len(hbasis(self.degree)):
            raise ValueError(f"degree {self.degree} needs {len(hbasis(self.degree))} coordinates")

    def __call__(self, x):
        """Evaluate on a homology class (only its degree-matching part counts)."""
        return sum(c * x.coeff(k) for k, c in zip(hbasis(self.degree), self.coords))

    def __add__(self, other):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return CohomClass(self.degree, [a + b for a, b in zip(self.coords, other.coords)])

    def scale(self, n):
        return CohomClass(self.degree, [n * c for c in self.coords])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return any(self.coords)

    def __str__(self):
        return format_terms([(k, c) for k, c in zip(hbasis(self.degree), self.coords) if c],
                            fmt=lambda k: hname(k) + "*") if self else "0"

    def __or__(self, other):
        return cup_product(self, other)


def dual(key):
    n = len(key)
    return CohomClass(n, [int(k == key) for k in hbasis(n)])


def cup_product(x, y):
    """``(x u y)(c) = <x (x) y, D c>`` with ``<x (x) y, c (x) d> = (-1)^{|y||c|} x(c) y(d)``."""
    p, q = x.degree, y.degree
    s = _sign(p * q)
    coords = []
    for c in hbasis(p + q):
        total = 0
        for (l, r), k in _coproduct_key(c).items():
            if len(l) == p:
                total += k * x(HClass.basis(l)) * y(HClass.basis(r))
        coords.append(s * total)
    return CohomClass(p + q, coords)


COH_ONE = dual("")
A_GEN = dual("a")
B_GEN = dual("b")


def divided_power(i):
    """Dual of ``t^i``; ``u^(0)`` is the unit."""
    return dual("ba" * i)


def cohomology_basis(n):
    return [dual(k) for k in hbasis(n)]


def cup_table(max_degree):
    """``{(p, q): matrix}`` with ``matrix[i][j]`` the coordinates of ``b_i u b_j``."""
    table = {}
    for p in range(max_degree + 1):
        for q in range(max_degree + 1 - p):
            table[p, q] = [[list(cup_product(x, y).coords) for y in cohomology_basis(q)]
                           for x in cohomology_basis(p)]
    return table


# Abstract exterior (x) divided power algebra: monomials (da, db, i) meaning
# a^da b^db u^(i), of degree da + db + 2i.

def monomials(n):
    out = []
    for da, db in ((0, 0), (1, 0), (0, 1), (1, 1)):
        rest = n - da - db
        if rest >= 0 and rest % 2 == 0:
            out.append((da, db, rest // 2))
    return out


def abstract_product(m1, m2):
    """``(coeff, monomial)`` or ``None`` when the product vanishes."""
    (a1, b1, i), (a2, b2, j) = m1, m2
    if a1 + a2 > 1 or b1 + b2 > 1:
        return None
    return _sign(b1 * a2) * comb(i + j, i), (a1 + a2, b1 + b2, i + j)


def _realize(m, a, b, u):
    da, db, i = m
    out = u(i)
    if db:
        out = cup_product(b, out)
    if da:
        out = cup_product(a, out)
    return out


def presentation_check(max_degree, a=A_GEN, b=B_GEN, u=divided_power):
    """Compare the cup product ring with the exterior (x) divided power algebra.

    Returns a report with per-degree determinants of the monomial basis
    against the dual basis and the list of product mismatches.
    """
    images = {m: _realize(m, a, b, u) for n in range(max_degree + 1) for m in monomials(n)}
    dets = {}
    for n in range(max_degree + 1):
        mat = [list(images[m].coords) for m in monomials(n)]
        dets[n] = intlin.det(mat) if len(mat) == len(hbasis(n)) else 0
    failures = []
    for m1, m2 in product(images, repeat=2):
        if sum(m1) + m1[2] + sum(m2) + m2[2] > max_degree:
            continue
        lhs = cup_product(images[m1], images[m2])
        res = abstract_product(m1, m2)
        if res is None:
            rhs = CohomClass(lhs.degree, [0] * len(lhs.coords))
        else:
            rhs = images[res[1]].scale(res[0])
        if lhs != rhs:
            failures.append((m1, m2))
    ok = all(abs(d) == 1 for d in dets.values()) and not failures
    return {
        "ok": ok,
        "generators": {
            "a": list(a.coords),
            "b": list(b.coords),
            "u": list(u(1).coords) if max_degree >= 2 else None,
        },
        "determinants": dets,
        "failures": failures,
    }


def _candidates():
    yield A_GEN, B_GEN, divided_power
    for sa, sb in ((1, -1), (-1, 1), (-1, -1)):
        yield A_GEN.scale(sa), B_GEN.scale(sb), divided_power


def find_presentation(max_degree):
    """Try the standard generators first, then sign variants of ``a`` and ``b``."""
    report = None
    for a, b, u in _candidates():
        report = presentation_check(max_degree, a, b, u)
        if report["ok"]:
            return report
    return report


def cohomology_table(max_degree):
    """Structure constants up to ``max_degree`` plus the presentation check, JSON-ready."""
    table = cup_table(max_degree)
    report = find_presentation(max_degree)
    return {
        "max_degree": max_degree,
        "bases": {str(n): [hname(k) + "*" for k in hbasis(n)] for n in range(max_degree + 1)},
        "degree_pairs": [{"p": p, "q": q, "matrix": m} for (p, q), m in table.items()],
        "presentation_check": {
            "ok": report["ok"],
            "generators": report["generators"],
            "determinants": {str(n): d for n, d in report["determinants"].items()},
        },
    }


def corner_ring_check(max_degree):
    """``eps H eps`` is ``Z`` in even degrees, spanned by ``t^(n/2)``, and 0 in odd ones,
    with ``t^i t^j = t^(i+j)``."""
    for n in range(max_degree + 1):
        images = [EPS * HClass.basis(k) * EPS for k in hbasis(n)]
        span = [[img.coeff(k) for k in hbasis(n)] for img in images]
        r = intlin.rank(span, len(hbasis(n)))
        if n % 2:
            if r != 0:
                return False
        else:
            tn = EPS if n == 0 else T ** (n // 2)
            if r != 1 or tn not in images or EPS * tn * EPS != tn:
                return False
    for i in range(1, max_degree // 2 + 1):
        for j in range(1, max_degree // 2 + 1 - i):
            if T ** i * T ** j != T ** (i + j):
                return False
    return True


def cup_ring_check(max_degree):
    """Associativity and graded commutativity of the cup product on basis classes."""
    basis = {n: cohomology_basis(n) for n in range(max_degree + 1)}
    for p in range(max_degree + 1):
        for q in range(max_degree + 1 - p):
            for x in basis[p]:
                for y in basis[q]:
                    if cup_product(x, y) != cup_product(y, x).scale(_sign(p * q)):
                        return False
                    for r in range(max_degree + 1 - p - q):
                        for z in basis[r]:
                            if cup_product(cup_product(x, y), z) != cup_product(x, cup_product(y, z)):
                                return False
    return True
