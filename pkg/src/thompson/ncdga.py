"""The differential graded ring of noncommuting polynomials in ``v`` and ``e``.

``v`` has degree 0, ``e`` degree 1, ``d(e) = v^2 - v`` and ``d`` is a signed
derivation.  Words are plain strings; the empty string is the unit ``1``.

The homology is computed through the change of basis to words in
``e, w = v^2 - v, z = ve - ev`` followed by at most one ``v``.  On that basis
the differential only turns an ``e`` into a ``w``, so an explicit chain
contraction onto ``span{z^n, z^n v}`` is available in closed form.
"""

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import intlin
from ._lincomb import LinComb, collect
from .forest import format_word

MAX_FACTORS = 10
MAX_DEGREE = 10


class NotACycleError(ValueError):
    pass


class InhomogeneousError(ValueError):
    pass


def _sign(k):
    return -1 if k & 1 else 1


# -- NCPoly ------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)(\d*)((?:[a-z]\d*)*)")


def parse_terms(text, letters):
    """Split ``'3v2e - ev'`` into ``[(3, 'vve'), (-1, 'ev')]``."""
    s = "".join(text.split())
    if s in ("", "0"):
        return []
    out, pos = [], 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, coeff, word = m.groups()
        if not (coeff or word) or (pos and not sign):
            raise ValueError(f"cannot parse polynomial {text!r} near {s[pos:]!r}")
        c = int(coeff) if coeff else 1
        out.append((-c if sign == "-" else c, _expand_exponents(word, letters)))
        pos = m.end()
    return out


class NCPoly(LinComb):
    """Integer combination of words in ``v, e``."""

    __slots__ = ()

    def degree_of(self, key):
        return key.count("e")

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return NCPoly.from_pairs(
            (a + b, x * y) for a, x in self.terms.items() for b, y in other.terms.items()
        )

    def __pow__(self, n):
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    @property
    def degree(self):
        degs = self.degrees()
        if len(degs) > 1:
            raise InhomogeneousError(f"mixed degrees {sorted(degs)}")
        return degs.pop() if degs else None

    @classmethod
    def word(cls, w):
        return cls.basis(w)

    @classmethod
    def parse(cls, text):
        """Read ``'3v2e - ev + 1'``.

        A number after a letter is an exponent.  The letters ``w`` and ``z``
        are accepted as shorthand for ``v2 - v`` and ``ve - ev``.
        """
        out = cls.zero()
        for c, word in parse_terms(text, "vewz"):
            out = out + _parse_monomial(word).scale(c)
        return out

    def __str__(self):
        return format_terms(self.sorted_items())

    def to_json(self):
        return {"terms": [{"word": format_word(w) if w else "1", "coeff": c}
                          for w, c in self.sorted_items()]}

    @classmethod
    def from_json(cls, data):
        return cls.from_pairs(
            ("" if t["word"] == "1" else _expand_exponents(t["word"], "ve"), t["coeff"])
            for t in data["terms"]
        )


def _expand_exponents(word, alphabet):
    out, pos = [], 0
    for m in re.finditer(r"(\D)(\d*)", word):
        if m.group(1) not in alphabet:
            raise ValueError(f"unexpected letter {m.group(1)!r} in {word!r}")
        out.append(m.group(1) * int(m.group(2) or 1))
        pos = m.end()
    if pos != len(word):
        raise ValueError(f"cannot read word {word!r}")
    return "".join(out)


def _parse_monomial(word):
    out = ONE
    for ch in word:
        out = out * _LETTERS[ch]
    return out


def format_terms(items, fmt=format_word):
    if not items:
        return "0"
    parts = []
    for w, c in items:
        body = fmt(w)
        mag = abs(c)
        s = (str(mag) if mag != 1 or not body else "") + body
        parts.append(("- " if c < 0 else "+ ") + s)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


ONE = NCPoly.word("")
V = NCPoly.word("v")
E = NCPoly.word("e")
W = NCPoly.from_pairs([("vv", 1), ("v", -1)])
Z = NCPoly.from_pairs([("ve", 1), ("ev", -1)])
_LETTERS = {"v": V, "e": E, "w": W, "z": Z}


def nc_mul(p, q):
    return p * q


def nc_add(p, q):
    return p + q


def nc_scale(p, n):
    return p.scale(n)


@lru_cache(maxsize=None)
def _boundary_word(u):
    # d(x . rest) = d(x) rest + (-1)^{deg x} x d(rest)
    if not u:
        return ()
    head, rest = u[0], u[1:]
    pairs = []
    if head == "e":
        pairs += [("vv" + rest, 1), ("v" + rest, -1)]
        s = -1
    else:
        s = 1
    pairs += [(head + w, s * c) for w, c in _boundary_word(rest)]
    return tuple(collect(pairs).items())


def boundary(p):
    return NCPoly.from_pairs((w, c * c2) for u, c in p.items() for w, c2 in _boundary_word(u))


# -- MPoly: the e, w, z basis ------------------------------------------------

class MPoly(LinComb):
    """Integer combination of words in ``e, w, z`` with an optional final ``v``.

    Keys are strings such as ``'zew'`` or ``'zzv'``.
    """

    __slots__ = ()

    def degree_of(self, key):
        return key.count("e") + key.count("z")

    @staticmethod
    def split(key):
        """``(word, trailing_v)``."""
        if key.endswith("v"):
            return key[:-1], True
        return key, False

    @classmethod
    def parse(cls, text):
        pairs = []
        for c, key in parse_terms(text, "ewzv"):
            if "v" in key[:-1]:
                raise ValueError(f"v may only appear once, at the end: {key!r}")
            pairs.append((key, c))
        return cls.from_pairs(pairs)

    def __str__(self):
        return format_terms(self.sorted_items())


@lru_cache(maxsize=None)
def _rewrite_word(u):
    # leftmost v first: vv -> w + v, ve -> ev + z
    if not u:
        return (("", 1),)
    if u[0] == "e":
        return tuple(("e" + k, c) for k, c in _rewrite_word(u[1:]))
    if u == "v":
        return (("v", 1),)
    rest = u[2:]
    if u[1] == "v":
        pairs = [("w" + k, c) for k, c in _rewrite_word(rest)] + list(_rewrite_word("v" + rest))
    else:
        pairs = [("e" + k, c) for k, c in _rewrite_word("v" + rest)] + \
                [("z" + k, c) for k, c in _rewrite_word(rest)]
    return tuple(collect(pairs).items())


# Rules valid anywhere in a word over {v, e, w, z}.  The last two follow from
# w = v^2 - v and z = ve - ev; they are needed once v's are moved out of order.
_RULES = {
    "vv": (("w", 1), ("v", 1)),
    "ve": (("ev", 1), ("z", 1)),
    "vw": (("wv", 1),),
    "vz": (("we", 1), ("ew", -1), ("z", 1), ("zv", -1)),
}


def _is_normal(word):
    return "v" not in word[:-1]


def _rewrite_random(p, rng, max_steps=10 ** 6):
    state = dict(p.terms)
    for _ in range(max_steps):
        pending = [w for w in state if not _is_normal(w)]
        if not pending:
            return MPoly(state)
        word = rng.choice(pending)
        c = state.pop(word)
        sites = [i for i in range(len(word) - 1) if word[i] == "v"]
        i = rng.choice(sites)
        for repl, s in _RULES[word[i:i + 2]]:
            new = word[:i] + repl + word[i + 2:]
            state[new] = state.get(new, 0) + s * c
            if not state[new]:
                del state[new]
    raise RuntimeError("rewriting did not terminate")


def rewrite_to_ewz(p, rng=None):
    """Express ``p`` in the basis of words in ``e, w, z`` (times an optional ``v``).

    With ``rng`` the rewrite sites are chosen at random instead of always
    taking the leftmost ``v``; the result is the same.
    """
    if rng is not None:
        return _rewrite_random(p, rng)
    return MPoly.from_pairs((k, c * c2) for u, c in p.items() for k, c2 in _rewrite_word(u))


@lru_cache(maxsize=None)
def _expand_key(key):
    out = ONE
    for ch in key:
        out = out * _LETTERS[ch]
    return out


def expand_from_ewz(m):
    """Substitute ``w = v^2 - v`` and ``z = ve - ev`` and multiply out."""
    return m.map_keys(_expand_key, NCPoly)


def _boundary_key(key):
    word, tv = MPoly.split(key)
    tail = "v" if tv else ""
    pairs, odd = [], 0
    for i, ch in enumerate(word):
        if ch == "e":
            pairs.append((word[:i] + "w" + word[i + 1:] + tail, _sign(odd)))
        if ch in "ez":
            odd += 1
    return MPoly.from_pairs(pairs)


def boundary_m(m):
    """Differential in the ``e, w, z`` basis: each ``e`` becomes ``w`` in turn."""
    return m.map_keys(_boundary_key)


def _contract_key(key):
    word, tv = MPoly.split(key)
    i = len(word) - len(word.lstrip("z"))
    if i < len(word) and word[i] == "w":
        return MPoly.basis(word[:i] + "e" + word[i + 1:] + ("v" if tv else ""), _sign(i))
    return MPoly.zero()


def contraction(m):
    """Chain homotopy ``h`` with ``d h + h d = id - projection``.

    On one tensor factor ``h(w) = e`` and ``h(e) = h(z) = 0``; on a word it
    acts on the first letter that is not ``z``, with sign ``(-1)^{#z before}``.
    """
    return m.map_keys(_contract_key)


def projection(m):
    """Projection onto ``span{z^n, z^n v}`` (which includes ``1`` and ``v``)."""
    return MPoly({k: c for k, c in m.items() if set(MPoly.split(k)[0]) <= {"z"}})


# -- homology ----------------------------------------------------------------

@dataclass(frozen=True)
class ChainClass:
    """A homology class of R = Z + C.

    In degree n >= 1 the coordinates are on ``zeta^n`` and ``zeta^n eps``; in
    degree 0 they are on ``[1]`` and ``eps = [v]``.
    """

    degree: int
    first: int
    second: int

    @property
    def a(self):
        return self.first

    @property
    def b(self):
        return self.second

    @property
    def c1(self):
        return self.first

    @property
    def cv(self):
        return self.second

    def __bool__(self):
        return bool(self.first or self.second)

    def __str__(self):
        if self.degree == 0:
            names = ("[1]", "ε")
        else:
            z = "ζ" if self.degree == 1 else f"ζ^{self.degree}"
            names = (z, z + "ε")
        return format_terms([(n, c) for n, c in zip(names, (self.first, self.second)) if c],
                            fmt=str)


def _require_cycle(c):
    if boundary(c):
        raise NotACycleError(f"not a cycle: {c}")


def class_of(c, degree=None):
    """Homology class of a homogeneous cycle."""
    _require_cycle(c)
    if degree is None:
        degree = c.degree
        if degree is None:
            degree = 0
    elif c and c.degree != degree:
        raise InhomogeneousError(f"expected degree {degree}")
    p = projection(rewrite_to_ewz(c))
    zs = "z" * degree
    return ChainClass(degree, p.coeff(zs), p.coeff(zs + "v"))


def cycle_of(cls):
    """Representative cycle ``a z^n + b z^n v`` of a :class:`ChainClass`."""
    zn = Z ** cls.degree
    return zn.scale(cls.first) + (zn * V).scale(cls.second)


def certify_homologous(c1, c2):
    """A chain ``b`` with ``d(b) = c1 - c2``, or ``None`` if there is none."""
    _require_cycle(c1)
    _require_cycle(c2)
    m = rewrite_to_ewz(c1 - c2)
    if projection(m):
        return None
    b = expand_from_ewz(contraction(m))
    if boundary(b) != c1 - c2:
        raise AssertionError("contraction produced a wrong certificate")
    return b


def tensor_basis(n, k):
    """Words of length ``k`` in ``e, z, w`` with exactly ``n`` letters of degree one."""
    out = []
    for letters in product("ewz", repeat=k):
        if sum(ch != "w" for ch in letters) == n:
            out.append("".join(letters))
    return out


def _boundary_entries(n, k):
    """Sparse matrix of ``d: C_n -> C_{n-1}`` of the k-fold tensor power of span{e, w, z}."""
    src = tensor_basis(n, k)
    dst = {w: i for i, w in enumerate(tensor_basis(n - 1, k))} if n >= 1 else {}
    entries = {}
    for j, word in enumerate(src):
        for key, c in _boundary_key(word).items():
            entries[dst[key], j] = c
    return entries, len(dst), len(src)


def summand_homology(n, k):
    """``(rank, torsion)`` of ``H_n`` of the k-fold tensor power of span{e, w, z}."""
    if not (0 <= n <= MAX_DEGREE and 0 <= k <= MAX_FACTORS):
        raise ValueError(f"need 0 <= n <= {MAX_DEGREE} and 0 <= k <= {MAX_FACTORS}")
    dim = len(tensor_basis(n, k))
    out_entries, _, _ = _boundary_entries(n, k)
    in_entries, _, _ = _boundary_entries(n + 1, k)
    rank_out = len(intlin.sparse_smith_factors(out_entries))
    factors_in = intlin.sparse_smith_factors(in_entries)
    torsion = [d for d in factors_in if d > 1]
    return dim - rank_out - len(factors_in), torsion


def homology_table(max_degree, max_factors=8):
    """Ranks and torsion of ``H_n(C)``, ``C`` without its unit, for ``n <= max_degree``.

    ``R = S + Sv`` with ``S`` the sum of the tensor powers of span{e, w, z}
    (powers up to ``max_factors`` are computed), and ``Sv`` is isomorphic to
    ``S`` as a chain complex, so every summand counts twice.  The copy of ``Z``
    in degree 0 coming from the unit of ``R`` is dropped.
    """
    if max_degree > max_factors:
        raise ValueError("max_degree may not exceed the number of tensor factors")
    rows = []
    for n in range(max_degree + 1):
        rank, torsion = 0, []
        for k in range(max_factors + 1):
            r, t = summand_homology(n, k)
            rank += 2 * r
            torsion += 2 * t
        if n == 0:
            rank -= 1
            basis = ["ε"]
        else:
            z = "ζ" if n == 1 else f"ζ^{n}"
            basis = [z, z + "ε"]
        rows.append({"degree": n, "rank": rank, "torsion": torsion, "basis": basis})
    return rows


# -- truncated basis check ---------------------------------------------------

_WEIGHT = {"e": 1, "w": 2, "z": 2, "v": 1}


def _words_up_to(alphabet, weight_bound):
    out = [""]
    frontier = [""]
    while frontier:
        nxt = []
        for w in frontier:
            for ch in alphabet:
                u = w + ch
                if sum(_WEIGHT[x] for x in u) <= weight_bound:
                    nxt.append(u)
        out += nxt
        frontier = nxt
    return out


def truncated_basis_matrix(max_letters):
    """Expansion of the ``e, w, z (, v)`` monomials of weight ``<= max_letters``.

    Weights are e = v = 1, w = z = 2: the length of the longest ``v, e`` word in
    the expansion.  Rows are all ``v, e`` words of length ``<= max_letters``.
    """
    words = _words_up_to("ewz", max_letters)
    monomials = words + [w + "v" for w in words if sum(_WEIGHT[x] for x in w) < max_letters]
    rows = [w for k in range(max_letters + 1) for w in map("".join, product("ve", repeat=k))]
    index = {w: i for i, w in enumerate(rows)}
    mat = intlin.zeros(len(rows), len(monomials))
    for j, m in enumerate(monomials):
        for w, c in _expand_key(m).items():
            mat[index[w]][j] = c
    return mat, monomials, rows


def independence_check(max_letters):
    """True if the truncated expansion matrix has full column rank."""
    mat, monomials, _ = truncated_basis_matrix(max_letters)
    return intlin.rank(mat, len(monomials)) == len(monomials)


# -- random chains for property checks ---------------------------------------

def random_ncpoly(rng, max_len=6, max_terms=4, coeff=3, degree=None, with_unit=True):
    pairs = []
    for _ in range(rng.randint(1, max_terms)):
        n = rng.randint(0 if with_unit else 1, max_len)
        if degree is not None:
            n = max(n, degree)
            pos = set(rng.sample(range(n), degree))
            w = "".join("e" if i in pos else "v" for i in range(n))
        else:
            w = "".join(rng.choice("ve") for _ in range(n))
        pairs.append((w, rng.randint(-coeff, coeff)))
    return NCPoly.from_pairs(pairs)


def random_mpoly(rng, degree, max_len=6, max_terms=4, coeff=3):
    pairs = []
    for _ in range(rng.randint(1, max_terms)):
        n = rng.randint(degree, max(degree, max_len))
        pos = set(rng.sample(range(n), degree))
        word = "".join(rng.choice("ez") if i in pos else "w" for i in range(n))
        pairs.append((word + rng.choice(["", "v"]), rng.randint(-coeff, coeff)))
    return MPoly.from_pairs(pairs)


def seeded(seed):
    return random.Random(seed)
