"""Binary trees, binary forests and the cube words of the cubical complex.

A tree is ``LEAF`` (the int 0) or a pair ``(left, right)``; this is also the
JSON shape (``0`` / ``[l, r]``).  A tree stands for a dyadic subdivision of the
unit interval: a caret splits its interval at the midpoint.

A forest with ``n`` roots subdivides ``[0, n]`` tree by tree.  Forests whose
trees are all ``LEAF`` or a single caret are *elementary*; they correspond to
words in ``v`` (a bare root) and ``e`` (a root with one caret).
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby, product
from math import comb

from ._lincomb import collect
from .dyadic import Dyadic, plmap_make

LEAF = 0
CARET = (LEAF, LEAF)


class TreeParseError(ValueError):
    def __init__(self, msg, text, pos):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.pos = pos


# -- trees -------------------------------------------------------------------

@lru_cache(maxsize=None)
def leaf_count(t):
    if t == LEAF:
        return 1
    return leaf_count(t[0]) + leaf_count(t[1])


def caret_count(t):
    return leaf_count(t) - 1


def parse_tree(text):
    """Parse ``tree := '*' | '(' tree tree ')'`` (whitespace is ignored)."""
    tokens = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise TreeParseError("unexpected end of input", text, len(text))
        i, ch = tokens[pos]
        if ch == "*":
            pos += 1
            return LEAF
        if ch == "(":
            pos += 1
            left = parse()
            right = parse()
            if pos >= len(tokens):
                raise TreeParseError("missing ')'", text, len(text))
            j, close = tokens[pos]
            if close != ")":
                raise TreeParseError(f"expected ')' but found {close!r}", text, j)
            pos += 1
            return (left, right)
        raise TreeParseError(f"unexpected {ch!r}", text, i)

    tree = parse()
    if pos != len(tokens):
        raise TreeParseError("trailing input", text, tokens[pos][0])
    return tree


def tree_to_text(t):
    if t == LEAF:
        return "*"
    return f"({tree_to_text(t[0])} {tree_to_text(t[1])})"


def tree_to_json(t):
    return 0 if t == LEAF else [tree_to_json(t[0]), tree_to_json(t[1])]


def tree_from_json(data):
    if data == 0:
        return LEAF
    if isinstance(data, list) and len(data) == 2:
        return (tree_from_json(data[0]), tree_from_json(data[1]))
    raise ValueError(f"not a JSON tree: {data!r}")


def right_comb(n):
    """The tree with ``n`` leaves whose carets all hang to the right."""
    t = LEAF
    for _ in range(n - 1):
        t = (LEAF, t)
    return t


def graft(t, subtrees):
    """Attach ``subtrees[i]`` at the i-th leaf of ``t``."""
    subtrees = list(subtrees)
    if len(subtrees) != leaf_count(t):
        raise ValueError(f"tree has {leaf_count(t)} leaves, got {len(subtrees)} subtrees")
    it = iter(subtrees)

    def walk(s):
        if s == LEAF:
            return next(it)
        return (walk(s[0]), walk(s[1]))

    return walk(t)


def is_expansion(small, big):
    """True if ``big`` is obtained from ``small`` by adding carets at leaves."""
    if small == LEAF:
        return True
    if big == LEAF:
        return False
    return is_expansion(small[0], big[0]) and is_expansion(small[1], big[1])


def expansion_forest(small, big):
    """The forest F with ``graft(small, F) == big``."""
    if small == LEAF:
        return [big]
    if big == LEAF:
        raise ValueError("not an expansion")
    return expansion_forest(small[0], big[0]) + expansion_forest(small[1], big[1])


def common_refinement(s, t):
    """The smallest common expansion of ``s`` and ``t``."""
    if s == LEAF:
        return t
    if t == LEAF:
        return s
    return (common_refinement(s[0], t[0]), common_refinement(s[1], t[1]))


def leaf_intervals(t, k=0, depth=0):
    """Leaves as standard dyadic intervals ``(k, d)`` = ``[k/2^d, (k+1)/2^d]``."""
    if t == LEAF:
        return [(k, depth)]
    return leaf_intervals(t[0], 2 * k, depth + 1) + leaf_intervals(t[1], 2 * k + 1, depth + 1)


def tree_from_intervals(intervals, k=0, depth=0):
    """Inverse of :func:`leaf_intervals` for a partition of ``[k/2^d, (k+1)/2^d]``."""
    intervals = list(intervals)
    if intervals == [(k, depth)]:
        return LEAF
    if not intervals or any(d <= depth for _, d in intervals):
        raise ValueError("intervals do not form a dyadic subdivision")
    left = [(j, d) for j, d in intervals if (j >> (d - depth - 1)) == 2 * k]
    right = [(j, d) for j, d in intervals if (j >> (d - depth - 1)) == 2 * k + 1]
    if len(left) + len(right) != len(intervals):
        raise ValueError("intervals do not form a dyadic subdivision")
    return (tree_from_intervals(left, 2 * k, depth + 1),
            tree_from_intervals(right, 2 * k + 1, depth + 1))


def exposed_carets(t):
    """Leaf indices i such that leaves i, i+1 hang from a common caret."""
    out = []

    def walk(s, start):
        if s == LEAF:
            return 1
        if s == CARET:
            out.append(start)
            return 2
        n = walk(s[0], start)
        return n + walk(s[1], start + n)

    walk(t, 0)
    return out


def remove_caret(t, i):
    """Collapse the exposed caret whose left leaf has index ``i``."""

    def walk(s, start):
        if s == CARET and start == i:
            return LEAF
        if s == LEAF:
            return s
        n = leaf_count(s[0])
        return (walk(s[0], start), walk(s[1], start + n))

    out = walk(t, 0)
    if leaf_count(out) != leaf_count(t) - 1:
        raise ValueError(f"no exposed caret at leaf {i}")
    return out


@lru_cache(maxsize=None)
def catalan(n):
    return comb(2 * n, n) // (n + 1)


def all_trees(n):
    """Every tree with ``n`` leaves."""
    if n == 1:
        return [LEAF]
    return [(l, r) for i in range(1, n) for l in all_trees(i) for r in all_trees(n - i)]


def random_tree(n, rng):
    """A tree with ``n`` leaves, uniform over all ``catalan(n - 1)`` shapes."""
    if n == 1:
        return LEAF
    r = rng.randrange(catalan(n - 1))
    for i in range(1, n):
        w = catalan(i - 1) * catalan(n - i - 1)
        if r < w:
            return (random_tree(i, rng), random_tree(n - i, rng))
        r -= w
    raise AssertionError("unreachable")


# -- forests -----------------------------------------------------------------

@dataclass(frozen=True)
class BinaryForest:
    trees: tuple

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        if not self.trees:
            raise ValueError("a forest needs at least one root")

    @property
    def roots(self):
        return len(self.trees)

    @property
    def leaves(self):
        return sum(leaf_count(t) for t in self.trees)

    def __str__(self):
        return " | ".join(tree_to_text(t) for t in self.trees)

    def to_json(self):
        return [tree_to_json(t) for t in self.trees]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(tree_from_json(t) for t in data))

    @classmethod
    def parse(cls, text):
        return cls(tuple(parse_tree(part) for part in text.split("|")))

    def __add__(self, other):
        # juxtaposition: the product on cubes
        return BinaryForest(self.trees + other.trees)


def trivial_forest(n):
    return BinaryForest((LEAF,) * n)


def compose_forests(outer, inner):
    """Graft the trees of ``inner`` onto the leaves of ``outer``, left to right."""
    if inner.roots != outer.leaves:
        raise ValueError(f"inner forest has {inner.roots} roots, outer has {outer.leaves} leaves")
    trees, pos = [], 0
    for t in outer.trees:
        k = leaf_count(t)
        trees.append(graft(t, inner.trees[pos:pos + k]))
        pos += k
    return BinaryForest(tuple(trees))


def is_elementary(f):
    return all(t in (LEAF, CARET) for t in f.trees)


def forest_is_expansion(small, big):
    return small.roots == big.roots and all(map(is_expansion, small.trees, big.trees))


def subdivision_map(f):
    """PL map ``[0, leaves] -> [0, roots]`` sending ``[i-1, i]`` onto the i-th piece."""
    points = [(0, 0)]
    j = 0
    for r, t in enumerate(f.trees):
        for k, d in leaf_intervals(t):
            j += 1
            points.append((j, Dyadic(r) + Dyadic(k + 1, d)))
    return plmap_make(points, f.leaves, f.roots)


# -- cube words --------------------------------------------------------------

_WORD_TOKEN = re.compile(r"([ve])(\d*)")


def parse_cubeword(text):
    """``'vev2e'`` -> ``'vevve'``; a number after a letter repeats it."""
    text = text.replace(" ", "")
    out, pos = [], 0
    for m in _WORD_TOKEN.finditer(text):
        if m.start() != pos:
            break
        out.append(m.group(1) * int(m.group(2) or 1))
        pos = m.end()
    if pos != len(text) or not text:
        raise ValueError(f"not a cube word: {text!r}")
    return "".join(out)


def format_word(w):
    """Inverse of the parser: runs of a letter are written with an exponent."""
    out = []
    for ch, run in groupby(w):
        n = len(list(run))
        out.append(ch + (str(n) if n > 1 else ""))
    return "".join(out)


def cube_degree(w):
    return w.count("e")


def forest_to_cubeword(f):
    if not is_elementary(f):
        raise ValueError("only elementary forests are cubes")
    return "".join("v" if t == LEAF else "e" for t in f.trees)


def cubeword_to_forest(w):
    if not w or set(w) - {"v", "e"}:
        raise ValueError(f"not a cube word: {w!r}")
    return BinaryForest(tuple(LEAF if ch == "v" else CARET for ch in w))


def cube_face(w, i, side):
    """Face of the cube ``w`` across the e at (1-based) position ``i``.

    Side 0 collapses the e to ``v``; side 1 expands it to ``vv``.
    """
    if not 1 <= i <= len(w) or w[i - 1] != "e":
        raise IndexError(f"position {i} of {w!r} is not an e")
    if side not in (0, 1):
        raise ValueError("side must be 0 or 1")
    return w[:i - 1] + ("vv" if side else "v") + w[i:]


def cube_boundary(w):
    """Signed sum of faces, as a dict ``word -> coefficient``."""
    pairs = []
    sign = 1
    for i, ch in enumerate(w, start=1):
        if ch == "e":
            pairs.append((cube_face(w, i, 1), sign))
            pairs.append((cube_face(w, i, 0), -sign))
            sign = -sign
    return collect(pairs)


def interval_poset_check(w, max_degree=8):
    """Check that the bases between ``v^n`` and the expansion ``w`` form ``{0,1}^k``.

    The members of the interval are the forests obtained by collapsing any
    subset of the carets of ``w``; the order is recomputed from the forests
    themselves (one is below another iff the other expands it).  The poset
    is then tested against the Boolean lattice via its atoms.
    """
    k = cube_degree(w)
    if k > max_degree:
        raise ValueError(f"degree {k} exceeds bound {max_degree}")
    positions = [i for i, ch in enumerate(w) if ch == "e"]
    members = []
    for bits in product((0, 1), repeat=k):
        letters = list(w)
        for p, b in zip(positions, bits):
            if not b:
                letters[p] = "v"
        members.append(cubeword_to_forest("".join(letters)))
    if len(set(members)) != 2 ** k:
        return False
    leq = {(a, b): forest_is_expansion(a, b) for a in members for b in members}
    bottoms = [a for a in members if all(leq[a, b] for b in members)]
    if len(bottoms) != 1:
        return False
    bottom = bottoms[0]
    atoms = [a for a in members if a != bottom
             and not any(c not in (a, bottom) and leq[c, a] for c in members)]
    if len(atoms) != k:
        return False
    label = {m: frozenset(i for i, a in enumerate(atoms) if leq[a, m]) for m in members}
    if len(set(label.values())) != 2 ** k:
        return False
    return all(leq[a, b] == (label[a] <= label[b]) for a in members for b in members)
