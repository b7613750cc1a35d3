"""Thompson's group F as reduced pairs of binary trees.

The pair ``(domain, range)`` is the PL homeomorphism of [0, 1] carrying the
i-th leaf interval of ``domain`` linearly onto the i-th leaf interval of
``range``.  Products compose as functions: ``multiply(f, g)`` is
``t -> f(g(t))``, and conjugation is ``f^g = g^-1 f g``.
"""

import re
from dataclasses import dataclass
from functools import lru_cache

from .dyadic import Dyadic, PLMapError, plmap_make, plmap_slopes
from .forest import (
    LEAF,
    common_refinement,
    exposed_carets,
    expansion_forest,
    graft,
    leaf_count,
    leaf_intervals,
    random_tree,
    remove_caret,
    tree_from_intervals,
    tree_from_json,
    tree_to_json,
    tree_to_text,
)

MAX_GENERATOR = 64


@dataclass(frozen=True)
class TreePair:
    domain: object
    range: object

    def __str__(self):
        return f"({tree_to_text(self.domain)}, {tree_to_text(self.range)})"

    def to_json(self):
        return {"domain": tree_to_json(self.domain), "range": tree_to_json(self.range)}

    @classmethod
    def from_json(cls, data):
        return make_pair(tree_from_json(data["domain"]), tree_from_json(data["range"]))

    @property
    def leaves(self):
        return leaf_count(self.domain)


def reduce_pair(domain, range_, choose=None):
    """Cancel carets exposed in both trees until none are left.

    ``choose`` picks which common caret to cancel next (default: leftmost);
    the result does not depend on it.
    """
    while True:
        common = sorted(set(exposed_carets(domain)) & set(exposed_carets(range_)))
        if not common:
            return TreePair(domain, range_)
        i = choose(common) if choose else common[0]
        domain, range_ = remove_caret(domain, i), remove_caret(range_, i)


def make_pair(domain, range_):
    if leaf_count(domain) != leaf_count(range_):
        raise ValueError("domain and range trees must have the same number of leaves")
    return reduce_pair(domain, range_)


IDENTITY = TreePair(LEAF, LEAF)


def is_reduced(f):
    return not set(exposed_carets(f.domain)) & set(exposed_carets(f.range))


def invert(f):
    return TreePair(f.range, f.domain)


def equals(f, g):
    return f == g


def multiply(f, g):
    """The reduced pair of ``t -> f(g(t))``."""
    common = common_refinement(g.range, f.domain)
    fg = expansion_forest(g.range, common)
    ff = expansion_forest(f.domain, common)
    return reduce_pair(graft(g.domain, fg), graft(f.range, ff))


def conjugate(f, g):
    """``f^g = g^-1 f g``."""
    return multiply(multiply(invert(g), f), g)


def power(f, n):
    out, base = IDENTITY, f if n >= 0 else invert(f)
    for _ in range(abs(n)):
        out = multiply(out, base)
    return out


def commutator(f, g):
    return multiply(multiply(invert(f), invert(g)), multiply(f, g))


def star(f, g):
    """Rescaled copy of ``f`` on [0, 1/2] followed by one of ``g`` on [1/2, 1]."""
    return reduce_pair((f.domain, g.domain), (f.range, g.range))


def shift(f):
    return star(IDENTITY, f)


# The two candidates for x_0: the pair on (* (* *)) and ((* *) *) in either
# orientation.  Which one satisfies the defining relations under the
# composition convention above is decided by _orient_x0.
_RIGHT_VEE = (LEAF, (LEAF, LEAF))
_LEFT_VEE = ((LEAF, LEAF), LEAF)
X0_CANDIDATES = (TreePair(_RIGHT_VEE, _LEFT_VEE), TreePair(_LEFT_VEE, _RIGHT_VEE))


def _generators_from(x0, n):
    gens = [x0]
    for _ in range(n):
        gens.append(shift(gens[-1]))
    return gens


def relations_hold(x0, bound=4):
    """Whether ``x_n^{x_i} == x_{n+1}`` for all ``i < n <= bound``."""
    x = _generators_from(x0, bound + 1)
    return all(conjugate(x[n], x[i]) == x[n + 1] for n in range(1, bound + 1) for i in range(n))


@lru_cache(maxsize=None)
def _orient_x0():
    passing = [c for c in X0_CANDIDATES if relations_hold(c)]
    if len(passing) != 1:
        raise RuntimeError(f"expected exactly one orientation of x_0 to pass, got {len(passing)}")
    return passing[0]


@lru_cache(maxsize=None)
def make_generator(n):
    if not 0 <= n <= MAX_GENERATOR:
        raise ValueError(f"generator index must lie in [0, {MAX_GENERATOR}]")
    if n == 0:
        return _orient_x0()
    return shift(make_generator(n - 1))


def abelianize(f):
    """``(log2 f'(0), log2 f'(1))``."""
    return plmap_slopes(to_plmap(f))


def in_commutator_subgroup(f):
    return abelianize(f) == (0, 0)


def to_plmap(f):
    points = [(0, 0)]
    for (kd, dd), (kr, dr) in zip(leaf_intervals(f.domain), leaf_intervals(f.range)):
        points.append((Dyadic(kd + 1, dd), Dyadic(kr + 1, dr)))
    return plmap_make(points, 1, 1)


def from_plmap(m):
    """Tree pair of a dyadic PL homeomorphism of [0, 1]."""
    if m.n != 1 or m.m != 1:
        raise PLMapError("only maps of [0, 1] are elements of F")
    dom, ran = [], []
    xs = [x for x, _ in m.breakpoints]

    def visit(k, d):
        a, b = Dyadic(k, d), Dyadic(k + 1, d)
        # linear on [a, b] iff no breakpoint lies strictly inside
        if not any(a < x < b for x in xs):
            fa, fb = m(a), m(b)
            length = (fb - fa).to_fraction()
            if length.numerator == 1:
                depth = length.denominator.bit_length() - 1
                pos = fa.to_fraction() * (1 << depth)
                if pos.denominator == 1:
                    dom.append((k, d))
                    ran.append((int(pos), depth))
                    return
        visit(2 * k, d + 1)
        visit(2 * k + 1, d + 1)

    visit(0, 0)
    return make_pair(tree_from_intervals(dom), tree_from_intervals(ran))


def random_element(rng, max_leaves=10):
    """Reduced pair of two uniformly random trees with the same leaf count."""
    n = rng.randint(1, max_leaves)
    return make_pair(random_tree(n, rng), random_tree(n, rng))


# -- element expressions -----------------------------------------------------

class ExprError(ValueError):
    def __init__(self, msg, text, pos):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.pos = pos


class GeneratorBoundError(ExprError):
    """A generator index above :data:`MAX_GENERATOR`."""


_TOKEN = re.compile(r"\s*(?:(x\d+)|(id)|([.#^'()]))")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ExprError(f"unexpected {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        out.append((start, m.group(m.lastindex)))
        pos = m.end()
    return out


def parse_element(text):
    """Evaluate an element expression.

    Grammar, loosest binding first (all binary operators left associative)::

        expr  := prod ('#' prod)*          star product
        prod  := conj ('.' conj)*          group product, a.b = multiply(a, b)
        conj  := post ('^' post)*          a^b = b^-1 a b
        post  := atom "'"*                 inverse
        atom  := 'x' digits | 'id' | '(' expr ')'
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][1] if pos < len(tokens) else None

    def where():
        return tokens[pos][0] if pos < len(tokens) else len(text)

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1][1]

    def binary(sub, op, fn):
        def parse():
            left = sub()
            while peek() == op:
                take()
                left = fn(left, sub())
            return left
        return parse

    def atom():
        tok = peek()
        if tok is None:
            raise ExprError("unexpected end of expression", text, where())
        if tok == "(":
            take()
            val = expr()
            if peek() != ")":
                raise ExprError("expected ')'", text, where())
            take()
            return val
        if tok == "id":
            take()
            return IDENTITY
        if tok.startswith("x"):
            at = where()
            take()
            n = int(tok[1:])
            if n > MAX_GENERATOR:
                raise GeneratorBoundError(f"generator index above {MAX_GENERATOR}", text, at)
            return make_generator(n)
        raise ExprError(f"unexpected {tok!r}", text, where())

    def post():
        val = atom()
        while peek() == "'":
            take()
            val = invert(val)
        return val

    conj = binary(post, "^", conjugate)
    prod = binary(conj, ".", multiply)
    expr = binary(prod, "#", star)

    val = expr()
    if pos != len(tokens):
        raise ExprError(f"unexpected {peek()!r}", text, where())
    return val


def evaluate(f, t):
    return to_plmap(f)(t)
