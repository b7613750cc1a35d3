"""Seeded invariant suites, shared by the CLI and the test suite.

Each check gets its own RNG derived from the seed and the check name, so a
suite's outcome does not depend on which other checks ran before it.
"""

import random
from dataclasses import dataclass
from itertools import product
from math import comb

from . import coalg, forest, groupf, intlin, ncdga
from .dyadic import Dyadic, plmap_compose
from .ncdga import NCPoly, V, Z

SAMPLES = 100


@dataclass
class Result:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def __str__(self):
        tail = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.suite}.{self.name}{tail}"


SUITES = {}


def check(suite):
    def register(fn):
        SUITES.setdefault(suite, []).append(fn)
        return fn
    return register


def _all_pass(items):
    """``(passed, detail)`` from an iterable of ``(ok, label)``."""
    items = list(items)
    bad = [label for ok, label in items if not ok]
    if bad:
        return False, f"{len(bad)}/{len(items)} failed, first: {bad[0]}"
    return True, f"{len(items)} cases"


# -- group -------------------------------------------------------------------

def _x(n):
    return groupf.make_generator(n)


def _rand(rng):
    return groupf.random_element(rng, max_leaves=10)


@check("group")
def presentation(rng):
    return _all_pass((groupf.conjugate(_x(n), _x(i)) == _x(n + 1), f"i={i}, n={n}")
                     for n in range(1, 9) for i in range(n))


@check("group")
def two_relations(rng):
    x0, x1 = _x(0), _x(1)
    m = groupf.multiply
    return _all_pass([
        (groupf.conjugate(x1, m(x0, x0)) == groupf.conjugate(x1, m(x0, x1)), "x1^(x0x0)"),
        (groupf.conjugate(x1, m(m(x0, x0), x0)) == groupf.conjugate(x1, m(m(x0, x0), x1)),
         "x1^(x0x0x0)"),
    ])


@check("group")
def shift_generators(rng):
    return _all_pass((groupf.shift(_x(n)) == _x(n + 1), f"n={n}") for n in range(9))


@check("group")
def shift_squared(rng):
    cases = []
    for _ in range(SAMPLES):
        f = _rand(rng)
        sf = groupf.shift(f)
        cases.append((groupf.shift(sf) == groupf.conjugate(sf, _x(0)), str(f)))
    return _all_pass(cases)


@check("group")
def star_associativity(rng):
    cases = []
    for _ in range(SAMPLES):
        f, g, h = _rand(rng), _rand(rng), _rand(rng)
        lhs = groupf.star(f, groupf.star(g, h))
        rhs = groupf.conjugate(groupf.star(groupf.star(f, g), h), _x(0))
        cases.append((lhs == rhs, f"{f}, {g}, {h}"))
    return _all_pass(cases)


@check("group")
def star_unit_is_shift(rng):
    cases = []
    for _ in range(SAMPLES):
        f = _rand(rng)
        cases.append((groupf.star(groupf.IDENTITY, f) == groupf.shift(f), str(f)))
    return _all_pass(cases)


@check("group")
def star_homomorphism(rng):
    m, s = groupf.multiply, groupf.star
    cases = []
    for _ in range(SAMPLES):
        f, f2, g, g2 = (_rand(rng) for _ in range(4))
        cases.append((s(m(f, f2), m(g, g2)) == m(s(f, g), s(f2, g2)), f"{f}, {f2}, {g}, {g2}"))
    return _all_pass(cases)


@check("group")
def abelianization_additive(rng):
    cases = []
    for _ in range(SAMPLES):
        f, g = _rand(rng), _rand(rng)
        a, b = groupf.abelianize(f), groupf.abelianize(g)
        cases.append((groupf.abelianize(groupf.multiply(f, g)) == (a[0] + b[0], a[1] + b[1]),
                      f"{f}, {g}"))
    return _all_pass(cases)


@check("group")
def commutator_subgroup(rng):
    cases = []
    for _ in range(SAMPLES):
        f, g = _rand(rng), _rand(rng)
        c = groupf.commutator(f, g)
        ok = groupf.in_commutator_subgroup(c)
        ok = ok and groupf.in_commutator_subgroup(groupf.star(c, groupf.commutator(g, f)))
        cases.append((ok, f"{f}, {g}"))
    return _all_pass(cases)


@check("group")
def plmap_oracle(rng):
    cases = []
    for _ in range(SAMPLES):
        f, g = _rand(rng), _rand(rng)
        fg = groupf.multiply(f, g)
        ok = groupf.to_plmap(fg) == plmap_compose(groupf.to_plmap(f), groupf.to_plmap(g))
        ok = ok and groupf.from_plmap(groupf.to_plmap(f)) == f and groupf.is_reduced(fg)
        cases.append((ok, f"{f}, {g}"))
    return _all_pass(cases)


@check("group")
def reduction_confluence(rng):
    cases = []
    for _ in range(SAMPLES):
        n = rng.randint(1, 10)
        d, r = forest.random_tree(n, rng), forest.random_tree(n, rng)
        cases.append((groupf.reduce_pair(d, r, choose=rng.choice) == groupf.reduce_pair(d, r),
                      f"{forest.tree_to_text(d)}, {forest.tree_to_text(r)}"))
    return _all_pass(cases)


# -- dga ---------------------------------------------------------------------

@check("dga")
def summand_ranks(rng):
    return _all_pass((ncdga.summand_homology(n, k) == (int(n == k), []), f"n={n}, k={k}")
                     for n in range(7) for k in range(1, 9))


@check("dga")
def assembled_ranks(rng):
    rows = ncdga.homology_table(6)
    cases = [(rows[0]["rank"] == 1 and rows[0]["basis"] == ["ε"], "n=0")]
    cases += [(r["rank"] == 2 and not r["torsion"], f"n={r['degree']}") for r in rows[1:]]
    return _all_pass(cases)


RELATIONS = {
    "ε²=ε": (V * V, V),
    "εζ=ζ-ζε": (V * Z, Z - Z * V),
    "εζε=0": (V * Z * V, NCPoly.zero()),
    "α²=0": (Z * V * Z * V, NCPoly.zero()),
    "β²=0": ((Z - Z * V) * (Z - Z * V), NCPoly.zero()),
}


@check("dga")
def relation_certificates(rng):
    cases = []
    for name, (c1, c2) in RELATIONS.items():
        b = ncdga.certify_homologous(c1, c2)
        cases.append((b is not None and ncdga.boundary(b) == c1 - c2, name))
    return _all_pass(cases)


def alternating_matrix(n):
    """Rows: chain coordinates (zeta^n, zeta^n eps) of the classes A_n, B_n."""
    rows = []
    for key in coalg.hbasis(n):
        cls = ncdga.class_of(coalg.representative(coalg.HClass.basis(key)), n)
        rows.append([cls.first, cls.second])
    return rows


@check("dga")
def alternating_basis(rng):
    return _all_pass((abs(intlin.det(alternating_matrix(n))) == 1, f"n={n}") for n in range(1, 6))


@check("dga")
def boundary_squared(rng):
    cases = []
    for _ in range(SAMPLES):
        p = ncdga.random_ncpoly(rng)
        cases.append((not ncdga.boundary(ncdga.boundary(p)), str(p)))
    return _all_pass(cases)


@check("dga")
def rewrite_roundtrip(rng):
    cases = []
    for _ in range(5 * SAMPLES):
        p = ncdga.random_ncpoly(rng)
        m = ncdga.rewrite_to_ewz(p)
        ok = ncdga.expand_from_ewz(m) == p and ncdga.rewrite_to_ewz(p, rng=rng) == m
        cases.append((ok, str(p)))
    return _all_pass(cases)


@check("dga")
def truncated_independence(rng):
    return ncdga.independence_check(6), "weights up to 6"


@check("dga")
def rewrite_commutes_with_boundary(rng):
    cases = []
    for _ in range(SAMPLES):
        p = ncdga.random_ncpoly(rng)
        lhs = ncdga.rewrite_to_ewz(ncdga.boundary(p))
        cases.append((lhs == ncdga.boundary_m(ncdga.rewrite_to_ewz(p)), str(p)))
    return _all_pass(cases)


@check("dga")
def contraction_identity(rng):
    cases = []
    for _ in range(2 * SAMPLES):
        m = ncdga.random_mpoly(rng, rng.randint(0, 4))
        h, d = ncdga.contraction, ncdga.boundary_m
        cases.append((d(h(m)) + h(d(m)) == m - ncdga.projection(m), str(m)))
    return _all_pass(cases)


# -- coalg -------------------------------------------------------------------

def random_word(rng, max_len=8):
    return "".join(rng.choice("ve") for _ in range(rng.randint(0, max_len)))


@check("coalg")
def diagonal_chain_map(rng):
    cases = []
    for _ in range(SAMPLES):
        p = ncdga.random_ncpoly(rng, max_len=8)
        lhs = coalg.tensor_boundary(coalg.serre_diagonal(p))
        cases.append((lhs == coalg.serre_diagonal(ncdga.boundary(p)), str(p)))
    return _all_pass(cases)


@check("coalg")
def diagonal_multiplicative(rng):
    cases = []
    for _ in range(SAMPLES):
        p, q = ncdga.random_ncpoly(rng, max_len=4), ncdga.random_ncpoly(rng, max_len=4)
        d = coalg.serre_diagonal
        cases.append((d(p * q) == d(p) * d(q), f"{p}; {q}"))
    return _all_pass(cases)


@check("coalg")
def coassociativity(rng):
    cases = []
    for _ in range(SAMPLES):
        w = random_word(rng)
        d = coalg.serre_diagonal(NCPoly.word(w))
        cases.append((coalg.diagonal_left(d) == coalg.diagonal_right(d), w or "1"))
    return _all_pass(cases)


@check("coalg")
def tensor_boundary_squared(rng):
    cases = []
    for _ in range(SAMPLES):
        t = coalg.TensorPoly.tensor(ncdga.random_ncpoly(rng), ncdga.random_ncpoly(rng))
        cases.append((not coalg.tensor_boundary(coalg.tensor_boundary(t)), str(t)))
    return _all_pass(cases)


@check("coalg")
def kunneth_contraction(rng):
    cases = []
    for _ in range(SAMPLES):
        a = ncdga.random_mpoly(rng, rng.randint(0, 3))
        b = ncdga.random_mpoly(rng, rng.randint(0, 3))
        t = coalg.MTensor.from_pairs(((x, y), c * d) for x, c in a.items() for y, d in b.items())
        h, d = coalg.m_tensor_contraction, coalg.m_tensor_boundary
        cases.append((d(h(t)) + h(d(t)) == t - coalg.m_tensor_projection(t), f"{a}; {b}"))
    return _all_pass(cases)


@check("coalg")
def chain_formal_agreement(rng):
    named = {"ε": coalg.EPS, "α": coalg.ALPHA, "β": coalg.BETA, "t": coalg.T}
    named.update({coalg.hname(k): coalg.HClass.basis(k) for k in coalg.hbasis(3)})
    return _all_pass((coalg.chain_coproduct(x) == coalg.hclass_coproduct(x), name)
                     for name, x in named.items())


@check("coalg")
def power_of_t_coproduct(rng):
    cases = []
    for n in range(1, 7):
        expect = coalg.HTensor.from_pairs(
            (("ba" * i, "ba" * (n - i)), comb(n, i)) for i in range(n + 1))
        cases.append((coalg.hclass_coproduct(coalg.T ** n) == expect, f"n={n}"))
    return _all_pass(cases)


@check("coalg")
def presentation(rng):
    report = coalg.find_presentation(8)
    return report["ok"], f"determinants {report['determinants']}"


@check("coalg")
def divided_powers(rng):
    u = coalg.divided_power
    return _all_pass((coalg.cup_product(u(i), u(j)) == u(i + j).scale(comb(i + j, i)), f"{i},{j}")
                     for i in range(7) for j in range(7 - i))


@check("coalg")
def degree_one_cup(rng):
    ab = coalg.cup_product(coalg.A_GEN, coalg.B_GEN)
    ba = coalg.cup_product(coalg.B_GEN, coalg.A_GEN)
    aa = coalg.cup_product(coalg.A_GEN, coalg.A_GEN)
    return bool(ab) and ab == -ba and not aa, f"a∪b = {ab}"


@check("coalg")
def cup_ring_axioms(rng):
    return coalg.cup_ring_check(8), "degree ≤ 8"


@check("coalg")
def corner_ring(rng):
    return coalg.corner_ring_check(10), "degree ≤ 10"


# -- forest ------------------------------------------------------------------

@check("forest")
def cube_boundary_matches_dga(rng):
    cases = []
    for n in range(7):
        for letters in product("ve", repeat=n):
            w = "".join(letters)
            lhs = NCPoly(forest.cube_boundary(w))
            cases.append((lhs == ncdga.boundary(NCPoly.word(w)), w or "1"))
    return _all_pass(cases)


@check("forest")
def interval_posets(rng):
    cases = []
    for n in range(1, 7):
        for letters in product("ve", repeat=n):
            w = "".join(letters)
            if w.count("e") <= 4:
                cases.append((forest.interval_poset_check(w), w))
    return _all_pass(cases)


@check("forest")
def refinement_directed(rng):
    cases = []
    for _ in range(2 * SAMPLES):
        s = forest.random_tree(rng.randint(1, 10), rng)
        t = forest.random_tree(rng.randint(1, 10), rng)
        c = forest.common_refinement(s, t)
        cases.append((forest.is_expansion(s, c) and forest.is_expansion(t, c),
                      f"{forest.tree_to_text(s)}, {forest.tree_to_text(t)}"))
    return _all_pass(cases)


@check("forest")
def cubeword_roundtrip(rng):
    cases = []
    for _ in range(SAMPLES):
        w = random_word(rng) or "v"
        f = forest.cubeword_to_forest(w)
        cases.append((forest.forest_to_cubeword(f) == w and forest.is_elementary(f), w))
    return _all_pass(cases)


@check("forest")
def subdivision_dyadic(rng):
    cases = []
    for _ in range(SAMPLES):
        t = forest.random_tree(rng.randint(1, 10), rng)
        f = forest.BinaryForest((t,))
        m = forest.subdivision_map(f)
        ends = [(Dyadic(k + 1, d)) for k, d in forest.leaf_intervals(t)]
        ok = all(m(i + 1) == x for i, x in enumerate(ends))
        cases.append((ok, forest.tree_to_text(t)))
    return _all_pass(cases)


# -- driver ------------------------------------------------------------------

def run_suite(name, seed=0):
    """Run one suite (or ``"all"``) and return the list of results."""
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(f"unknown suite {name!r}")
    results = []
    for suite in names:
        for fn in SUITES[suite]:
            rng = random.Random(f"{seed}:{suite}.{fn.__name__}")
            try:
                passed, detail = fn(rng)
            except Exception as exc:  # a crash is a failure, reported with its message
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(Result(suite, fn.__name__, bool(passed), detail))
    return results
