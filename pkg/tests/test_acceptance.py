"""Acceptance criteria 1-10, exact integer comparisons throughout.

Run with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``;
either way one PASS/FAIL line is printed per criterion.
"""

import random
import subprocess
import sys
from itertools import product
from math import comb
from pathlib import Path

import pytest

from thompson import coalg, forest, groupf, intlin, ncdga
from thompson.coalg import HClass, HTensor
from thompson.dyadic import plmap_compose
from thompson.ncdga import NCPoly, V, Z

GOLDEN = Path(__file__).parent / "golden"
SEED = 42


def failures(cases):
    """Labels of the failing ``(ok, label)`` cases."""
    return [label for ok, label in cases if not ok]


def summary(cases):
    cases = list(cases)
    bad = failures(cases)
    return not bad, f"{len(cases) - len(bad)}/{len(cases)}" + (f", first failure {bad[0]}" if bad else "")


def criterion_1():
    cases = [(ncdga.summand_homology(n, k) == (int(n == k), []), f"summand n={n} k={k}")
             for n in range(7) for k in range(1, 9)]
    rows = ncdga.homology_table(6)
    cases.append((rows[0]["rank"] == 1 and rows[0]["basis"] == ["ε"] and not rows[0]["torsion"], "H_0"))
    cases += [(r["rank"] == 2 and not r["torsion"], f"H_{r['degree']}") for r in rows[1:]]
    return summary(cases)


def criterion_2():
    beta = Z - Z * V
    relations = [
        ("ε²=ε", V * V - V),
        ("εζ=ζ-ζε", V * Z + Z * V - Z),
        ("εζε=0", V * Z * V),
        ("α²=0", Z * V * Z * V),
        ("β²=0", beta * beta),
    ]
    cases = []
    for name, c in relations:
        b = ncdga.certify_homologous(c, NCPoly.zero())
        cases.append((b is not None and ncdga.boundary(b) == c, name))
    return summary(cases)


def criterion_3():
    cases = []
    for n in range(1, 6):
        rows = []
        for key in coalg.hbasis(n):
            cls = ncdga.class_of(coalg.representative(HClass.basis(key)), n)
            rows.append([cls.first, cls.second])
        cases.append((abs(intlin.det(rows)) == 1, f"n={n}"))
    return summary(cases)


def criterion_4():
    rng = random.Random(SEED)
    x = groupf.make_generator
    m, conj, star, shift = groupf.multiply, groupf.conjugate, groupf.star, groupf.shift
    cases = [(conj(x(n), x(i)) == x(n + 1), f"x{n}^x{i}") for n in range(1, 9) for i in range(n)]
    x0, x1 = x(0), x(1)
    cases.append((conj(x1, m(x0, x0)) == conj(x1, m(x0, x1)), "x1^(x0x0)"))
    cases.append((conj(x1, m(m(x0, x0), x0)) == conj(x1, m(m(x0, x0), x1)), "x1^(x0x0x0)"))
    cases += [(shift(x(n)) == x(n + 1), f"shift x{n}") for n in range(9)]
    rand = lambda: groupf.random_element(rng, max_leaves=10)  # noqa: E731
    for i in range(100):
        f, f2, g, g2, h = rand(), rand(), rand(), rand(), rand()
        cases.append((shift(shift(f)) == conj(shift(f), x0), f"phi^2 #{i}"))
        cases.append((star(f, star(g, h)) == conj(star(star(f, g), h), x0), f"star assoc #{i}"))
        cases.append((star(groupf.IDENTITY, f) == shift(f), f"1*f #{i}"))
        cases.append((star(m(f, f2), m(g, g2)) == m(star(f, g), star(f2, g2)), f"star hom #{i}"))
        a, b = groupf.abelianize(f), groupf.abelianize(g)
        cases.append((groupf.abelianize(m(f, g)) == (a[0] + b[0], a[1] + b[1]), f"abelianize #{i}"))
        fg = groupf.to_plmap(m(f, g))
        cases.append((fg == plmap_compose(groupf.to_plmap(f), groupf.to_plmap(g)), f"composition #{i}"))
    return summary(cases)


def criterion_5():
    rng = random.Random(SEED)
    cases = []
    for i in range(500):
        p = ncdga.random_ncpoly(rng)
        cases.append((ncdga.expand_from_ewz(ncdga.rewrite_to_ewz(p)) == p, f"roundtrip #{i}"))
        cases.append((ncdga.rewrite_to_ewz(ncdga.boundary(p)) == ncdga.boundary_m(ncdga.rewrite_to_ewz(p)),
                      f"commutation #{i}"))
    cases.append((ncdga.independence_check(6), "truncated independence"))
    return summary(cases)


def criterion_6():
    rng = random.Random(SEED)
    h, d, pi = ncdga.contraction, ncdga.boundary_m, ncdga.projection
    cases = []
    for i in range(200):
        c = ncdga.random_mpoly(rng, rng.randint(0, 4))
        cases.append((d(h(c)) + h(d(c)) == c - pi(c), f"chain #{i}"))
    th, td, tpi = coalg.m_tensor_contraction, coalg.m_tensor_boundary, coalg.m_tensor_projection
    for i in range(100):
        a = ncdga.random_mpoly(rng, rng.randint(0, 3))
        b = ncdga.random_mpoly(rng, rng.randint(0, 3))
        t = coalg.MTensor.from_pairs(((x, y), p * q) for x, p in a.items() for y, q in b.items())
        cases.append((td(th(t)) + th(td(t)) == t - tpi(t), f"tensor #{i}"))
    return summary(cases)


def criterion_7():
    rng = random.Random(SEED)
    delta = coalg.serre_diagonal
    cases = []
    for i in range(100):
        w = "".join(rng.choice("ve") for _ in range(rng.randint(0, 8)))
        u = "".join(rng.choice("ve") for _ in range(rng.randint(0, 8 - len(w))))
        p, q = NCPoly.word(w), NCPoly.word(u)
        cases.append((coalg.tensor_boundary(delta(p)) == delta(ncdga.boundary(p)), f"chain map {w}"))
        cases.append((delta(p * q) == delta(p) * delta(q), f"multiplicative {w},{u}"))
        dp = delta(p)
        cases.append((coalg.diagonal_left(dp) == coalg.diagonal_right(dp), f"coassociative {w}"))
    named = {"ε": coalg.EPS, "α": coalg.ALPHA, "β": coalg.BETA, "t": coalg.T}
    named.update({coalg.hname(k): HClass.basis(k) for k in coalg.hbasis(3)})
    for name, x in named.items():
        cases.append((coalg.chain_coproduct(x) == coalg.hclass_coproduct(x), f"primitivity {name}"))
    for n in range(1, 7):
        expect = HTensor.from_pairs((("ba" * i, "ba" * (n - i)), comb(n, i)) for i in range(n + 1))
        cases.append((coalg.hclass_coproduct(coalg.T ** n) == expect, f"Δ(t^{n})"))
    return summary(cases)


def criterion_8():
    u, cup = coalg.divided_power, coalg.cup_product
    cases = [(coalg.find_presentation(8)["ok"], "presentation up to 8")]
    cases += [(cup(u(i), u(j)) == u(i + j).scale(comb(i + j, i)), f"u({i})u({j})")
              for i in range(7) for j in range(7 - i)]
    cases.append((cup(u(2), u(3)) == u(5).scale(10), "u(2)u(3)=10u(5)"))
    ab, ba = cup(coalg.A_GEN, coalg.B_GEN), cup(coalg.B_GEN, coalg.A_GEN)
    cases.append((bool(ab) and ab == -ba, "a∪b = -b∪a ≠ 0"))
    cases.append((coalg.corner_ring_check(10), "εHε = Z[t] up to 10"))
    return summary(cases)


def criterion_9():
    rng = random.Random(SEED)
    cases = []
    for n in range(1, 7):
        for letters in product("ve", repeat=n):
            w = "".join(letters)
            cases.append((NCPoly(forest.cube_boundary(w)) == ncdga.boundary(NCPoly.word(w)), f"∂{w}"))
            if w.count("e") <= 4:
                cases.append((forest.interval_poset_check(w), f"poset {w}"))
    for i in range(200):
        s = forest.random_tree(rng.randint(1, 10), rng)
        t = forest.random_tree(rng.randint(1, 10), rng)
        c = forest.common_refinement(s, t)
        cases.append((forest.is_expansion(s, c) and forest.is_expansion(t, c), f"refinement #{i}"))
    return summary(cases)


def criterion_10():
    def cli(*args):
        return subprocess.run([sys.executable, "-m", "thompson", *args], capture_output=True, text=True)

    cases = []
    for args, name in ((["hom", "--max-degree", "4", "--json"], "hom_4.json"),
                       (["cup", "--max-degree", "4", "--json"], "cup_4.json")):
        proc = cli(*args)
        cases.append((proc.returncode == 0 and proc.stdout == (GOLDEN / name).read_text(encoding="utf-8"),
                      name))
    cases.append((cli("verify", "--suite", "all", "--seed", "42").returncode == 0, "verify all"))
    return summary(cases)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def report(fn):
    ok, detail = fn()
    n = fn.__name__.split("_")[1]
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"


@pytest.mark.parametrize("fn", CRITERIA, ids=lambda fn: fn.__name__)
def test_criterion(fn, capsys):
    ok, line = report(fn)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [report(fn) for fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
