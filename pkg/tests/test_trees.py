from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablemaps.coeffring import LCoeff, projective_class
from stablemaps.moduli import betti_vector, m_open, m_star
from stablemaps.symfunc import Truncation
from stablemaps.trees import (automorphisms, canonical_code, center, codomain, enumerate_trees,
                              flag_injection, max_flags, oracle_poincare, stratum_poincare,
                              to_dot)

P = projective_class
GRID = [(n, d) for n in range(5) for d in range(4)]


def by_code(n, d):
    return {ct.code: ct for ct in enumerate_trees(n, d)}


def test_counts():
    assert len(enumerate_trees(0, 3)) == 4
    assert len(enumerate_trees(3, 0)) == 1
    assert len(enumerate_trees(0, 2)) == 2
    assert len(enumerate_trees(4, 0)) == 4
    assert len(enumerate_trees(5, 0)) == 26
    assert enumerate_trees(0, 0) == [] and enumerate_trees(2, 0) == []


def test_automorphism_orders():
    trees = by_code(0, 3)
    assert trees["V(3;;)"].aut == 1
    assert trees["V(0;;(1;;)(1;;)(1;;))"].aut == 6
    assert trees["V(1;;(1;;)(1;;))"].aut == 2
    assert by_code(0, 2)["E(1;;)|(1;;)"].aut == 2


@pytest.mark.parametrize("n,d", GRID)
def test_structure_on_grid(n, d):
    for ct in enumerate_trees(n, d):
        t = ct.tree
        assert t.is_connected() and t.is_stable()
        assert t.d == d and sorted(lab for _, lab in t.leaf_labels) == list(range(1, n + 1))
        assert len(t.sigma) == t.n_vertices + len(t.edges) + len(t.legs) - 1
        iota, star = flag_injection(t)
        image = list(iota.values())
        assert len(set(image)) == len(image) == len(t.sigma)
        assert codomain(t) - set(image) == {star}
        assert len(t.sigma) <= max_flags(n, d)


@pytest.mark.parametrize("n,d", [(0, 1), (0, 2), (0, 3), (2, 1), (3, 1), (4, 0), (1, 3)])
def test_flag_maximum_is_attained(n, d):
    assert max(len(ct.tree.sigma) for ct in enumerate_trees(n, d)) == max_flags(n, d)


def test_flag_injection_examples():
    one = enumerate_trees(3, 0)[0].tree
    iota, star = flag_injection(one)
    assert all(v[0] == "L" for v in iota.values()) and star == ("V", 0)
    edge = by_code(0, 2)["E(1;;)|(1;;)"].tree
    iota, star = flag_injection(edge)
    assert star[0] == "E" and sorted(iota.values()) == [("V", 0), ("V", 1)]


def test_center_is_invariant():
    for n, d in GRID:
        for ct in enumerate_trees(n, d):
            kind, elems = center(ct.tree)
            for perm in automorphisms(ct.tree):
                if kind == "V":
                    moved = {ct.tree.vertex_of[perm[f]] for f in ct.tree.flags_at(elems[0])}
                    assert moved <= {elems[0]}
                else:
                    assert {perm[f] for f in elems} == set(elems)


def test_automorphisms_are_automorphisms():
    for n, d in GRID:
        for ct in enumerate_trees(n, d):
            t = ct.tree
            auts = automorphisms(t)
            assert len(set(auts)) == len(auts) == ct.aut
            for g in auts:
                assert all(t.sigma[g[f]] == g[t.sigma[f]] for f in t.flags)
                for f, lab in t.leaf_labels:
                    assert g[f] == f
                vmap = {t.vertex_of[f]: t.vertex_of[g[f]] for f in t.flags}
                for f in t.flags:
                    for f2 in t.flags:
                        same = t.vertex_of[f] == t.vertex_of[f2]
                        assert same == (t.vertex_of[g[f]] == t.vertex_of[g[f2]])
                assert all(t.deg[v] == t.deg[w] for v, w in vmap.items())


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(n, d) for n, d in GRID if n + d <= 5]), st.randoms(use_true_random=False))
def test_canonical_code_invariant_under_relabeling(nd, rnd):
    for ct in enumerate_trees(*nd):
        perm = list(range(len(ct.tree.sigma)))
        rnd.shuffle(perm)
        assert canonical_code(ct.tree.relabel_flags(perm)) == ct.code


def degree_three_strata(r):
    pr, prm1, prm2 = P(r), P(r - 1), P(r - 2)
    p1, p2 = P(1), P(2)
    l = lambda e: LCoeff.monomial(e)
    return {
        "V(3;;)": (l(2 * (r + 1)) * pr * prm1).exact_div(p1),
        "E(1;;)|(2;;)": (LCoeff([1, 1]) * l(r + 1) * pr * prm1 * prm1).exact_div(p1),
        "V(1;;(1;;)(1;;))": (l(2) * (pr + prm2) * pr * prm1 * prm1).exact_div(p1 * p1),
        "V(0;;(1;;)(1;;)(1;;))": (P(r + 1) * pr * pr * prm1).exact_div(p2 * p1),
    }


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_degree_three_strata(r):
    expected = degree_three_strata(r)
    for code, ct in by_code(0, 3).items():
        assert stratum_poincare(ct, r) == expected[code]


def test_single_vertex_stratum():
    for n, d in [(3, 0), (4, 0), (1, 2), (2, 1)]:
        ct = [c for c in enumerate_trees(n, d) if c.tree.n_vertices == 1][0]
        for r in range(3):
            t = Truncation(n + d, d)
            plain = m_open(r, t).coefficient((1,) * n, d) * factorial(n)
            assert stratum_poincare(ct, r) == plain


@pytest.mark.parametrize("n,d", [(1, 2), (2, 2), (3, 1), (0, 3), (4, 1), (2, 3)])
def test_trivial_aut_is_plain_product(n, d):
    # without symmetries the stratum is the product of vertex classes
    for ct in enumerate_trees(n, d):
        if ct.aut != 1:
            continue
        t = ct.tree
        trunc = Truncation(n + 2 * d + 2, d)
        kind, elems = center(t)
        roots = {t.vertex_of[f] for f in elems} if kind == "E" else {elems[0]}
        for r in range(3):
            expected = P(r) if kind == "E" else LCoeff.const(1)
            for v in range(t.n_vertices):
                k = t.valence(v) - (0 if kind == "V" and v in roots else 1)
                cls = m_open(r, trunc) if kind == "V" and v in roots else m_star(r, trunc)
                expected = expected * cls.coefficient((1,) * k, t.deg[v]) * factorial(k)
            assert stratum_poincare(ct, r) == expected


def test_edge_stratum_example():
    ct = by_code(0, 2)["E(1;;)|(1;;)"]
    assert stratum_poincare(ct, 1) == LCoeff([1, 1])


def test_oracle_examples():
    assert oracle_poincare(0, 3, 1) == LCoeff([1, 1, 2, 1, 1])
    for r in range(1, 5):
        assert oracle_poincare(0, 1, r) == (P(r) * P(r - 1)).exact_div(P(1))
    assert oracle_poincare(4, 0, 0) == LCoeff([1, 1])
    assert oracle_poincare(5, 0, 0) == LCoeff([1, 5, 1])


@pytest.mark.parametrize("n,d", [(n, d) for n in range(4) for d in range(4)])
def test_oracle_matches_recursion(n, d):
    for r in range(3):
        assert oracle_poincare(n, d, r) == betti_vector(r, d, n).poincare()


def test_dimensions():
    for ct in enumerate_trees(0, 3):
        assert ct.tree.dimension(2) == 8 - len(ct.tree.edges)
        assert stratum_poincare(ct, 2).degree == ct.tree.dimension(2)


def test_dot_output():
    ct = by_code(0, 2)["E(1;;)|(1;;)"]
    text = to_dot(ct, "T0")
    assert text.startswith('graph "T0" {') and "v0 -- v1;" in text and text.endswith("}")
