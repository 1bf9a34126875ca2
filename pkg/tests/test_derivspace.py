"""Degree-1 and degree-2 derivation lattices and the symplectic action."""

import math

import numpy as np
import pytest

from sympderiv.derivspace import (MembershipError, gl_embed, iota_matrix,
                                  is_symplectic, space, symplectic_J)
from sympderiv.intlin import IntegerLattice, kernel_lattice, safe_matmul

D2_RANK = {2: 20, 3: 105}
D1_RANK = {2: 4, 3: 20}  # C(2g, 3)


@pytest.mark.parametrize("g", [2, 3])
def test_d2_rank_two_ways(g):
    sp = space(g)
    assert sp.d2().rank == D2_RANK[g] == sp.d2_rank_by_count()


@pytest.mark.parametrize("g", [2, 3])
def test_d1_rank(g):
    sp = space(g)
    assert sp.d1().rank == math.comb(2 * g, 3) == D1_RANK[g]


def test_d1_equals_tripod_span():
    sp = space(2)
    tripods = np.array([sp.d1_tree_value(t) for t in sp.d1_tree_basis()])
    assert IntegerLattice(sp.ctx.n * sp.ctx.dim(2), tripods) == sp.d1()


def test_dprime_index():
    sp = space(2)
    assert sp.d2().index(sp.dprime2()) == 2 ** 6  # 2^{C(2g,2)}


def test_generator_values_live_in_d2():
    sp = space(2)
    d2 = sp.d2()
    for gen in sp.generators[:12]:
        assert sp.gen_value(gen) in d2


def test_express_roundtrip():
    sp = space(2)
    rng = np.random.default_rng(11)
    basis = sp.d2().basis
    v = basis.T @ rng.integers(-2, 3, size=sp.d2().rank)
    c = sp.express_in_generators(v)
    assert np.array_equal(sp.gen_matrix() @ c, v)
    with pytest.raises(MembershipError):
        bad = np.asarray(v).copy()
        bad[0] += 1
        sp.express_in_generators(bad)


def test_tree_expression_requires_dprime():
    sp = space(2)
    odot = sp.gen_value(("odot", (0, 2)))
    with pytest.raises(MembershipError):
        sp.express_in_tree_generators(odot)
    tree = sp.gen_value(("tree", (0, 2), (1, 3)))
    c = sp.express_in_tree_generators(tree)
    gm = sp.gen_matrix()[:, sp.tree_indices]
    assert np.array_equal(gm @ c, tree)


def test_classify_type():
    sp = space(2)
    assert sp.classify_type(("odot", (0, 1))) == (4, 0)
    assert sp.classify_type(("odot", (0, 2))) == (2, 2)
    assert sp.classify_type(("tree", (0, 1), (2, 3))) == (2, 2)
    assert sp.classify_type(("tree", (2, 3), (2, 3))) == (0, 4)


def test_filtration_is_nested():
    sp = space(2)
    prev = sp.filtration(-1)
    for level in range(4):
        cur = sp.filtration(level)
        assert all(row in prev for row in cur.basis)
        prev = cur
    assert sp.filtration(3).rank < sp.filtration(0).rank


def test_symplectic_predicates():
    g = 2
    j = symplectic_J(g)
    assert is_symplectic(g, np.eye(2 * g, dtype=np.int64))
    assert is_symplectic(g, iota_matrix(g))
    assert is_symplectic(g, j)
    bad = np.eye(2 * g, dtype=np.int64)
    bad[0, 1] = 1
    assert not is_symplectic(g, bad)
    p = np.array([[1, 1], [0, 1]])
    assert is_symplectic(g, gl_embed(g, p))


def test_iota_swaps_sides():
    g = 2
    m = iota_matrix(g)
    e0 = np.zeros(2 * g, dtype=np.int64)
    e0[0] = 1
    img = m @ e0
    assert abs(img[g]) == 1 and img[0] == 0


def test_action_preserves_d2():
    sp = space(2)
    d2 = sp.d2()
    rng = np.random.default_rng(12)
    p = np.array([[1, 2], [0, 1]])
    m = gl_embed(2, p)
    v = d2.basis.T @ rng.integers(-2, 3, size=d2.rank)
    assert sp.apply_homology_action(m, v) in d2
    with pytest.raises(ValueError):
        bad = np.eye(4, dtype=np.int64)
        bad[0, 1] = 1
        sp.apply_homology_action(bad, v)


def test_action_is_functorial():
    sp = space(2)
    m1 = gl_embed(2, np.array([[1, 1], [0, 1]]))
    m2 = gl_embed(2, np.array([[0, 1], [1, 0]]))
    a12 = sp.action_matrix(safe_matmul(m1, m2))
    composed = safe_matmul(sp.action_matrix(m1), sp.action_matrix(m2))
    assert np.array_equal(a12, composed)


def test_ker_projection_inside_d2():
    sp = space(2)
    ka = sp.ker_projection("A")
    d2 = sp.d2()
    assert 0 < ka.rank < d2.rank
    for row in ka.basis:
        assert row in d2
        # the quotient coordinate map really kills it
        assert not (sp.quotient_map_matrix("A") @ row).any()
