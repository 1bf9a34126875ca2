"""Tripod and H-tree expansions: symmetries, IHX, and the bracket oracle."""

import itertools

import numpy as np

from sympderiv.freelie import context
from sympderiv.trees import (derivation_bracket, eta1, eta2, expand_symhalf,
                             tree_bracket)


def _rand_vecs(ctx, rng, n):
    return [rng.integers(-3, 4, size=ctx.n) for _ in range(n)]


def test_eta1_cyclic_and_antisymmetric():
    ctx = context(2)
    rng = np.random.default_rng(0)
    u, v, w = _rand_vecs(ctx, rng, 3)
    base = eta1(ctx, u, v, w)
    assert np.array_equal(eta1(ctx, v, w, u), base)
    assert np.array_equal(eta1(ctx, w, u, v), base)
    assert np.array_equal(eta1(ctx, v, u, w), -base)


def test_eta1_multilinear():
    ctx = context(2)
    rng = np.random.default_rng(1)
    u, u2, v, w = _rand_vecs(ctx, rng, 4)
    lhs = eta1(ctx, np.asarray(u) + 2 * np.asarray(u2), v, w)
    rhs = eta1(ctx, u, v, w) + 2 * eta1(ctx, u2, v, w)
    assert np.array_equal(lhs, rhs)


def test_eta2_pair_symmetries():
    ctx = context(2)
    rng = np.random.default_rng(2)
    a, b, c, d = _rand_vecs(ctx, rng, 4)
    base = eta2(ctx, a, b, c, d)
    assert np.array_equal(eta2(ctx, b, a, c, d), -base)
    assert np.array_equal(eta2(ctx, a, b, d, c), -base)
    assert np.array_equal(eta2(ctx, c, d, a, b), base)


def test_eta2_ihx():
    """Summing over the three cyclic mid-edge slidings gives zero."""
    ctx = context(2)
    rng = np.random.default_rng(3)
    for _ in range(10):
        a, b, c, d = _rand_vecs(ctx, rng, 4)
        total = (eta2(ctx, a, b, c, d) + eta2(ctx, b, c, a, d)
                 + eta2(ctx, c, a, b, d))
        assert not total.any()


def test_symhalf_doubling():
    ctx = context(2)
    rng = np.random.default_rng(4)
    u, v = _rand_vecs(ctx, rng, 2)
    assert np.array_equal(2 * expand_symhalf(ctx, u, v), eta2(ctx, u, v, u, v))
    # symmetric, and insensitive to negating one argument
    assert np.array_equal(expand_symhalf(ctx, v, u), expand_symhalf(ctx, u, v))
    assert np.array_equal(expand_symhalf(ctx, u, -np.asarray(v)),
                          expand_symhalf(ctx, u, v))


def test_symhalf_polarization():
    # (u+v) . w - u . w - v . w = eta2(u, w | v, w)
    ctx = context(2)
    rng = np.random.default_rng(5)
    u, v, w = _rand_vecs(ctx, rng, 3)
    lhs = (expand_symhalf(ctx, np.asarray(u) + np.asarray(v), w)
           - expand_symhalf(ctx, u, w) - expand_symhalf(ctx, v, w))
    assert np.array_equal(lhs, eta2(ctx, u, w, v, w))


def test_tree_bracket_antisymmetric():
    ctx = context(2)
    rng = np.random.default_rng(6)
    s = tuple(_rand_vecs(ctx, rng, 3))
    t = tuple(_rand_vecs(ctx, rng, 3))
    assert np.array_equal(tree_bracket(ctx, s, t), -tree_bracket(ctx, t, s))


def test_tree_bracket_matches_derivation_oracle():
    """The nine-contraction formula agrees with the honest commutator of
    the associated derivations, computed by Leibniz extension."""
    ctx = context(2)
    rng = np.random.default_rng(7)
    for _ in range(8):
        s = tuple(_rand_vecs(ctx, rng, 3))
        t = tuple(_rand_vecs(ctx, rng, 3))
        via_trees = tree_bracket(ctx, s, t)
        via_derivations = derivation_bracket(ctx, eta1(ctx, *s), eta1(ctx, *t))
        assert np.array_equal(via_trees, via_derivations)


def test_tree_bracket_on_basis_tripods_genus3():
    ctx = context(3)
    e = [np.array(ctx.basis_vector(p)) for p in range(ctx.n)]
    s = (e[0], e[1], e[3])
    t = (e[2], e[4], e[5])
    via_trees = tree_bracket(ctx, s, t)
    via_derivations = derivation_bracket(ctx, eta1(ctx, *s), eta1(ctx, *t))
    assert np.array_equal(via_trees, via_derivations)
    assert via_trees.any()


def test_lagrangian_tripods_commute():
    # all leaves on the A side: every omega-contraction vanishes
    ctx = context(2)
    e0 = np.array(ctx.basis_vector(0))
    e1 = np.array(ctx.basis_vector(1))
    s = (e0, e1, e0 + e1)
    t = (e1, e0, e0 - e1)
    assert not tree_bracket(ctx, s, t).any()
