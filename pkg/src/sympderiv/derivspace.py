"""Derivation lattices D_1, D_2, D_2', generator coordinates, filtrations,
quotient kernels, and the homology actions.

Generators of D_2(H) follow the tree/symmetric-half presentation: one
(.)-generator per basis pair P = (p,q), one tree generator per unordered
pair of basis pairs P <= Q.  Arbitrary elements live in ambient H (x) L_3
coordinates; generator coefficients are recovered by an HNF solve.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from . import trees
from .freelie import SymplecticContext, context
from .intlin import (IntegerLattice, as_int_matrix, hermite_normal_form,
                     kernel_lattice, left_kernel, solve_over_hnf,
                     _nonzero_rows, _pivot_cols)


class MembershipError(ValueError):
    pass


class FiltrationError(ValueError):
    pass


class InconsistencyError(RuntimeError):
    pass


def symplectic_J(g: int) -> np.ndarray:
    j = np.zeros((2 * g, 2 * g), dtype=np.int64)
    j[:g, g:] = np.eye(g, dtype=np.int64)
    j[g:, :g] = -np.eye(g, dtype=np.int64)
    return j


def is_symplectic(g: int, m: np.ndarray) -> bool:
    j = symplectic_J(g)
    return bool(np.array_equal(m.T @ j @ m, j))


def iota_matrix(g: int) -> np.ndarray:
    """a_i -> -b_i, b_i -> a_i."""
    m = np.zeros((2 * g, 2 * g), dtype=np.int64)
    m[:g, g:] = np.eye(g, dtype=np.int64)
    m[g:, :g] = -np.eye(g, dtype=np.int64)
    return m


def gl_embed(g: int, p: np.ndarray) -> np.ndarray:
    """diag(P, (P^T)^{-1}) for P in GL(g, Z)."""
    p = as_int_matrix(p)
    det = round(float(np.linalg.det(p)))
    if det not in (1, -1):
        raise ValueError("matrix is not in GL(g, Z)")
    pinv_t = np.rint(np.linalg.inv(p.astype(float)).T).astype(np.int64)
    if not np.array_equal(p.T @ pinv_t, np.eye(g, dtype=np.int64)):
        raise ValueError("integer inverse check failed")
    m = np.zeros((2 * g, 2 * g), dtype=np.int64)
    m[:g, :g] = p
    m[g:, g:] = pinv_t
    return m


def lie_degree_matrix(ctx: SymplecticContext, m: np.ndarray, k: int) -> np.ndarray:
    """Matrix of L_k(m) over the Lyndon basis."""
    m = as_int_matrix(m)
    cache: dict[tuple[int, ...], np.ndarray] = {}

    def img(w):
        if w not in cache:
            if len(w) == 1:
                cache[w] = m[:, w[0]].copy()
            else:
                from .freelie import standard_factorization
                u, v = standard_factorization(w)
                cache[w] = ctx.lie_bracket(len(u), img(u), len(v), img(v))
        return cache[w]

    out = np.zeros((ctx.dim(k), ctx.dim(k)), dtype=np.int64)
    for i, w in enumerate(ctx.lyndon(k)):
        out[:, i] = img(w)
    return out


class _GenSolver:
    """Solve integer systems x @ rows = v once the HNF is precomputed."""

    def __init__(self, rows: np.ndarray):
        h, u = hermite_normal_form(rows, transform=True)
        mask = np.array([bool(np.any(r)) for r in h])
        self.basis = h[mask]
        self.trans = u[mask]
        self.pivots = _pivot_cols(self.basis)

    def solve(self, v):
        c = solve_over_hnf(self.basis, self.pivots, v)
        if c is None:
            return None
        return c @ self.trans.astype(object)


class DerivationSpace:
    """All degree-1/degree-2 lattice data for one genus (built lazily)."""

    def __init__(self, genus: int):
        if genus < 2:
            raise ValueError("genus must be >= 2")
        self.g = genus
        self.ctx = context(genus)
        n = self.ctx.n
        self.pairs: list[tuple[int, int]] = list(itertools.combinations(range(n), 2))
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.generators: list[tuple] = [("odot", p) for p in self.pairs]
        for i, p in enumerate(self.pairs):
            for q in self.pairs[i:]:
                self.generators.append(("tree", p, q))
        self.tree_indices = [i for i, gen in enumerate(self.generators)
                             if gen[0] == "tree"]
        self.ambient_dim = n * self.ctx.dim(3)

    # -- generator geometry ----------------------------------------------
    def gen_leaves(self, gen) -> tuple[int, ...]:
        if gen[0] == "odot":
            p, q = gen[1]
            return (p, q, p, q)
        return gen[1] + gen[2]

    def classify_type(self, gen) -> tuple[int, int]:
        leaves = self.gen_leaves(gen)
        na = sum(1 for l in leaves if l < self.g)
        return na, len(leaves) - na

    def gen_value(self, gen) -> np.ndarray:
        e = self.ctx.basis_vector
        if gen[0] == "odot":
            p, q = gen[1]
            return trees.expand_symhalf(self.ctx, e(p), e(q))
        (p, q), (r, s) = gen[1], gen[2]
        return trees.eta2(self.ctx, e(p), e(q), e(r), e(s))

    # -- main lattices ----------------------------------------------------
    def gen_matrix(self) -> np.ndarray:
        if not hasattr(self, "_gen_matrix"):
            cols = [self.gen_value(gen) for gen in self.generators]
            self._gen_matrix = np.array(cols, dtype=np.int64).T
        return self._gen_matrix

    def d2(self) -> IntegerLattice:
        if not hasattr(self, "_d2"):
            ker = kernel_lattice(self.ctx.bracket_matrix(2))
            span = IntegerLattice(self.ambient_dim, self.gen_matrix().T)
            if span != ker:
                raise InconsistencyError(
                    "generator span differs from the bracket-map kernel")
            self._d2 = ker
        return self._d2

    def d2_rank_by_count(self) -> int:
        """Independent rank count: pairs-of-pairs minus the quartic piece."""
        n = 2 * self.g
        npairs = math.comb(n, 2)
        return math.comb(npairs + 1, 2) - math.comb(n, 4)

    def dprime2(self) -> IntegerLattice:
        if not hasattr(self, "_dprime2"):
            cols = self.gen_matrix()[:, self.tree_indices]
            self._dprime2 = IntegerLattice(self.ambient_dim, cols.T)
        return self._dprime2

    def d1(self) -> IntegerLattice:
        if not hasattr(self, "_d1"):
            self._d1 = kernel_lattice(self.ctx.bracket_matrix(1))
        return self._d1

    def d1_tree_basis(self) -> list[tuple[int, int, int]]:
        return list(itertools.combinations(range(self.ctx.n), 3))

    def d1_tree_value(self, triple) -> np.ndarray:
        e = self.ctx.basis_vector
        return trees.eta1(self.ctx, e(triple[0]), e(triple[1]), e(triple[2]))

    # -- expressing elements over generators ------------------------------
    def _full_solver(self) -> _GenSolver:
        if not hasattr(self, "_solver_full"):
            self._solver_full = _GenSolver(self.gen_matrix().T)
        return self._solver_full

    def _tree_solver(self) -> _GenSolver:
        if not hasattr(self, "_solver_tree"):
            self._solver_tree = _GenSolver(self.gen_matrix()[:, self.tree_indices].T)
        return self._solver_tree

    def express_in_generators(self, v) -> np.ndarray:
        c = self._full_solver().solve(v)
        if c is None:
            raise MembershipError("element is not in D_2")
        return c

    def express_in_tree_generators(self, v) -> np.ndarray:
        """Coefficients over tree generators only; requires v in D_2'."""
        c = self._tree_solver().solve(v)
        if c is None:
            raise MembershipError("element is not in the tree sublattice D_2'")
        return c

    # -- filtration by A-leaves (or B-leaves) ------------------------------
    def filtration(self, level: int, side: str = "A") -> IntegerLattice:
        if not -1 <= level <= 3:
            raise ValueError("filtration level must be in -1..3")
        key = ("_filt", level, side)
        if not hasattr(self, "_filt_cache"):
            self._filt_cache = {}
        if key not in self._filt_cache:
            if level == -1:
                self._filt_cache[key] = self.d2()
            else:
                which = 0 if side == "A" else 1
                cols = [i for i, gen in enumerate(self.generators)
                        if self.classify_type(gen)[which] >= level + 1]
                self._filt_cache[key] = IntegerLattice(
                    self.ambient_dim, self.gen_matrix()[:, cols].T)
        return self._filt_cache[key]

    # -- kernels of quotient coordinate maps ------------------------------
    def quotient_map_matrix(self, killed: str) -> np.ndarray:
        """Matrix of the coordinate map H (x) L_3(H) -> H_q (x) L_3(H_q)
        induced by killing one Lagrangian; its kernel on D_2 is the kernel
        of D_2(H) -> D_2(H_q)."""
        ctx = self.ctx
        g = ctx.g
        d3 = ctx.dim(3)
        proj = ctx.lyndon_projection_matrix(3, killed)
        qd3 = proj.shape[0]
        survivors = [h for h in range(ctx.n) if h not in ctx.kill_letters(killed)]
        out = np.zeros((g * qd3, ctx.n * d3), dtype=np.int64)
        for qi, h in enumerate(survivors):
            out[qi * qd3:(qi + 1) * qd3, h * d3:(h + 1) * d3] = proj
        return out

    def ker_projection(self, killed: str = "A") -> IntegerLattice:
        """Kernel of D_2(H) -> D_2(H/killed) as a sublattice of D_2."""
        key = ("_kerproj", killed)
        if not hasattr(self, "_ker_cache"):
            self._ker_cache = {}
        if key not in self._ker_cache:
            basis = self.d2().basis
            m = self.quotient_map_matrix(killed)
            coeff = kernel_lattice(m @ basis.T)
            vecs = coeff.basis @ basis.astype(object) if coeff.rank else None
            self._ker_cache[key] = IntegerLattice(self.ambient_dim, vecs)
        return self._ker_cache[key]

    # -- homology action ---------------------------------------------------
    def apply_homology_action(self, m, v) -> np.ndarray:
        m = as_int_matrix(m)
        if not is_symplectic(self.g, m):
            raise ValueError("matrix is not symplectic")
        return self.action_matrix(m) @ np.asarray(v)

    def action_matrix(self, m) -> np.ndarray:
        l3 = lie_degree_matrix(self.ctx, m, 3)
        return np.kron(as_int_matrix(m), l3)

    def action_matrix_d1(self, m) -> np.ndarray:
        l2 = lie_degree_matrix(self.ctx, m, 2)
        return np.kron(as_int_matrix(m), l2)


@lru_cache(maxsize=None)
def space(genus: int) -> DerivationSpace:
    return DerivationSpace(genus)
