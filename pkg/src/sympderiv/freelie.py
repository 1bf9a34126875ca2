"""The symplectic module H, Lyndon bases of the free Lie ring, and tensors.

Letters are 0..2g-1 with a_1..a_g = 0..g-1 and b_1..b_g = g..2g-1; Lyndon
words use that letter order.  Degrees are capped at 4, which is all the
degree-2 derivation theory needs.  Tensor elements are dicts from letter
tuples to integer coefficients.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_DEGREE = 4


class ContextError(ValueError):
    pass


class UnsupportedDegreeError(ValueError):
    pass


def lyndon_words(n_letters: int, length: int) -> list[tuple[int, ...]]:
    """All Lyndon words of exactly the given length (Duval's algorithm)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == length:
            out.append(tuple(w))
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == n_letters - 1:
            w.pop()
    return sorted(out)


def standard_factorization(w: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """w = uv with v the lexicographically least proper suffix."""
    if len(w) < 2:
        raise ValueError(f"not a bracketable word: {w}")
    i = min(range(1, len(w)), key=lambda j: w[j:])
    return w[:i], w[i:]


def tensor_add(t: dict, other: dict, scale: int = 1) -> None:
    for w, c in other.items():
        nc = t.get(w, 0) + scale * c
        if nc:
            t[w] = nc
        else:
            t.pop(w, None)


def tensor_concat_commutator(x: dict, y: dict) -> dict:
    """xy - yx for homogeneous tensor elements."""
    out: dict = {}
    for wx, cx in x.items():
        for wy, cy in y.items():
            tensor_add(out, {wx + wy: cx * cy})
            tensor_add(out, {wy + wx: -cx * cy})
    return out


class SymplecticContext:
    """Genus-g symplectic module with its Lyndon basis tables.

    Tables are computed lazily per degree and shared read-only; all values
    derived from a context are immutable.
    """

    def __init__(self, genus: int, letters: int | None = None):
        if genus < 1:
            raise ContextError("genus must be >= 1")
        self.g = genus
        # quotient contexts reuse the machinery with a smaller free alphabet
        self.n = 2 * genus if letters is None else letters
        self._symplectic = letters is None

    # -- the intersection form -------------------------------------------
    def omega_letters(self, p: int, q: int) -> int:
        if not self._symplectic:
            raise ContextError("no symplectic form on a quotient alphabet")
        if q == p + self.g:
            return 1
        if p == q + self.g:
            return -1
        return 0

    def omega(self, u, v) -> int:
        u = self._vec(u)
        v = self._vec(v)
        g = self.g
        tot = 0
        for i in range(g):
            tot += u[i] * v[g + i] - u[g + i] * v[i]
        return tot

    def _vec(self, u):
        u = tuple(int(x) for x in u)
        if len(u) != self.n:
            raise ContextError("vector length does not match the context")
        return u

    def basis_vector(self, p: int) -> tuple[int, ...]:
        return tuple(1 if i == p else 0 for i in range(self.n))

    def letter_name(self, p: int) -> str:
        g = self.g
        if self._symplectic:
            return f"a{p + 1}" if p < g else f"b{p - g + 1}"
        return f"x{p + 1}"

    # -- Lyndon tables ----------------------------------------------------
    @lru_cache(maxsize=None)
    def lyndon(self, k: int) -> list[tuple[int, ...]]:
        if not 1 <= k <= MAX_DEGREE:
            raise UnsupportedDegreeError(f"degree {k} outside 1..{MAX_DEGREE}")
        return lyndon_words(self.n, k)

    @lru_cache(maxsize=None)
    def lyndon_index(self, k: int) -> dict[tuple[int, ...], int]:
        return {w: i for i, w in enumerate(self.lyndon(k))}

    def dim(self, k: int) -> int:
        return len(self.lyndon(k))

    @lru_cache(maxsize=None)
    def bracketing_tensor(self, w: tuple[int, ...]) -> dict:
        """Tensor expansion of the standard bracketing of a Lyndon word."""
        if len(w) == 1:
            return {w: 1}
        u, v = standard_factorization(w)
        return tensor_concat_commutator(self.bracketing_tensor(u),
                                        self.bracketing_tensor(v))

    def tensor_to_lyndon(self, k: int, tensor: dict) -> np.ndarray:
        """Coordinates over the Lyndon basis; raises if not a Lie element.

        Uses triangularity: the expansion of a Lyndon bracketing is its word
        plus lexicographically larger words.
        """
        rem = dict(tensor)
        coords = np.zeros(self.dim(k), dtype=np.int64)
        index = self.lyndon_index(k)
        while rem:
            w = min(rem)
            c = rem[w]
            i = index.get(w)
            if i is None:
                raise ValueError(f"tensor element is not in the Lie ring: {w}")
            coords[i] += c
            tensor_add(rem, self.bracketing_tensor(w), -c)
        return coords

    def lyndon_to_tensor(self, k: int, coords) -> dict:
        out: dict = {}
        for i, w in enumerate(self.lyndon(k)):
            c = int(coords[i])
            if c:
                tensor_add(out, self.bracketing_tensor(w), c)
        return out

    def lie_bracket(self, j: int, x, k: int, y) -> np.ndarray:
        """Bracket L_j x L_k -> L_{j+k} in Lyndon coordinates."""
        if j + k > MAX_DEGREE:
            raise UnsupportedDegreeError("bracket would exceed the degree cap")
        tx = self.lyndon_to_tensor(j, x)
        ty = self.lyndon_to_tensor(k, y)
        return self.tensor_to_lyndon(j + k, tensor_concat_commutator(tx, ty))

    @lru_cache(maxsize=None)
    def bracket_matrix(self, k: int) -> np.ndarray:
        """Matrix of H (x) L_{k+1} -> L_{k+2}, h (x) xi -> [h, xi].

        Columns are indexed by h * dim(k+1) + lyndon_index; rows by the
        Lyndon basis of degree k+2.
        """
        if k not in (1, 2):
            raise UnsupportedDegreeError("bracket matrix only for degrees 1 and 2")
        dk1 = self.dim(k + 1)
        dk2 = self.dim(k + 2)
        mat = np.zeros((dk2, self.n * dk1), dtype=np.int64)
        for h in range(self.n):
            th = {(h,): 1}
            for i, w in enumerate(self.lyndon(k + 1)):
                t = tensor_concat_commutator(th, self.bracketing_tensor(w))
                mat[:, h * dk1 + i] = self.tensor_to_lyndon(k + 2, t)
        return mat

    # -- Lagrangian quotients --------------------------------------------
    @lru_cache(maxsize=None)
    def quotient_context(self) -> "SymplecticContext":
        """A free alphabet of g letters for H/A or H/B coordinates."""
        return SymplecticContext(self.g, letters=self.g)

    def kill_letters(self, lagrangian: str) -> range:
        if lagrangian == "A":
            return range(0, self.g)
        if lagrangian == "B":
            return range(self.g, self.n)
        raise ContextError("lagrangian must be 'A' or 'B'")

    def project_vector(self, v, lagrangian: str) -> tuple[int, ...]:
        v = self._vec(v)
        if lagrangian == "A":
            return tuple(v[self.g:])
        return tuple(v[: self.g])

    def project_lyndon(self, k: int, coords, lagrangian: str) -> np.ndarray:
        """L_k(H) -> L_k(H/A or H/B) in the quotient Lyndon coordinates."""
        killed = set(self.kill_letters(lagrangian))
        shift = self.g if lagrangian == "A" else 0
        qctx = self.quotient_context()
        out: dict = {}
        for i, w in enumerate(self.lyndon(k)):
            c = int(coords[i])
            if not c:
                continue
            for word, cc in self.bracketing_tensor(w).items():
                if any(l in killed for l in word):
                    continue
                tensor_add(out, {tuple(l - shift for l in word): c * cc})
        return qctx.tensor_to_lyndon(k, out)

    @lru_cache(maxsize=None)
    def lyndon_projection_matrix(self, k: int, lagrangian: str) -> np.ndarray:
        qctx = self.quotient_context()
        mat = np.zeros((qctx.dim(k), self.dim(k)), dtype=np.int64)
        for i in range(self.dim(k)):
            e = np.zeros(self.dim(k), dtype=np.int64)
            e[i] = 1
            mat[:, i] = self.project_lyndon(k, e, lagrangian)
        return mat


@lru_cache(maxsize=None)
def context(genus: int) -> SymplecticContext:
    return SymplecticContext(genus)


def witt_dimension(n_letters: int, k: int) -> int:
    """Rank of L_k on n free generators (Mobius / necklace count)."""
    from math import gcd
    total = 0
    for d in range(1, k + 1):
        if k % d:
            continue
        total += _mobius(k // d) * n_letters ** d
    return total // k


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    res = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    if n > 1:
        res = -res
    return res
