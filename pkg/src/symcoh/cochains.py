"""Inhomogeneous cochains, the coboundary, and the transposition operators.

A degree-``n`` cochain ``G^n -> M`` is stored as an integer array of shape
``(|G|**n, rank M)``. Row ``t`` holds the value at the tuple whose base-|G|
digits, leftmost most significant, spell ``t``. Flattened vectors use the
coordinate ``t * rank + i``.
"""

from __future__ import annotations

import enum
import functools
import os
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .algebra import FiniteGroup, GModule
from .errors import SizeGuardError, ValidationError
from .linalg import FiniteSubgroup, coordinate_subgroup, identity_subgroup, kernel

__all__ = [
    "Flavor",
    "Cochain",
    "MAX_DEGREE",
    "max_cells",
    "set_max_cells",
    "coboundary",
    "coboundary_matrix",
    "tau",
    "tau_matrix",
    "is_member",
    "is_normalized",
    "subgroup_embedding",
    "cochain_moduli",
    "tuple_digits",
    "tuple_index",
    "random_cochain",
]

MAX_DEGREE = 8
_max_cells = int(os.environ.get("SYMCOH_MAX_CELLS", 2_000_000))
# dense matrices handed to the eliminator are capped separately
_MAX_DENSE = 60_000_000


def max_cells() -> int:
    return _max_cells


def set_max_cells(n: int) -> None:
    """Override the coordinate cap ``|G|^(n+1) * rank`` (the ``--max-cells`` flag)."""
    global _max_cells
    _max_cells = int(n)


class Flavor(str, enum.Enum):
    CLASSICAL = "classical"
    NORMALIZED = "normalized"
    SYMMETRIC = "symmetric"
    EXTERIOR = "exterior"

    @classmethod
    def parse(cls, value) -> "Flavor":
        if isinstance(value, Flavor):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValidationError(f"unknown flavor {value!r}; expected one of "
                                  f"{[f.value for f in cls]}") from None


@dataclass(frozen=True, eq=False)
class Cochain:
    """A map ``G^degree -> M`` as a value table (see module docstring)."""

    degree: int
    values: np.ndarray

    @classmethod
    def zero(cls, G: FiniteGroup, M: GModule, n: int) -> "Cochain":
        return cls(n, np.zeros((G.order ** n, M.rank), dtype=np.int64))

    @classmethod
    def from_vector(cls, G: FiniteGroup, M: GModule, n: int, vec) -> "Cochain":
        v = np.asarray(vec, dtype=np.int64).reshape(G.order ** n, M.rank)
        return cls(n, v % M.moduli)

    @classmethod
    def from_function(cls, G: FiniteGroup, M: GModule, n: int, fn) -> "Cochain":
        digits = tuple_digits(G.order, n).T
        vals = [M.reduce(fn(*map(int, row))) for row in digits]
        return cls(n, np.array(vals, dtype=np.int64).reshape(G.order ** n, M.rank))

    @property
    def vector(self) -> np.ndarray:
        return self.values.reshape(-1)

    def __call__(self, *args: int) -> tuple[int, ...]:
        q = round(len(self.values) ** (1 / self.degree)) if self.degree else 1
        return tuple(int(x) for x in self.values[tuple_index(q, args)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and self.degree == other.degree and \
            np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.degree, self.values.tobytes()))

    def is_zero(self) -> bool:
        return not self.values.any()

    def __repr__(self) -> str:
        nz = int(np.count_nonzero(self.values.any(axis=1))) if self.values.size else 0
        return f"Cochain(degree={self.degree}, support={nz}/{len(self.values)})"


# ---------------------------------------------------------------------------
# tuple bookkeeping


@functools.lru_cache(maxsize=64)
def tuple_digits(q: int, n: int) -> np.ndarray:
    """Array of shape ``(n, q**n)``; column ``t`` holds the digits of tuple ``t``."""
    t = np.arange(q ** n, dtype=np.int64)
    out = np.empty((n, q ** n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        out[j] = t % q
        t //= q
    out.setflags(write=False)
    return out


def tuple_index(q: int, digits) -> int | np.ndarray:
    """Inverse of :func:`tuple_digits` (works on scalars or arrays)."""
    idx = 0
    for d in digits:
        idx = idx * q + d
    return idx


def cochain_moduli(M: GModule, q: int, n: int) -> np.ndarray:
    return np.tile(M.moduli, q ** n)


def _guard(G: FiniteGroup, M: GModule, n: int):
    if n < 0 or n > MAX_DEGREE:
        raise SizeGuardError(f"degree {n} outside the supported range 0..{MAX_DEGREE}")
    cells = G.order ** (n + 1) * max(M.rank, 1)
    if cells > _max_cells:
        raise SizeGuardError(f"|G|^(n+1)*rank = {cells} exceeds the size guard {_max_cells} "
                             f"(raise it with --max-cells)")


def _check(G, M, phi: Cochain):
    if phi.values.shape != (G.order ** phi.degree, M.rank):
        raise ValidationError(f"cochain of degree {phi.degree} has shape {phi.values.shape}, expected "
                              f"{(G.order ** phi.degree, M.rank)}")


def random_cochain(G: FiniteGroup, M: GModule, n: int, rng: np.random.Generator) -> Cochain:
    vals = rng.integers(0, M.moduli, size=(G.order ** n, M.rank)) if M.rank else \
        np.zeros((G.order ** n, 0), dtype=np.int64)
    return Cochain(n, vals.astype(np.int64))


# ---------------------------------------------------------------------------
# coboundary


def _faces(G: FiniteGroup, n: int):
    """Source tuple index and sign of every non-acting face of d^n.

    Yields ``(index_array, sign)`` over all (n+1)-tuples; the acting face
    ``g0 . phi(g1..gn)`` is handled separately.
    """
    q = G.order
    D = tuple_digits(q, n + 1)
    for i in range(1, n + 1):
        merged = G.table[D[i - 1], D[i]]
        parts = list(D[:i - 1]) + [merged] + list(D[i + 1:])
        yield tuple_index(q, parts), (-1) ** i
    yield tuple_index(q, list(D[:n])), (-1) ** (n + 1)


def coboundary(G: FiniteGroup, M: GModule, phi: Cochain) -> Cochain:
    """``d phi`` evaluated pointwise."""
    _check(G, M, phi)
    n = phi.degree
    _guard(G, M, n)
    q, vals = G.order, phi.values
    D = tuple_digits(q, n + 1)
    tail = tuple_index(q, list(D[1:])) if n else np.zeros(q, dtype=np.int64)
    out = np.einsum("pij,pj->pi", M.action[D[0]], vals[tail])
    for idx, sign in _faces(G, n):
        out += sign * vals[idx if n else np.zeros(q, dtype=np.int64)]
    return Cochain(n + 1, out % M.moduli)


@functools.lru_cache(maxsize=128)
def coboundary_matrix(G: FiniteGroup, M: GModule, n: int) -> sp.csr_matrix:
    """Sparse integer matrix of ``d^n`` (entries of row block ``i`` mod ``d_i``)."""
    _guard(G, M, n)
    q, k = G.order, M.rank
    rows_t = np.arange(q ** (n + 1), dtype=np.int64)
    D = tuple_digits(q, n + 1)
    tail = tuple_index(q, list(D[1:])) if n else np.zeros(q, dtype=np.int64)
    R, C, X = [], [], []
    ii, jj = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    R.append((rows_t[:, None, None] * k + ii[None]).ravel())
    C.append((tail[:, None, None] * k + jj[None]).ravel())
    X.append(M.action[D[0]].ravel())
    for idx, sign in _faces(G, n):
        src = idx if n else np.zeros(q, dtype=np.int64)
        R.append((rows_t[:, None] * k + np.arange(k)[None]).ravel())
        C.append((src[:, None] * k + np.arange(k)[None]).ravel())
        X.append(np.full(len(rows_t) * k, sign, dtype=np.int64))
    mat = sp.coo_matrix((np.concatenate(X), (np.concatenate(R), np.concatenate(C))),
                        shape=(q ** (n + 1) * k, q ** n * k), dtype=np.int64).tocsr()
    mat.sum_duplicates()
    mat.data %= np.tile(M.moduli, q ** (n + 1))[np.repeat(np.arange(mat.shape[0]), np.diff(mat.indptr))]
    mat.eliminate_zeros()
    return mat


# ---------------------------------------------------------------------------
# transpositions


def _tau_source(G: FiniteGroup, n: int, i: int):
    """Source tuple indices of tau_i and the acting element (or None)."""
    if not 1 <= i <= n:
        raise ValidationError(f"transposition index {i} outside 1..{n}")
    q = G.order
    D = [d for d in tuple_digits(q, n)]
    T, inv = G.table, G.inv
    if i == 1:
        g1 = D[0]
        src = [inv[g1]] + ([T[g1, D[1]]] + D[2:] if n > 1 else [])
        return tuple_index(q, src), g1
    if i < n:
        a, b, c = D[i - 2], D[i - 1], D[i]
        src = D[:i - 2] + [T[a, b], inv[b], T[b, c]] + D[i + 1:]
        return tuple_index(q, src), None
    a, b = D[n - 2], D[n - 1]
    return tuple_index(q, D[:n - 2] + [T[a, b], inv[b]]), None


def tau(G: FiniteGroup, M: GModule, i: int, phi: Cochain) -> Cochain:
    _check(G, M, phi)
    n = phi.degree
    src, acting = _tau_source(G, n, i)
    vals = phi.values[src]
    if acting is not None:
        vals = np.einsum("pij,pj->pi", M.action[acting], vals)
    return Cochain(n, (-vals) % M.moduli)


@functools.lru_cache(maxsize=128)
def tau_matrix(G: FiniteGroup, M: GModule, n: int, i: int) -> sp.csr_matrix:
    q, k = G.order, M.rank
    src, acting = _tau_source(G, n, i)
    rows_t = np.arange(q ** n, dtype=np.int64)
    if acting is None:
        R = (rows_t[:, None] * k + np.arange(k)[None]).ravel()
        C = (src[:, None] * k + np.arange(k)[None]).ravel()
        X = -np.ones(len(R), dtype=np.int64)
    else:
        ii, jj = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
        R = (rows_t[:, None, None] * k + ii[None]).ravel()
        C = (src[:, None, None] * k + jj[None]).ravel()
        X = -M.action[acting].ravel()
    mat = sp.coo_matrix((X, (R, C)), shape=(q ** n * k,) * 2, dtype=np.int64).tocsr()
    mat.sum_duplicates()
    return mat


# ---------------------------------------------------------------------------
# flavors


def is_normalized(G: FiniteGroup, phi: Cochain) -> bool:
    if phi.degree == 0:
        return True
    D = tuple_digits(G.order, phi.degree)
    touches_one = (D == 0).any(axis=0)
    return not phi.values[touches_one].any()


def is_member(G: FiniteGroup, M: GModule, phi: Cochain, flavor) -> bool:
    flavor = Flavor.parse(flavor)
    _check(G, M, phi)
    if flavor is Flavor.CLASSICAL:
        return True
    if flavor in (Flavor.NORMALIZED, Flavor.EXTERIOR) and not is_normalized(G, phi):
        return False
    if flavor is Flavor.NORMALIZED:
        return True
    return all(tau(G, M, i, phi) == phi for i in range(1, phi.degree + 1))


def _compose(outer: FiniteSubgroup, inner: FiniteSubgroup) -> FiniteSubgroup:
    gens = (outer.gens @ inner.gens) % outer.ambient_moduli[:, None]
    return FiniteSubgroup(outer.ambient_moduli, gens, inner.orders,
                          lambda x: inner.coords(outer.coords(x)))


def _dense(mat: sp.spmatrix) -> np.ndarray:
    if mat.shape[0] * mat.shape[1] > _MAX_DENSE:
        raise SizeGuardError(f"dense matrix of shape {mat.shape} exceeds the elimination cap")
    return mat.toarray()


@functools.lru_cache(maxsize=128)
def subgroup_embedding(G: FiniteGroup, M: GModule, n: int, flavor) -> FiniteSubgroup:
    """The flavor subgroup of ``C^n(G, M)`` with generators and coordinates."""
    flavor = Flavor.parse(flavor)
    _guard(G, M, max(n - 1, 0))
    q, k = G.order, M.rank
    mods = cochain_moduli(M, q, n)
    if flavor is Flavor.CLASSICAL or n == 0:
        return identity_subgroup(mods)
    if flavor in (Flavor.NORMALIZED, Flavor.EXTERIOR):
        D = tuple_digits(q, n)
        keep_t = np.flatnonzero((D != 0).all(axis=0))
        keep = (keep_t[:, None] * k + np.arange(k)[None]).ravel()
        outer = coordinate_subgroup(mods, keep)
        if flavor is Flavor.NORMALIZED:
            return outer
    else:
        outer = identity_subgroup(mods)
    eye = sp.identity(q ** n * k, dtype=np.int64, format="csr")
    stacked = sp.vstack([tau_matrix(G, M, n, i) - eye for i in range(1, n + 1)], format="csr")
    F = _dense(stacked @ sp.csr_matrix(outer.gens))
    inner = kernel(F, outer.orders, np.tile(mods, n), M.exponent)
    return _compose(outer, inner)
