"""Exact integer and modular linear algebra.

Two engines live here:

* :func:`smith_normal_form` works over the integers with Python ints and
  tracks both unimodular transforms. It is meant for small matrices.
* A dense ``numpy`` elimination over ``Z/N`` (``_diagonalize``) that does the
  heavy lifting for cochain complexes. Every group handled by the cohomology
  code is killed by ``N`` (the exponent of the coefficient module), so the
  integer lattice of relations always contains ``N * Z^m`` and working modulo
  ``N`` loses nothing: the invariant factors of ``Z^m / (L + N Z^m)`` are the
  ``gcd(s_i, N)`` of any diagonal form of ``L`` over ``Z/N``.

Subgroups of ``prod Z/a_j`` are carried around as :class:`FiniteSubgroup`
objects holding explicit generators together with a coordinate map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ValidationError
from .invariants import AbGroupInvariants

__all__ = [
    "AbGroupInvariants",
    "SNFResult",
    "smith_normal_form",
    "solve_mod",
    "homology_invariants",
    "FiniteSubgroup",
    "kernel",
    "cokernel",
    "Homology",
    "homology",
    "identity_subgroup",
    "coordinate_subgroup",
]


# ---------------------------------------------------------------------------
# Smith normal form over Z


@dataclass(frozen=True)
class SNFResult:
    U: list[list[int]]
    S: list[list[int]]
    V: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]


def _eye(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf_full(A):
    """Return ``U, Uinv, S, V, Vinv`` with ``U A V = S`` (Smith form)."""
    S = [[int(x) for x in row] for row in A]
    m = len(S)
    n = len(S[0]) if m else 0
    U, Ui, V, Vi = _eye(m), _eye(m), _eye(n), _eye(n)

    def row_addmul(i, t, q):  # row_i += q * row_t
        if q == 0:
            return
        Si, St = S[i], S[t]
        for c in range(n):
            Si[c] += q * St[c]
        Ui_, Ut = U[i], U[t]
        for c in range(m):
            Ui_[c] += q * Ut[c]
        for r in range(m):  # Uinv: col_t -= q col_i
            Ui[r][t] -= q * Ui[r][i]

    def col_addmul(j, t, q):  # col_j += q * col_t
        if q == 0:
            return
        for r in range(m):
            S[r][j] += q * S[r][t]
        for r in range(n):
            V[r][j] += q * V[r][t]
        Vj, Vt = Vi[j], Vi[t]  # Vinv: row_t -= q row_j
        for c in range(n):
            Vt[c] -= q * Vj[c]

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]
            for r in range(m):
                Ui[r][i], Ui[r][j] = Ui[r][j], Ui[r][i]

    def swap_cols(i, j):
        if i != j:
            for r in range(m):
                S[r][i], S[r][j] = S[r][j], S[r][i]
            for r in range(n):
                V[r][i], V[r][j] = V[r][j], V[r][i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = S[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return U, Ui, S, V, Vi
            swap_rows(t, best[1])
            swap_cols(t, best[2])
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    row_addmul(i, t, -(S[i][t] // p))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    col_addmul(j, t, -(S[t][j] // p))
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p), None)
            if bad is None:
                break
            row_addmul(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
            for r in range(m):
                Ui[r][t] = -Ui[r][t]
    return U, Ui, S, V, Vi


def smith_normal_form(A) -> SNFResult:
    """Smith normal form ``U A V = S`` of an integer matrix (list of rows)."""
    U, _, S, V, _ = _snf_full(A)
    return SNFResult(U, S, V)


# ---------------------------------------------------------------------------
# modular elimination


def _unit_part(a: int, g: int, N: int) -> int:
    """A unit ``u`` of ``Z/N`` with ``u * g == a (mod N)``; ``g = gcd(a, N)``."""
    step = N // g
    u = (a // g) % step if step > 1 else 1
    while math.gcd(u, N) != 1:
        u += step
    return u


def _diagonalize(A: np.ndarray, N: int, *, track: bool = False, rhs: np.ndarray | None = None):
    """Unimodular elimination of ``A`` over ``Z/N`` to diagonal form.

    Returns ``(pivots, V, Vinv, rhs)``. After the call, ``U A V`` is diagonal
    with the divisors ``pivots`` of ``N`` in its leading positions and zeros
    elsewhere. ``V``/``Vinv`` are only computed with ``track=True``; ``rhs``
    (optional extra columns) receives every row operation, i.e. ``U @ rhs``.
    """
    A = np.asarray(A, dtype=np.int64)
    p, m = A.shape
    q = 0 if rhs is None else rhs.shape[1]
    W = np.empty((p, m + q), dtype=np.int64)
    W[:, :m] = A % N
    if q:
        W[:, m:] = np.asarray(rhs, dtype=np.int64) % N
    V = np.eye(m, dtype=np.int64) if track else None
    Vi = np.eye(m, dtype=np.int64) if track else None
    gtab = np.gcd(np.arange(N, dtype=np.int64), N)
    gtab[0] = N + 1
    pivots: list[int] = []
    r, cend = 0, m

    def swap_cols(i, j):
        W[:, [i, j]] = W[:, [j, i]]
        if track:
            V[:, [i, j]] = V[:, [j, i]]
            Vi[[i, j], :] = Vi[[j, i], :]

    while r < min(p, cend):
        col = W[r:, r]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            cend -= 1
            if r != cend:
                swap_cols(r, cend)
            continue
        gs = gtab[col[nz]]
        cand = nz[gs == gs.min()]
        if cand.size > 1:
            cand = cand[:64]
            counts = np.count_nonzero(W[r + cand, r:cend], axis=1)
            piv = r + int(cand[int(np.argmin(counts))])
        else:
            piv = r + int(cand[0])
        if piv != r:
            W[[r, piv]] = W[[piv, r]]
        g = int(gtab[W[r, r]])
        if g > 1:
            # non-unit pivot: make it divide its column and row (Bezout steps)
            if _bezout_fix(W, r, cend, N, g, track, V, Vi):
                continue
        a = int(W[r, r])
        if a != g:
            W[r] = (W[r] * pow(_unit_part(a, g, N), -1, N)) % N
        rows = r + 1 + np.flatnonzero(W[r + 1:, r])
        if rows.size:
            cols = np.flatnonzero(W[r])
            qs = W[rows, r] // g
            sub = W[np.ix_(rows, cols)]
            sub -= qs[:, None] * W[r, cols][None, :]
            W[np.ix_(rows, cols)] = sub % N
        js = r + 1 + np.flatnonzero(W[r, r + 1:cend])
        if js.size:
            qj = W[r, js] // g
            W[r, js] = 0
            if track:
                V[:, js] = (V[:, js] - V[:, [r]] * qj[None, :]) % N
                Vi[r] = (Vi[r] + qj @ Vi[js]) % N
        pivots.append(g)
        r += 1
    return pivots, V, Vi, (W[:, m:] if q else None)


def _bezout_fix(W, r, cend, N, g, track, V, Vi) -> bool:
    """Combine a non-dividing entry into the pivot; True if anything changed."""
    col = W[r + 1:, r]
    bad = np.flatnonzero(col % g)
    if bad.size:
        i = r + 1 + int(bad[0])
        a, b = int(W[r, r]), int(W[i, r])
        d, x, y = _egcd(a, b)
        ri, rr = W[i].copy(), W[r].copy()
        W[r] = (x * rr + y * ri) % N
        W[i] = (-(b // d) * rr + (a // d) * ri) % N
        return True
    row = W[r, r + 1:cend]
    bad = np.flatnonzero(row % g)
    if bad.size:
        j = r + 1 + int(bad[0])
        a, b = int(W[r, r]), int(W[r, j])
        d, x, y = _egcd(a, b)
        ct, cj = W[:, r].copy(), W[:, j].copy()
        W[:, r] = (x * ct + y * cj) % N
        W[:, j] = (-(b // d) * ct + (a // d) * cj) % N
        if track:
            vt, vj = V[:, r].copy(), V[:, j].copy()
            V[:, r] = (x * vt + y * vj) % N
            V[:, j] = (-(b // d) * vt + (a // d) * vj) % N
            it, ij = Vi[r].copy(), Vi[j].copy()
            # inverse of [[x, -b'], [y, a']] is [[a', b'], [-y, x]]
            Vi[r] = ((a // d) * it + (b // d) * ij) % N
            Vi[j] = (-y * it + x * ij) % N
        return True
    return False


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class FiniteSubgroup:
    """A subgroup of ``prod Z/ambient_moduli`` with a cyclic decomposition.

    ``gens[:, i]`` generates a cyclic summand of order ``orders[i]`` and the
    subgroup is their internal direct sum. ``coords`` maps members (columns
    of an integer array) to coefficient vectors with respect to ``gens``;
    its output on non-members is meaningless, use :meth:`contains`.
    """

    ambient_moduli: np.ndarray
    gens: np.ndarray
    orders: tuple[int, ...]
    coords: Callable[[np.ndarray], np.ndarray]

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def order_array(self) -> np.ndarray:
        return np.array(self.orders, dtype=np.int64)

    def element(self, coeffs) -> np.ndarray:
        c = np.asarray(coeffs, dtype=np.int64)
        return (self.gens @ c) % self.ambient_moduli if c.ndim == 1 else \
            (self.gens @ c) % self.ambient_moduli[:, None]

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=np.int64) % self.ambient_moduli
        if self.rank == 0:
            return not x.any()
        return bool(np.array_equal(self.element(self.coords(x)), x))


def identity_subgroup(moduli) -> FiniteSubgroup:
    moduli = np.asarray(moduli, dtype=np.int64)
    keep = np.flatnonzero(moduli > 1)
    return coordinate_subgroup(moduli, keep)


def coordinate_subgroup(moduli, keep) -> FiniteSubgroup:
    """The coordinate subgroup supported on the indices ``keep``."""
    moduli = np.asarray(moduli, dtype=np.int64)
    keep = np.asarray(keep, dtype=np.int64)
    gens = np.zeros((len(moduli), len(keep)), dtype=np.int64)
    gens[keep, np.arange(len(keep))] = 1
    orders = tuple(int(x) for x in moduli[keep])
    om = moduli[keep]

    def coords(x):
        x = np.asarray(x, dtype=np.int64)
        return x[keep] % (om if x.ndim == 1 else om[:, None])

    return FiniteSubgroup(moduli, gens, orders, coords)


def _reduce(v: np.ndarray, moduli: np.ndarray) -> np.ndarray:
    return v % (moduli if v.ndim == 1 else moduli[:, None])


def cokernel(R, orders: Sequence[int], N: int, chain: bool = True):
    """The group ``(prod Z/orders) / <columns of R>``.

    With ``chain=True`` the result is in invariant-factor form; otherwise
    the cyclic orders come straight off the diagonal.

    Returns ``(factors, W, Q)``: new generator ``i`` is column ``W[:, i]`` in
    the old coordinates and the new coordinates of an old vector ``x`` are
    ``Q @ x`` reduced modulo ``factors``.
    """
    orders = [int(o) for o in orders]
    k = len(orders)
    R = np.asarray(R, dtype=np.int64).reshape(k, -1)
    full = np.concatenate([R % N, np.diag(np.array(orders, dtype=np.int64)) % N], axis=1) if k else R
    if k == 0:
        return (), np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64)
    pivots, V, Vi, _ = _diagonalize(full.T, N, track=True)
    P, Pinv = V.T, Vi.T
    diag = list(pivots) + [N] * (k - len(pivots))
    keep = [i for i, d in enumerate(diag) if d != 1]
    cyc = [diag[i] for i in keep]
    W0, Q0 = Pinv[:, keep], P[keep, :]
    if not chain:
        return tuple(cyc), W0 % N, Q0 % N
    # put the cyclic orders into a divisibility chain
    U, Ui, S, _, _ = _snf_full([[cyc[i] if i == j else 0 for j in range(len(cyc))] for i in range(len(cyc))])
    facs = [S[i][i] for i in range(len(cyc))]
    U, Ui = np.array(U, dtype=object), np.array(Ui, dtype=object)
    sel = [i for i, d in enumerate(facs) if d != 1]
    W = (W0.astype(object) @ Ui[:, sel]) if cyc else W0[:, :0]
    Q = (U[sel, :] @ Q0.astype(object)) if cyc else Q0[:0, :]
    factors = tuple(int(facs[i]) for i in sel)
    W = (np.array(W, dtype=object) % N).astype(np.int64) if len(sel) else np.zeros((k, 0), dtype=np.int64)
    Q = (np.array(Q, dtype=object) % N).astype(np.int64) if len(sel) else np.zeros((0, k), dtype=np.int64)
    return factors, W, Q


def kernel(F, source_moduli, target_moduli, N: int | None = None) -> FiniteSubgroup:
    """Kernel of the homomorphism ``prod Z/source -> prod Z/target`` given by ``F``."""
    a = np.asarray(source_moduli, dtype=np.int64)
    b = np.asarray(target_moduli, dtype=np.int64)
    F = np.asarray(F, dtype=np.int64).reshape(len(b), len(a))
    if N is None:
        N = math.lcm(*a.tolist(), *b.tolist()) if len(a) + len(b) else 1
    m = len(a)
    if N == 1 or m == 0:
        return identity_subgroup(a)
    D = (F * (N // b)[:, None]) % N
    pivots, V, Vi, _ = _diagonalize(D, N, track=True)
    c = np.ones(m, dtype=np.int64)
    c[:len(pivots)] = N // np.array(pivots, dtype=np.int64)
    live = np.flatnonzero(c != N)
    c_live = c[live]
    K_gens = (V[:, live] * c_live[None, :]) % N
    K_orders = (N // c_live).tolist()
    Vi_live = Vi[live]

    def k_coords(x):
        y = (Vi_live @ (x % N)) % N
        return y // (c_live if y.ndim == 1 else c_live[:, None])

    rel_idx = np.flatnonzero(a != N)
    if not rel_idx.size:
        orders = tuple(K_orders)
        return FiniteSubgroup(a, K_gens, orders, lambda x: _reduce(k_coords(np.asarray(x, dtype=np.int64)),
                                                                   np.array(orders, dtype=np.int64)))
    lam = np.zeros((m, rel_idx.size), dtype=np.int64)
    lam[rel_idx, np.arange(rel_idx.size)] = a[rel_idx]
    factors, W, Q = cokernel(k_coords(lam), K_orders, N, chain=False)
    gens = _reduce((K_gens @ W) % N, a) if len(factors) else np.zeros((m, 0), dtype=np.int64)
    fac = np.array(factors, dtype=np.int64)

    def coords(x):
        x = np.asarray(x, dtype=np.int64)
        z = (Q @ (k_coords(x) % N)) % N
        return z % (fac if z.ndim == 1 else fac[:, None])

    return FiniteSubgroup(a, gens, factors, coords)


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True, eq=False)
class Homology:
    """``ker(d_out) / im(d_in)`` with generating cycles and a class map."""

    invariants: AbGroupInvariants
    cycles: FiniteSubgroup
    representatives: np.ndarray  # ambient columns
    _Q: np.ndarray

    def class_of(self, x) -> np.ndarray:
        """Coordinates of the class of the cycle(s) ``x`` (reduced mod factors)."""
        z = self.cycles.coords(x)
        fac = np.array(self.invariants.factors, dtype=np.int64)
        out = (self._Q @ z)
        return out % (fac if out.ndim == 1 else fac[:, None])


def homology(cycles: FiniteSubgroup, boundaries, N: int) -> Homology:
    """Quotient of a cycle subgroup by the span of the columns ``boundaries``."""
    B = np.asarray(boundaries, dtype=np.int64).reshape(len(cycles.ambient_moduli), -1)
    R = cycles.coords(B) if B.shape[1] and cycles.rank else np.zeros((cycles.rank, 0), dtype=np.int64)
    factors, W, Q = cokernel(R, cycles.orders, N) if cycles.rank else ((), None, np.zeros((0, 0), dtype=np.int64))
    if factors:
        reps = cycles.element(W % np.array(cycles.orders)[:, None])
    else:
        reps = np.zeros((len(cycles.ambient_moduli), 0), dtype=np.int64)
    return Homology(AbGroupInvariants(factors), cycles, reps, Q)


def homology_invariants(d_out, d_in, moduli, target_moduli=None) -> AbGroupInvariants:
    """Invariant factors of ``ker d_out / im d_in`` on ``prod Z/moduli``.

    ``d_out`` maps into ``prod Z/target_moduli`` (default: every row modulo
    the lcm of ``moduli``); ``d_in`` maps into ``prod Z/moduli``.
    """
    a = np.asarray(moduli, dtype=np.int64)
    m = len(a)
    d_out = np.asarray(d_out, dtype=np.int64).reshape(-1, m)
    d_in = np.asarray(d_in, dtype=np.int64).reshape(m, -1)
    N0 = math.lcm(*a.tolist()) if m else 1
    b = np.full(d_out.shape[0], N0, dtype=np.int64) if target_moduli is None else \
        np.asarray(target_moduli, dtype=np.int64)
    if len(b) != d_out.shape[0]:
        raise ValidationError("target moduli length does not match the rows of d_out")
    comp = (d_out @ d_in) % b[:, None]
    bad = np.argwhere(comp)
    if len(bad):
        raise ValidationError(f"composition d_out * d_in is nonzero (column {int(bad[0][1])})",
                              witness=(int(bad[0][1]),))
    N = math.lcm(N0, *b.tolist()) if len(b) else N0
    Z = kernel(d_out, a, b, N)
    return homology(Z, d_in % a[:, None] if d_in.size else d_in, N).invariants


# ---------------------------------------------------------------------------
# linear congruences


def solve_mod(A, b, moduli):
    """Solve ``A x == b`` with row ``i`` taken modulo ``moduli[i]``.

    Returns a list of integers (reduced modulo the lcm of the moduli) or
    ``None`` when the system has no integer solution.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValidationError("A must be a matrix")
    p, n = A.shape
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    mods = np.asarray(moduli, dtype=np.int64).reshape(-1)
    if len(b) != p or len(mods) != p:
        raise ValidationError(f"dimension mismatch: A is {p}x{n}, b has {len(b)}, moduli has {len(mods)}")
    if np.any(mods < 1):
        raise ValidationError("moduli must be >= 1")
    N = math.lcm(*mods.tolist()) if p else 1
    if N == 1 or n == 0:
        return [0] * n if not np.any(b % np.maximum(mods, 1)) else None
    scale = (N // mods)[:, None]
    D = (A * scale) % N
    rhs = ((b[:, None] * scale) % N)
    pivots, V, _, red = _diagonalize(D, N, track=True, rhs=rhs)
    red = red[:, 0]
    r = len(pivots)
    if np.any(red[r:]):
        return None
    piv = np.array(pivots, dtype=np.int64)
    if np.any(red[:r] % piv):
        return None
    y = np.zeros(n, dtype=np.int64)
    y[:r] = red[:r] // piv
    x = (V @ y) % N
    return [int(v) for v in x]
