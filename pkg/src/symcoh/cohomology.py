"""Cohomology in the four cochain flavors, comparison maps, and the
characterisations of symmetric cocycles and coboundaries.

Flavor subcomplexes are presented as subgroups of the classical cochain
groups (see :func:`symcoh.cochains.subgroup_embedding`); cohomology is the
quotient of the flavor cocycles by the coboundaries of the flavor cochains
one degree lower.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .algebra import FiniteGroup, GModule
from .cochains import (Cochain, Flavor, _compose, _dense, coboundary, coboundary_matrix, tau_matrix,
                       cochain_moduli, is_member, is_normalized, subgroup_embedding, tau,
                       tuple_digits)
from .errors import ValidationError
from .linalg import AbGroupInvariants, Homology, cokernel, homology, kernel, solve_mod

__all__ = [
    "CohomologyResult",
    "ComparisonReport",
    "cohomology",
    "comparison_map",
    "is_coboundary",
    "is_cocycle",
    "lemma_symmetry_criterion",
    "lemma_coboundary_criterion",
    "two_pattern_criterion",
    "vanishes_on_adjacent_inverses",
    "class_in_image_alpha3",
    "class_in_image",
    "flavor_cocycles",
    "random_member",
    "random_cocycle",
    "symmetric_coboundary_primitives",
]


@dataclass(frozen=True, eq=False)
class CohomologyResult:
    flavor: Flavor
    degree: int
    invariants: AbGroupInvariants
    representatives: list[Cochain]
    _G: FiniteGroup
    _M: GModule
    _homology: Homology

    def class_of(self, phi: Cochain) -> tuple[int, ...]:
        """Coordinates of ``[phi]`` against ``representatives``.

        ``phi`` must be a cocycle of this flavor (checked).
        """
        if not is_cocycle(self._G, self._M, phi) or not self._homology.cycles.contains(phi.vector):
            raise ValidationError(f"not a {self.flavor.value} {self.degree}-cocycle")
        return tuple(int(x) for x in self._homology.class_of(phi.vector))

    @property
    def order(self) -> int:
        return self.invariants.order


@dataclass(frozen=True)
class ComparisonReport:
    source: Flavor
    target: Flavor
    degree: int
    source_invariants: AbGroupInvariants
    target_invariants: AbGroupInvariants
    matrix: tuple[tuple[int, ...], ...]  # row i: target coordinate i of each source generator
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


_INCLUSIONS = {
    (Flavor.EXTERIOR, Flavor.SYMMETRIC),
    (Flavor.SYMMETRIC, Flavor.CLASSICAL),
    (Flavor.EXTERIOR, Flavor.CLASSICAL),
    (Flavor.NORMALIZED, Flavor.CLASSICAL),
    (Flavor.EXTERIOR, Flavor.NORMALIZED),
}


def flavor_cocycles(G: FiniteGroup, M: GModule, n: int, flavor):
    """Subgroup of ``C^n`` formed by the cocycles of the given flavor."""
    return _flavor_homology(G, M, n, Flavor.parse(flavor)).cycles


@functools.lru_cache(maxsize=256)
def _flavor_homology(G: FiniteGroup, M: GModule, n: int, flavor: Flavor) -> Homology:
    E = subgroup_embedding(G, M, n, flavor)
    N = M.exponent
    q = G.order
    target = cochain_moduli(M, q, n + 1)
    F = _dense(coboundary_matrix(G, M, n) @ sp.csr_matrix(E.gens)) % N if E.rank else \
        np.zeros((len(target), 0), dtype=np.int64)
    Z = _compose(E, kernel(F, E.orders, target, N))
    if n == 0 or Z.rank == 0:
        B = np.zeros((len(E.ambient_moduli), 0), dtype=np.int64)
    else:
        Ep = subgroup_embedding(G, M, n - 1, flavor)
        B = (coboundary_matrix(G, M, n - 1) @ Ep.gens) % E.ambient_moduli[:, None]
    return homology(Z, B, N)


def cohomology(G: FiniteGroup, M: GModule, n: int, flavor="classical") -> CohomologyResult:
    flavor = Flavor.parse(flavor)
    if n < 0:
        raise ValidationError(f"degree must be >= 0, got {n}")
    H = _flavor_homology(G, M, n, flavor)
    reps = [Cochain.from_vector(G, M, n, H.representatives[:, i]) for i in range(H.representatives.shape[1])]
    return CohomologyResult(flavor, n, H.invariants, reps, G, M, H)


def comparison_map(G: FiniteGroup, M: GModule, n: int, source, target) -> ComparisonReport:
    """The map on cohomology induced by the inclusion ``source -> target``."""
    source, target = Flavor.parse(source), Flavor.parse(target)
    if (source, target) not in _INCLUSIONS:
        raise ValidationError(f"no inclusion {source.value} -> {target.value}")
    S = cohomology(G, M, n, source)
    T = cohomology(G, M, n, target)
    cols = [T._homology.class_of(r.vector) for r in S.representatives]
    k = len(T.invariants.factors)
    mat = np.array(cols, dtype=np.int64).T.reshape(k, len(cols))
    coker, _, _ = cokernel(mat, T.invariants.factors, M.exponent) if k else ((), None, None)
    coker_order = int(np.prod(coker)) if coker else 1
    image_order = T.order // coker_order
    return ComparisonReport(source, target, n, S.invariants, T.invariants,
                            tuple(tuple(int(x) for x in row) for row in mat),
                            injective=image_order == S.order, surjective=coker_order == 1)


def is_cocycle(G: FiniteGroup, M: GModule, phi: Cochain) -> bool:
    return coboundary(G, M, phi).is_zero()


def is_coboundary(G: FiniteGroup, M: GModule, phi: Cochain, flavor="classical") -> Cochain | None:
    """A flavor cochain ``g`` of degree ``n-1`` with ``dg = phi``, or None."""
    flavor = Flavor.parse(flavor)
    n = phi.degree
    if n < 1:
        raise ValidationError("coboundaries live in degree >= 1")
    if not is_cocycle(G, M, phi):
        raise ValidationError("phi is not a cocycle")
    if not is_member(G, M, phi, flavor):
        raise ValidationError(f"phi is not a {flavor.value} cochain")
    E = subgroup_embedding(G, M, n - 1, flavor)
    if phi.is_zero() or E.rank == 0:
        return Cochain.zero(G, M, n - 1) if phi.is_zero() else None
    A = _dense(coboundary_matrix(G, M, n - 1) @ sp.csr_matrix(E.gens))
    y = solve_mod(A, phi.vector, cochain_moduli(M, G.order, n))
    if y is None:
        return None
    g = Cochain.from_vector(G, M, n - 1, E.element(np.array(y, dtype=np.int64) % E.order_array))
    if coboundary(G, M, g) != phi:
        raise AssertionError("solve_mod returned a non-solution")
    return g


# ---------------------------------------------------------------------------
# characterisations of symmetric cocycles


def vanishes_on_adjacent_inverses(G: FiniteGroup, phi: Cochain) -> bool:
    """True iff ``phi(..., x, x^-1, ...) = 0`` for every adjacent pair."""
    n = phi.degree
    D = tuple_digits(G.order, n)
    mask = np.zeros(D.shape[1], dtype=bool)
    for i in range(n - 1):
        mask |= D[i + 1] == G.inv[D[i]]
    return not phi.values[mask].any()


def _require_normalized_cocycle(G, M, phi, min_degree=2):
    if phi.degree < min_degree:
        raise ValidationError(f"degree must be >= {min_degree}")
    if not is_normalized(G, phi):
        raise ValidationError("cochain is not normalized")
    if not is_cocycle(G, M, phi):
        raise ValidationError("cochain is not a cocycle")


def lemma_symmetry_criterion(G: FiniteGroup, M: GModule, phi: Cochain) -> tuple[bool, bool]:
    """``(tau-invariant, vanishes on adjacent inverses)`` for a normalized cocycle.

    For normalized cocycles of degree >= 2 the two flags agree.
    """
    _require_normalized_cocycle(G, M, phi)
    by_tau = all(tau(G, M, i, phi) == phi for i in range(1, phi.degree + 1))
    return by_tau, vanishes_on_adjacent_inverses(G, phi)


def two_pattern_criterion(G: FiniteGroup, M: GModule, phi: Cochain) -> bool:
    """``phi(x, x^-1, y) == phi(x, y, y^-1)`` for all x, y (degree 3 only)."""
    if phi.degree != 3:
        raise ValidationError("the two-pattern test is stated for degree 3")
    q = G.order
    x, y = np.divmod(np.arange(q * q), q)
    inv = G.inv
    left = phi.values[(x * q + inv[x]) * q + y]
    right = phi.values[(x * q + y) * q + inv[y]]
    return bool(np.array_equal(left, right))


def lemma_coboundary_criterion(G: FiniteGroup, M: GModule, phi: Cochain, g: Cochain) -> tuple[bool, bool]:
    """For ``dg = phi`` with ``phi`` symmetric and ``g`` normalized, report
    ``(g symmetric, g(x, x^-1) == 0 for all x)``."""
    if g.degree != 2 or phi.degree != 3:
        raise ValidationError("expects a 2-cochain g and a 3-cochain phi")
    if not is_normalized(G, g):
        raise ValidationError("g is not normalized")
    if coboundary(G, M, g) != phi:
        raise ValidationError("dg != phi")
    if not is_member(G, M, phi, Flavor.SYMMETRIC):
        raise ValidationError("phi is not symmetric")
    q = G.order
    x = np.arange(q)
    on_inverses = g.values[x * q + G.inv[x]]
    return is_member(G, M, g, Flavor.SYMMETRIC), not on_inverses.any()


def class_in_image(G: FiniteGroup, M: GModule, f: Cochain, source="symmetric"):
    """Decide whether ``[f]`` lies in the image of ``H(source) -> H``.

    Returns ``(phi, g)`` with ``phi`` a source cocycle and ``f - phi = dg``,
    or None.
    """
    n = f.degree
    if not is_cocycle(G, M, f):
        raise ValidationError("f is not a cocycle")
    Z = flavor_cocycles(G, M, n, source)
    mods = cochain_moduli(M, G.order, n)
    if n == 0:
        blocks = [Z.gens]
    else:
        blocks = [Z.gens, _dense(coboundary_matrix(G, M, n - 1))]
    A = np.concatenate(blocks, axis=1)
    sol = solve_mod(A, f.vector, mods)
    if sol is None:
        return None
    sol = np.array(sol, dtype=np.int64)
    phi = Cochain.from_vector(G, M, n, Z.element(sol[:Z.rank] % Z.order_array) if Z.rank
                              else np.zeros(len(mods), dtype=np.int64))
    g = Cochain.from_vector(G, M, n - 1, sol[Z.rank:]) if n else None
    return phi, g


def class_in_image_alpha3(G: FiniteGroup, M: GModule, f: Cochain):
    """Membership of ``[f]`` in the image of ``HS^3 -> H^3`` with witness."""
    if f.degree != 3:
        raise ValidationError("expects a 3-cocycle")
    return class_in_image(G, M, f, Flavor.SYMMETRIC)


# ---------------------------------------------------------------------------
# sampling


def random_member(S, rng: np.random.Generator) -> np.ndarray:
    """Uniform random element of a FiniteSubgroup."""
    if S.rank == 0:
        return np.zeros(len(S.ambient_moduli), dtype=np.int64)
    return S.element(rng.integers(0, S.order_array))


def random_cocycle(G: FiniteGroup, M: GModule, n: int, flavor, rng: np.random.Generator) -> Cochain:
    """Uniform random cocycle of the given flavor."""
    return Cochain.from_vector(G, M, n, random_member(flavor_cocycles(G, M, n, flavor), rng))


@functools.lru_cache(maxsize=64)
def symmetric_coboundary_primitives(G: FiniteGroup, M: GModule):
    """Normalized 2-cochains ``g`` whose coboundary is symmetric."""
    E = subgroup_embedding(G, M, 2, Flavor.NORMALIZED)
    q = G.order
    mods3 = cochain_moduli(M, q, 3)
    eye = sp.identity(len(mods3), dtype=np.int64, format="csr")
    d2 = coboundary_matrix(G, M, 2)
    stacked = sp.vstack([(tau_matrix(G, M, 3, i) - eye) @ d2 for i in (1, 2, 3)], format="csr")
    F = _dense(stacked @ sp.csr_matrix(E.gens)) % M.exponent
    return _compose(E, kernel(F, E.orders, np.tile(mods3, 3), M.exponent))
