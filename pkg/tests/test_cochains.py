import itertools

import numpy as np
import pytest

from symcoh.algebra import build_cyclic, sign_module, trivial_module
from symcoh.cochains import (Cochain, coboundary, coboundary_matrix, is_member, is_normalized, max_cells,
                             random_cochain, set_max_cells, subgroup_embedding, tau, tau_matrix)
from symcoh.cohomology import random_member, vanishes_on_adjacent_inverses
from symcoh.errors import SizeGuardError, ValidationError
from symcoh.linalg import FiniteSubgroup


def _rank_mod_prime(A, p):
    A = np.array(A, dtype=np.int64) % p
    r = 0
    for c in range(A.shape[1]):
        piv = next((i for i in range(r, A.shape[0]) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for i in range(A.shape[0]):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
    return r


def test_zero_maps_to_zero(z3):
    M = trivial_module(z3, 3)
    assert coboundary(z3, M, Cochain.zero(z3, M, 2)).is_zero()


def test_degree_zero(z2):
    T = trivial_module(z2, 2)
    assert coboundary(z2, T, Cochain(0, np.array([[1]]))).is_zero()
    S = sign_module(z2, 3)
    d = coboundary(z2, S, Cochain(0, np.array([[1]])))
    assert d(1) == (1,) and d(0) == (0,)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_matrix_agrees_with_pointwise(z3, rng, n):
    M = trivial_module(z3, 3)
    D = coboundary_matrix(z3, M, n)
    for _ in range(100):
        phi = random_cochain(z3, M, n, rng)
        assert np.array_equal((D @ phi.vector) % 3, coboundary(z3, M, phi).vector)


def test_d1_rank_over_z2(z2):
    D = coboundary_matrix(z2, trivial_module(z2, 2), 1).toarray()
    assert _rank_mod_prime(D, 2) == 1


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_d_squared(small_pairs, n):
    for G, M in small_pairs:
        comp = coboundary_matrix(G, M, n + 1) @ coboundary_matrix(G, M, n)
        assert not np.any(comp.toarray() % M.exponent)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tau_involution(z2, z3, rng, n):
    for G, m in ((z2, 2), (z3, 3)):
        M = trivial_module(G, m)
        phi = random_cochain(G, M, n, rng)
        for i in range(1, n + 1):
            assert tau(G, M, i, tau(G, M, i, phi)) == phi
            assert np.array_equal((tau_matrix(G, M, n, i) @ phi.vector) % m, tau(G, M, i, phi).vector)


def test_tau_degree_one_mod_two(z2):
    M = trivial_module(z2, 2)
    phi = Cochain(1, np.array([[0], [1]]))
    assert tau(z2, M, 1, phi)(1) == (1,)


def test_tau_last_position(z3):
    M = trivial_module(z3, 3)
    phi = Cochain.from_function(z3, M, 2, lambda a, b: (1,) if (a, b) == (1, 1) else (0,))
    out = tau(z3, M, 2, phi)
    support = [t for t in itertools.product(range(3), repeat=2) if out(*t) != (0,)]
    assert support == [(2, 2)] and out(2, 2) == (2,)


def test_tau_index_range(z3):
    M = trivial_module(z3, 3)
    with pytest.raises(ValidationError):
        tau(z3, M, 3, Cochain.zero(z3, M, 2))


def test_membership(z2):
    M = trivial_module(z2, 2)
    phi = Cochain(1, np.array([[0], [1]]))
    assert is_member(z2, M, phi, "symmetric") and is_member(z2, M, phi, "normalized")
    assert not is_normalized(z2, Cochain(1, np.array([[1], [0]])))
    for fl in ("classical", "normalized", "symmetric", "exterior"):
        assert is_member(z2, M, Cochain.zero(z2, M, 2), fl)


def test_embedding_orders(z2):
    M = trivial_module(z2, 2)
    assert subgroup_embedding(z2, M, 1, "classical").order == 4
    assert subgroup_embedding(z2, M, 1, "symmetric").order == 4
    assert subgroup_embedding(z2, M, 1, "exterior").order == 2


@pytest.mark.parametrize("flavor", ["normalized", "symmetric", "exterior"])
def test_embedding_matches_enumeration(flavor):
    for G, M in ((build_cyclic(2), trivial_module(build_cyclic(2), 2)),
                 (build_cyclic(3), trivial_module(build_cyclic(3), 3)),
                 (build_cyclic(2), sign_module(build_cyclic(2), 3))):
        for n in (1, 2):
            E = subgroup_embedding(G, M, n, flavor)
            members = sum(is_member(G, M, Cochain.from_vector(G, M, n, v), flavor)
                          for v in itertools.product(range(M.exponent), repeat=G.order ** n))
            assert E.order == members


@pytest.mark.parametrize("flavor", ["normalized", "symmetric", "exterior"])
def test_subcomplex_closure(small_pairs, rng, flavor):
    for G, M in small_pairs:
        for n in (1, 2, 3):
            E = subgroup_embedding(G, M, n, flavor)
            for _ in range(5):
                phi = Cochain.from_vector(G, M, n, random_member(E, rng))
                assert is_member(G, M, phi, flavor)
                assert is_member(G, M, coboundary(G, M, phi), flavor)


def test_exterior_vanishes_on_adjacent_inverses(small_pairs):
    for G, M in small_pairs:
        for n in (2, 3):
            E = subgroup_embedding(G, M, n, "exterior")
            for i in range(E.rank):
                assert vanishes_on_adjacent_inverses(G, Cochain.from_vector(G, M, n, E.gens[:, i]))


def test_size_guard(z3):
    M = trivial_module(z3, 3)
    old = max_cells()
    try:
        set_max_cells(10)
        with pytest.raises(SizeGuardError):
            coboundary_matrix(z3, M, 3)
    finally:
        set_max_cells(old)
