import numpy as np
import pytest

from symcoh.algebra import build_cyclic, direct_product, trivial_module
from symcoh.cochains import Cochain, coboundary, is_member, random_cochain, subgroup_embedding
from symcoh.cohomology import (class_in_image_alpha3, cohomology, comparison_map, flavor_cocycles, is_coboundary,
                               lemma_coboundary_criterion, lemma_symmetry_criterion, random_cocycle, random_member,
                               symmetric_coboundary_primitives, two_pattern_criterion)
from symcoh.errors import ValidationError
from symcoh.oracle import exhaustive_coboundary

FLAVORS = ("classical", "normalized", "symmetric", "exterior")


@pytest.mark.parametrize("flavor", FLAVORS)
def test_trivial_group(flavor):
    G = build_cyclic(1)
    for n in (1, 2, 3):
        assert cohomology(G, trivial_module(G, 6), n, flavor).invariants.factors == ()


def test_known_values(z2, z3):
    assert cohomology(z2, trivial_module(z2, 2), 2).invariants.factors == (2,)
    assert cohomology(z3, trivial_module(z3, 3), 3).invariants.factors == (3,)
    assert cohomology(z3, trivial_module(z3, 3), 3, "symmetric").invariants.factors == ()


def test_representatives_are_flavor_cocycles(small_pairs):
    for G, M in small_pairs:
        for fl in FLAVORS:
            res = cohomology(G, M, 2, fl)
            assert len(res.representatives) == len(res.invariants.factors)
            for i, r in enumerate(res.representatives):
                assert is_member(G, M, r, fl) and coboundary(G, M, r).is_zero()
                coords = [0] * len(res.representatives)
                coords[i] = 1
                assert res.class_of(r) == tuple(coords)


@pytest.mark.parametrize("n", [0, 1])
def test_alpha_bijective_low_degree(small_pairs, n):
    for G, M in small_pairs:
        assert comparison_map(G, M, n, "symmetric", "classical").bijective


def test_alpha2_injective(small_pairs):
    for G, M in small_pairs:
        assert comparison_map(G, M, 2, "symmetric", "classical").injective


@pytest.mark.parametrize("G", [build_cyclic(3), build_cyclic(5), build_cyclic(9),
                               direct_product(build_cyclic(3), build_cyclic(3))], ids=lambda G: G.name)
def test_alpha3_injective_without_involutions(G):
    assert comparison_map(G, trivial_module(G, 3), 3, "symmetric", "classical").injective


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gamma_bijective(small_pairs, n):
    for G, M in small_pairs:
        assert comparison_map(G, M, n, "exterior", "symmetric").bijective


def test_incompatible_pair(z2):
    with pytest.raises(ValidationError):
        comparison_map(z2, trivial_module(z2, 2), 1, "classical", "symmetric")


def _mat(rep):
    return np.array(rep.matrix, dtype=np.int64).reshape(len(rep.target_invariants.factors),
                                                        len(rep.source_invariants.factors))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_functoriality(small_pairs, n):
    for G, M in small_pairs:
        a = comparison_map(G, M, n, "symmetric", "classical")
        g = comparison_map(G, M, n, "exterior", "symmetric")
        ag = comparison_map(G, M, n, "exterior", "classical")
        fac = np.array(ag.target_invariants.factors, dtype=np.int64).reshape(-1, 1)
        assert np.array_equal((_mat(a) @ _mat(g)) % fac, _mat(ag) % fac)


def test_is_coboundary_z4_class(z2):
    M = trivial_module(z2, 2)
    f = Cochain.from_function(z2, M, 2, lambda a, b: (int(a == b == 1),))
    assert is_coboundary(z2, M, f) is None
    assert exhaustive_coboundary(z2, M, [tuple(v) for v in f.values.tolist()], 2) is None


def test_is_coboundary_witness(small_pairs, rng):
    for G, M in small_pairs:
        g = random_cochain(G, M, 2, rng)
        w = is_coboundary(G, M, coboundary(G, M, g))
        assert w is not None and coboundary(G, M, w) == coboundary(G, M, g)
        assert is_coboundary(G, M, Cochain.zero(G, M, 3)).is_zero()


def test_is_coboundary_rejects_non_cocycle(z3):
    M = trivial_module(z3, 3)
    phi = Cochain.from_function(z3, M, 2, lambda a, b: (int(a == 1 and b == 2),))
    with pytest.raises(ValidationError, match="cocycle"):
        is_coboundary(z3, M, phi)


def test_lemma_symmetry_on_generators(z3):
    M = trivial_module(z3, 3)
    assert lemma_symmetry_criterion(z3, M, Cochain.zero(z3, M, 3)) == (True, True)
    for r in cohomology(z3, M, 3, "exterior").representatives:
        assert lemma_symmetry_criterion(z3, M, r) == (True, True)


def test_lemma_symmetry_non_symmetric_instance(z3, rng):
    M = trivial_module(z3, 3)
    seen = 0
    for _ in range(50):
        phi = random_cocycle(z3, M, 3, "normalized", rng)
        flags = lemma_symmetry_criterion(z3, M, phi)
        assert flags[0] == flags[1]
        seen += flags == (False, False)
    assert seen > 0


def test_lemma_coboundary(z3, rng):
    M = trivial_module(z3, 3)
    E = subgroup_embedding(z3, M, 2, "exterior")
    for _ in range(10):
        g = Cochain.from_vector(z3, M, 2, random_member(E, rng))
        assert lemma_coboundary_criterion(z3, M, coboundary(z3, M, g), g) == (True, True)
    P = symmetric_coboundary_primitives(z3, M)
    found = 0
    for _ in range(50):
        g = Cochain.from_vector(z3, M, 2, random_member(P, rng))
        flags = lemma_coboundary_criterion(z3, M, coboundary(z3, M, g), g)
        assert flags[0] == flags[1]
        found += flags == (False, False)
    assert found > 0


def test_two_pattern_agrees_without_involutions(z3, rng):
    M = trivial_module(z3, 3)
    for _ in range(30):
        phi = random_cocycle(z3, M, 3, "normalized", rng)
        assert two_pattern_criterion(z3, M, phi) == lemma_symmetry_criterion(z3, M, phi)[0]


def test_two_pattern_on_z2_discrepancy(z2):
    # phi(1,1,1) = 1 passes the two-pattern test but is not tau-invariant
    M = trivial_module(z2, 2)
    phi = Cochain.from_function(z2, M, 3, lambda a, b, c: (int(a == b == c == 1),))
    assert coboundary(z2, M, phi).is_zero()
    assert two_pattern_criterion(z2, M, phi)
    assert lemma_symmetry_criterion(z2, M, phi) == (False, False)


def test_class_in_image_trivial_cases(z3, rng):
    M = trivial_module(z3, 3)
    phi, g = class_in_image_alpha3(z3, M, Cochain.zero(z3, M, 3))
    assert phi.is_zero() and g.is_zero()
    f = random_cocycle(z3, M, 3, "symmetric", rng)
    phi, g = class_in_image_alpha3(z3, M, f)
    assert is_member(z3, M, phi, "symmetric")
    assert coboundary(z3, M, g).vector.tolist() == ((f.vector - phi.vector) % 3).tolist()


def test_class_in_image_of_generator(z3):
    M = trivial_module(z3, 3)
    gen = cohomology(z3, M, 3, "normalized").representatives[0]
    assert class_in_image_alpha3(z3, M, gen) is None


def test_flavor_cocycle_counts(z2):
    M = trivial_module(z2, 2)
    assert flavor_cocycles(z2, M, 1, "classical").order == 2
