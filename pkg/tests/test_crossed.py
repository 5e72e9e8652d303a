import copy
import os

import numpy as np
import pytest

from symcoh.algebra import build_cyclic, direct_product, element_order, trivial_module
from symcoh.cochains import Cochain, is_member, is_normalized
from symcoh.cohomology import (class_in_image, class_in_image_alpha3, cohomology, comparison_map, is_coboundary, is_cocycle,
                               random_cocycle)
from symcoh.crossed import (cocycle_from_section, cyclic_crossed_extension, symmetric_identities_check, extension_from_2cocycle,
                            find_symmetric_section, make_section, normalised_section, inverse_identities_check,
                            random_normalised_section, random_weakly_symmetric_section, realize_3cocycle,
                            relabel_extension, symmetric_section_search_2d, three_cocycle,
                            trivial_crossed_extension, weakly_symmetric_section)
from symcoh.errors import BudgetExceeded, TwoTorsionError, ValidationError
from symcoh.io import fixture_dir, load_document, parse_extension


def _sections(xe, rng, k=4):
    out = [normalised_section(xe)] + [random_normalised_section(xe, rng) for _ in range(k)]
    if not any(xe.G.inv[x] == x for x in range(1, xe.G.order)):
        out += [weakly_symmetric_section(xe)] + [random_weakly_symmetric_section(xe, rng) for _ in range(k)]
    return out


def test_trivial_extension(trivial_ext):
    sec = normalised_section(trivial_ext)
    assert sec.s.tolist() == list(range(trivial_ext.G.order))
    assert not sec.sigma.any()
    assert three_cocycle(trivial_ext, sec).is_zero()
    assert inverse_identities_check(trivial_ext, sec) and symmetric_identities_check(trivial_ext, sec)
    assert find_symmetric_section(trivial_ext).found


def test_x9_validates(x9):
    assert (x9.T.order, x9.R.order, x9.G.order, x9.M.size) == (9, 9, 3, 3)
    assert x9.xm.boundary.tolist() == [0, 3, 6] * 3


def test_corrupted_raction_reports_path(fixtures_path):
    doc = load_document(os.path.join(fixtures_path, "X9.json"))
    doc["raction"][1][1] = 2
    with pytest.raises(ValidationError) as e:
        parse_extension(doc)
    assert e.value.path == "$.raction[1]" and e.value.witness == (1,)


def test_corrupted_pi_reports_witness(fixtures_path):
    doc = load_document(os.path.join(fixtures_path, "X9.json"))
    doc["pi"][1] = 2
    with pytest.raises(ValidationError) as e:
        parse_extension(doc)
    assert e.value.path == "$.pi" and e.value.witness is not None


@pytest.mark.parametrize("key, value", [("boundary", [0] * 9), ("iota", [1])])
def test_exactness_failures(fixtures_path, key, value):
    doc = copy.deepcopy(load_document(os.path.join(fixtures_path, "X9.json")))
    doc[key] = value
    with pytest.raises(ValidationError):
        parse_extension(doc)


def test_weak_section_x9(x9):
    sec = weakly_symmetric_section(x9)
    assert sec.s[2] == x9.R.inv[sec.s[1]]
    assert sec.sigma[1, 2] == 0 and sec.sigma[2, 1] == 0
    assert sec.weakly_symmetric


def test_weak_section_needs_odd_order(x4):
    with pytest.raises(TwoTorsionError, match="1"):
        weakly_symmetric_section(x4)


def test_weak_section_trivial_group():
    G = build_cyclic(1)
    xe = trivial_crossed_extension(trivial_module(G, 3))
    sec = weakly_symmetric_section(xe)
    assert sec.s.tolist() == [0]


@pytest.mark.parametrize("name", ["X9", "X25", "X4", "trivial", "trivial_S3_sign3", "nonsplit_Z3"])
def test_three_cocycle_normalized(fixtures_path, rng, name):
    from symcoh.io import load_extension

    xe = load_extension(os.path.join(fixtures_path, name + ".json"))
    secs = _sections(xe, rng, 2)
    cocycles = [three_cocycle(xe, s) for s in secs]
    for sec, f in zip(secs, cocycles):
        assert is_normalized(xe.G, f) and is_cocycle(xe.G, xe.M, f)
        assert inverse_identities_check(xe, sec) == is_member(xe.G, xe.M, f, "symmetric")
        if sec.weakly_symmetric:
            assert symmetric_identities_check(xe, sec) == inverse_identities_check(xe, sec)
        else:
            assert not symmetric_identities_check(xe, sec)
    for f in cocycles[1:]:
        diff = Cochain(3, (f.values - cocycles[0].values) % xe.M.moduli)
        assert is_coboundary(xe.G, xe.M, diff) is not None


def test_theorem_on_x9_and_nonsplit(x9, nonsplit):
    for xe in (x9, nonsplit):
        f = three_cocycle(xe, weakly_symmetric_section(xe))
        search = find_symmetric_section(xe)
        assert search.in_theorem_scope
        assert search.found == (class_in_image_alpha3(xe.G, xe.M, f) is not None)
        if search.found:
            assert search.section.symmetric and symmetric_identities_check(xe, search.section)
    assert find_symmetric_section(x9).found
    assert not find_symmetric_section(nonsplit).found


def test_x4_out_of_scope(x4):
    res = find_symmetric_section(x4)
    assert not res.in_theorem_scope
    assert not res.found


def test_budget_exhaustion(x9):
    with pytest.raises(BudgetExceeded):
        find_symmetric_section(x9, budget=0)


def test_realized_cocycle_class(z3):
    M = trivial_module(z3, 3)
    gen = cohomology(z3, M, 3, "normalized").representatives[0]
    xe = realize_3cocycle(z3, M, gen)
    f = three_cocycle(xe, normalised_section(xe))
    diff = Cochain(3, (f.values - gen.values) % 3)
    assert is_coboundary(z3, M, diff) is not None


def test_extension_from_zero_cocycle(z3):
    M = trivial_module(z3, 3)
    ext = extension_from_2cocycle(z3, M, Cochain.zero(z3, M, 2))
    assert ext.K.is_abelian() and ext.K.order == 9
    assert symmetric_section_search_2d(ext) is not None


def test_extension_z4(z2):
    M = trivial_module(z2, 2)
    f = Cochain.from_function(z2, M, 2, lambda a, b: (int(a == b == 1),))
    ext = extension_from_2cocycle(z2, M, f)
    assert element_order(ext.K, 1) == 4  # (m, x) = (0, 1)
    assert symmetric_section_search_2d(ext) is None
    assert cocycle_from_section(ext, [0, 1]) == f


def test_extension_klein(z2):
    M = trivial_module(z2, 2)
    ext = extension_from_2cocycle(z2, M, Cochain.zero(z2, M, 2))
    assert all(ext.K.mul(k, k) == 0 for k in range(4))
    assert symmetric_section_search_2d(ext) is not None


def test_extension_rejects_non_cocycle(z3):
    M = trivial_module(z3, 3)
    f = Cochain.from_function(z3, M, 2, lambda a, b: (int(a == 1 and b == 2),))
    with pytest.raises(ValidationError):
        extension_from_2cocycle(z3, M, f)


def test_recover_random_cocycle(small_pairs, rng):
    for G, M in small_pairs:
        f = random_cocycle(G, M, 2, "normalized", rng)
        ext = extension_from_2cocycle(G, M, f)
        # K is indexed m * |G| + x, so (0, x) has index x
        assert cocycle_from_section(ext, list(range(G.order))) == f


def test_hs2_classification(small_pairs, rng):
    for G, M in small_pairs:
        alpha = comparison_map(G, M, 2, "symmetric", "classical")
        for _ in range(3):
            f = random_cocycle(G, M, 2, "exterior", rng)
            assert symmetric_section_search_2d(extension_from_2cocycle(G, M, f)) is not None
        if not alpha.surjective:
            for rep in cohomology(G, M, 2, "normalized").representatives:
                ext = extension_from_2cocycle(G, M, rep)
                hit = class_in_image(G, M, rep, "symmetric") is not None
                assert (symmetric_section_search_2d(ext) is not None) == hit


def test_relabel_keeps_verdicts(x9, nonsplit, rng):
    for xe in (x9, nonsplit):
        pT = np.concatenate([[0], 1 + rng.permutation(xe.T.order - 1)])
        pR = np.concatenate([[0], 1 + rng.permutation(xe.R.order - 1)])
        ye = relabel_extension(xe, pT, pR)
        assert find_symmetric_section(ye).found == find_symmetric_section(xe).found
        fx = three_cocycle(xe, normalised_section(xe))
        fy = three_cocycle(ye, normalised_section(ye))
        assert (is_coboundary(xe.G, xe.M, fx) is None) == (is_coboundary(ye.G, ye.M, fy) is None)


def test_make_section_rejects_wrong_sigma(x9):
    sec = normalised_section(x9)
    bad = np.array(sec.sigma)
    bad[1, 1] = (bad[1, 1] + 1) % 9
    with pytest.raises(ValidationError):
        make_section(x9, sec.s, bad)


def test_cyclic_builder_matches_fixture(x9):
    built = cyclic_crossed_extension(3)
    assert built.xm.boundary.tolist() == x9.xm.boundary.tolist()
    assert built.pi.tolist() == x9.pi.tolist()
