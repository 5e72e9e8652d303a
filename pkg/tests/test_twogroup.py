import os

import numpy as np
import pytest

from symcoh.crossed import (CrossedModule, find_symmetric_section, make_section, normalised_section, inverse_identities_check,
                            random_normalised_section, random_weakly_symmetric_section, three_cocycle,
                            weakly_symmetric_section)
from symcoh.cohomology import is_coboundary
from symcoh.errors import ValidationError
from symcoh.io import load_extension
from symcoh.twogroup import CatGroup, Morphism, is_monoidal, is_symmetric_sfunctor, section_functor, split_check

NAMES = ["X9", "X25", "X4", "trivial", "trivial_S3_sign3", "nonsplit_Z3"]


@pytest.fixture(scope="module")
def extensions(fixtures_path):
    return {n: load_extension(os.path.join(fixtures_path, n + ".json")) for n in NAMES}


def test_whiskering(x9):
    cg = CatGroup(x9.xm)
    for r in range(9):
        for t in range(9):
            for x in range(9):
                f = Morphism(t, x)
                left = cg.tensor(cg.identity(r), f)
                assert left == Morphism(x9.xm.act(r, t), x9.R.mul(r, x))
                assert cg.target(left) == x9.R.mul(r, cg.target(f))
                assert cg.tensor(f, cg.identity(r)) == Morphism(t, x9.R.mul(x, r))


def test_interchange_by_hand(x9):
    cg = CatGroup(x9.xm)
    t, s = Morphism(2, 1), Morphism(5, 4)
    lhs = cg.compose(cg.tensor(t, cg.identity(cg.target(s))), cg.tensor(cg.identity(t.source), s))
    assert lhs == cg.tensor(t, s)


def test_compose_mismatch(x9):
    cg = CatGroup(x9.xm)
    with pytest.raises(ValidationError):
        cg.compose(Morphism(1, 0), Morphism(1, 0))


def test_inverse(x9):
    cg = CatGroup(x9.xm)
    f = Morphism(4, 2)
    assert cg.compose(cg.inverse(f), f) == cg.identity(2)


@pytest.mark.parametrize("name", NAMES)
def test_laws(extensions, name):
    laws = CatGroup(extensions[name].xm).check_laws()
    assert laws["exhaustive"]
    assert all(laws.values())


def test_laws_detect_a_broken_action(x9):
    # unvalidated module whose R-action is not an action: r acts by t -> 2t for every r != 0
    T = x9.T
    ra = np.array([[T.mul(t, t) if r else t for t in range(9)] for r in range(9)])
    laws = CatGroup(CrossedModule(T, x9.R, x9.xm.boundary, ra)).check_laws()
    assert not laws["associativity"]


def test_trivial_section_is_strict(trivial_ext):
    sf = section_functor(trivial_ext, normalised_section(trivial_ext))
    assert not sf.xi.any()
    assert is_monoidal(trivial_ext, sf) and is_symmetric_sfunctor(trivial_ext, sf)
    assert split_check(trivial_ext).splits


def test_weak_section_functor_x9(x9):
    sf = section_functor(x9, weakly_symmetric_section(x9))
    assert sf.morphism(x9.G, 1, 2).t == 0


@pytest.mark.parametrize("name", NAMES)
def test_equivalences(extensions, rng, name):
    xe = extensions[name]
    secs = [normalised_section(xe)] + [random_normalised_section(xe, rng) for _ in range(4)]
    if xe.G.order % 2:
        secs += [random_weakly_symmetric_section(xe, rng) for _ in range(4)]
    found = find_symmetric_section(xe)
    if found.found:
        secs.append(found.section)
    splits = split_check(xe).splits
    for sec in secs:
        sf = section_functor(xe, sec)
        f = three_cocycle(xe, sec)
        mono = is_monoidal(xe, sf)
        assert mono == f.is_zero()
        assert is_symmetric_sfunctor(xe, sf) == inverse_identities_check(xe, sec)
        if mono:
            assert is_symmetric_sfunctor(xe, sf)
        assert splits == (is_coboundary(xe.G, xe.M, f) is not None)


def test_split_verdicts(extensions):
    assert split_check(extensions["X9"]).splits
    assert not split_check(extensions["nonsplit_Z3"]).splits
    v = split_check(extensions["X25"])
    assert v.splits and is_monoidal(extensions["X25"], section_functor(extensions["X25"], v.monoidal_section))


def test_x9_canonical_section_is_monoidal(x9):
    sec = normalised_section(x9)
    assert three_cocycle(x9, sec).is_zero()
    assert is_monoidal(x9, section_functor(x9, sec))


def test_section_functor_rejects_bad_object_map(x9):
    sec = normalised_section(x9)
    s = np.array(sec.s)
    s[1] = 2 if s[1] != 2 else 4
    with pytest.raises(ValidationError):
        section_functor(x9, make_section(x9, s, sec.sigma))
