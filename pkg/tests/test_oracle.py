import json
import os

import pytest

from symcoh.algebra import build_cyclic, sign_module, trivial_module
from symcoh.cochains import Cochain, coboundary, random_cochain
from symcoh.cohomology import cohomology
from symcoh.errors import BudgetExceeded
from symcoh.oracle import OracleBudget, enumerate_cohomology, exhaustive_coboundary

GOLDEN = os.path.join(os.path.dirname(__file__), "golden", "oracle_v1.json")


def _pair(gname, mname):
    G = build_cyclic(int(gname[1:]))
    kind, m = mname.split(":")
    return G, (trivial_module(G, int(m)) if kind == "trivial" else sign_module(G, int(m)))


def _golden():
    with open(GOLDEN, encoding="utf-8") as fh:
        return json.load(fh)


@pytest.mark.parametrize("key", sorted(_golden()))
def test_engine_matches_frozen_oracle(key):
    gname, mname, flavor, n = key.split("|")
    G, M = _pair(gname, mname)
    assert list(cohomology(G, M, int(n), flavor).invariants.factors) == _golden()[key]


def test_golden_z2_z2_classical():
    g = _golden()
    assert all(g[f"Z2|trivial:2|classical|{n}"] == [2] for n in (1, 2, 3))


@pytest.mark.parametrize("flavor", ["classical", "symmetric"])
def test_live_oracle_small(flavor):
    G = build_cyclic(2)
    M = trivial_module(G, 2)
    for n in (1, 2):
        assert enumerate_cohomology(G, M, n, flavor) == cohomology(G, M, n, flavor).invariants


def test_coprime_and_trivial_group():
    G = build_cyclic(2)
    assert enumerate_cohomology(G, trivial_module(G, 3), 1).factors == ()
    one = build_cyclic(1)
    assert enumerate_cohomology(one, trivial_module(one, 4), 2).factors == ()


def test_budget():
    G = build_cyclic(3)
    with pytest.raises(BudgetExceeded):
        enumerate_cohomology(G, trivial_module(G, 3), 3, budget=OracleBudget(1000))
    with pytest.raises(ValueError):
        OracleBudget(0)


def test_exhaustive_coboundary(rng):
    G = build_cyclic(2)
    M = trivial_module(G, 2)
    zero = tuple([(0,)] * 4)
    assert exhaustive_coboundary(G, M, zero, 2) is not None
    f = [(0,), (0,), (0,), (1,)]
    assert exhaustive_coboundary(G, M, f, 2) is None
    g = random_cochain(G, M, 1, rng)
    dg = [tuple(v) for v in coboundary(G, M, g).values.tolist()]
    w = exhaustive_coboundary(G, M, dg, 2)
    assert coboundary(G, M, Cochain(1, __import__("numpy").array(w))).values.tolist() == [list(v) for v in dg]
