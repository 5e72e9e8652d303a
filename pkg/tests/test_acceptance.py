"""Acceptance criteria 1-10, one PASS/FAIL line each.

Runs the full claims suite twice (one worker, then two) and reads the
criteria off the claim records and their timings. Also runnable directly:
``python tests/test_acceptance.py``.
"""

import sys

import pytest

from symcoh.suite import SuiteConfig, run_suite

CRITERIA = [
    (1, "complex axioms d o d = 0", ["cochains.d_squared_zero"], 120),
    (2, "subcomplex closure", ["cochains.subcomplex_closure"], 120),
    (3, "oracle agreement", ["linalg.homology_vs_oracle", "cohomology.oracle_agreement",
                             "oracle.engine_agreement"], 300),
    (4, "comparison maps alpha and gamma", ["cohomology.alpha_low_degrees", "cohomology.gamma_bijective",
                                            "cohomology.alpha3_injective"], 900),
    (5, "lemma suite", ["cohomology.lemma_symmetry", "cohomology.lemma_coboundary",
                        "cohomology.two_pattern_remark"], 300),
    (6, "crossed-extension suite", ["crossed.fixtures_validate", "crossed.xi_cocycle",
                                    "crossed.xi_class_independent", "crossed.inverse_identities_iff_symmetric",
                                    "crossed.symmetric_identities_iff_inverse"], 120),
    (7, "main theorem consistency", ["crossed.main_theorem"], 600),
    (8, "HS^2 cross-check", ["crossed.hs2_crosscheck"], 60),
    (9, "2-group layer", ["twogroup.bifunctor_laws", "twogroup.monoidal_iff_xi_zero",
                          "twogroup.symmetric_functor_iff_inverse", "twogroup.split_iff_class_zero"], 300),
]


def _line(number, title, ok, detail):
    return f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"


def evaluate(seed=0):
    serial = run_suite(SuiteConfig(seed=seed, jobs=1))
    parallel = run_suite(SuiteConfig(seed=seed, jobs=2))
    lines, results = [], {}
    for number, title, ids, limit in CRITERIA:
        recs = [serial.record(i) for i in ids]
        secs = sum(r.seconds for r in recs)
        bad = [r.id for r in recs if r.verdict != "pass"]
        ok = not bad and secs < limit
        detail = f"{len(recs)} claims, {secs:.1f}s of {limit}s"
        if bad:
            detail += f", not passing: {bad}"
        results[number] = ok
        lines.append(_line(number, title, ok, detail))
    same = serial.to_json() == parallel.to_json()
    results[10] = same
    lines.append(_line(10, "determinism across --jobs", same,
                       f"jobs=1 vs jobs=2 JSON reports {'byte-identical' if same else 'differ'}"))
    return results, lines, serial


@pytest.fixture(scope="module")
def acceptance():
    return evaluate()


def test_print_criteria(acceptance, capsys):
    results, lines, _ = acceptance
    with capsys.disabled():
        print()
        for line in lines:
            print(line)


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(acceptance, number):
    results, lines, _ = acceptance
    assert results[number], lines[number - 1]


def test_every_claim_passes(acceptance):
    _, _, report = acceptance
    assert report.passed, [r.id for r in report.records if r.verdict == "fail"]
    assert all(r.verdict == "pass" for r in report.records)


if __name__ == "__main__":
    res, out, _ = evaluate()
    print("\n".join(out))
    sys.exit(0 if all(res.values()) else 1)
