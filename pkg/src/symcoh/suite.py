"""Claims ledger: every invariant of the library as a named, executable check.

Each claim runs against the fixture corpus and returns a verdict, the
fixtures it touched, a witness on failure and free-form findings. Claims
are independent, seeded from ``(seed, claim id)``, and may run in worker
processes; the report is ordered by claim id, so it does not depend on
scheduling.
"""

from __future__ import annotations

import functools
import glob
import itertools
import json
import os
import time
import traceback
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np
import scipy.sparse as sp

from . import oracle
from .algebra import (FiniteGroup, GModule, act, build_cyclic, direct_product, order_two_census, sign_module,
                      symmetric_group, trivial_module, validate_group)
from .cochains import (Cochain, Flavor, coboundary, coboundary_matrix, is_member, is_normalized,
                       subgroup_embedding, tau_matrix, tuple_digits)
from .cohomology import (class_in_image, class_in_image_alpha3, cohomology, comparison_map, flavor_cocycles,
                         is_coboundary, lemma_coboundary_criterion, lemma_symmetry_criterion, random_cocycle,
                         random_member, symmetric_coboundary_primitives, two_pattern_criterion)
from .crossed import (CrossedExtension, SSection, symmetric_identities_check, extension_from_2cocycle, find_symmetric_section,
                      normalised_section, inverse_identities_check, random_normalised_section,
                      random_weakly_symmetric_section, relabel_extension, symmetric_section_search_2d,
                      three_cocycle, weakly_symmetric_section)
from .errors import SymcohError, ValidationError
from .io import fixture_dir, load_extension, render_json
from .linalg import homology_invariants, smith_normal_form, solve_mod
from .twogroup import CatGroup, is_monoidal, is_symmetric_sfunctor, section_functor, split_check

__all__ = ["SuiteConfig", "ClaimRecord", "SuiteReport", "CLAIMS", "run_suite", "run_claim", "standard_pairs"]


@dataclass(frozen=True)
class SuiteConfig:
    fixture_dir: str = field(default_factory=fixture_dir)
    seed: int = 0
    jobs: int = 1
    skip: frozenset = frozenset()  # tags, e.g. {"oracle"}
    samples: int = 100
    only: tuple[str, ...] = ()  # claim ids; empty means all


@dataclass
class Outcome:
    ok: bool = True
    fixtures: list[str] = field(default_factory=list)
    witness: Any = None
    findings: list[str] = field(default_factory=list)

    def fail(self, fixture: str, witness: Any) -> None:
        if self.ok:
            self.witness = {"fixture": fixture, "detail": witness}
        self.ok = False

    def touch(self, label: str) -> None:
        if label not in self.fixtures:
            self.fixtures.append(label)


@dataclass(frozen=True)
class Claim:
    id: str
    module: str
    anchor: str
    run: Callable[["Context"], Outcome]
    tags: frozenset = frozenset()


@dataclass
class ClaimRecord:
    id: str
    module: str
    anchor: str
    verdict: str  # pass | fail | skipped
    fixtures: list[str]
    witness: Any
    findings: list[str]
    seconds: float = 0.0

    def to_doc(self, include_timing: bool = False) -> dict:
        doc = {"id": self.id, "module": self.module, "anchor": self.anchor, "verdict": self.verdict,
               "fixtures": self.fixtures, "witness": self.witness, "findings": self.findings}
        if include_timing:
            doc["seconds"] = round(self.seconds, 3)
        return doc


@dataclass
class SuiteReport:
    seed: int
    records: list[ClaimRecord]

    @property
    def passed(self) -> bool:
        return all(r.verdict != "fail" for r in self.records)

    def record(self, claim_id: str) -> ClaimRecord:
        return next(r for r in self.records if r.id == claim_id)

    def to_doc(self, include_timing: bool = False) -> dict:
        counts = {v: sum(r.verdict == v for r in self.records) for v in ("pass", "fail", "skipped")}
        return {"seed": self.seed, "summary": counts,
                "claims": [r.to_doc(include_timing) for r in self.records]}

    def to_json(self, include_timing: bool = False) -> str:
        return render_json(self.to_doc(include_timing))

    def to_table(self) -> str:
        w = max(len(r.id) for r in self.records)
        lines = [f"{'claim':<{w}}  verdict   secs  fixtures  findings"]
        for r in self.records:
            lines.append(f"{r.id:<{w}}  {r.verdict:<7} {r.seconds:6.1f}  {len(r.fixtures):8d}  {len(r.findings):8d}")
            if r.verdict == "fail":
                lines.append(f"  witness: {json.dumps(r.witness)}")
        doc = self.to_doc()["summary"]
        lines.append(f"{doc['pass']} passed, {doc['fail']} failed, {doc['skipped']} skipped")
        return "\n".join(lines)


class Context:
    def __init__(self, config: SuiteConfig, claim_id: str):
        self.config = config
        self.rng = np.random.default_rng([config.seed, zlib.crc32(claim_id.encode())])

    @property
    def samples(self) -> int:
        return self.config.samples

    def extensions(self) -> list[CrossedExtension]:
        return _load_extensions(self.config.fixture_dir)


# ---------------------------------------------------------------------------
# fixtures


@functools.lru_cache(maxsize=None)
def standard_groups() -> dict[str, FiniteGroup]:
    z = {n: build_cyclic(n) for n in (2, 3, 4, 5, 9)}
    return {"Z2": z[2], "Z3": z[3], "Z4": z[4], "Z5": z[5], "Z9": z[9],
            "Z2xZ2": direct_product(z[2], z[2]), "Z3xZ3": direct_product(build_cyclic(3), build_cyclic(3)),
            "S3": symmetric_group(3)}


@functools.lru_cache(maxsize=None)
def standard_pairs() -> tuple[tuple[str, FiniteGroup, GModule], ...]:
    """Every (group, module) fixture: trivial Z/2, Z/3, Z/4 and sign Z/3 where defined."""
    out = []
    for gname, G in standard_groups().items():
        for d in (2, 3, 4):
            out.append((f"{gname}|trivial:{d}", G, trivial_module(G, d)))
        if gname in ("Z2", "Z4", "S3"):
            out.append((f"{gname}|sign:3", G, sign_module(G, 3)))
    return tuple(out)


def _two_torsion_free(G: FiniteGroup) -> bool:
    return not order_two_census(G).has_order_two


@functools.lru_cache(maxsize=4)
def _load_extensions(directory: str) -> list[CrossedExtension]:
    paths = sorted(glob.glob(os.path.join(directory, "*.json")))
    if not paths:
        raise ValidationError(f"no crossed-extension fixtures in {directory}")
    return [load_extension(p) for p in paths]


def _sections(xe: CrossedExtension, rng: np.random.Generator) -> list[tuple[str, SSection]]:
    """The sections generated for an extension: canonical, random, weakly symmetric, found, corrected."""
    out = [("canonical", normalised_section(xe))]
    out += [(f"random{i}", random_normalised_section(xe, rng)) for i in range(3)]
    if _two_torsion_free(xe.G):
        out.append(("weak", weakly_symmetric_section(xe)))
        out += [(f"weak_random{i}", random_weakly_symmetric_section(xe, rng)) for i in range(3)]
    found = find_symmetric_section(xe)
    if found.section is not None:
        out.append(("symmetric", found.section))
    verdict = split_check(xe)
    if verdict.monoidal_section is not None:
        out.append(("monoidal", verdict.monoidal_section))
    return out


def _ext_label(xe: CrossedExtension) -> str:
    return f"ext:{xe.name}"


# ---------------------------------------------------------------------------
# algebra_core


def _builders_validate(ctx: Context) -> Outcome:
    o = Outcome()
    groups = dict(standard_groups())
    groups.update({f"Z{n}": build_cyclic(n) for n in range(1, 13)})
    groups["Z2xZ4"] = direct_product(build_cyclic(2), build_cyclic(4))
    groups["S3xZ2"] = direct_product(symmetric_group(3), build_cyclic(2))
    for name, G in groups.items():
        o.touch(name)
        try:
            validate_group(G.table.tolist())
        except SymcohError as e:
            o.fail(name, str(e))
    return o


def _act_additive(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        o.touch(label)
        elems = list(M.elements())
        for _ in range(ctx.samples):
            g = int(ctx.rng.integers(G.order))
            a, b = (elems[int(i)] for i in ctx.rng.integers(len(elems), size=2))
            if act(M, g, M.add(a, b)) != M.add(act(M, g, a), act(M, g, b)):
                o.fail(label, {"g": g, "m": a, "m'": b})
    return o


def _census_pairing(ctx: Context) -> Outcome:
    o = Outcome()
    groups = dict(standard_groups())
    groups.update({f"Z{n}": build_cyclic(n) for n in range(1, 13)})
    for name, G in groups.items():
        o.touch(name)
        c = order_two_census(G)
        seen = [x for pair in c.pairing for x in pair] + list(c.involutions)
        if sorted(seen) != list(range(1, G.order)):
            o.fail(name, {"covered": sorted(seen)})
        for x, y in c.pairing:
            if G.mul(x, y) != 0:
                o.fail(name, {"pair": [x, y]})
        if c.has_order_two != bool(c.involutions):
            o.fail(name, "has_order_two disagrees with involutions")
    return o


# ---------------------------------------------------------------------------
# exact_linalg


def _int_det(A) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [[int(x) for x in row] for row in A]
    n, sign, prev = len(M), 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def _snf_reconstruct(ctx: Context) -> Outcome:
    o = Outcome(fixtures=["random integer matrices"])
    for _ in range(2 * ctx.samples):
        m, n = (int(x) for x in ctx.rng.integers(1, 9, size=2))
        A = ctx.rng.integers(-9, 10, size=(m, n))
        res = smith_normal_form(A)
        U, S, V = (np.array(x, dtype=object) for x in (res.U, res.S, res.V))
        diag = res.diagonal
        ok = (U.dot(np.array(A, dtype=object)).dot(V) == S).all()
        ok &= all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1) if diag[i])
        ok &= abs(_int_det(res.U)) == 1 and abs(_int_det(res.V)) == 1
        off = S.copy()
        for i in range(min(m, n)):
            off[i, i] = 0
        ok &= not off.any()
        if not ok:
            o.fail("random", {"A": A.tolist()})
    return o


def _solve_mod_exhaustive(ctx: Context) -> Outcome:
    o = Outcome(fixtures=["random congruence systems"])
    for _ in range(2 * ctx.samples):
        nvars = int(ctx.rng.integers(1, 4))
        neq = int(ctx.rng.integers(1, 4))
        moduli = ctx.rng.choice([2, 3, 4, 6, 8, 9], size=neq)
        A = ctx.rng.integers(0, 12, size=(neq, nvars))
        b = ctx.rng.integers(0, 12, size=neq) % moduli
        N = int(np.lcm.reduce(moduli))
        sol = solve_mod(A, b, moduli)
        if sol is not None and np.any((A @ np.array(sol) - b) % moduli):
            o.fail("random", {"A": A.tolist(), "b": b.tolist(), "moduli": moduli.tolist(), "x": list(sol)})
            continue
        if N ** nvars > 10 ** 6:
            continue
        exists = any(not np.any((A @ np.array(x) - b) % moduli)
                     for x in itertools.product(range(N), repeat=nvars))
        if exists != (sol is not None):
            o.fail("random", {"A": A.tolist(), "b": b.tolist(), "moduli": moduli.tolist(), "exists": exists})
    return o


def _homology_vs_oracle(ctx: Context) -> Outcome:
    o = Outcome()
    cases = [("Z2", 2, 3), ("Z2", 3, 3), ("Z3", 2, 2), ("Z3", 3, 2)]
    budget = oracle.OracleBudget()
    for gname, d, top in cases:
        G = standard_groups()[gname]
        M = trivial_module(G, d)
        label = f"{gname}|trivial:{d}"
        o.touch(label)
        for n in range(top + 1):
            d_out = coboundary_matrix(G, M, n).toarray()
            d_in = coboundary_matrix(G, M, n - 1).toarray() if n else np.zeros((G.order ** 0 * M.rank, 0), dtype=np.int64)
            mods = np.tile(M.moduli, G.order ** n)
            got = homology_invariants(d_out, d_in, mods)
            want = oracle.enumerate_cohomology(G, M, n, "classical", budget)
            if got != want:
                o.fail(label, {"n": n, "engine": str(got), "oracle": str(want)})
    return o


# ---------------------------------------------------------------------------
# cochain_complex


def _reduce_rows(P: sp.csr_matrix, moduli: np.ndarray) -> sp.csr_matrix:
    P = P.tocoo()
    data = P.data % moduli[P.row]
    keep = data != 0
    return sp.csr_matrix((data[keep], (P.row[keep], P.col[keep])), shape=P.shape)


def _d_squared(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        o.touch(label)
        for n in range(5):
            P = coboundary_matrix(G, M, n + 1) @ coboundary_matrix(G, M, n)
            P = _reduce_rows(P, np.tile(M.moduli, G.order ** (n + 2)))
            if P.nnz:
                r, c = P.nonzero()
                o.fail(label, {"n": n, "row": int(r[0]), "column": int(c[0])})
    return o


def _flavor_defect(G, M, n, flavor, X: np.ndarray) -> bool:
    """True iff every column of X (a batch of degree-n cochains) lies in the flavor."""
    mods = np.tile(M.moduli, G.order ** n)
    if flavor in (Flavor.NORMALIZED, Flavor.EXTERIOR) and n > 0:
        D = tuple_digits(G.order, n)
        bad_t = np.flatnonzero((D == 0).any(axis=0))
        rows = (bad_t[:, None] * M.rank + np.arange(M.rank)[None]).ravel()
        if (X[rows] % mods[rows, None]).any():
            return False
    if flavor in (Flavor.SYMMETRIC, Flavor.EXTERIOR):
        for i in range(1, n + 1):
            Y = (tau_matrix(G, M, n, i) @ X - X) % mods[:, None]
            if Y.any():
                return False
    return True


def _subcomplex_closure(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        o.touch(label)
        for flavor in (Flavor.NORMALIZED, Flavor.SYMMETRIC, Flavor.EXTERIOR):
            for n in range(4):
                E = subgroup_embedding(G, M, n, flavor)
                if not E.rank:
                    continue
                X = coboundary_matrix(G, M, n) @ E.gens
                if not _flavor_defect(G, M, n + 1, flavor, X):
                    o.fail(label, {"flavor": flavor.value, "n": n})
    return o


def _tau_involution(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        o.touch(label)
        for n in range(1, 5):
            mods = np.tile(M.moduli, G.order ** n)
            eye = sp.identity(len(mods), dtype=np.int64, format="csr")
            for i in range(1, n + 1):
                t = tau_matrix(G, M, n, i)
                if _reduce_rows(t @ t - eye, mods).nnz:
                    o.fail(label, {"n": n, "i": i})
    return o


def _exterior_vanishing(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        o.touch(label)
        top = 4 if G.order <= 5 else 3
        for n in range(2, top + 1):
            E = subgroup_embedding(G, M, n, Flavor.EXTERIOR)
            D = tuple_digits(G.order, n)
            mask = np.zeros(D.shape[1], dtype=bool)
            for i in range(n - 1):
                mask |= D[i + 1] == G.inv[D[i]]
            rows = (np.flatnonzero(mask)[:, None] * M.rank + np.arange(M.rank)[None]).ravel()
            if E.rank and (E.gens[rows] % E.ambient_moduli[rows, None]).any():
                o.fail(label, {"n": n})
    return o


# ---------------------------------------------------------------------------
# cohomology_engine


def _oracle_cases(full: bool):
    Z2, Z3 = standard_groups()["Z2"], standard_groups()["Z3"]
    cases = [(Z2, trivial_module(Z2, 2), 3), (Z2, trivial_module(Z2, 3), 3), (Z3, trivial_module(Z3, 2), 2)]
    if full:
        cases += [(Z2, sign_module(Z2, 3), 3), (Z3, trivial_module(Z3, 3), 2)]
    return cases


def _oracle_agreement(full: bool):
    def run(ctx: Context) -> Outcome:
        o = Outcome()
        budget = oracle.OracleBudget()
        for G, M, top in _oracle_cases(full):
            label = f"{G.name}|{M.name}"
            o.touch(label)
            for flavor in oracle.FLAVORS:
                for n in range(top + 1):
                    got = cohomology(G, M, n, flavor).invariants
                    want = oracle.enumerate_cohomology(G, M, n, flavor, budget)
                    if got != want:
                        o.fail(label, {"flavor": flavor, "n": n, "engine": str(got), "oracle": str(want)})
        return o
    return run


def _alpha_low(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        o.touch(label)
        for n in (0, 1, 2):
            rep = comparison_map(G, M, n, "symmetric", "classical")
            want_bij = n < 2
            if not rep.injective or (want_bij and not rep.surjective):
                o.fail(label, {"n": n, "injective": rep.injective, "surjective": rep.surjective})
    return o


def _alpha3(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        if not _two_torsion_free(G):
            continue
        o.touch(label)
        rep = comparison_map(G, M, 3, "symmetric", "classical")
        if not rep.injective:
            o.fail(label, {"source": str(rep.source_invariants), "target": str(rep.target_invariants)})
    return o


def _gamma(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        o.touch(label)
        top = 4 if G.order <= 5 else 3
        for n in range(top + 1):
            rep = comparison_map(G, M, n, "exterior", "symmetric")
            if not rep.bijective:
                o.fail(label, {"n": n, "exterior": str(rep.source_invariants),
                               "symmetric": str(rep.target_invariants)})
    return o


def _functoriality(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        o.touch(label)
        for n in range(4):
            direct = comparison_map(G, M, n, "exterior", "classical")
            a = comparison_map(G, M, n, "symmetric", "classical")
            g = comparison_map(G, M, n, "exterior", "symmetric")
            factors = np.array(direct.target_invariants.factors, dtype=object)
            kt, ks, ke = (len(x.factors) for x in (a.target_invariants, a.source_invariants, g.source_invariants))
            A = np.array(a.matrix, dtype=object).reshape(kt, ks)
            Gm = np.array(g.matrix, dtype=object).reshape(ks, ke)
            D = np.array(direct.matrix, dtype=object).reshape(kt, ke)
            comp = A.dot(Gm) if ks else np.zeros((kt, ke), dtype=object)
            if kt and ((comp - D) % factors[:, None]).any():
                o.fail(label, {"n": n})
    return o


def _normalized_samples(ctx, G, M, n):
    """Cocycles for the lemma tests: half normalized, half exterior."""
    for j in range(ctx.samples):
        flavor = Flavor.EXTERIOR if j % 2 else Flavor.NORMALIZED
        yield random_cocycle(G, M, n, flavor, ctx.rng)


def _lemma_symmetry(ctx: Context) -> Outcome:
    o = Outcome()
    counts = {(True, True): 0, (False, False): 0}
    for label, G, M in standard_pairs():
        o.touch(label)
        for n in (2, 3):
            for phi in _normalized_samples(ctx, G, M, n):
                flags = lemma_symmetry_criterion(G, M, phi)
                if flags[0] != flags[1]:
                    o.fail(label, {"n": n, "flags": list(flags), "values": phi.values.tolist()})
                counts[flags] = counts.get(flags, 0) + 1
    o.findings.append(f"flag counts: both true {counts[(True, True)]}, both false {counts[(False, False)]}")
    return o


def _lemma_coboundary(ctx: Context) -> Outcome:
    o = Outcome()
    counts = {(True, True): 0, (False, False): 0}
    for label, G, M in standard_pairs():
        o.touch(label)
        S = symmetric_coboundary_primitives(G, M)
        for _ in range(ctx.samples):
            g = Cochain.from_vector(G, M, 2, random_member(S, ctx.rng))
            flags = lemma_coboundary_criterion(G, M, coboundary(G, M, g), g)
            if flags[0] != flags[1]:
                o.fail(label, {"flags": list(flags), "g": g.values.tolist()})
            counts[flags] = counts.get(flags, 0) + 1
    o.findings.append(f"flag counts: both true {counts[(True, True)]}, both false {counts[(False, False)]}")
    return o


def _two_pattern(ctx: Context) -> Outcome:
    """Measured, not asserted: discrepancies become findings."""
    o = Outcome()
    for label, G, M in standard_pairs():
        o.touch(label)
        bad, example = 0, None
        for phi in _normalized_samples(ctx, G, M, 3):
            by_tau, _ = lemma_symmetry_criterion(G, M, phi)
            if two_pattern_criterion(G, M, phi) != by_tau:
                bad += 1
                if example is None:
                    nz = np.flatnonzero(phi.values.any(axis=1))
                    example = {int(i): phi.values[i].tolist() for i in nz[:6]}
        if bad:
            o.findings.append(f"{label}: two-pattern test disagrees with symmetry on {bad}/{ctx.samples} "
                              f"samples (2-torsion: {not _two_torsion_free(G)}); e.g. nonzero values {example}")
    return o


# ---------------------------------------------------------------------------
# crossed_ext


def _fixtures_validate(ctx: Context) -> Outcome:
    o = Outcome()
    paths = sorted(glob.glob(os.path.join(ctx.config.fixture_dir, "*.json")))
    if not any(os.path.basename(p) == "X9.json" for p in paths):
        o.fail("X9", "X9.json missing from the fixture directory")
    for p in paths:
        name = os.path.basename(p)
        o.touch(name)
        try:
            load_extension(p)
        except SymcohError as e:
            o.fail(name, str(e))
    return o


def _xi_cocycle(ctx: Context) -> Outcome:
    o = Outcome()
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        for name, sec in _sections(xe, ctx.rng):
            f = three_cocycle(xe, sec)
            if not coboundary(xe.G, xe.M, f).is_zero() or (sec.normalized and not is_normalized(xe.G, f)):
                o.fail(_ext_label(xe), {"section": name})
    return o


def _xi_independent(ctx: Context) -> Outcome:
    o = Outcome()
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        secs = _sections(xe, ctx.rng)
        f0 = three_cocycle(xe, secs[0][1])
        for name, sec in secs[1:]:
            diff = Cochain(3, (three_cocycle(xe, sec).values - f0.values) % xe.M.moduli)
            if is_coboundary(xe.G, xe.M, diff) is None:
                o.fail(_ext_label(xe), {"section": name})
        o.findings.append(f"{xe.name}: {len(secs)} sections compared")
    return o


def _inverse_identities_iff_symmetric(ctx: Context) -> Outcome:
    o = Outcome()
    tally = [0, 0]
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        for name, sec in _sections(xe, ctx.rng):
            p = inverse_identities_check(xe, sec)
            tally[p] += 1
            if p != is_member(xe.G, xe.M, three_cocycle(xe, sec), Flavor.SYMMETRIC):
                o.fail(_ext_label(xe), {"section": name, "inverse_identities": p})
    o.findings.append(f"sections with identities holding: {tally[1]}, failing: {tally[0]}")
    return o


def _symmetric_identities_iff_inverse(ctx: Context) -> Outcome:
    o = Outcome()
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        for name, sec in _sections(xe, ctx.rng):
            if not sec.weakly_symmetric:
                continue
            if symmetric_identities_check(xe, sec) != inverse_identities_check(xe, sec):
                o.fail(_ext_label(xe), {"section": name})
    return o


def _main_theorem(ctx: Context) -> Outcome:
    o = Outcome()
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        search = find_symmetric_section(xe)
        f = three_cocycle(xe, normalised_section(xe))
        in_image = class_in_image_alpha3(xe.G, xe.M, f) is not None
        msg = f"{xe.name}: symmetric section {'found' if search.found else 'absent'}, class in image {in_image}"
        if not search.in_theorem_scope:
            o.findings.append(msg + " (2-torsion, outside the theorem)")
            continue
        o.findings.append(msg)
        if search.found != in_image:
            o.fail(_ext_label(xe), {"found": search.found, "in_image": in_image})
    return o


def _hs2_crosscheck(ctx: Context) -> Outcome:
    o = Outcome()
    for label, G, M in standard_pairs():
        if G.order > 4 or M.size > 3:
            continue
        o.touch(label)
        Z = flavor_cocycles(G, M, 2, Flavor.NORMALIZED)
        sym = flavor_cocycles(G, M, 2, Flavor.EXTERIOR)
        coeffs = itertools.product(*(range(d) for d in Z.orders))
        for c in coeffs:
            f = Cochain.from_vector(G, M, 2, Z.element(np.array(c, dtype=np.int64)) if Z.rank
                                    else np.zeros(G.order ** 2 * M.rank, dtype=np.int64))
            ext = extension_from_2cocycle(G, M, f)
            s = symmetric_section_search_2d(ext)
            expect = class_in_image(G, M, f, Flavor.SYMMETRIC) is not None
            if sym.contains(f.vector) and s is None:
                o.fail(label, {"f": f.values.tolist(), "reason": "symmetric cocycle without symmetric section"})
            if (s is not None) != expect:
                o.fail(label, {"f": f.values.tolist(), "section": s, "class_in_image": expect})
    # the Z/4 extension of Z/2 by Z/2
    Z2 = standard_groups()["Z2"]
    M = trivial_module(Z2, 2)
    f = Cochain.from_function(Z2, M, 2, lambda x, y: (int(x == 1 and y == 1),))
    o.touch("Z4 = Z2 x_f Z2")
    if symmetric_section_search_2d(extension_from_2cocycle(Z2, M, f)) is not None:
        o.fail("Z4 = Z2 x_f Z2", "unexpected symmetric section")
    return o


def _random_relabel(n: int, rng) -> np.ndarray:
    return np.concatenate([[0], 1 + rng.permutation(n - 1)]) if n > 1 else np.zeros(1, dtype=np.int64)


def _verdicts(xe: CrossedExtension):
    f = three_cocycle(xe, normalised_section(xe))
    return (split_check(xe).splits, find_symmetric_section(xe).found, is_coboundary(xe.G, xe.M, f) is not None,
            class_in_image_alpha3(xe.G, xe.M, f) is not None)


def _morphism_invariance(ctx: Context) -> Outcome:
    o = Outcome()
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        base = _verdicts(xe)
        for _ in range(2):
            other = relabel_extension(xe, _random_relabel(xe.T.order, ctx.rng), _random_relabel(xe.R.order, ctx.rng))
            if _verdicts(other) != base:
                o.fail(_ext_label(xe), {"base": base, "relabeled": _verdicts(other)})
    return o


# ---------------------------------------------------------------------------
# two_group


def _bifunctor(ctx: Context) -> Outcome:
    o = Outcome()
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        laws = CatGroup(xe.xm).check_laws(seed=ctx.config.seed)
        exhaustive = laws.pop("exhaustive")
        if not all(laws.values()):
            o.fail(_ext_label(xe), {k: v for k, v in laws.items() if not v})
        if not exhaustive:
            o.fail(_ext_label(xe), {"reason": "law domain too large for exhaustive checking"})
    return o


def _monoidal_iff_zero(ctx: Context) -> Outcome:
    o = Outcome()
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        for name, sec in _sections(xe, ctx.rng):
            sf = section_functor(xe, sec)
            mono = is_monoidal(xe, sf)
            if mono != three_cocycle(xe, sec).is_zero():
                o.fail(_ext_label(xe), {"section": name, "monoidal": mono})
            if mono and not is_symmetric_sfunctor(xe, sf):
                o.findings.append(f"{xe.name}/{name}: monoidal but not symmetric")
                if sec.normalized:
                    o.fail(_ext_label(xe), {"section": name, "reason": "monoidal but not symmetric"})
    return o


def _symmetric_functor_iff_inverse(ctx: Context) -> Outcome:
    o = Outcome()
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        for name, sec in _sections(xe, ctx.rng):
            if is_symmetric_sfunctor(xe, section_functor(xe, sec)) != inverse_identities_check(xe, sec):
                o.fail(_ext_label(xe), {"section": name})
    return o


def _split_iff_zero(ctx: Context) -> Outcome:
    o = Outcome()
    for xe in ctx.extensions():
        o.touch(_ext_label(xe))
        secs = _sections(xe, ctx.rng)
        verdicts = set()
        for name, sec in secs[:4]:
            v = split_check(xe, sec).splits
            verdicts.add(v)
            if v != (is_coboundary(xe.G, xe.M, three_cocycle(xe, sec)) is not None):
                o.fail(_ext_label(xe), {"section": name})
        if len(verdicts) != 1:
            o.fail(_ext_label(xe), "split verdict depends on the section")
        o.findings.append(f"{xe.name}: splits {verdicts.pop()}")
    return o


# ---------------------------------------------------------------------------
# cli


def _cli_round_trip(ctx: Context) -> Outcome:
    from .cli import run_cli

    o = Outcome()
    commands = [
        ["cohomology", "--group", "cyclic:3", "--module", "trivial:3", "--degree", "3", "--representatives"],
        ["compare", "--group", "s3", "--module", "sign:3", "--degree", "2", "--source", "symmetric",
         "--target", "classical"],
        ["xmod", "cocycle", os.path.join(ctx.config.fixture_dir, "X9.json")],
        ["xmod", "find-symmetric-section", os.path.join(ctx.config.fixture_dir, "X9.json")],
    ]
    for argv in commands:
        label = " ".join(argv[:2])
        o.touch(label)
        code, out, _ = run_cli(argv + ["--format", "json"])
        if code != 0:
            o.fail(label, {"exit": code})
            continue
        if render_json(json.loads(out)) != out:
            o.fail(label, "re-rendering differs")
    return o


def _cli_exit_codes(ctx: Context) -> Outcome:
    from .cli import run_cli

    o = Outcome()
    cases = [
        (["cohomology", "--group", "cyclic:3", "--module", "trivial:3", "--degree", "1"], 0),
        (["cohomology", "--group", '{"table": [[0, 1], [0, 1]]}', "--module", "trivial:2", "--degree", "1"], 2),
        (["cohomology", "--group", "cyclic:9", "--module", "trivial:3", "--degree", "4", "--max-cells", "100"], 3),
        (["compare", "--group", "cyclic:3", "--module", "trivial:3", "--degree", "1", "--source", "classical",
          "--target", "symmetric"], 2),
    ]
    for argv, want in cases:
        label = f"exit {want}: {' '.join(argv[:4])}"
        o.touch(label)
        code, _, _ = run_cli(argv)
        if code != want:
            o.fail(label, {"exit": code, "expected": want})
    return o


# ---------------------------------------------------------------------------
# registry

_ORACLE = frozenset({"oracle"})

CLAIMS: tuple[Claim, ...] = (
    Claim("algebra.builders_validate", "algebra_core", "every builder output passes validate_group",
          _builders_validate),
    Claim("algebra.act_additive", "algebra_core", "act(g, m+m') = act(g,m) + act(g,m')", _act_additive),
    Claim("algebra.census_pairing", "algebra_core",
          "inverse pairing covers each nonidentity element once with x*y = 1", _census_pairing),
    Claim("linalg.snf_reconstruct", "exact_linalg", "U A V = S exactly, divisibility chain, unimodular U, V",
          _snf_reconstruct),
    Claim("linalg.solve_mod_exhaustive", "exact_linalg",
          "solve_mod answers verified; none-answers agree with exhaustion", _solve_mod_exhaustive),
    Claim("linalg.homology_vs_oracle", "exact_linalg", "homology_invariants agrees with oracle enumeration",
          _homology_vs_oracle, _ORACLE),
    Claim("cochains.d_squared_zero", "cochain_complex", "d o d = 0 exactly, all fixtures, n <= 4", _d_squared),
    Claim("cochains.subcomplex_closure", "cochain_complex",
          "d maps normalized, symmetric and exterior cochains into themselves", _subcomplex_closure),
    Claim("cochains.tau_involution", "cochain_complex", "tau_i o tau_i = id for all i, n <= 4", _tau_involution),
    Claim("cochains.exterior_vanishing", "cochain_complex",
          "exterior cochains vanish when g_{i+1} = g_i^-1", _exterior_vanishing),
    Claim("cohomology.oracle_agreement", "cohomology_engine",
          "engine invariant factors equal the oracle's on oracle-feasible instances",
          _oracle_agreement(False), _ORACLE),
    Claim("cohomology.alpha_low_degrees", "cohomology_engine",
          "alpha is an isomorphism for n = 0, 1 and a monomorphism for n = 2", _alpha_low),
    Claim("cohomology.alpha3_injective", "cohomology_engine",
          "alpha^3 injective for groups without elements of order two", _alpha3),
    Claim("cohomology.gamma_bijective", "cohomology_engine",
          "exterior -> symmetric is an isomorphism for n <= 3 (n = 4 when |G| <= 5)", _gamma),
    Claim("cohomology.functoriality", "cohomology_engine",
          "exterior -> classical equals alpha o gamma modulo target invariants", _functoriality),
    Claim("cohomology.lemma_symmetry", "cohomology_engine",
          "normalized cocycle is symmetric iff it vanishes on adjacent inverse pairs", _lemma_symmetry),
    Claim("cohomology.lemma_coboundary", "cohomology_engine",
          "for dg symmetric with g normalized, g symmetric iff g(x, x^-1) = 0", _lemma_coboundary),
    Claim("cohomology.two_pattern_remark", "cohomology_engine",
          "phi(x, x^-1, y) = phi(x, y, y^-1) compared with symmetry (measured)", _two_pattern),
    Claim("crossed.fixtures_validate", "crossed_ext", "shipped crossed extensions validate", _fixtures_validate),
    Claim("crossed.xi_cocycle", "crossed_ext", "xi of a normalized section is a normalized 3-cocycle",
          _xi_cocycle),
    Claim("crossed.xi_class_independent", "crossed_ext", "the class of xi does not depend on the section",
          _xi_independent),
    Claim("crossed.inverse_identities_iff_symmetric", "crossed_ext",
          "the two inverse identities hold iff xi is a symmetric cocycle", _inverse_identities_iff_symmetric),
    Claim("crossed.symmetric_identities_iff_inverse", "crossed_ext",
          "on weakly symmetric sections, the symmetric-section identities iff the inverse identities",
          _symmetric_identities_iff_inverse),
    Claim("crossed.main_theorem", "crossed_ext",
          "without 2-torsion: a symmetric section exists iff [xi] lies in the image of HS^3", _main_theorem),
    Claim("crossed.hs2_crosscheck", "crossed_ext",
          "twisted products admit inverse-preserving sections iff the class lies in the image of HS^2",
          _hs2_crosscheck),
    Claim("crossed.morphism_invariance", "crossed_ext", "verdicts invariant under relabeling T and R",
          _morphism_invariance),
    Claim("oracle.engine_agreement", "oracle",
          "oracle and engine agree, all flavors, n <= 3 for |G| = 2, n <= 2 for |G| = 3",
          _oracle_agreement(True), _ORACLE),
    Claim("twogroup.bifunctor_laws", "two_group", "tensor is a strictly associative bifunctor", _bifunctor),
    Claim("twogroup.monoidal_iff_xi_zero", "two_group", "section functor monoidal iff xi = 0; monoidal implies "
          "symmetric for normalized sections", _monoidal_iff_zero),
    Claim("twogroup.symmetric_functor_iff_inverse", "two_group",
          "symmetric s-functor iff the two inverse identities hold", _symmetric_functor_iff_inverse),
    Claim("twogroup.split_iff_class_zero", "two_group",
          "a monoidal section exists iff xi is a coboundary, for any section", _split_iff_zero),
    Claim("cli.round_trip", "cli", "machine output re-renders byte-identically", _cli_round_trip),
    Claim("cli.exit_codes", "cli", "exit codes 0 / 2 / 3 as documented", _cli_exit_codes),
)

_BY_ID = {c.id: c for c in CLAIMS}


def run_claim(claim_id: str, config: SuiteConfig) -> ClaimRecord:
    claim = _BY_ID[claim_id]
    if claim.tags & config.skip:
        return ClaimRecord(claim.id, claim.module, claim.anchor, "skipped", [], None,
                           [f"skipped by request: {sorted(claim.tags & config.skip)}"])
    start = time.perf_counter()
    try:
        out = claim.run(Context(config, claim.id))
    except Exception as e:  # a crash is a failed claim, with the traceback tail as witness
        tb = traceback.format_exception_only(type(e), e)[-1].strip()
        out = Outcome(ok=False, witness={"exception": tb})
    return ClaimRecord(claim.id, claim.module, claim.anchor, "pass" if out.ok else "fail", out.fixtures,
                       out.witness, out.findings, time.perf_counter() - start)


def _worker(args):
    return run_claim(*args)


def run_suite(config: SuiteConfig = SuiteConfig()) -> SuiteReport:
    ids = [c.id for c in CLAIMS if not config.only or c.id in config.only]
    unknown = set(config.only) - set(_BY_ID)
    if unknown:
        raise ValueError(f"unknown claims {sorted(unknown)}")
    if config.jobs <= 1:
        records = [run_claim(i, config) for i in ids]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_worker, [(i, config) for i in ids]))
    return SuiteReport(config.seed, sorted(records, key=lambda r: ids.index(r.id)))
