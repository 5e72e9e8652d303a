"""Command-line interface.

Exit codes: 0 success, 1 suite claim failure, 2 validation error, 3 size
guard or search budget, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import contextlib
import io as _stdio
import json
import sys

import numpy as np

from . import cochains
from .cochains import Flavor
from .cohomology import class_in_image_alpha3, cohomology, comparison_map
from .crossed import find_symmetric_section, normalised_section, three_cocycle, weakly_symmetric_section
from .errors import BudgetExceeded, InternalInconsistency, SizeGuardError, ValidationError
from .io import cochain_from_doc, cochain_to_doc, fixture_dir, load_extension, parse_group, parse_module, render_json
from .twogroup import split_check

__all__ = ["main", "run_cli", "build_parser"]

EXIT_OK, EXIT_CLAIM, EXIT_VALIDATION, EXIT_SIZE, EXIT_INTERNAL = 0, 1, 2, 3, 4


def _group_arg(text: str):
    text = text.strip()
    if text.startswith("{"):
        try:
            return parse_group(json.loads(text), "$")
        except json.JSONDecodeError as e:
            raise ValidationError(f"malformed inline JSON: {e.msg}", path="$") from None
    return parse_group(text, "$")


def _module_arg(text: str, G):
    text = text.strip()
    if text.startswith("{"):
        try:
            return parse_module(json.loads(text), G, "$")
        except json.JSONDecodeError as e:
            raise ValidationError(f"malformed inline JSON: {e.msg}", path="$") from None
    return parse_module(text, G, "$")


def _emit(args, doc: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(render_json(doc))
    else:
        print(text)


def _section_list(xe, sec) -> dict:
    return {"s": sec.s.tolist(), "sigma": sec.sigma.tolist(), "normalized": sec.normalized,
            "weakly_symmetric": sec.weakly_symmetric, "symmetric": sec.symmetric}


# ---------------------------------------------------------------------------
# commands


def cmd_cohomology(args) -> int:
    G = _group_arg(args.group)
    M = _module_arg(args.module, G)
    res = cohomology(G, M, args.degree, args.flavor)
    doc = {"group": args.group, "module": args.module, "degree": args.degree, "flavor": res.flavor.value,
           "invariants": list(res.invariants.factors), "order": res.order}
    text = f"H^{args.degree}_{res.flavor.value}({G.name}, {M.name}) = {res.invariants}"
    if args.representatives:
        doc["representatives"] = [r.values.tolist() for r in res.representatives]
        for i, r in enumerate(res.representatives):
            nz = np.flatnonzero(r.values.any(axis=1))
            text += f"\n  generator {i} (order {res.invariants.factors[i]}): nonzero at tuple indices {nz.tolist()}"
    _emit(args, doc, text)
    return EXIT_OK


def cmd_compare(args) -> int:
    G = _group_arg(args.group)
    M = _module_arg(args.module, G)
    rep = comparison_map(G, M, args.degree, args.source, args.target)
    kind = "bijective" if rep.bijective else "injective" if rep.injective else \
        "surjective" if rep.surjective else "neither"
    doc = {"group": args.group, "module": args.module, "degree": args.degree, "source": rep.source.value,
           "target": rep.target.value, "source_invariants": list(rep.source_invariants.factors),
           "target_invariants": list(rep.target_invariants.factors), "matrix": [list(r) for r in rep.matrix],
           "injective": rep.injective, "surjective": rep.surjective, "verdict": kind}
    text = (f"{rep.source.value} -> {rep.target.value} in degree {args.degree}: "
            f"{rep.source_invariants} -> {rep.target_invariants}: {kind}")
    _emit(args, doc, text)
    return EXIT_OK


def cmd_xmod(args) -> int:
    xe = load_extension(args.extension)
    if args.action == "verify":
        doc = {"extension": xe.name, "valid": True, "orders": {"G": xe.G.order, "M": xe.M.size,
                                                               "T": xe.T.order, "R": xe.R.order}}
        _emit(args, doc, f"{xe.name}: valid crossed extension (|T|={xe.T.order}, |R|={xe.R.order}, "
                         f"|G|={xe.G.order}, |M|={xe.M.size})")
    elif args.action == "cocycle":
        sec = weakly_symmetric_section(xe) if args.section == "weak" else normalised_section(xe)
        f = three_cocycle(xe, sec)
        doc = cochain_to_doc(xe.G, xe.M, f)
        nz = int(np.count_nonzero(f.values.any(axis=1)))
        _emit(args, doc, f"{xe.name}: 3-cocycle from the {args.section} section, {nz} nonzero values "
                         f"(use --format json for the table)")
    elif args.action == "find-symmetric-section":
        res = find_symmetric_section(xe, budget=args.budget)
        doc = {"extension": xe.name, "found": res.found, "in_theorem_scope": res.in_theorem_scope,
               "object_maps_examined": res.s_choices,
               "section": _section_list(xe, res.section) if res.found else None}
        text = f"{xe.name}: symmetric section {'found' if res.found else 'does not exist'}"
        if not res.in_theorem_scope:
            text += " (G has elements of order 2: outside the theorem's hypotheses)"
        if res.found:
            text += f"\n  s = {res.section.s.tolist()}\n  sigma = {res.section.sigma.tolist()}"
        _emit(args, doc, text)
    elif args.action == "split-check":
        v = split_check(xe)
        doc = {"extension": xe.name, "splits": v.splits,
               "monoidal_section": _section_list(xe, v.monoidal_section) if v.splits else None}
        _emit(args, doc, f"{xe.name}: {'splits' if v.splits else 'does not split'}")
    return EXIT_OK


def cmd_alpha3(args) -> int:
    if args.cocycle == "-":
        raw = sys.stdin.read()
    else:
        with open(args.cocycle, encoding="utf-8") as fh:
            raw = fh.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ValidationError(f"malformed JSON: {e.msg}", path="$") from None
    G, M, f = cochain_from_doc(doc)
    hit = class_in_image_alpha3(G, M, f)
    out = {"in_image": hit is not None}
    if hit is not None:
        out["symmetric_cocycle"] = hit[0].values.tolist()
        out["primitive"] = hit[1].values.tolist()
    _emit(args, out, f"class {'lies' if hit is not None else 'does not lie'} in the image of HS^3 -> H^3")
    return EXIT_OK


def cmd_suite(args) -> int:
    from .suite import SuiteConfig, run_suite

    cfg = SuiteConfig(fixture_dir=args.fixtures, seed=args.seed, jobs=args.jobs, skip=frozenset(args.skip),
                      samples=args.samples, only=tuple(args.only))
    report = run_suite(cfg)
    if args.format == "json":
        sys.stdout.write(report.to_json(include_timing=args.timings))
    else:
        print(report.to_table())
        for r in report.records:
            for f in r.findings:
                print(f"[{r.id}] {f}")
    return EXIT_OK if report.passed else EXIT_CLAIM


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-cells", type=int, default=None,
                        help="override the cochain size guard (default from SYMCOH_MAX_CELLS or 2000000)")

    p = argparse.ArgumentParser(prog="symcoh", description="Symmetric and exterior cohomology of finite groups.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cohomology", parents=[common], help="invariant factors of H^n in a flavor")
    c.add_argument("--group", required=True)
    c.add_argument("--module", required=True)
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--flavor", choices=[f.value for f in Flavor], default="classical")
    c.add_argument("--representatives", action="store_true")
    c.set_defaults(func=cmd_cohomology)

    c = sub.add_parser("compare", parents=[common], help="map on cohomology induced by an inclusion")
    c.add_argument("--group", required=True)
    c.add_argument("--module", required=True)
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--source", choices=[f.value for f in Flavor], required=True)
    c.add_argument("--target", choices=[f.value for f in Flavor], required=True)
    c.set_defaults(func=cmd_compare)

    c = sub.add_parser("xmod", parents=[common], help="crossed-extension tools")
    c.add_argument("action", choices=("verify", "cocycle", "find-symmetric-section", "split-check"))
    c.add_argument("extension", help="crossed-extension JSON file")
    c.add_argument("--section", choices=("canonical", "weak"), default="canonical")
    c.add_argument("--budget", type=int, default=100_000, help="object maps tried by the symmetric search")
    c.set_defaults(func=cmd_xmod)

    c = sub.add_parser("class-in-image-alpha3", parents=[common],
                       help="is the class of a 3-cocycle document in the image of HS^3?")
    c.add_argument("cocycle", nargs="?", default="-", help="cochain JSON file, '-' for stdin")
    c.set_defaults(func=cmd_alpha3)

    c = sub.add_parser("suite", parents=[common], help="run the claims ledger")
    c.add_argument("--fixtures", default=fixture_dir())
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--skip", action="append", default=[], choices=("oracle",))
    c.add_argument("--only", action="append", default=[], help="claim id (repeatable)")
    c.add_argument("--timings", action="store_true", help="include timings in JSON (breaks byte-determinism)")
    c.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    previous = cochains.max_cells()
    if args.max_cells is not None:
        cochains.set_max_cells(args.max_cells)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"validation error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SizeGuardError, BudgetExceeded) as e:
        print(f"size guard: {e}", file=sys.stderr)
        return EXIT_SIZE
    except InternalInconsistency as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        cochains.set_max_cells(previous)


def run_cli(argv) -> tuple[int, str, str]:
    """Run in-process, returning ``(exit code, stdout, stderr)``."""
    out, err = _stdio.StringIO(), _stdio.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as e:  # argparse
            code = int(e.code or 0)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
