"""Orders of H^n, HS^n and H^n_lambda with the alpha and gamma verdicts.

Usage: python scripts/comparison_table.py [--max-degree 3]
Prints one row per (group, module, degree) over the suite's fixture pairs.
"""

import argparse

from symcoh.cohomology import cohomology, comparison_map
from symcoh.errors import SizeGuardError
from symcoh.suite import standard_pairs


def verdict(rep):
    if rep.bijective:
        return "iso"
    return "mono" if rep.injective else "epi" if rep.surjective else "-"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()
    print(f"{'pair':<20} n  {'H':>10} {'HS':>10} {'H_lambda':>10}  alpha gamma")
    for label, G, M in standard_pairs():
        for n in range(args.max_degree + 1):
            try:
                h = cohomology(G, M, n, "classical").invariants
                hs = cohomology(G, M, n, "symmetric").invariants
                hl = cohomology(G, M, n, "exterior").invariants
                a = comparison_map(G, M, n, "symmetric", "classical")
                g = comparison_map(G, M, n, "exterior", "symmetric")
            except SizeGuardError:
                print(f"{label:<20} {n}  size guard")
                continue
            print(f"{label:<20} {n}  {str(h):>10} {str(hs):>10} {str(hl):>10}  {verdict(a):<5} {verdict(g)}")


if __name__ == "__main__":
    main()
