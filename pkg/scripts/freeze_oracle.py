"""Record brute-force cohomology of the smallest instances as golden values.

Output: tests/golden/oracle_v1.json, keyed "group|module|flavor|degree".
Only the oracle module is used, so the file is independent of the
linear-algebra engine it later checks.
"""

import json
import os
import time

from symcoh.algebra import build_cyclic, sign_module, trivial_module
from symcoh.oracle import FLAVORS, OracleBudget, enumerate_cohomology

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "golden", "oracle_v1.json")


def cases():
    z2, z3 = build_cyclic(2), build_cyclic(3)
    yield z2, trivial_module(z2, 2), 3
    yield z2, trivial_module(z2, 3), 3
    yield z2, trivial_module(z2, 4), 2
    yield z2, sign_module(z2, 3), 3
    yield z3, trivial_module(z3, 2), 2
    yield z3, trivial_module(z3, 3), 2


def main():
    golden = {}
    start = time.perf_counter()
    for G, M, top in cases():
        for flavor in FLAVORS:
            for n in range(top + 1):
                inv = enumerate_cohomology(G, M, n, flavor, OracleBudget())
                golden[f"{G.name}|{M.name}|{flavor}|{n}"] = list(inv.factors)
    with open(OUT, "w", encoding="utf-8") as fh:
        json.dump(golden, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"{len(golden)} values in {time.perf_counter() - start:.1f}s -> {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
