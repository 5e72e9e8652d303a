"""Regenerate the crossed-extension fixture corpus under src/symcoh/fixtures/v1."""

import os

from symcoh.algebra import build_cyclic, sign_module, symmetric_group, trivial_module
from symcoh.cohomology import cohomology
from symcoh.crossed import cyclic_crossed_extension, realize_3cocycle, trivial_crossed_extension
from symcoh.io import extension_to_doc, fixture_dir, load_extension, render_json


def main():
    out = fixture_dir()
    os.makedirs(out, exist_ok=True)
    z3 = build_cyclic(3)
    M = trivial_module(z3, 3)
    gen = cohomology(z3, M, 3, "normalized").representatives[0]
    exts = {
        "X9": cyclic_crossed_extension(3),
        "X25": cyclic_crossed_extension(5),
        "X4": cyclic_crossed_extension(2),
        "trivial": trivial_crossed_extension(M, name="trivial"),
        "trivial_S3_sign3": trivial_crossed_extension(sign_module(symmetric_group(3), 3), name="trivial_S3_sign3"),
        "nonsplit_Z3": realize_3cocycle(z3, M, gen, name="nonsplit_Z3"),
    }
    for name, xe in exts.items():
        path = os.path.join(out, f"{name}.json")
        doc = extension_to_doc(xe)
        doc["name"] = name
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render_json(doc))
        load_extension(path)  # round trip through the validators
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
