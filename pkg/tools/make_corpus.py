#!/usr/bin/env python3
"""Regenerate the bundled corpus (frozen seed; the JSON files are committed).

Hand-picked members: the two worked rings, a 4-variable ring with a
finite-length middle cohomology, and three Cohen-Macaulay controls.  The rest
is a reproducible batch of random square-free monomial ideals in 3-5
variables, filtered to proper ideals of positive dimension.
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from irlab.groebner import Ideal  # noqa: E402
from irlab.params import Rng  # noqa: E402
from irlab.ring import ring  # noqa: E402

HERE = os.path.dirname(__file__)
OUT = os.path.join(HERE, "..", "src", "irlab", "corpus")

MASTER_SEED = 20250808

HANDMADE = {
    "two_planes_3d.json": {
        "label": "two 3-planes in 5-space meeting along a line",
        "variables": ["a", "b", "c", "d", "e"],
        "ideal": ["a*c", "a*d", "b*c", "b*d"],
        "s2_ification": {"summands": [["a", "b"], ["c", "d"]]},
    },
    "plane_and_line.json": {
        "label": "a plane and a transversal line in 3-space",
        "variables": ["x", "y", "z"],
        "ideal": ["x*y", "x*z"],
    },
    "two_planes_origin.json": {
        "label": "two planes in 4-space meeting at the origin",
        "variables": ["x", "y", "u", "v"],
        "ideal": ["x*u", "x*v", "y*u", "y*v"],
    },
    "cm_hypersurface.json": {
        "label": "CM control: monomial hypersurface",
        "variables": ["x", "y", "z"],
        "ideal": ["x*y"],
    },
    "cm_three_lines.json": {
        "label": "CM control: three coordinate lines (type 2)",
        "variables": ["x", "y", "z"],
        "ideal": ["x*y", "x*z", "y*z"],
    },
    "cm_quadric_cone.json": {
        "label": "CM control: quadric cone",
        "variables": ["x", "y", "z"],
        "ideal": ["x^2 - y*z"],
    },
    "cm_plane.json": {
        "label": "CM control: the polynomial plane itself",
        "variables": ["x", "y"],
        "ideal": [],
    },
}

VAR_POOL = ["x", "y", "z", "u", "v"]


def _random_generators(sub, nvars):
    ngens = 2 + sub.below(4)               # 2..5 generators
    gens = set()
    for g in range(ngens):
        grng = sub.spawn(g)
        degree = min(2 + grng.below(2), nvars)
        support = []
        remaining = list(range(nvars))
        for _ in range(degree):
            support.append(remaining.pop(grng.below(len(remaining))))
        gens.add(tuple(1 if i in support else 0 for i in range(nvars)))
    return gens


def _random_subspace_arrangement(sub, nvars, R):
    """Intersection of 2-3 coordinate-subspace primes of assorted dimensions."""
    pieces = 2 + sub.below(2)
    ideal = None
    for t in range(pieces):
        prng = sub.spawn(100 + t)
        codim = 1 + prng.below(nvars - 1)
        chosen = []
        remaining = list(range(nvars))
        for _ in range(codim):
            chosen.append(remaining.pop(prng.below(len(remaining))))
        prime = Ideal(R, [R.variable(i) for i in sorted(chosen)])
        ideal = prime if ideal is None else ideal.intersect(prime)
    return ideal


def random_squarefree(rng, count):
    """A reproducible batch of square-free monomial ideals, classified during
    generation so the batch exercises both sides of the sequential-CM
    dichotomy."""
    from irlab.filtration import classify_sequential

    out = []
    seen = set()
    seq_cm_count = 0
    strict_count = 0
    attempts = 0
    while len(out) < count and attempts < 10000:
        attempts += 1
        sub = rng.spawn(attempts)
        nvars = 3 + sub.below(3)           # 3, 4 or 5 variables
        variables = VAR_POOL[:nvars]
        R = ring(tuple(variables))
        if attempts % 2:
            polys = [R.monomial(e) for e in sorted(_random_generators(sub, nvars))]
            ideal = Ideal(R, polys)
        else:
            ideal = _random_subspace_arrangement(sub, nvars, R)
        if ideal.is_zero() or ideal.is_unit():
            continue
        if ideal.krull_dimension() < 1:
            continue
        gen_strings = tuple(sorted(str(g) for g in ideal.minimal_generators()))
        key = (tuple(variables), gen_strings)
        if key in seen:
            continue
        seen.add(key)
        is_seq = classify_sequential(ideal).is_sequentially_cm
        # keep the two classes roughly balanced
        if is_seq and seq_cm_count >= (count + 1) // 2 + 2:
            continue
        if not is_seq and strict_count >= (count + 1) // 2 + 2:
            continue
        seq_cm_count += is_seq
        strict_count += not is_seq
        out.append({
            "label": f"random square-free monomial ideal #{len(out):02d}",
            "variables": variables,
            "ideal": list(gen_strings),
        })
    if seq_cm_count == 0 or strict_count == 0:
        raise SystemExit("corpus batch failed to cover both classification classes")
    print(f"random batch: {seq_cm_count} sequentially CM, {strict_count} not")
    return out


def main():
    os.makedirs(OUT, exist_ok=True)
    index = {"golden": [], "cm_controls": [], "random_squarefree": []}
    for name, spec in HANDMADE.items():
        spec = {"characteristic": 32003, **spec}
        with open(os.path.join(OUT, name), "w") as fh:
            json.dump(spec, fh, indent=2, sort_keys=True)
            fh.write("\n")
        if name.startswith("cm_"):
            index["cm_controls"].append(name)
        else:
            index["golden"].append(name)
    rng = Rng(MASTER_SEED)
    for i, spec in enumerate(random_squarefree(rng, 20)):
        name = f"sqfree_{i:02d}.json"
        spec = {"characteristic": 32003, **spec}
        with open(os.path.join(OUT, name), "w") as fh:
            json.dump(spec, fh, indent=2, sort_keys=True)
            fh.write("\n")
        index["random_squarefree"].append(name)
    index["master_seed"] = MASTER_SEED
    with open(os.path.join(OUT, "index.json"), "w") as fh:
        json.dump(index, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(index['golden']) + len(index['cm_controls']) + len(index['random_squarefree'])} specs")


if __name__ == "__main__":
    main()
