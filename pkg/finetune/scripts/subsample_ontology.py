"""Subsample an ontology exchange-JSON file to a fixed number of named
subsumption axioms (seeded), keeping the labels and restrictions of the
surviving classes. Operates purely on the documented JSON schema.

Usage: subsample_ontology.py FULL.json OUT.json --axioms 5000 --seed 7
(convert N-Triples first: `ontosub convert full.nt full.json`)
"""

import argparse
import json
import random


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("source")
    parser.add_argument("output")
    parser.add_argument("--axioms", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    with open(args.source, encoding="utf-8") as f:
        doc = json.load(f)

    pairs = sorted(map(tuple, doc["subclass_of"]))
    rng = random.Random(args.seed)
    if len(pairs) > args.axioms:
        pairs = sorted(rng.sample(pairs, args.axioms))
    kept = {iri for pair in pairs for iri in pair}

    restrictions = [
        r for r in doc["restrictions"]
        if r["child"] in kept and all(f in kept for f in r["fillers"])
    ]
    properties = sorted({r["property"] for r in restrictions})
    subsample = {
        "classes": sorted(kept),
        "properties": properties,
        "labels": [entry for entry in doc["labels"]
                   if entry["iri"] in kept or entry["iri"] in set(properties)],
        "subclass_of": [list(pair) for pair in pairs],
        "restrictions": restrictions,
    }
    with open(args.output, "w", encoding="utf-8") as f:
        json.dump(subsample, f, indent=2)
        f.write("\n")
    print(f"kept {len(pairs)} axioms, {len(kept)} classes, {len(restrictions)} restrictions")


if __name__ == "__main__":
    main()
