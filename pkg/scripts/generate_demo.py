#!/usr/bin/env python3
"""Generate the bundled demo input set.

Writes messages.jsonl, price.csv, control.csv, lexicon.csv and config.yaml
into the target directory. The price series is constructed from the control
index and the previous week's measured co-occurrence count, so the pipeline
run over these files shows a real lag-1 effect.

Usage:
    python scripts/generate_demo.py --out demo_data [--seed 7] [--weeks 94]

Run the pipeline afterwards with:
    forumcast run -c demo_data/config.yaml
"""

import argparse

from forumcast.synth import generate_demo


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--weeks", type=int, default=94)
    args = parser.parse_args()

    paths = generate_demo(args.out, seed=args.seed, weeks=args.weeks)
    for kind, path in paths.items():
        print(f"{kind:9s} {path}")


if __name__ == "__main__":
    main()
