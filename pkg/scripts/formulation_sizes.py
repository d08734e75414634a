"""Print the closed-form model-size comparison for one instance shape.

Generates a random instance of the requested shape (or reads one from a
file) and prints variables and constraints for every formulation,
grouped the same way the exporter's summaries are verified against.
"""

import argparse
import pathlib
import sys

from ddvop.graph import parse_instance
from ddvop.instgen import gen_random
from ddvop.modelgen import formulation_sizes


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("instance", nargs="?", type=pathlib.Path)
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--density", type=float, default=0.4)
    ap.add_argument("--clique-size", type=int, default=3, metavar="K")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if args.instance is not None:
        inst = parse_instance(args.instance.read_text())
    else:
        inst = gen_random(args.n, args.density, args.clique_size, args.seed)
    print(f"{inst.name}: n={inst.n} m={len(inst.edges)} K={inst.K}")
    sizes = formulation_sizes(inst)
    width = max(len(name) for name in sizes)
    for name, groups in sizes.items():
        vars_total = sum(groups["variables"].values())
        cons_total = sum(groups["constraints"].values())
        detail = ", ".join(
            f"{k}={v}" for k, v in sorted(groups["constraints"].items())
        )
        print(
            f"  {name:<{width}}  variables={vars_total:<6} "
            f"constraints={cons_total:<8} ({detail})"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
