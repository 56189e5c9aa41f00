"""Tabulate second cohomology and central extension counts.

Walks the small-group catalog and prints, for each group and modulus,
the invariant factors of H^2 with trivial coefficients and the number
of isomorphism types of central extensions.  Useful for eyeballing
which (group, m) pairs admit a unique nontrivial extension, which is
the hypothesis the model-comparison checks rely on.
"""

import argparse
import sys

from isom4.cohomology import classify_central_extensions, second_cohomology
from isom4.groups import alternating, cyclic, dihedral, symmetric


CATALOG = [
    ("Z6", cyclic(6)),
    ("D6", dihedral(6)),
    ("D8", dihedral(8)),
    ("D10", dihedral(10)),
    ("D12", dihedral(12)),
    ("A4", alternating(4)),
    ("S4", symmetric(4)),
    ("A5", alternating(5)),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--moduli", type=int, nargs="+", default=[2, 3, 4, 6])
    ap.add_argument("--skip-types", action="store_true",
                    help="only print H^2, skip the extension enumeration")
    args = ap.parse_args(argv)

    print(f"{'group':>6} {'m':>3} {'H^2 factors':>14} {'ext types':>10}")
    for label, group in CATALOG:
        for m in args.moduli:
            factors = second_cohomology(group, m).invariant_factors
            if args.skip_types:
                print(f"{label:>6} {m:>3} {str(factors):>14}")
                continue
            types = classify_central_extensions(group, m)
            orders = sorted({t.group.size for t in types})
            print(f"{label:>6} {m:>3} {str(factors):>14} {len(types):>10}"
                  f"   orders {orders}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
