"""Annihilator of d{a,b} ^ d{a,c} over F_p(a,b,c), three ways.

The slots overlap in a, so none of the disjoint/mixed closed forms apply
directly.  The oracle still agrees with the two-fold power formula for the
union {a,b,c}, and the general bounds bracket it.
"""

import argparse

from pforms import FieldContext
from pforms.annihilators import GeneratorFamily, ann_bounds, ann_bruteforce, ann_power


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=2)
    args = parser.parse_args()

    F = FieldContext(args.p, ("a", "b", "c"))
    a, b, c = F.gens()
    family = GeneratorFamily.of([a, b], [a, c])
    print(f"field {F}, family d{{a,b}} ^ d{{a,c}}")
    for n in range(4):
        oracle = ann_bruteforce(family, n)
        power = ann_power([a, b, c], 2, n)
        lower, upper = ann_bounds([[a, b], [a, c]], n)
        print(f"\nn = {n}")
        print(f"  oracle       dim {oracle.dim}: {oracle.render()}")
        print(f"  power({{a,b,c}}, 2) agrees: {power == oracle}")
        print(f"  lower bound  dim {lower.dim}: {lower.render()}  strict: {lower < oracle}")
        print(f"  upper bound  dim {upper.dim}: {upper.render()}  strict: {oracle < upper}")


if __name__ == "__main__":
    main()
