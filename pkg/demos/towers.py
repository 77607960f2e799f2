"""Purely inseparable towers: degrees, kernels and the size of Omega^n(E)."""

import argparse

from pforms import FieldContext
from pforms.extensions import dimension_check, kernel_bruteforce, kernel_modular, tower_from_roots
from pforms.parsing import evaluate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("roots", nargs="?", default="root(a, 2), root(b, 4)",
                        help="comma-separated root(expr, p^s) terms")
    parser.add_argument("--p", type=int, default=2)
    parser.add_argument("--vars", default="a,b,c")
    args = parser.parse_args()

    F = FieldContext(args.p, tuple(args.vars.split(",")))
    value = evaluate(args.roots, F)
    roots = value if isinstance(value, tuple) else (value,)
    tower = tower_from_roots(F, [(r.s, r.element) for r in roots])
    print(tower)
    print(f"[E:F] = {tower.degree}, Omega^1(E) has E-rank {tower.module.rank}")
    for n in range(F.m + 1):
        oracle = kernel_bruteforce(tower, n)
        expected, computed = dimension_check(tower, n, [r.element for r in roots])
        line = f"n={n}: kernel {oracle.render()}  dim_F Omega^n(E) = {computed}"
        try:
            line += f"  (closed form agrees: {kernel_modular([r.element for r in roots], [r.s for r in roots], n) == oracle})"
        except Exception as exc:  # dependent radicands: no closed form
            line += f"  (no closed form: {exc})"
        print(line)


if __name__ == "__main__":
    main()
