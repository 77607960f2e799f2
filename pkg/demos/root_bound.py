"""What goes wrong when the extra root has a larger exponent than the others.

E = F_2(a,b,c)(a^(1/4), b^(1/2), (c^4 a)^(1/8)) has degree 16.  The kernel of
Omega^1(F) -> Omega^1(E) is span{da, db}.  The closed form for "p-independent
radicands plus one extra root" requires the extra root exponent to be at most
every other one; both ways of presenting E break that bound and are rejected.
Forcing the computation anyway gives two different answers.
"""

from pforms import FieldContext
from pforms.errors import HypothesisError
from pforms.extensions import kernel_bruteforce, kernel_extra_root, tower_from_roots
from pforms.pstructure import PDecomposition


def main():
    F = FieldContext(2, ("a", "b", "c"))
    a, b, c = F.gens()
    u = c ** 4 * a
    tower = tower_from_roots(F, [(2, a), (1, b), (3, u)])
    oracle = kernel_bruteforce(tower, 1)
    print(f"[E:F] = {tower.degree}")
    print(f"oracle kernel at n=1: {oracle.render()}")

    arrangements = {
        "radicands a, b; extra root of c^4 a (exponent 3)": dict(elements=[a, b], exponents=[2, 1], b=u, m=3),
        "radicands c^4 a, b; extra root of a (exponent 2)": dict(
            elements=[u, b], exponents=[3, 1], b=a, m=2,
            decomposition=PDecomposition(a, (u, b), 2, {(1, 0): c.inverse()})),
    }
    for label, kw in arrangements.items():
        print(f"\n{label}")
        try:
            kernel_extra_root(n=1, **kw)
        except HypothesisError as exc:
            print(f"  rejected: {exc}")
        res = kernel_extra_root(n=1, enforce=False, **kw)
        verdict = "equals" if res.kernel == oracle else "differs from"
        print(f"  forced answer ({res.case}): {res.kernel.render()}  {verdict} the oracle")


if __name__ == "__main__":
    main()
