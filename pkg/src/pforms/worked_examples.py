"""Replayable worked examples with machine-checkable assertions.

Each function returns a list of :class:`Check` records; the CLI command
``verify-paper`` prints them and exits nonzero if any fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .annihilators import GeneratorFamily, ann_bounds, ann_bruteforce, ann_power
from .errors import HypothesisError
from .extensions import kernel_bruteforce, kernel_extra_root, tower_from_roots
from .field_core import FieldContext
from .forms import FormSubspace, differential, wedge
from .pstructure import PDecomposition


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def overlapping_slots_checks(p: int) -> List[Check]:
    """S_1 = {a, b}, S_2 = {a, c} over F_p(a, b, c): oracle, closed form and bounds."""
    F = FieldContext(p, ("a", "b", "c"))
    a, b, c = F.gens()
    family = GeneratorFamily.of([a, b], [a, c])
    checks = []
    for n in range(4):
        oracle = ann_bruteforce(family, n)
        closed = ann_power([a, b, c], 2, n)
        checks.append(Check(f"p={p} n={n}: oracle equals the two-fold power annihilator of {{a,b,c}}",
                            oracle == closed, f"basis {oracle.render()}"))
    oracle2 = ann_bruteforce(family, 2)
    lower2, _ = ann_bounds([[a, b], [a, c]], 2)
    dbdc = wedge(differential(b), differential(c))
    checks.append(Check(f"p={p} n=2: lower bound is a strict subspace missing db^dc",
                        lower2 < oracle2 and dbdc not in lower2, f"lower {lower2.render()}"))
    oracle1 = ann_bruteforce(family, 1)
    _, upper1 = ann_bounds([[a, b], [a, c]], 1)
    checks.append(Check(f"p={p} n=1: upper bound strictly contains the oracle",
                        oracle1 < upper1, f"upper {upper1.render()}, oracle {oracle1.render()}"))
    return checks


def root_bound_checks() -> List[Check]:
    """E = F_2(a,b,c)(a^(1/4), b^(1/2), (c^4 a)^(1/8)) and its two naive closed forms."""
    F = FieldContext(2, ("a", "b", "c"))
    a, b, c = F.gens()
    u = c ** 4 * a
    tower = tower_from_roots(F, [(2, a), (1, b), (3, u)])
    oracle = kernel_bruteforce(tower, 1)
    expected = FormSubspace.span(F, 1, [differential(a), differential(b)])
    checks = [Check("oracle kernel at n=1 is span{da, db}", oracle == expected, f"basis {oracle.render()}"),
              Check("tower degree is 16", tower.degree == 16, f"degree {tower.degree}")]

    # arrangement 1: radicands (a, b), extra root of c^4 a of exponent 3
    def first(enforce):
        return kernel_extra_root([a, b], [2, 1], u, 3, 1, enforce=enforce)

    # arrangement 2: radicands (c^4 a, b), extra root of a of exponent 2, a = (1/c)^4 * (c^4 a)
    dec = PDecomposition(a, (u, b), 2, {(1, 0): c.inverse()})

    def second(enforce):
        return kernel_extra_root([u, b], [3, 1], a, 2, 1, enforce=enforce, decomposition=dec)

    answers = []
    for label, fn in (("first", first), ("second", second)):
        try:
            fn(True)
            checks.append(Check(f"{label} arrangement rejected by the root-exponent bound", False, "accepted"))
        except HypothesisError as exc:
            checks.append(Check(f"{label} arrangement rejected by the root-exponent bound",
                                exc.hypothesis == "root-exponent-bound", str(exc)))
        res = fn(False)
        answers.append(res.kernel)
        checks.append(Check(f"{label} arrangement, bound ignored, differs from the oracle",
                            res.kernel != oracle, f"{res.case}: {res.kernel.render()}"))
    checks.append(Check("the two naive answers differ from each other", answers[0] != answers[1],
                        f"{answers[0].render()} vs {answers[1].render()}"))
    return checks


def all_checks() -> List[Check]:
    return overlapping_slots_checks(2) + overlapping_slots_checks(3) + root_bound_checks()
