"""Command line interface.

Every command reads one expression (positional argument, or stdin when it is
omitted or ``-``) over the field declared by ``--p`` and ``--vars``.  Exit
status: 0 on success, 2 when a closed form rejects its input, 1 on any other
error (including a failed ``verify-paper`` check).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Dict, List, Optional, Sequence

from . import annihilators as ann
from . import extensions as ext
from .errors import HypothesisError, PFormsError
from .forms import DifferentialForm, FormSubspace, cartier, is_closed, is_exact, is_nu_member
from .parsing import Family, ParseError, RootSpec, SlotSet, evaluate, parse_context, render
from .pstructure import extract_p_basis, is_p_independent, p_degree
from .worked_examples import all_checks

SCHEMA_VERSION = 1


class CommandResult:
    def __init__(self, method: str, basis: Optional[List[str]] = None, case_tags: Sequence[str] = (),
                 result=None, lines: Sequence[str] = ()):
        self.method = method
        self.basis = basis
        self.case_tags = list(case_tags)
        self.result = result
        self.lines = list(lines)
        self.exit_code = 0


# -- input helpers -----------------------------------------------------------------

def _family(value):
    if isinstance(value, SlotSet):
        return [list(value.elements)]
    if isinstance(value, Family):
        return [list(s) for s in value.slots]
    raise ParseError("expected a slot set {..} or a wedge of slot sets")


def _forms(value):
    items = value if isinstance(value, tuple) else (value,)
    out = []
    for v in items:
        if isinstance(v, DifferentialForm):
            out.append(v)
        else:
            raise ParseError("expected a comma-separated list of forms")
    return out


def _roots(value) -> List[RootSpec]:
    items = value if isinstance(value, tuple) else (value,)
    if not all(isinstance(v, RootSpec) for v in items):
        raise ParseError("expected a comma-separated list of root(expr, p^s)")
    return list(items)


def _form(value) -> DifferentialForm:
    if isinstance(value, DifferentialForm):
        return value
    from .field_core import RationalFunction

    if isinstance(value, RationalFunction):
        return DifferentialForm.scalar(value)
    raise ParseError("expected a differential form")


def _need_n(args):
    if args.n is None:
        raise ParseError("this command needs --n")
    return args.n


def _basis(space: FormSubspace) -> List[str]:
    return space.render()


# -- commands ---------------------------------------------------------------------

def cmd_ann(args, ctx, value) -> CommandResult:
    n = _need_n(args)
    if isinstance(value, (SlotSet, Family)):
        U = ann.GeneratorFamily.of(*_family(value))
    else:
        U = _forms(value)
    space = ann.ann_bruteforce(U, n, ctx)
    return CommandResult("oracle", _basis(space))


def _same_slots(slots) -> bool:
    first = set(slots[0])
    return all(set(s) == first for s in slots)


def closed_annihilator(slots, n):
    """(method, subspace) from the first closed form whose hypotheses hold."""
    if _same_slots(slots):
        return "power", ann.ann_power(slots[0], len(slots), n)
    try:
        return "disjoint", ann.ann_disjoint(slots, n)
    except HypothesisError:
        pass
    ones = [s for s in slots if p_degree(s) == 1]
    rest = [s for s in slots if p_degree(s) != 1]
    if len(rest) == 1:
        return "mixed", ann.ann_mixed(ones, rest[0], n)
    if not rest:
        # every slot has p-degree one: treat the last slot as the free one
        return "mixed", ann.ann_mixed(slots[:-1], slots[-1], n)
    raise HypothesisError("closed-form-applicability",
                          "slots are neither identical, nor independent, nor all but one of p-degree one")


def cmd_ann_closed(args, ctx, value) -> CommandResult:
    n = _need_n(args)
    slots = _family(value)
    method, space = closed_annihilator(slots, n)
    return CommandResult(method, _basis(space), case_tags=[method])


def closed_nu(slots, n, assume):
    if _same_slots(slots):
        return "power", ann.nu_ann_power(slots[0], len(slots), n, assume_p_minus_one=assume)
    ones = [s for s in slots if p_degree(s) == 1]
    rest = [s for s in slots if p_degree(s) != 1]
    if len(rest) == 1:
        return "mixed", ann.nu_ann_mixed(ones, rest[0], n, assume_p_minus_one=assume)
    if not rest:
        return "mixed", ann.nu_ann_mixed(slots[:-1], slots[-1], n, assume_p_minus_one=assume)
    raise HypothesisError("closed-form-applicability", "no generator description applies to these slots")


def _samples(gset, args) -> List[str]:
    if not args.samples:
        return []
    rng = random.Random(args.seed)
    out = []
    for _ in range(args.samples):
        # wedges of dependent log forms vanish; redraw a few times for an informative sample
        for _ in range(20):
            w = ann.sample_nu_generator(gset, rng)
            if not w.is_zero():
                break
        out.append(str(w))
    return out


def cmd_nu_ann(args, ctx, value) -> CommandResult:
    n = _need_n(args)
    method, gset = closed_nu(_family(value), n, args.assume_p_minus_one)
    res = CommandResult(method, None, case_tags=[method], result={"generators": gset.describe(),
                                                                   "samples": _samples(gset, args)})
    res.lines = gset.describe() + [f"sample: {s}" for s in res.result["samples"]]
    return res


def _tower(ctx, roots):
    return ext.tower_from_roots(ctx, [(r.s, r.element) for r in roots])


def cmd_kernel(args, ctx, value) -> CommandResult:
    n = _need_n(args)
    roots = _roots(value)
    tower = _tower(ctx, roots)
    space = ext.kernel_bruteforce(tower, n)
    return CommandResult("oracle", _basis(space), result={"degree": tower.degree})


def closed_kernel(roots, n, assume=False):
    elements = [r.element for r in roots]
    exps = [r.s for r in roots]
    if is_p_independent(elements):
        return "modular", ext.kernel_modular(elements, exps, n), None
    if len(roots) >= 2 and is_p_independent(elements[:-1]):
        res = ext.kernel_extra_root(elements[:-1], exps[:-1], elements[-1], exps[-1], n, assume_p_minus_one=assume)
        return res.case, res.kernel, res
    raise HypothesisError("closed-form-applicability",
                          "radicands must be p-independent, or p-independent up to the last one")


def cmd_kernel_closed(args, ctx, value) -> CommandResult:
    n = _need_n(args)
    method, space, res = closed_kernel(_roots(value), n)
    tags = [method]
    if res is not None:
        tags.append(f"t={res.decomposition.t}")
    return CommandResult(method, _basis(space), case_tags=tags)


def cmd_nu_kernel(args, ctx, value) -> CommandResult:
    n = _need_n(args)
    roots = _roots(value)
    elements = [r.element for r in roots]
    exps = [r.s for r in roots]
    if is_p_independent(elements):
        gset = ext.nu_kernel_generators(elements, exps, n, assume_p_minus_one=args.assume_p_minus_one)
        method = "modular"
    elif len(roots) >= 2:
        gset = ext.nu_kernel_generators(elements[:-1], exps[:-1], n, b=elements[-1], m=exps[-1],
                                        assume_p_minus_one=args.assume_p_minus_one)
        method = "mixed"
    else:
        raise HypothesisError("closed-form-applicability", "no generator description applies")
    res = CommandResult(method, None, case_tags=[method],
                        result={"generators": gset.describe(), "samples": _samples(gset, args)})
    res.lines = gset.describe() + [f"sample: {s}" for s in res.result["samples"]]
    return res


def cmd_cartier(args, ctx, value) -> CommandResult:
    form = _form(value)
    out = cartier(form)
    return CommandResult("cartier", None, result=str(out), lines=[str(out)])


def cmd_exact(args, ctx, value) -> CommandResult:
    form = _form(value)
    closed = is_closed(form)
    exact = closed and is_exact(form)
    return CommandResult("cartier", None, result={"closed": closed, "exact": exact},
                         lines=[f"closed: {str(closed).lower()}", f"exact: {str(exact).lower()}"])


def cmd_nu_member(args, ctx, value) -> CommandResult:
    form = _form(value)
    member = is_nu_member(form)
    return CommandResult("artin-schreier", None, result={"member": member}, lines=[f"member: {str(member).lower()}"])


def cmd_pbasis(args, ctx, value) -> CommandResult:
    if isinstance(value, SlotSet):
        elements = list(value.elements)
    elif isinstance(value, tuple):
        elements = [v for v in value]
    else:
        elements = [value]
    basis = extract_p_basis(elements)
    info = {"p_degree": len(basis), "p_independent": len(basis) == len(elements),
            "p_basis": [str(b) for b in basis]}
    return CommandResult("jacobian-rank", None, result=info,
                         lines=[f"p-degree: {len(basis)}", f"p-independent: {str(info['p_independent']).lower()}",
                                "p-basis: {" + ", ".join(info["p_basis"]) + "}"])


COMMANDS = {
    "ann": (cmd_ann, "annihilator of a family or list of forms (oracle)"),
    "ann-closed": (cmd_ann_closed, "annihilator from the applicable closed form"),
    "nu-ann": (cmd_nu_ann, "generators of the nu-annihilator"),
    "kernel": (cmd_kernel, "kernel of Omega^n(F) -> Omega^n(E) for E given by roots (oracle)"),
    "kernel-closed": (cmd_kernel_closed, "restriction kernel from the applicable closed form"),
    "nu-kernel": (cmd_nu_kernel, "generators of the nu-kernel"),
    "cartier": (cmd_cartier, "Cartier operator of a closed form"),
    "exact": (cmd_exact, "decide closedness and exactness"),
    "nu-member": (cmd_nu_member, "decide membership in nu_n(F)"),
    "pbasis": (cmd_pbasis, "p-degree and a p-basis of a set"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pforms", description="Annihilators and kernels of differential forms in characteristic p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, expression=True):
        sp.add_argument("--p", type=int, default=2, help="characteristic (2, 3 or 5)")
        sp.add_argument("--vars", default="a,b,c", help="comma-separated coordinate names")
        sp.add_argument("--n", type=int, default=None, help="form degree")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampling commands")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON output")
        if expression:
            sp.add_argument("expression", nargs="?", default="-", help="input expression, '-' for stdin")

    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        if name in ("nu-ann", "nu-kernel"):
            sp.add_argument("--samples", type=int, default=0, help="number of random generators to draw")
            sp.add_argument("--assume-p-minus-one", action="store_true",
                            help="assert F^(p-1) = F so that p > 2 is accepted")
    vp = sub.add_parser("verify-paper", help="replay the worked examples and report each check")
    common(vp, expression=False)
    return parser


def _payload(args, command: str, ctx, text, res: Optional[CommandResult], elapsed, error=None) -> Dict:
    out = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "context": {"p": ctx.p, "variables": list(ctx.variables)} if ctx is not None else None,
        "input": text,
        "n": getattr(args, "n", None),
        "method": res.method if res else None,
        "basis": res.basis if res else None,
        "case-tags": res.case_tags if res else [],
        "result": res.result if res else None,
        "timings": {"total_seconds": round(elapsed, 6)} if args.timings else None,
    }
    if error is not None:
        out["error"] = error
    return out


def _emit_text(res: CommandResult, out):
    if res.basis is not None:
        if res.method:
            print(f"method: {res.method}", file=out)
        if res.case_tags:
            print("case: " + ", ".join(res.case_tags), file=out)
        print(f"dim: {len(res.basis)}", file=out)
        for b in res.basis:
            print(b, file=out)
    for line in res.lines:
        print(line, file=out)


def run_verify(args, out) -> int:
    start = time.perf_counter()
    checks = all_checks()
    ok = all(c.passed for c in checks)
    if args.json:
        payload = {"schema": SCHEMA_VERSION, "command": "verify-paper", "passed": ok,
                   "checks": [c.as_dict() for c in checks],
                   "timings": {"total_seconds": round(time.perf_counter() - start, 6)} if args.timings else None}
        print(json.dumps(payload, indent=2, sort_keys=True), file=out)
    else:
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  [{c.detail}]", file=out)
        print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed", file=out)
    return 0 if ok else 1


def main(argv: Sequence[str] = None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command == "verify-paper":
        return run_verify(args, out)
    start = time.perf_counter()
    ctx = None
    text = args.expression
    if text == "-":
        text = (stdin or sys.stdin).read().strip()
    handler = COMMANDS[args.command][0]
    try:
        ctx = parse_context(args.p, args.vars)
        value = evaluate(text, ctx)
        res = handler(args, ctx, value)
    except HypothesisError as exc:
        if args.json:
            error = {"kind": "hypothesis", "hypothesis": exc.hypothesis, "message": exc.detail}
            print(json.dumps(_payload(args, args.command, ctx, text, None, time.perf_counter() - start, error),
                             indent=2, sort_keys=True), file=out)
        print(f"rejected [{exc.hypothesis}]: {exc.detail}", file=err)
        return 2
    except (PFormsError, ValueError, ZeroDivisionError) as exc:
        if args.json:
            error = {"kind": "error", "message": str(exc)}
            print(json.dumps(_payload(args, args.command, ctx, text, None, time.perf_counter() - start, error),
                             indent=2, sort_keys=True), file=out)
        print(f"error: {exc}", file=err)
        return 1
    if args.json:
        print(json.dumps(_payload(args, args.command, ctx, text, res, time.perf_counter() - start),
                         indent=2, sort_keys=True), file=out)
    else:
        _emit_text(res, out)
    return res.exit_code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
