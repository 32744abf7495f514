"""Command-line entry point: ``bounded-seq <command> [options]``.

Every command builds a ``Report`` whose exit status is 0 iff all checks
pass.  ``--json`` prints the report as canonical JSON (sorted keys), the
default is a short text rendering.  Bad input exits with status 2 and a
diagnostic on stderr naming the offending field.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import selftest
from .approx import find_small
from .homcalc import (
    find_epsilon_witness,
    hom_from_json,
    hom_to_json,
    instance_from_json,
    instance_to_json,
    is_module_hom,
    demo_instance,
    row_sums,
    unboundedness_witness,
)
from .ring import (
    Ordering,
    RingParams,
    compare_abs,
    elem_to_json,
    format_rational,
    parse_rational,
)
from .seqgroup import (
    WITNESS_KINDS,
    apply_witness,
    build_witness,
    corner_witness,
    element_add,
    element_zero,
    finseq_from_json,
    finseq_to_json,
    invert,
    random_element,
    theta_los,
)
from .snf import (
    NOT_VERIFIED_NOTE,
    cokernel,
    intmatrix_from_json,
    module_matrix_from_json,
    obstruction_check,
    smith_normal_form,
    theorem_demo,
)

COMMANDS = (
    "small",
    "module-check",
    "witness-epsilon",
    "witness-unbounded",
    "theta",
    "iso-roundtrip",
    "corner-demo",
    "snf",
    "coker",
    "obstruction",
    "theorem-demo",
    "selftest",
)


class InputError(ValueError):
    pass


@dataclass
class Report:
    command: str
    params: dict[str, Any]
    checks: list[dict] = field(default_factory=list)
    citations: list[dict] = field(default_factory=list)
    result: dict[str, Any] = field(default_factory=dict)

    @property
    def exit_status(self) -> int:
        return 0 if all(c["status"] == "pass" for c in self.checks) else 1

    def check(self, name: str, ok: bool, **data) -> None:
        self.checks.append({"name": name, "status": "pass" if ok else "fail", "data": data})

    def cite(self, topic: str, formula: str) -> None:
        self.citations.append({"topic": topic, "formula": formula})

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "result": self.result,
            "checks": self.checks,
            "citations": self.citations,
            "exit_status": self.exit_status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=_jsonable)

    def to_text(self) -> str:
        lines = [f"{self.command}: " + ", ".join(f"{k}={v}" for k, v in self.params.items())]
        for key, value in self.result.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True, default=_jsonable)
            lines.append(f"  {key}: {value}")
        for c in self.checks:
            lines.append(f"  [{c['status'].upper()}] {c['name']}")
        if self.citations:
            lines.append("  uses:")
            lines.extend(f"    {c['topic']}: {c['formula']}" for c in self.citations)
        return "\n".join(lines)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _load(path: str, field_name: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{field_name}: cannot read {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{field_name}: {path!r} is not valid JSON ({exc.msg}, line {exc.lineno})") from exc


def _parse(parser, value, field_name):
    try:
        return parser(value)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{field_name}: {exc}") from exc


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


# Commands ------------------------------------------------------------------


def cmd_small(args) -> Report:
    params = RingParams(args.degree)
    rep = Report("small", {"degree": args.degree, "epsilon": format_rational(args.epsilon)})
    k, x = find_small(params, args.epsilon)
    rep.result = {"k": k, "element": str(x), "coeffs": elem_to_json(x)["coeffs"]}
    rep.check("|x| < epsilon", compare_abs(x, args.epsilon) is Ordering.LT)
    rep.cite("small elements", "x_k = (2^(1/n) - 1)^k, 0 < 2^(1/n) - 1 < 1, so x_k -> 0")
    return rep


def cmd_module_check(args) -> Report:
    theta = _parse(hom_from_json, _load(args.theta, "theta"), "theta")
    rep = Report("module-check", {"theta": args.theta})
    module = is_module_hom(theta)
    rep.result = {"degree": theta.params.degree, "matrix": hom_to_json(theta)["matrix"], "is_module_hom": module}
    if theta.params.degree == 2:
        (a, b), (c, d) = theta.matrix
        # theta(sqrt2) - sqrt2 * theta(1) = (b - 2c) + (d - a) sqrt2
        defect = theta.params.elem(b - 2 * c, d - a)
        rep.result["module_defect"] = str(defect)
        rep.check("defect vanishes iff module hom", defect.is_zero() == module)
    rep.cite("module homomorphism", "theta(2^(1/n) x) = 2^(1/n) theta(x) for all x")
    return rep


def cmd_witness_epsilon(args) -> Report:
    theta = _parse(hom_from_json, _load(args.theta, "theta"), "theta")
    rep = Report(
        "witness-epsilon",
        {"theta": args.theta, "epsilon": format_rational(args.epsilon), "N": format_rational(args.N)},
    )
    if is_module_hom(theta):
        raise InputError("theta: is a module homomorphism, no witness exists")
    k, x = find_epsilon_witness(theta, args.epsilon, args.N, max_k=args.max_k)
    image = theta(x)
    rep.result = {
        "k": k,
        "element": str(x),
        "coeffs": elem_to_json(x)["coeffs"],
        "image": str(image),
        "image_coeffs": elem_to_json(image)["coeffs"],
    }
    rep.check("|x| < epsilon", compare_abs(x, args.epsilon) is Ordering.LT)
    rep.check("|theta(x)| > N", compare_abs(image, args.N) is Ordering.GT)
    if theta.params.degree > 2:
        rep.result["termination_guarantee"] = "unproven for degree > 2 (search bounded by --max-k)"
    rep.cite("small elements", "a_k + b_k sqrt2 -> 0 with |b_k| -> oo")
    rep.cite(
        "growth",
        "theta(a + b sqrt2) = (a + b sqrt2) theta(1) + b (theta(sqrt2) - sqrt2 theta(1))",
    )
    return rep


def cmd_witness_unbounded(args) -> Report:
    if args.instance:
        w = _parse(instance_from_json, _load(args.instance, "instance"), "instance")
    else:
        w = demo_instance(RingParams(args.degree), args.demo)
    rep = Report(
        "witness-unbounded",
        {"instance": args.instance, "demo": None if args.instance else args.demo, "degree": w.params.degree},
    )
    xs = unboundedness_witness(w, max_k=args.max_k)
    sums = row_sums(w, xs)
    rep.result = {
        "stages": [
            {
                "row": s.row,
                "col": s.col,
                "x": str(x),
                "x_coeffs": elem_to_json(x)["coeffs"],
                "row_sum": str(r),
                "target": format_rational(t),
            }
            for s, x, r, t in zip(w.stages, xs, sums, w.targets)
        ],
    }
    if not args.instance:
        rep.result["instance"] = instance_to_json(w)
    if w.params.degree > 2:
        rep.result["termination_guarantee"] = "unproven for degree > 2 (search bounded by --max-k)"
    rep.check("all |x_k| < 1", all(compare_abs(x, 1) is Ordering.LT for x in xs))
    rep.check(
        "row sums exceed targets",
        all(compare_abs(r, t) is Ordering.GT for r, t in zip(sums, w.targets)),
    )
    rep.cite("recursive choice", "|B[m_k,n_k](x_k) + sum_{l<k} B[m_k,n_l](x_l)| > target_k, |x_k| < 1")
    return rep


def cmd_theta(args) -> Report:
    a = _parse(finseq_from_json, _load(args.a, "a"), "a")
    b = _parse(finseq_from_json, _load(args.b, "b"), "b")
    if a.params != b.params:
        raise InputError(f"b.degree: {b.params.degree} does not match a.degree {a.params.degree}")
    rep = Report("theta", {"a": args.a, "b": args.b})
    out = theta_los(a, b)
    rep.result = {"theta": finseq_to_json(out), "display": str(out)}
    rep.cite("partial-sum map", "theta(b) = (b0 a0, (b0+b1) a1, (b0+b1+b2) a2, ...)")
    return rep


def cmd_iso_roundtrip(args) -> Report:
    params = RingParams(args.degree)
    w = build_witness(args.witness, params, args.n)
    inv = invert(w)
    rng = random.Random(args.seed)
    rep = Report(
        "iso-roundtrip",
        {"witness": args.witness, "n": args.n, "degree": args.degree, "trials": args.trials, "seed": args.seed},
    )
    round_trip = additive = 0
    for _ in range(args.trials):
        e1 = random_element(w.source, params, rng)
        e2 = random_element(w.source, params, rng)
        round_trip += apply_witness(inv, apply_witness(w, e1)) == e1
        additive += apply_witness(w, element_add(w.source, e1, e2)) == element_add(
            w.target, apply_witness(w, e1), apply_witness(w, e2)
        )
    zero = element_zero(w.source, params)
    rep.result = {"source": str(w.source), "target": str(w.target), "moves": len(w.moves)}
    rep.check("round trip", round_trip == args.trials, passed=round_trip)
    rep.check("additive", additive == args.trials, passed=additive)
    rep.check("zero to zero", apply_witness(w, zero) == element_zero(w.target, params))
    rep.cite("shift", "A + Z[2^(1/n)] = A, (a, b) |-> (b, a0, a1, ...)")
    rep.cite("interleave", "A + A = A, (a, b) |-> (a0, b0, a1, b1, ...)")
    rep.cite("split", "Z[2^(1/n)] = Z^n as abelian groups (power basis)")
    return rep


def cmd_corner_demo(args) -> Report:
    params = RingParams(args.degree)
    w, report = corner_witness(args.n, params)
    rep = Report("corner-demo", {"n": args.n, "degree": args.degree})
    rep.result = report
    rng = random.Random(args.seed)
    inv = invert(w)
    ok = all(
        apply_witness(inv, apply_witness(w, e)) == e
        for e in (random_element(w.source, params, rng, 6, 1000) for _ in range(args.trials))
    )
    rep.check("round trip", ok, trials=args.trials, seed=args.seed)
    rep.cite("B", "B = A + Z")
    rep.cite("chain", f"B^(n*{args.degree}+1) = A + Z^(n*{args.degree}+1) = A + Z = B")
    return rep


def cmd_snf(args) -> Report:
    m = _parse(intmatrix_from_json, _load(args.file, "file"), "file")
    s = smith_normal_form(m)
    rep = Report("snf", {"file": args.file})
    rep.result = {"D": s.D.tolist(), "U": s.U.tolist(), "V": s.V.tolist(), "diagonal": s.diagonal}
    rep.check("U M V = D", s.U @ m @ s.V == s.D)
    rep.check("U, V unimodular", s.U.det() in (1, -1) and s.V.det() in (1, -1))
    return rep


def cmd_coker(args) -> Report:
    m = _parse(intmatrix_from_json, _load(args.file, "file"), "file")
    c = cokernel(m)
    rep = Report("coker", {"file": args.file})
    rep.result = {"torsion": list(c.torsion), "free_rank": c.free_rank, "rank": c.rank, "group": str(c)}
    return rep


def cmd_obstruction(args) -> Report:
    m = _parse(module_matrix_from_json, _load(args.file, "file"), "file")
    c, ok = obstruction_check(m)
    rep = Report("obstruction", {"file": args.file})
    rep.result = {
        "degree": m.params.degree,
        "realized_shape": [m.rows * m.params.degree, m.cols * m.params.degree],
        "torsion": list(c.torsion),
        "free_rank": c.free_rank,
        "rank": c.rank,
    }
    rep.check("free rank and rank divisible by degree", ok)
    rep.cite("parity", "(coker) (x) Q is a Q(2^(1/n))-vector space, so its Q-dimension is divisible by n")
    return rep


def cmd_theorem_demo(args) -> Report:
    report = theorem_demo(args.degree, args.trunc, args.extra, args.trials, args.seed)
    rep = Report(
        "theorem-demo",
        {"degree": args.degree, "trunc": args.trunc, "extra": args.extra, "trials": args.trials, "seed": args.seed},
    )
    rep.checks = report.pop("checks")
    rep.result = report
    rep.cite("A = A + Z^n", "A + Z[2^(1/n)] = A and Z[2^(1/n)] = Z^n")
    rep.cite("quotient rank", "A / beta(A[k]) = Z^(n k + m) for an iso beta: A = A + Z^m")
    rep.cite("parity", "a module map leaves a quotient of Q-rank divisible by n")
    return rep


def cmd_selftest(args) -> Report:
    rep = Report("selftest", {"seed": args.seed, "trials": args.trials})
    rep.checks = selftest.run_all(args.seed, args.trials)
    rep.result = {"note": NOT_VERIFIED_NOTE}
    return rep


HANDLERS = {
    "small": cmd_small,
    "module-check": cmd_module_check,
    "witness-epsilon": cmd_witness_epsilon,
    "witness-unbounded": cmd_witness_unbounded,
    "theta": cmd_theta,
    "iso-roundtrip": cmd_iso_roundtrip,
    "corner-demo": cmd_corner_demo,
    "snf": cmd_snf,
    "coker": cmd_coker,
    "obstruction": cmd_obstruction,
    "theorem-demo": cmd_theorem_demo,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")

    parser = argparse.ArgumentParser(
        prog="bounded-seq",
        description="Exact algebra for bounded sequences over Z[2^(1/n)].",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("small", parents=[common], help="least power of 2^(1/n)-1 below epsilon")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--epsilon", type=_rational, required=True, help="p/q")

    p = sub.add_parser("module-check", parents=[common], help="is a hom Z-linear only, or a module hom")
    p.add_argument("--theta", required=True, help="GroupHom JSON file")

    p = sub.add_parser("witness-epsilon", parents=[common], help="x with |x| < epsilon, |theta(x)| > N")
    p.add_argument("--theta", required=True, help="GroupHom JSON file")
    p.add_argument("--epsilon", type=_rational, required=True, help="p/q")
    p.add_argument("--N", type=_rational, required=True, help="p/q")
    p.add_argument("--max-k", type=int, default=10**6)

    p = sub.add_parser("witness-unbounded", parents=[common], help="bounded input, unbounded row sums")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--instance", help="WitnessInstance JSON file")
    g.add_argument("--demo", type=int, help="build the standard instance with this many stages")
    p.add_argument("--degree", type=int, default=2, help="degree for --demo")
    p.add_argument("--max-k", type=int, default=10**6)

    p = sub.add_parser("theta", parents=[common], help="partial-sum map theta_a(b)")
    p.add_argument("--a", required=True, help="FinSeq JSON file")
    p.add_argument("--b", required=True, help="FinSeq JSON file")

    p = sub.add_parser("iso-roundtrip", parents=[common], help="round-trip a named isomorphism witness")
    p.add_argument("--witness", choices=WITNESS_KINDS, required=True)
    p.add_argument("--n", type=int, default=1, help="multiplier for the corner witness")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("corner-demo", parents=[common], help="B^(n d + 1) = B with its move transcript")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    for name, what in (("snf", "Smith normal form"), ("coker", "cokernel structure")):
        p = sub.add_parser(name, parents=[common], help=f"{what} of an integer matrix")
        p.add_argument("file", help="IntMatrix JSON file")

    p = sub.add_parser("obstruction", parents=[common], help="rank parity of a module matrix")
    p.add_argument("file", help="ModuleMatrix JSON file")

    p = sub.add_parser("theorem-demo", parents=[common], help="rank count behind A != A + Z")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("--extra", type=int, default=1, help="m in A + Z^m, 0 < m < degree")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("selftest", parents=[common], help="run the randomized invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)

    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> tuple[Report | None, int]:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0)
    try:
        report = HANDLERS[args.command](args)
    except (InputError, ValueError) as exc:
        print(f"bounded-seq {args.command}: error: {exc}", file=err)
        return None, 2
    except RuntimeError as exc:
        print(f"bounded-seq {args.command}: internal error: {exc}", file=err)
        return None, 3
    print(report.to_json() if args.json else report.to_text(), file=out)
    return report, report.exit_status


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
