"""Command-line front end.

Exit codes: 0 success, 1 configuration error, 2 enumeration budget exceeded,
3 mathematical precondition not met.  Reports are built completely before
anything is written, so a failing run leaves no partial output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import audit, lsss
from .code import self_duality
from .config import ConfigError, SchemeConfig, load_config
from .curve import EllipticCurve, KleinQuartic
from .errors import BudgetExceeded, PreconditionError
from .gf import field_new
from .matroid import circuits_from_code, matroid_self_dual
from .mpc import Circuit, PassiveProtocol, affine_product_circuit

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_PRECONDITION = 0, 1, 2, 3


# report builders

def _fmt_point(curve, P) -> str:
    if isinstance(curve, EllipticCurve):
        return curve.format_point(P)
    return str(P)


def curve_info(curve) -> dict:
    if isinstance(curve, EllipticCurve):
        S = curve.group_structure()
        return {
            "family": "elliptic", "field": str(curve.field),
            "coefficients": curve.coefficients, "discriminant": curve.discriminant(),
            "points": len(curve.rational_points()),
            "group": {"n1": S.n1, "n2": S.n2,
                      "generators": [curve.format_point(P) for P in S.generators]},
            "hasse_ok": curve.hasse_ok(),
        }
    if isinstance(curve, KleinQuartic):
        return {"family": "klein", "field": str(curve.field), "genus": curve.genus,
                "points": len(curve.rational_points()),
                "participant_points": len(curve.participant_points())}
    return {"family": "genus0", "field": str(curve), "points": curve.q + 1}


def field_info(F) -> dict:
    return {"field": str(F), "p": F.p, "k": F.k, "q": F.q, "modulus": list(F.modulus),
            "modulus_polynomial": _poly_str(F.modulus),
            "elements": [F.format(v) for v in range(F.q)]}


def _poly_str(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c:
            mono = {0: "", 1: "t"}.get(i, f"t^{i}")
            coef = "" if c == 1 and mono else str(c)
            terms.append("*".join(x for x in (coef, mono) if x))
    return " + ".join(terms) or "0"


def _optional(fn):
    """Run an optional section; over-budget sections are reported as skipped."""
    try:
        return fn()
    except BudgetExceeded as exc:
        return {"skipped": str(exc)}


def analyze_report(cfg: SchemeConfig, subset_budget: int, codeword_budget: int) -> dict:
    curve, D, s = cfg.build()
    prov = s.provenance
    m, g, n = prov["m"], prov["genus"], s.n
    access = lsss.minimal_access_structure(s, subset_budget, codeword_budget)
    cheat = lsss.cheat_parameters(s, access, subset_budget, codeword_budget)
    r = lsss.multiplicativity(s)
    strong = lsss.strong_multiplicativity(s, access, subset_budget) if r is not None else None
    sd = self_duality(s.code, codeword_budget)

    def circuits():
        return circuits_from_code(s.dual, codeword_budget).to_dict()

    def matroid():
        return {"self_dual": matroid_self_dual(s.code, codeword_budget)[0]}

    return {
        "config": cfg.to_dict(),
        "curve": curve_info(curve),
        "points": [_fmt_point(curve, P) for P in D],
        "scheme": {"variant": prov["variant"], "divisor": prov["divisor"], "genus": g, "m": m,
                   "n": n, "basis": prov["basis"], "code": [s.code.N, s.code.k],
                   "dual_code": [s.dual.N, s.dual.k], "complexity": s.complexity},
        "access_structure": {"count": len(access.minimal), **access.to_dict()},
        "threshold": lsss.threshold_check(access),
        "Q2": lsss.is_Q2(access, subset_budget),
        "Q3": lsss.is_Q3(access, subset_budget),
        "cheat": cheat.to_dict(),
        "theorem1": _optional(lambda: lsss.theorem1_check(s, access, subset_budget)),
        "multiplicativity": {
            "recombination": r,
            "strong": strong is not None,
            "condition_multiplicative": m >= n / 2 + 2 * g,
            "condition_strong": m >= 2 * n / 3 + 2 * g,
        },
        "self_duality": {"kind": sd.kind, "diagonal": list(sd.diagonal) if sd.diagonal else None},
        "circuits": _optional(circuits),
        "matroid": _optional(matroid),
    }


def paper_verify_report() -> dict:
    return {name: a.to_dict() for name, a in audit.paper_verify().items()}


# output

def _to_text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_to_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(_to_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v, sort_keys=True)}")
    else:
        lines.append(pad + json.dumps(obj))
    return "\n".join(lines)


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return _to_text(report) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _write(text: str, out):
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".agshare-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# commands

def _config(args) -> SchemeConfig:
    if not args.config:
        raise ConfigError("--config is required")
    cfg = load_config(args.config)
    if args.budget_subsets is not None:
        cfg.budget_subsets = args.budget_subsets
    if args.budget_codewords is not None:
        cfg.budget_codewords = args.budget_codewords
    cfg.validate()
    return cfg


def cmd_analyze(args) -> int:
    cfg = _config(args)
    report = analyze_report(cfg, cfg.budget_subsets, cfg.budget_codewords)
    _write(render(report, args.format), args.out)
    return EXIT_OK


def cmd_paper_verify(args) -> int:
    _write(render(paper_verify_report(), args.format), args.out)
    return EXIT_OK


def _parse_inputs(text, F) -> list:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"--inputs must be comma-separated integers, got {text!r}") from None
    for v in vals:
        if not 0 <= v < F.q:
            raise ConfigError(f"input {v} is not a field element encoding")
    return vals


def cmd_mpc_demo(args) -> int:
    cfg = _config(args)
    _, _, s = cfg.build()
    if args.circuit:
        try:
            circuit = Circuit.load(args.circuit)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"circuit: {exc}") from None
    else:
        circuit = affine_product_circuit()
    if args.inputs is None:
        inputs = [(i + 2) % s.field.q for i in range(len(circuit.input_wires))]
    else:
        inputs = _parse_inputs(args.inputs, s.field)
    if len(inputs) != len(circuit.input_wires):
        raise ConfigError(f"circuit needs {len(circuit.input_wires)} inputs")
    owners = [circuit.gates[w].owner for w in circuit.input_wires]
    if max(owners) > s.n:
        raise ConfigError(f"input owner {max(owners)} exceeds the number of parties {s.n}")
    access = lsss.minimal_access_structure(s, cfg.budget_subsets, cfg.budget_codewords)
    proto = PassiveProtocol(s, access)
    result = proto.run(circuit, inputs, seed=args.seed)
    report = {"circuit": circuit.to_dict(), "inputs": inputs, "seed": args.seed,
              "output": result.output, "plaintext": result.plaintext,
              "correct": result.correct, "rounds": result.rounds,
              "messages": len(result.transcript),
              "transcript_sha256": result.transcript_hash(),
              "transcript": args.transcript}
    text = render(report, args.format)
    if args.transcript:
        _write(result.transcript_text(), args.transcript)
    _write(text, args.out)
    return EXIT_OK


def cmd_curve_info(args) -> int:
    cfg = _config(args)
    _write(render(curve_info(cfg.curve()), args.format), args.out)
    return EXIT_OK


def cmd_field_info(args) -> int:
    if args.config:
        F = load_config(args.config).field()
    else:
        if args.p is None:
            raise ConfigError("field-info needs --config or --p")
        try:
            F = field_new(args.p, args.k, tuple(args.modulus) if args.modulus else None)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    _write(render(field_info(F), args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agshare",
        description="Secret sharing from algebraic-geometry codes over small finite fields.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scheme configuration (JSON)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-subsets", type=int, default=None)
    common.add_argument("--budget-codewords", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full analysis of one scheme")
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("paper-verify", parents=[common],
                       help="diff brute-force results against the published example lists")
    p.set_defaults(func=cmd_paper_verify)
    p = sub.add_parser("mpc-demo", parents=[common], help="run the simulated passive protocol")
    p.add_argument("--circuit", help="circuit description (JSON); default a*b + c")
    p.add_argument("--inputs", help="comma-separated input values, in input-gate order")
    p.add_argument("--transcript", help="write the JSON-lines transcript here")
    p.set_defaults(func=cmd_mpc_demo)
    p = sub.add_parser("curve-info", parents=[common], help="points and group structure")
    p.set_defaults(func=cmd_curve_info)
    p = sub.add_parser("field-info", parents=[common], help="field parameters and elements")
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--modulus", type=int, nargs="+", help="coefficients, low degree first")
    p.set_defaults(func=cmd_field_info)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        msg = str(exc)
        if "m >=" not in msg:
            msg += " (m >= n/2 + 2g guarantees multiplicativity; the condition is sufficient only)"
        print(f"error: precondition failed: {msg}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
