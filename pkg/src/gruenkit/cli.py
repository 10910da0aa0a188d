"""Command-line interface.

Exit codes: 0 success, 2 usage or domain error, 3 a prediction refuted by
the brute-force oracle, 4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .arith import DomainError, PrimePower, gl_order, is_prime, min_nu, multiplicative_order
from .classgrp import run_scenario
from .gruen import Theorem, Verdict, action_bound, predict_gl_sylow, verify_action_bound, verify_sylow_prediction
from .matgroup import CAP_ENV_VAR, CapExceededError, default_cap, generate_closure, loads_generators

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REFUTED = 3
EXIT_CAP = 4

DEFAULT_Q_SET = (2, 3, 4, 5, 7)


class _Parser(argparse.ArgumentParser):
    # report usage errors through main()'s return value instead of SystemExit
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def envelope(command: str, parameters: dict, result: Any, verdict: str | None = None) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "result": result,
        "verdict": verdict,
        "version": __version__,
    }


def dumps(env: dict) -> str:
    return json.dumps(env, indent=2, sort_keys=True) + "\n"


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _prime(text: str) -> int:
    v = _positive(text)
    if not is_prime(v):
        raise argparse.ArgumentTypeError(f"not a prime: {v}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gruenkit", description="Grün's Sylow and trivial-action theorems, with brute-force checks.")
    parser.add_argument("--version", action="version", version=f"gruenkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_flags(p: argparse.ArgumentParser) -> None:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", dest="output", action="store_const", const="json", help="machine-readable envelope")
        g.add_argument("--human", dest="output", action="store_const", const="human", help="plain text (default)")
        p.set_defaults(output="human")

    def cap_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument("--cap", type=_positive, default=None, help=f"enumeration cap (default ${CAP_ENV_VAR} or 2000000)")

    p = sub.add_parser("order", help="|GL_n(F_q)| by the product formula")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--f", type=_positive, default=1)
    output_flags(p)

    p = sub.add_parser("sylow", help="predicted ell-Sylow structure of GL_n(F_q)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--f", type=_positive, default=1)
    p.add_argument("--ell", type=_prime, required=True)
    p.add_argument("--verify", action="store_true", help="check against a brute-force Sylow subgroup")
    cap_flag(p)
    output_flags(p)

    p = sub.add_parser("bound", help="trivial-action bound for an abelian p-group of rank m")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--ell", type=_prime, required=True)
    p.add_argument("--theorem", choices=["gt1", "gt2", "ts1"], default="gt2")
    output_flags(p)

    p = sub.add_parser("descent", help="class-group descent from a scenario file")
    p.add_argument("scenario", type=Path)
    output_flags(p)

    p = sub.add_parser("sweep", help="verify Sylow predictions over a grid of (n, q, ell)")
    p.add_argument("--n-max", type=_positive, default=4)
    p.add_argument("--q-set", type=_int_list, default=list(DEFAULT_Q_SET))
    p.add_argument("--ell-max", type=_positive, default=13)
    p.add_argument("--with-ell-2", action="store_true", help="also test ell = 2 (off by default)")
    cap_flag(p)
    output_flags(p)

    p = sub.add_parser("action", help="verify a trivial-action bound on a matrix group read from a generator file")
    p.add_argument("generators", type=Path)
    p.add_argument("--ell", type=_prime, required=True)
    p.add_argument("--theorem", choices=["gt1", "gt2", "ts1"], default="gt2")
    cap_flag(p)
    output_flags(p)
    return parser


# --------------------------------------------------------------------------
# commands; each returns (envelope, human text, exit code)


def cmd_order(args) -> tuple[dict, str, int]:
    pp = PrimePower(args.p, args.f)
    value = gl_order(args.n, pp)
    env = envelope("order", {"n": args.n, "p": args.p, "f": args.f}, {"q": pp.q, "order": str(value)})
    return env, f"{value}\n", EXIT_OK


def cmd_sylow(args) -> tuple[dict, str, int]:
    pp = PrimePower(args.p, args.f)
    cap = default_cap() if args.cap is None else args.cap
    params = {"n": args.n, "p": args.p, "f": args.f, "ell": args.ell, "verify": args.verify}
    pred = predict_gl_sylow(args.n, pp, args.ell)
    lines = [f"ell-Sylow of GL_{args.n}(F_{pp.q}), ell = {args.ell}", f"  m_ell = {pred.m_ell}, i = {pred.i}"]
    if pred.order_exponent is not None:
        lines.append(f"  elementary abelian of order {args.ell}^{pred.order_exponent} (r = {pred.r})")
    else:
        lines.append(f"  {pred.derived_length_bound}-stage metabelian (r = {pred.r})")
    result: dict = {"prediction": pred.to_dict()}
    verdict, code = None, EXIT_OK
    if args.verify:
        params["cap"] = cap
        report = verify_sylow_prediction(args.n, pp, args.ell, cap)
        result["report"] = report.to_dict()
        verdict = report.verdict.value
        if report.observed is not None:
            o = report.observed
            lines.append(
                f"  observed: order {o.order}, abelian {o.is_abelian}, elementary {o.is_elementary_abelian}, "
                f"derived length {o.derived_length}, exponent {o.exponent}"
            )
        lines.extend(f"  note: {n}" for n in report.notes)
        lines.append(f"verdict: {verdict}")
        if report.verdict is Verdict.REFUTED:
            code = EXIT_REFUTED
        elif report.verdict is Verdict.SKIPPED_TOO_LARGE:
            code = EXIT_CAP
    return envelope("sylow", params, result, verdict), "\n".join(lines) + "\n", code


def cmd_bound(args) -> tuple[dict, str, int]:
    theorem = Theorem(args.theorem.upper())
    params = {"m": args.m, "p": args.p, "ell": args.ell, "theorem": theorem.value}
    bound = action_bound(theorem, args.m, args.p, args.ell)
    if bound is None:
        order = multiplicative_order(args.p, args.ell)
        result = {
            "applicable": False,
            "theorem": theorem.value,
            "m": args.m,
            "m_ell": order,
            "nu": min_nu(args.m, order, args.ell),
            "reason": "ell > m/m_ell fails",
        }
        text = f"{theorem.value}: not applicable (m_ell = {order}, ell * m_ell = {args.ell * order} <= m = {args.m})\n"
    else:
        result = {"applicable": True, **bound.to_dict()}
        text = f"{theorem.value}: applicable, m_ell = {bound.m_ell}, nu = {bound.nu}; {bound.conclusion}\n"
    return envelope("bound", params, result), text, EXIT_OK


def _load_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}") from None


def cmd_descent(args) -> tuple[dict, str, int]:
    doc = _load_json(args.scenario)
    deductions = run_scenario(doc)
    lines = []
    for d in deductions:
        head = d.conclusion.value + (f" ({d.subfield})" if d.subfield else "")
        lines.append(head)
        lines.extend(f"  - {r.name}: {r.statement} {json.dumps(r.parameters, sort_keys=True)}" for r in d.justification)
    env = envelope("descent", {"scenario": doc}, {"deductions": [d.to_dict() for d in deductions]})
    return env, "\n".join(lines) + "\n", EXIT_OK


def sweep_grid(n_max: int, q_set: Sequence[int], ell_max: int, with_ell_2: bool = False):
    for n in range(1, n_max + 1):
        for q in q_set:
            pp = PrimePower.from_q(q)
            for ell in range(2 if with_ell_2 else 3, ell_max + 1):
                if is_prime(ell) and ell != pp.p:
                    yield n, pp, ell


def cmd_sweep(args) -> tuple[dict, str, int]:
    cap = default_cap() if args.cap is None else args.cap
    params = {"n_max": args.n_max, "q_set": args.q_set, "ell_max": args.ell_max, "with_ell_2": args.with_ell_2, "cap": cap}
    counts = {v.value: 0 for v in Verdict}
    rows = []
    lines = [f"{'n':>2} {'q':>3} {'ell':>3}  {'clause':<18} verdict"]
    for n, pp, ell in sweep_grid(args.n_max, args.q_set, args.ell_max, args.with_ell_2):
        report = verify_sylow_prediction(n, pp, ell, cap)
        counts[report.verdict.value] += 1
        clause = report.predicted.clause.value if report.predicted else "-"
        rows.append({"n": n, "q": pp.q, "ell": ell, "clause": clause, "verdict": report.verdict.value})
        lines.append(f"{n:>2} {pp.q:>3} {ell:>3}  {clause:<18} {report.verdict.value}")
    lines.append(" ".join(f"{k}={v}" for k, v in counts.items()))
    refuted = counts[Verdict.REFUTED.value] > 0
    verdict = Verdict.REFUTED.value if refuted else Verdict.CONFIRMED.value
    env = envelope("sweep", params, {"counts": counts, "cases": rows}, verdict)
    return env, "\n".join(lines) + "\n", EXIT_REFUTED if refuted else EXIT_OK


def cmd_action(args) -> tuple[dict, str, int]:
    cap = default_cap() if args.cap is None else args.cap
    try:
        text = args.generators.read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read {args.generators}: {exc.strerror}") from None
    gens, n, p, e = loads_generators(text)
    group = generate_closure(gens, cap, n=n, p=p, e=e)
    report = verify_action_bound(group, args.ell, args.theorem, cap)
    params = {"dimension": n, "prime": p, "exponent": e, "ell": args.ell, "theorem": args.theorem.upper(), "cap": cap}
    lines = [f"image group of order {group.order} in GL_{n}(Z/{p**e})"]
    if report.observed:
        lines.append(f"  derived orders of the {args.ell}-Sylow: {report.observed['derived_orders']}")
    if report.predicted:
        lines.append(f"  predicted: {report.predicted.conclusion}")
    lines.extend(f"  note: {x}" for x in report.notes)
    lines.append(f"verdict: {report.verdict.value}")
    code = {Verdict.REFUTED: EXIT_REFUTED, Verdict.SKIPPED_TOO_LARGE: EXIT_CAP}.get(report.verdict, EXIT_OK)
    return envelope("action", params, report.to_dict(), report.verdict.value), "\n".join(lines) + "\n", code


COMMANDS = {
    "order": cmd_order,
    "sylow": cmd_sylow,
    "bound": cmd_bound,
    "descent": cmd_descent,
    "sweep": cmd_sweep,
    "action": cmd_action,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"gruenkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        env, text, code = COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"gruenkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"gruenkit: error: {exc}", file=sys.stderr)
        return EXIT_CAP
    sys.stdout.write(dumps(env) if args.output == "json" else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
