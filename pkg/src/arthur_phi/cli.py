"""``arthur-phi`` command line.

Exit codes: 0 success, 1 identity violation, 2 input error, 3 capability error.
"""

import argparse
import sys

from . import reports
from .catalog import (
    builtin_names,
    catalog_entry,
    dumps,
    entry_from_config,
    jsonable,
    load_config,
    named_system,
    parse_rational,
)
from .errors import ArthurPhiError, CapabilityError, IdentityFailure, MinusOneNotInWeylGroup, ValidationError
from .rootdatum import DEFAULT_WEYL_CAP

COMMANDS = ("catalog", "validate", "chambers", "constants", "prop1", "phi", "probe", "verify-all")


def _ints(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"expected a comma-separated integer vector, got '{text}'") from exc


def _rationals(text):
    if text is None:
        return None
    return [parse_rational(x) for x in text.split(",") if x.strip() != ""]


def _floats(text):
    if text is None:
        return None
    try:
        out = [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"expected a comma-separated list of numbers, got '{text}'") from exc
    if len(out) < 2 or any(t <= 0 for t in out) or any(a <= b for a, b in zip(out, out[1:])):
        raise ValidationError("t-seq must be at least two decreasing positive numbers")
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="arthur-phi", description="Exact root-datum computations for Arthur's Phi-function.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", help="catalog entry name, JSON file or inline JSON object")
    src.add_argument("--system", help="root system name (A1, A1xA1, B2, C2, G2, B3, D4, F4, ...) or catalog entry")
    p.add_argument("--lambda", dest="lam", help="regular weight for the constants, e.g. 2,1")
    p.add_argument("--lambdaB", help="highest weight lambda_B, dominant for the chosen Borel")
    p.add_argument("--gamma-u", help="compact part u of gamma as a coweight with sigma u = -u (rationals, e.g. 1/7,-1/7)")
    p.add_argument("--gamma-s", help="split central part s of gamma, a coweight in a_G")
    p.add_argument("--borel", help="root indices of the positive system")
    p.add_argument("--x0", help="regular coweight (prop1) or probe direction (probe)")
    p.add_argument("--t-seq", help="decreasing probe parameters, e.g. 0.1,0.01,0.001")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--weyl-cap", type=int, default=DEFAULT_WEYL_CAP)
    p.add_argument("--seed", type=int, default=0, help="seed for verify-all sampling")
    return p


def _system(args):
    if args.system:
        if args.system in builtin_names():
            return catalog_entry(args.system).datum.system
        return named_system(args.system)
    if args.config:
        return load_config(args.config).datum.system
    raise ValidationError("this command needs --system or --config")


def _config(args):
    if not args.config:
        if args.system in builtin_names():
            return catalog_entry(args.system).config
        raise ValidationError("this command needs --config")
    cfg = load_config(args.config)
    cfg.weyl_cap = args.weyl_cap
    return cfg


def _lambda(args, system):
    lam = _ints(args.lam)
    if lam is None:
        raise ValidationError("this command needs --lambda")
    if len(lam) != system.dim:
        raise ValidationError(f"--lambda has length {len(lam)}, expected {system.dim}")
    return tuple(lam)


def run(args):
    cmd = args.command
    if cmd == "catalog":
        return reports.report_catalog()
    if cmd == "validate":
        return reports.report_validate(_config(args))
    if cmd == "chambers":
        if args.config or (args.system in builtin_names()):
            cfg = _config(args)
            return reports.report_chambers(cfg.datum.system, cfg.datum)
        return reports.report_chambers(_system(args))
    if cmd == "constants":
        system = _system(args)
        return reports.report_constants(system, _lambda(args, system))
    if cmd == "prop1":
        system = _system(args)
        lam = _lambda(args, system)
        x0 = _ints(args.x0)
        if system.minus_one_element(args.weyl_cap) is None:
            raise MinusOneNotInWeylGroup(f"-1 is not in the Weyl group of {system.name}")
        return reports.report_prop1(system, lam, tuple(x0) if x0 else None)
    if cmd == "phi":
        return reports.report_phi(_config(args), _ints(args.lambdaB), _rationals(args.gamma_u),
                                  _rationals(args.gamma_s), _ints(args.borel))
    if cmd == "probe":
        x0 = _rationals(args.x0)
        return reports.report_probe(_config(args), _ints(args.lambdaB), _rationals(args.gamma_u),
                                    _rationals(args.gamma_s), _ints(args.borel), _floats(args.t_seq),
                                    tuple(x0) if x0 else None, args.tol)
    if cmd == "verify-all":
        entries = None
        if args.config or args.system:
            entries = [entry_from_config(_config(args))]
        return reports.verify_all(entries, seed=args.seed)
    raise ValidationError(f"unknown command {cmd}")


def to_text(report):
    lines = []
    if report.get("command") == "verify-all":
        for row in report["checks"]:
            lines.append(f"{'PASS' if row['pass'] else 'FAIL'}  {row['entry']:<14} {row['check']}  {row['detail']}")
        lines.append(f"{report['passed']} passed, {report['failed']} failed")
        return "\n".join(lines) + "\n"
    if report.get("command") == "catalog":
        for e in report["entries"]:
            flags = ",".join(k for k, v in sorted(e["flags"].items()) if v is True)
            lines.append(f"{e['name']:<14} rank {e['rank']}  |R|={e['roots']:<3} "
                         f"real/imag/complex {e['real']}/{e['imaginary']}/{e['complex']}  {flags}")
        return "\n".join(lines) + "\n"
    for key, value in sorted(jsonable(report).items()):
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _failed(report):
    return report.get("pass") is False


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except ArthurPhiError as exc:
        kind = "identity violation" if isinstance(exc, IdentityFailure) else (
            "capability error" if isinstance(exc, CapabilityError) else "input error")
        print(f"arthur-phi: {kind}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    text = dumps(report) if args.format == "json" else to_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return IdentityFailure.exit_code if _failed(report) else 0


if __name__ == "__main__":
    sys.exit(main())
