"""Evaluate state-uncertainty measures and check their properties from the shell.

Exit codes: 0 success, 1 invalid input, 2 dimension mismatch,
3 a checked property does not hold.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .exceptions import DimensionError, ValidationError
from .measures import UncertaintyMeasure, discriminate, fmt_fixed, measure
from .quantum_objects import (
    born_distribution,
    example4_family_state,
    is_maximal_uncertainty_state,
    make_maximal_uncertainty_state,
    maximally_mixed_state,
    observable_from_json,
    plus_minus_observable,
    plus_state,
    random_zero_diagonal_perturbation,
    standard_basis_observable,
    state_from_json,
    state_to_json,
)
from .simplex import is_maximal_uncertainty
from .uncertainty_functions import AXIOM_TOL, BUILTINS, jensen_violation, parse_function_spec, verify_axioms

EXIT_OK, EXIT_INPUT, EXIT_DIMENSION, EXIT_PROPERTY = 0, 1, 2, 3
MAX_DIM = 64
JENSEN_POINTS = 3


class InputError(ValidationError):
    pass


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError("cannot read input file", detail=str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("input file is not valid JSON", detail=f"{path}: {exc}") from None


def _capped(n: int, what: str) -> int:
    if n > MAX_DIM:
        raise InputError(f"{what} exceeds the command-line cap of {MAX_DIM}", detail=f"got {n}")
    return n


def _load_state(path: str):
    data = _load_json(path)
    for key in ("density", "ket"):
        if isinstance(data, dict) and isinstance(data.get(key), list):
            _capped(len(data[key]), "state dimension")
    return state_from_json(data)


def _load_observable(path: str):
    data = _load_json(path)
    if isinstance(data, dict) and isinstance(data.get("effects"), list):
        _capped(len(data["effects"]), "outcome count")
        for m in data["effects"]:
            if isinstance(m, list):
                _capped(len(m), "observable dimension")
    return observable_from_json(data)


def _functions(specs):
    if not specs:
        return list(BUILTINS.values())
    out = []
    for spec in specs:
        out += [parse_function_spec(s) for s in spec.split(",") if s.strip()]
    return out


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _distribution_table(p) -> str:
    header = "  ".join(f"P({i})".ljust(6) for i in range(p.d)).rstrip()
    values = "  ".join(fmt_fixed(x).ljust(6) for x in p.probs).rstrip()
    return f"{header}\n{values}"


# -- commands ----------------------------------------------------------------

def cmd_eval(args) -> int:
    a = _load_observable(args.observable)
    rho = _load_state(args.state)
    fs = _functions(args.function)
    p = born_distribution(rho, a)
    values = {f.name: measure(UncertaintyMeasure(f, a), rho) for f in fs}
    if args.format == "json":
        _emit_json({"distribution": p.tolist(), "uncertainty": values})
    else:
        print(_distribution_table(p))
        print()
        width = max(len("function"), *(len(k) for k in values))
        print(f"{'function'.ljust(width)}  uncertainty")
        for k, v in values.items():
            print(f"{k.ljust(width)}  {fmt_fixed(v)}")
    return EXIT_OK


def cmd_distribution(args) -> int:
    p = born_distribution(_load_state(args.state), _load_observable(args.observable))
    if args.format == "json":
        _emit_json({"distribution": p.tolist()})
    else:
        print(_distribution_table(p))
    return EXIT_OK


def cmd_axioms(args) -> int:
    d = _capped(args.dim, "d")
    if d < 2:
        raise InputError("d must be at least 2", detail=f"got {d}")
    f = parse_function_spec(args.function)
    report = verify_axioms(f, d, samples=args.samples, seed=args.seed)
    jensen_worst, jensen_witness = jensen_violation(f, d, JENSEN_POINTS, seed=args.seed,
                                                   trials=min(args.samples, 1000))
    results = report.to_dict()
    ok = jensen_worst <= AXIOM_TOL
    results["jensen"] = {"pass": ok, "worst_violation": jensen_worst, "witness": None if ok else jensen_witness}
    passed = all(r["pass"] for r in results.values())
    if args.format == "json":
        _emit_json(results)
    else:
        print(f"function {f.name}, d={d}, samples={args.samples}, seed={args.seed}")
        width = max(len(k) for k in results)
        print(f"{'axiom'.ljust(width)}  pass  worst_violation")
        for k, r in results.items():
            print(f"{k.ljust(width)}  {'yes' if r['pass'] else 'NO '}   {r['worst_violation']:.3e}")
    return EXIT_OK if passed else EXIT_PROPERTY


def cmd_maxunc(args) -> int:
    if args.action == "check":
        if not args.observable or not args.state:
            raise InputError("maxunc check needs -A and -s")
        a = _load_observable(args.observable)
        rho = _load_state(args.state)
        p = born_distribution(rho, a)
        ok = is_maximal_uncertainty(p)
        if args.format == "json":
            _emit_json({"maximal_uncertainty": ok, "distribution": p.tolist()})
        else:
            print(f"maximal uncertainty: {'true' if ok else 'false'}")
            print(_distribution_table(p))
        return EXIT_OK if ok else EXIT_PROPERTY

    if args.alpha is not None:
        rho = example4_family_state(args.alpha)
    elif args.dim is not None:
        d = _capped(args.dim, "d")
        if d < 2:
            raise InputError("d must be at least 2", detail=f"got {d}")
        t = random_zero_diagonal_perturbation(d, np.random.default_rng(args.seed))
        rho = make_maximal_uncertainty_state(d, t)
        if not is_maximal_uncertainty_state(rho, standard_basis_observable(d)):
            return EXIT_PROPERTY
    else:
        raise InputError("maxunc generate needs -d/--dim or --alpha")
    _emit_json(state_to_json(rho))
    return EXIT_OK


def cmd_discriminate(args) -> int:
    if not args.state:
        raise InputError("discriminate needs at least one -s/--state")
    a = _load_observable(args.observable)
    states = [(Path(p).stem, _load_state(p)) for p in args.state]
    report = discriminate(states, a, _functions(args.function))
    if args.format == "json":
        _emit_json(report.to_dict())
    else:
        print(report.to_table(), end="")
    return EXIT_OK


SINE_NOTE = (
    "* s(z) = (sin(2pi/3) + sin(pi/3)) / (2 sin(pi/2)) = sqrt(3)/2 = 0.8660.\n"
    "  A value of 0.500 sometimes quoted for this entry does not follow from the formula."
)


def example_rows():
    """The qubit comparison: two states under a sharp and an unsharp observable."""
    rho, psi = maximally_mixed_state(2), plus_state()
    sharp, unsharp = plus_minus_observable(1.0), plus_minus_observable(1.0 / 3.0)
    cases = [
        ("x", "rho", "sharp", rho, sharp),
        ("y", "psi", "sharp", psi, sharp),
        ("x", "rho", "unsharp", rho, unsharp),
        ("z", "psi", "unsharp", psi, unsharp),
    ]
    rows = []
    for row, sname, oname, state, obs in cases:
        p = born_distribution(state, obs)
        rows.append({
            "row": row, "state": sname, "observable": oname,
            "distribution": p.tolist(),
            "uncertainty": {k: f(p) for k, f in BUILTINS.items()},
        })
    return rows


def cmd_examples(args) -> int:
    rows = example_rows()
    if args.format == "json":
        _emit_json({"rows": rows, "notes": [SINE_NOTE.replace("\n  ", " ")]})
        return EXIT_OK
    print("Observables on C^2:")
    print("  sharp    A0 = 1/2 [[1, 1], [1, 1]]      A1 = 1/2 [[1, -1], [-1, 1]]")
    print("  unsharp  A0 = 1/2 [[1, 1/3], [1/3, 1]]  A1 = 1/2 [[1, -1/3], [-1/3, 1]]")
    print("States: rho = I/2, psi = |psi><psi| with psi = (|0> + |1>)/sqrt(2)")
    print()
    header = ["row", "state", "observable", "P(0)", "P(1)", "v", "e", "g", "s"]
    table = [header]
    for r in rows:
        cells = [r["row"], r["state"], r["observable"]] + [fmt_fixed(p) for p in r["distribution"]]
        cells += [fmt_fixed(r["uncertainty"][k]) for k in "vegs"]
        if r["row"] == "z":
            cells[-1] += " *"
        table.append(cells)
    widths = [max(len(c[i]) for c in table) for i in range(len(header))]
    for cells in table:
        print("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())
    print()
    print(SINE_NOTE)
    return EXIT_OK


# -- entry point -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit code 2 is reserved for dimensions
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="stateuncertainty", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="uncertainty of a state under an observable")
    p.add_argument("-f", "--function", action="append", help="v, e, g, s or mix:w1*f1+... (repeatable)")
    p.add_argument("-A", "--observable", required=True)
    p.add_argument("-s", "--state", required=True)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("distribution", parents=[common], help="Born distribution of a state")
    p.add_argument("-A", "--observable", required=True)
    p.add_argument("-s", "--state", required=True)
    p.set_defaults(handler=cmd_distribution)

    p = sub.add_parser("axioms", parents=[common], help="spot-check the uncertainty-function axioms")
    p.add_argument("-f", "--function", required=True)
    p.add_argument("-d", "--dim", type=int, required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(handler=cmd_axioms)

    p = sub.add_parser("maxunc", parents=[common], help="check or generate maximal-uncertainty states")
    p.add_argument("action", choices=("check", "generate"))
    p.add_argument("-A", "--observable")
    p.add_argument("-s", "--state")
    p.add_argument("-d", "--dim", type=int)
    p.add_argument("--alpha", type=float)
    p.set_defaults(handler=cmd_maxunc)

    p = sub.add_parser("discriminate", parents=[common], help="compare several states under one observable")
    p.add_argument("-A", "--observable", required=True)
    p.add_argument("-s", "--state", action="append")
    p.add_argument("-f", "--function", action="append")
    p.set_defaults(handler=cmd_discriminate)

    p = sub.add_parser("examples", parents=[common], help="print the built-in qubit comparison table")
    p.set_defaults(handler=cmd_examples)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
