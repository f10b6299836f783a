"""Command line interface: ``scenval <subcommand> [options]``.

Exit codes: 0 success, 2 unreadable or malformed files (and command line errors), 3 invalid parameters or data
shapes, 4 numerical failure.
"""
import argparse
import json
import logging
import sys

from .core import SCHEMA_VERSION, Label
from .csvio import read_points, table_to_csv, to_json, to_msgpack
from .exceptions import DimensionMismatch, InputError, ParseError, ScenvalError, UnequalSampleSizes
from .experiments import run_nnc_convergence, run_table1
from .harness import Trajectory, correlated_line_training, preset_schedule, run_harness, schedule_from_records
from .loggingconfig import configure_logging
from .measures import validate
from .printTools import print_report_string, welcome
from .sampling import CorrelatedLine, random_root
from .theory import ORACLE_TOLERANCE, oracle_grid
from .valparams import DENSITIES, ValParams
from ._version import __version__
from . import _scenval_provenance_stamp, log_name

logger = logging.getLogger(f"{log_name}{__name__}")

TABLE1_COLUMNS = (
    "density", "d", "m", "rho", "mean", "std", "stderr", "theoretical", "indicator_variance", "reps"
)
NNC_COLUMNS = ("density", "generated_density", "d", "m", "k", "mode", "mean", "std", "stderr", "reference", "reps")
VALIDATE_COLUMNS = (
    "m", "d", "k", "rho", "mode", "boundary", "nnc", "t1", "t2", "expected_t", "mr", "mr_limit", "memorized_count",
    "tie_count", "empirical_duplicates",
)
Q_COLUMNS = ("s", "rho", "d", "density", "closed_form", "quadrature", "difference")


def _emit(args, params, command, payload, columns=None, rows=None, comment=None):
    """Write ``payload`` (json/msgpack) or ``rows`` (csv) to --output or stdout"""
    fmt = params.format
    if fmt == "CSV":
        data = table_to_csv(rows, columns, comment)
    elif fmt == "JSON":
        data = to_json(payload)
    else:
        if args.output is None:
            raise InputError("msgpack output is binary and needs --output")
        data = to_msgpack(payload)

    if args.output is None:
        sys.stdout.write(data)
        return
    mode = "wb" if isinstance(data, bytes) else "w"
    try:
        with open(args.output, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": ""})) as handle:
            handle.write(data)
    except OSError as error:
        raise ParseError(f"Cannot write {args.output}: {error}")
    logger.info(f"{command}: wrote {args.output}")


def _envelope(command, params, positional=()):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "seed": params.seed,
        "reproduce": params.reproduce(command, positional),
        "provenance": dict(_scenval_provenance_stamp, routine=f"scenval.cli.{command}"),
    }


def cmd_validate(args, params):
    e = read_points(args.empirical, Label.EMPIRICAL)
    g = read_points(args.generated, Label.GENERATED)
    if e.d != g.d:
        raise DimensionMismatch(
            f"Dimension mismatch: {args.empirical} has {e.d} column(s), {args.generated} has {g.d}"
        )
    if e.m != g.m:
        raise UnequalSampleSizes(
            f"Unequal sample sizes: {args.empirical} has {e.m} point(s), {args.generated} has {g.m}"
        )

    report = validate(
        e, g, params.k, params.rho, params.mode, params.boundary, params.profile_bins, method=params.nn_method,
        threads=params.threads,
    )
    logger.info(print_report_string(report))

    payload = _envelope("validate", params, (args.empirical, args.generated))
    payload.update(report.to_dict())
    payload["inputs"] = {"empirical": args.empirical, "generated": args.generated}
    payload["parameters"] = {
        "k": params.k,
        "rho": params.rho,
        "mode": params.mode,
        "boundary": params.boundary,
        "bins": params.profile_bins,
    }
    payload["mr"]["memorized_indices"] = [int(i) for i, flag in enumerate(report.memorized_flags) if flag]

    row = {c: getattr(report, c) for c in VALIDATE_COLUMNS}
    _emit(args, params, "validate", payload, VALIDATE_COLUMNS, [row], payload["reproduce"])
    return 0


def cmd_table1(args, params):
    results = run_table1(reps=params.reps, seed=params.seed, ms=params.table1_m, boundary=params.boundary,
                         threads=params.threads)
    rows = [
        {
            "density": r.spec.density,
            "d": r.spec.d,
            "m": r.spec.m,
            "rho": r.spec.rho,
            "mean": r.mean,
            "std": r.std,
            "stderr": r.stderr,
            "theoretical": r.reference,
            "indicator_variance": r.indicator_variance,
            "reps": r.reps,
        }
        for r in results
    ]
    payload = _envelope("table1", params)
    payload["rows"] = [dict(row, values=r.values) for row, r in zip(rows, results)]
    _emit(args, params, "table1", payload, TABLE1_COLUMNS, rows, payload["reproduce"])
    return 0


def cmd_nnc_convergence(args, params):
    results = run_nnc_convergence(
        density=params.density, d=params.d, k=params.k, ms=params.nnc_m, reps=params.reps, seed=params.seed,
        mode=params.mode, generated_density=params.generated_density, threads=params.threads,
    )
    rows = [
        {
            "density": r.spec.density,
            "generated_density": r.spec.generated_density or r.spec.density,
            "d": r.spec.d,
            "m": r.spec.m,
            "k": r.spec.k,
            "mode": r.spec.mode,
            "mean": r.mean,
            "std": r.std,
            "stderr": r.stderr,
            "reference": r.reference,
            "reps": r.reps,
        }
        for r in results
    ]
    payload = _envelope("nnc-convergence", params)
    payload["rows"] = [dict(row, values=r.values) for row, r in zip(rows, results)]
    _emit(args, params, "nnc-convergence", payload, NNC_COLUMNS, rows, payload["reproduce"])
    return 0


def _read_schedule_file(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            records = json.load(handle)
    except OSError as error:
        raise ParseError(f"Cannot read {path}: {error}")
    except json.JSONDecodeError as error:
        raise ParseError(f"{path}: not valid json ({error})")
    if not isinstance(records, list):
        raise ParseError(f"{path}: expected a json list of generator entries")
    return records


def cmd_harness(args, params):
    positional = []
    if args.training is not None:
        training = read_points(args.training, Label.EMPIRICAL)
        law = None
        positional.append(f"--training {args.training}")
    else:
        law = CorrelatedLine(params.noise)
        training = correlated_line_training(params.harness_m, params.noise, params.seed)

    if args.schedule_file is not None:
        positional.append(f"--schedule-file {args.schedule_file}")
        schedule = schedule_from_records(_read_schedule_file(args.schedule_file), training, params.seed, law)
    else:
        schedule = preset_schedule(
            params.generator, training, params.seed, law, params.steps, params.sigma_max, params.sigma_min
        )

    trajectory: Trajectory = run_harness(
        training, schedule, params.k, params.rho, params.mode, params.harness_reps, params.boundary,
        method=params.nn_method,
    )
    logger.info(trajectory.summary_string())

    payload = _envelope("harness", params, positional)
    payload.update(trajectory.to_dict())
    _emit(args, params, "harness", payload, Trajectory.columns, trajectory.rows(), payload["reproduce"])
    return 0


def cmd_q_check(args, params):
    cells = oracle_grid(params.smax, params.rhos, params.dims, params.densities)
    failed = [cell for cell in cells if not cell.passed()]

    payload = _envelope("q-check", params)
    payload["tolerance"] = ORACLE_TOLERANCE
    payload["cells"] = [cell.to_dict() for cell in cells]
    payload["failed"] = len(failed)
    _emit(args, params, "q-check", payload, Q_COLUMNS, payload["cells"], payload["reproduce"])

    if failed:
        worst = max(failed, key=lambda cell: cell.difference)
        print(
            f"scenval q-check: {len(failed)} cell(s) differ by more than {ORACLE_TOLERANCE:g}; worst "
            f"{worst.density} s={worst.s} rho={worst.rho} d={worst.d}: {worst.difference:.3e}",
            file=sys.stderr,
        )
        return 4
    return 0


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="root seed (random and reported when omitted)")
    common.add_argument("--threads", type=int, default=1, help="worker threads; results do not depend on it")
    common.add_argument("--format", choices=["json", "csv", "msgpack"], default=None, type=str.lower)
    common.add_argument("--output", default=None, help="output file (stdout when omitted)")
    common.add_argument("--nn-method", dest="nn_method", choices=["auto", "brute", "kdtree"], default="auto",
                        type=str.lower)
    common.add_argument("-v", "--verbose", action="count", default=0, help="INFO, repeat for DEBUG")
    common.add_argument("--log-file", dest="log_file", default=None)
    return common


def _statistic_options(parser, rho=True, boundary=True):
    parser.add_argument("--k", type=int, default=3, help="neighbour depth of nnc")
    if rho:
        parser.add_argument("--rho", type=float, default=0.5, help="neighbourhood fraction of mr, in (0, 1]")
    parser.add_argument("--mode", choices=["exact", "asymptotic"], default="exact", type=str.lower)
    if boundary:
        parser.add_argument("--boundary", choices=["open", "closed"], default="open", type=str.lower)


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="scenval", description="Nearest neighbour validation of scenario generators")
    parser.add_argument("--version", action="version", version=f"scenval {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="nnc and mr of a generated set against empirical data")
    p.add_argument("empirical", help="CSV file of empirical points")
    p.add_argument("generated", help="CSV file of generated points")
    _statistic_options(p)
    p.add_argument("--bins", dest="profile_bins", type=int, default=20, help="bins of the distance histogram")
    p.set_defaults(func=cmd_validate, default_format="json")

    p = sub.add_parser("table1", parents=[common], help="mean mr over densities, rho and sample sizes")
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--m", dest="table1_m", type=int, nargs="+", default=[500, 5000])
    p.add_argument("--boundary", choices=["open", "closed"], default="open", type=str.lower)
    p.set_defaults(func=cmd_table1, default_format="csv")

    p = sub.add_parser("nnc-convergence", parents=[common], help="mean nnc of two samples for growing m")
    p.add_argument("--density", choices=[x.lower() for x in DENSITIES], default="normal", type=str.lower)
    p.add_argument("--generated-density", dest="generated_density", choices=[x.lower() for x in DENSITIES],
                   default=None, type=str.lower)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--m", dest="nnc_m", type=int, nargs="+", default=[100, 1000, 5000])
    p.add_argument("--reps", type=int, default=100)
    _statistic_options(p, rho=False, boundary=False)
    p.set_defaults(func=cmd_nnc_convergence, default_format="csv")

    p = sub.add_parser("harness", parents=[common], help="nnc and mr along a schedule of toy generators")
    p.add_argument("--training", default=None, help="CSV training set (default: points near y = x)")
    p.add_argument("--harness-m", dest="harness_m", type=int, default=500)
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--schedule", dest="generator", choices=["jitter", "memorizer", "breaker", "true"],
                   default="jitter", type=str.lower)
    p.add_argument("--schedule-file", dest="schedule_file", default=None,
                   help='json list like [{"kind": "jitter", "sigma": 0.5}, ...]')
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--sigma-max", dest="sigma_max", type=float, default=1.0)
    p.add_argument("--sigma-min", dest="sigma_min", type=float, default=None)
    p.add_argument("--harness-reps", dest="harness_reps", type=int, default=5)
    _statistic_options(p)
    p.set_defaults(func=cmd_harness, default_format="csv")

    p = sub.add_parser("q-check", parents=[common], help="closed form of Q(s) against numerical quadrature")
    p.add_argument("--smax", type=int, default=5)
    p.add_argument("--rhos", type=float, nargs="+", default=[0.1, 0.3, 0.5, 0.7, 0.9])
    p.add_argument("--dims", type=int, nargs="+", default=[1, 2])
    p.add_argument("--densities", choices=[x.lower() for x in DENSITIES], nargs="+",
                   default=[x.lower() for x in DENSITIES], type=str.lower)
    p.set_defaults(func=cmd_q_check, default_format="csv")

    return parser


_NOT_PARAMETERS = ("command", "func", "default_format", "output", "verbose", "log_file", "empirical", "generated",
                   "training", "schedule_file")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = {0: "WARNING", 1: "INFO"}.get(args.verbose, "DEBUG")
    configure_logging(level, args.log_file)
    logger.info(welcome())

    uod = {key: val for key, val in vars(args).items() if key not in _NOT_PARAMETERS}
    if uod.get("format") is None:
        uod["format"] = args.default_format

    try:
        params = ValParams(uod).validate()
        if params.seed is None and args.command != "validate" and args.command != "q-check":
            params.seed = random_root()
            logger.warning(f"No --seed given, using root seed {params.seed}")
        return args.func(args, params)
    except ScenvalError as error:
        print(f"scenval {args.command}: {error.mesg}", file=sys.stderr)
        return error.exit_code
    except Exception as error:
        logger.debug("Unexpected failure", exc_info=True)
        print(f"scenval {args.command}: internal error: {error}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
