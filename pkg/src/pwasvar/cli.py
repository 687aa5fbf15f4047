"""Command-line interface: validate, simulate, estimate, test, irf, identify and smooth-demo."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import argparse
import json
import logging
import os
import re
import sys
from typing import Callable

import numpy as np
import pandas as pd

from pwasvar.decorators import get_short_name, short_name
from pwasvar.estimation import EstimationOptions, ModelSpec, estimate_ml, param_layout, test_hypotheses
from pwasvar.exceptions import DataError, PwaSvarError
from pwasvar.identification import hetero_identification_class, instrument_q1, orthogonal_reduced_form
from pwasvar.io import DataTable, build_artifact_path, canonical_json, load_bundled_model, load_csv, load_model, model_to_config
from pwasvar.irf import girf
from pwasvar.model import PwaSvarModel, simulate
from pwasvar.smoothing import GaussianKernelSpec, check_scalar_monotone, logistic_transition, smooth_threshold_affine, transition_panel

DEFAULT_SEED = 42
SEED_ENV = "PWASVAR_SEED"
PROG = "pwasvar"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

_LOG_RE = re.compile(r"^log\((?P<num>[^/()]+)(?:/(?P<den>[^/()]+))?\)$")


# Shared helpers


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as err:
        raise ValueError(f"{SEED_ENV} must be an integer. Got {raw!r}") from err


def _artifact(args: argparse.Namespace, name: str, ext: str) -> str | None:
    if args.out is None:
        return None
    return build_artifact_path(args.out, args.command, args.experiment, name, ext)


def _write_json(args: argparse.Namespace, name: str, document: dict) -> str | None:
    path = _artifact(args, name, ".json")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(document))
        logging.info(f"Saved: [{path}]")
    return path


def _write_csv(args: argparse.Namespace, name: str, frame: pd.DataFrame) -> str | None:
    path = _artifact(args, name, ".csv")
    if path is not None:
        frame.to_csv(path, index=False)
        logging.info(f"Saved: [{path}]")
    return path


def _load_any(path: str | None) -> PwaSvarModel | ModelSpec:
    return load_bundled_model() if path is None else load_model(path)


def _load_fitted(path: str | None) -> PwaSvarModel:
    model = _load_any(path)
    if not isinstance(model, PwaSvarModel):
        raise ValueError(f"{path} describes a model spec; this command needs a fully parametrized model")
    return model


def parse_column(text: str) -> tuple[str, str | tuple[str, str], str]:
    """Parse a ``NAME=SOURCE`` column mapping.

    SOURCE is a column name, ``log(col)`` or ``log(num/den)``.

    Examples
    --------
    >>> parse_column("log_theta=log(v/u)")
    ('log_theta', ('v', 'u'), 'ratio_log')
    >>> parse_column("pi=pi")
    ('pi', 'pi', 'identity')
    """
    name, sep, source = text.partition("=")
    name, source = name.strip(), source.strip()
    if not sep or not name or not source:
        raise ValueError(f"Column mappings must look like NAME=SOURCE. Got {text!r}")
    match = _LOG_RE.match(source)
    if match is None:
        return name, source, "identity"
    if match.group("den") is None:
        return name, match.group("num").strip(), "log"
    return name, (match.group("num").strip(), match.group("den").strip()), "ratio_log"


def _load_data(args: argparse.Namespace, extra: tuple = ()) -> DataTable:
    if args.data is None:
        raise ValueError(f"{args.command} needs --data")
    if args.column:
        mappings = [parse_column(c) for c in args.column]
    else:
        header = [c.strip() for c in pd.read_csv(args.data, nrows=0).columns]
        mappings = [(c, c, "identity") for c in header if c != args.period_column and c not in extra]
    columns = {name: source for name, source, _ in mappings}
    transforms = {name: kind for name, _, kind in mappings}
    for col in extra:
        columns.setdefault(col, col)
    return load_csv(args.data, columns, transforms, period_column=args.period_column, start=_row_key(args.start), end=_row_key(args.end))


def _row_key(value: str | None) -> int | str | None:
    if value is None:
        return None
    return int(value) if re.fullmatch(r"\d+", value) else value


def _spec_for(args: argparse.Namespace, p: int) -> ModelSpec:
    if args.model is None:
        return ModelSpec(p=p, k=args.lags)
    spec = load_model(args.model)
    if not isinstance(spec, ModelSpec):
        raise ValueError(f"{args.model} describes a fitted model; {args.command} needs a model spec")
    if spec.p != p:
        raise ValueError(f"Spec has p={spec.p} but the data have {p} columns")
    return spec


def _options(args: argparse.Namespace) -> EstimationOptions:
    return EstimationOptions(restarts=args.restarts, seed=_seed(args), n_jobs=args.n_jobs)


def _history(args: argparse.Namespace, model: PwaSvarModel) -> np.ndarray:
    if args.history is None:
        return np.zeros((model.k, model.p))
    history = np.array(json.loads(args.history), dtype=float)
    if history.ndim == 1:
        history = np.tile(history, (model.k, 1))
    if history.shape != (model.k, model.p):
        raise ValueError(f"--history must be a length-{model.p} vector or a {model.k} x {model.p} array. Got {history.shape}")
    return history


# Commands


@short_name("validate")
def _cmd_validate(args: argparse.Namespace) -> str:
    doc = _load_any(args.model)
    if isinstance(doc, ModelSpec):
        _write_json(args, "spec", doc.to_dict())
        return f"spec ok: p={doc.p}, k={doc.k}, {param_layout(doc).size} free parameters"
    report = {"certificate": doc.certificate.to_dict(), "lag_rank": doc.lag_rank(), "spectral_radii": doc.regime_spectral_radii().tolist()}
    _write_json(args, "certificate", report)
    return f"model ok: p={doc.p}, k={doc.k}, L={doc.n_regimes}; {doc.certificate.summary()}"


@short_name("simulate")
def _cmd_simulate(args: argparse.Namespace) -> str:
    model = _load_fitted(args.model)
    result = simulate(model, _history(args, model), args.periods, seed=_seed(args), shock_scale=args.shock_scale)
    path = _write_csv(args, "simulation", result.to_frame())
    shares = np.bincount(result.regimes - 1, minlength=model.n_regimes) / args.periods
    return f"simulated {args.periods} periods; regime shares {np.round(shares, 3).tolist()}" + (f" -> {path}" if path else "")


@short_name("estimate")
def _cmd_estimate(args: argparse.Namespace) -> str:
    table = _load_data(args)
    spec = _spec_for(args, table.values.shape[1])
    result = estimate_ml(spec, table.values, _options(args))
    model_doc = model_to_config(result.model)
    document = result.to_dict()
    document["model"] = model_doc
    document["variables"] = list(table.columns)
    _write_json(args, "estimate", document)
    model_path = _write_json(args, "model", model_doc)
    summary = f"logL={result.log_likelihood:.4f}, {result.free_parameter_count} parameters, converged={result.converged}"
    return summary + (f"; model -> {model_path}" if model_path else "")


@short_name("test")
def _cmd_test(args: argparse.Namespace) -> str:
    table = _load_data(args)
    spec = _spec_for(args, table.values.shape[1])
    report = test_hypotheses(spec, table.values, _options(args))
    _write_json(args, "lr_tests", report.to_dict())
    _write_csv(args, "lr_tests", report.to_frame())
    return "; ".join(f"{row.hypothesis}: {row.formatted()} df={row.df}" for row in report.rows)


@short_name("irf")
def _cmd_irf(args: argparse.Namespace) -> str:
    model = _load_fitted(args.model)
    result = girf(
        model,
        _history(args, model),
        args.shock,
        size=args.size,
        horizon=args.horizon,
        draws=args.draws,
        seed=_seed(args),
        zero_future_shocks=args.zero_future_shocks,
        n_jobs=args.n_jobs,
    )
    _write_csv(args, "girf", result.to_frame())
    summary = f"girf: shock {args.shock}, horizon {args.horizon}, {args.draws} draws, impact {np.round(result.response[0], 4).tolist()}"
    if model.p == 2 and args.shock == 0:
        curve = result.multiplier_curve(target=1, driver=0)
        _write_csv(args, "multiplier", curve)
        summary += f", multiplier at h={args.horizon}: {curve['multiplier'].iloc[-1]:.4f}"
    return summary


@short_name("identify")
def _cmd_identify(args: argparse.Namespace) -> str:
    model = _load_fitted(args.model)
    if args.instrument is None:
        hetero = hetero_identification_class(model.shocks.evaluations())
        _write_json(args, "identification", {"heteroskedasticity": hetero.to_dict()})
        return f"heteroskedasticity class: {hetero.kind}"

    table = _load_data(args, extra=(args.instrument,))
    names = list(table.columns)
    w_col = names.index(args.instrument)
    z_cols = [i for i in range(len(names)) if i != w_col]
    data = table.values[:, z_cols]
    if data.shape[1] != model.p:
        raise ValueError(f"Model has p={model.p} but the data have {data.shape[1]} variables besides the instrument")

    anchor = model.partition.interior_point(1)
    normalized, Q = orthogonal_reduced_form(model, anchor)
    u = normalized.structural_residuals(data)
    result = instrument_q1(u, table.values[model.k :, w_col], min_strength=args.min_strength)
    _write_json(args, "identification", {"instrument": result.to_dict(), "rotation": Q.tolist(), "anchor": anchor.tolist()})
    return f"q1={np.round(result.q1, 4).tolist()}, strength {result.strength:.2f}"


@short_name("smooth-demo")
def _cmd_smooth_demo(args: argparse.Namespace) -> str:
    panel = transition_panel(args.a1, args.a2, args.s, bandwidth=args.bandwidth, lo=args.lo, hi=args.hi, n=args.points)
    _write_csv(args, "smooth_demo", panel)
    transition = logistic_transition(args.a1, args.a2, args.s)
    smoothed = smooth_threshold_affine(transition.kink(), GaussianKernelSpec(args.bandwidth if args.bandwidth is not None else args.s))
    logistic = check_scalar_monotone(transition.evaluate, args.lo, args.hi, args.points)
    gaussian = check_scalar_monotone(lambda g: smoothed.evaluate(np.asarray(g)[:, None])[:, 0], args.lo, args.hi, args.points)
    return f"logistic monotone: {logistic.monotone}; gaussian-smoothed monotone: {gaussian.monotone}"


COMMANDS: dict[str, Callable[[argparse.Namespace], str]] = {
    get_short_name(handler): handler
    for handler in (_cmd_validate, _cmd_simulate, _cmd_estimate, _cmd_test, _cmd_irf, _cmd_identify, _cmd_smooth_demo)
}


# Parser


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--out", default=None, help="Directory for JSON/CSV artifacts; nothing is written when omitted.")
    parser.add_argument("--experiment", default="run", help="Experiment name used in artifact paths.")
    parser.add_argument("--seed", type=int, default=None, help=f"Random seed; falls back to ${SEED_ENV}, then {DEFAULT_SEED}.")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--n-jobs", type=int, default=1, help="joblib workers.")


def _data_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--data", default=None, help="CSV file with a header row.")
    parser.add_argument("--column", action="append", default=None, help="NAME=SOURCE with SOURCE a column, log(col) or log(num/den); repeatable.")
    parser.add_argument("--period-column", default="date")
    parser.add_argument("--start", default=None, help="First row kept: a period label or a zero-based row.")
    parser.add_argument("--end", default=None, help="Last row kept: a period label or a zero-based row.")


def build_parser() -> argparse.ArgumentParser:
    """The argument parser of the ``pwasvar`` command."""
    parser = argparse.ArgumentParser(prog=PROG, description="Piecewise-affine structural VARs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Parse a model or spec and print its invertibility certificate.")
    p.add_argument("--model", default=None, help="Model or spec JSON; the bundled model when omitted.")
    _common(p)

    p = sub.add_parser("simulate", help="Simulate a path of a model.")
    p.add_argument("--model", default=None)
    p.add_argument("--periods", type=int, default=200)
    p.add_argument("--shock-scale", type=float, default=1.0)
    p.add_argument("--history", default=None, help="JSON vector (repeated k times) or k x p array; zeros when omitted.")
    _common(p)

    for name, text in (("estimate", "Maximum-likelihood estimation."), ("test", "LR tests of no switching and of linearity.")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--model", default=None, help="Model-spec JSON; a two-regime spec with --lags lags when omitted.")
        p.add_argument("--lags", type=int, default=2)
        p.add_argument("--restarts", type=int, default=4)
        _data_flags(p)
        _common(p)

    p = sub.add_parser("irf", help="Generalized impulse responses from a history.")
    p.add_argument("--model", default=None)
    p.add_argument("--shock", type=int, default=0, help="Zero-based shocked equation.")
    p.add_argument("--size", type=float, default=1.0)
    p.add_argument("--horizon", type=int, default=20)
    p.add_argument("--draws", type=int, default=1000)
    p.add_argument("--history", default=None)
    p.add_argument("--zero-future-shocks", action="store_true")
    _common(p)

    p = sub.add_parser("identify", help="Instrument direction or heteroskedasticity class of a fitted model.")
    p.add_argument("--model", default=None)
    p.add_argument("--instrument", default=None, help="Column of --data holding the instrument.")
    p.add_argument("--min-strength", type=float, default=3.0)
    _data_flags(p)
    _common(p)

    p = sub.add_parser("smooth-demo", help="Tabulate a kink, its logistic transition and its Gaussian smoothing.")
    p.add_argument("--a1", type=float, default=1.0)
    p.add_argument("--a2", type=float, default=0.05)
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--bandwidth", type=float, default=None)
    p.add_argument("--lo", type=float, default=-3.0)
    p.add_argument("--hi", type=float, default=3.0)
    p.add_argument("--points", type=int, default=601)
    _common(p)
    return parser


def run_command(argv: list[str] = None) -> int:
    """Run one subcommand and return its exit code.

    Exit codes: 0 on success, 1 on validation errors, 2 on I/O and data errors (and on usage errors,
    as argparse reports them).
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_IO

    logging.basicConfig(level=getattr(logging, args.log_level), format="%(levelname)s %(message)s")
    try:
        summary = COMMANDS[args.command](args)
    except (OSError, DataError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except (PwaSvarError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    print(summary)
    return EXIT_OK


def main() -> int:
    """Console-script entry point."""
    return run_command(sys.argv[1:])
