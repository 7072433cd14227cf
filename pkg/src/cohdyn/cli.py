"""Command-line front end: config-driven sweeps emitted as CSV, decay-rate
fits, revival/steady-state/monogamy summaries, and the closed-form vs
integro-ODE cross-check, all machine-readable.

Config files are line-oriented ``key = value`` text with ``#`` comments::

    state = WWBAR          # named state or path to an amplitude file
    lambda = 0.01
    delta = 0.5
    mask = 1,2,3
    t_max = 60.0
    n_points = 3000
    h_form = standard      # or paper-verbatim
    outputs = series.csv   # optional; --out wins

Exit codes: 0 success, 1 validation error, 2 IO error, 3 numerical contract
violation (|h| > 1).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .analysis import (
    FIELD_NAMES,
    TimeSeries,
    detect_revivals,
    fit_envelope,
    fit_semilog,
    monogamy_sign,
    steady_state,
    sweep,
)
from .coherence import classify_monogamy, tuple_direct, tuple_probe
from .qlinalg import ValidationError
from .reservoir import BathParams, CouplingMask, HForm, ModelViolationError, h_closed, h_oracle, regime
from .states import NAMED_STATES, PureState, density_of, load_amplitude_file, named_state

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_MODEL = 3

CSV_COLUMNS = (
    "t", "h_re", "h_im", "abs_h",
    "C_total", "C_L", "C_G", "C_12", "C_13", "C_23", "C_1_23", "C_TG", "C_BG", "M",
)

_CONFIG_KEYS = ("state", "lambda", "delta", "mask", "t_max", "n_points", "h_form", "outputs")


@dataclass(frozen=True)
class ExperimentConfig:
    state: str
    lam: float = 1.0
    delta: float = 0.0
    mask: tuple[int, ...] = (1, 2, 3)
    t_max: float = 20.0
    n_points: int = 2000
    h_form: HForm = HForm.STANDARD
    outputs: tuple[str, ...] = ()
    base_dir: Path = Path(".")


def _parse_mask(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text or text.lower() == "none":
        return ()
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ValidationError(f"bad mask {text!r}; expected comma-separated indices") from exc


def _parse_form(text: str) -> HForm:
    try:
        return HForm(text.strip().lower())
    except ValueError as exc:
        raise ValidationError(
            f"bad h_form {text!r}; expected 'standard' or 'paper-verbatim'"
        ) from exc


def parse_config(path) -> ExperimentConfig:
    """Read a ``key = value`` config file.  Relative state/output paths are
    resolved against the config file's directory."""
    path = Path(path)
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValidationError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    if "state" not in values:
        raise ValidationError(f"{path}: missing required key 'state'")
    try:
        cfg = ExperimentConfig(
            state=values["state"],
            lam=float(values.get("lambda", "1.0")),
            delta=float(values.get("delta", "0.0")),
            mask=_parse_mask(values.get("mask", "1,2,3")),
            t_max=float(values.get("t_max", "20.0")),
            n_points=int(values.get("n_points", "2000")),
            h_form=_parse_form(values.get("h_form", "standard")),
            outputs=tuple(
                tok.strip() for tok in values.get("outputs", "").split(",") if tok.strip()
            ),
            base_dir=path.parent,
        )
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from exc
    return cfg


def _apply_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    if getattr(args, "t_max", None) is not None:
        cfg = replace(cfg, t_max=args.t_max)
    if getattr(args, "points", None) is not None:
        cfg = replace(cfg, n_points=args.points)
    if getattr(args, "form", None) is not None:
        cfg = replace(cfg, h_form=_parse_form(args.form))
    if getattr(args, "mask", None) is not None:
        cfg = replace(cfg, mask=_parse_mask(args.mask))
    return cfg


def _resolve_state(cfg: ExperimentConfig) -> tuple[PureState, str]:
    token = cfg.state.strip()
    normalized = token.upper().replace("-", "").replace("_", "")
    if normalized in NAMED_STATES:
        return named_state(normalized), normalized
    file_path = Path(token)
    if not file_path.is_absolute():
        file_path = cfg.base_dir / file_path
    return load_amplitude_file(file_path), file_path.name


def _bath(cfg: ExperimentConfig) -> BathParams:
    return BathParams(gamma0=1.0, lam=cfg.lam, delta=cfg.delta)


def _run_sweep(cfg: ExperimentConfig) -> TimeSeries:
    state, label = _resolve_state(cfg)
    return sweep(
        state,
        _bath(cfg),
        CouplingMask(cfg.mask),
        t_max=cfg.t_max,
        n_points=cfg.n_points,
        form=cfg.h_form,
        state_name=label,
    )


def series_to_csv(series: TimeSeries) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for i in range(len(series)):
        t = series.times[i]
        h = series.h_values[i]
        r = series.records[i]
        row = (
            t, h.real, h.imag, abs(h),
            r.c_total, r.c_local, r.c_global, r.c12, r.c13, r.c23,
            r.c_1_23, r.c_tg, r.c_bg, r.m,
        )
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def load_series_csv(path) -> dict[str, np.ndarray]:
    """Re-parse a simulate CSV into column arrays keyed by header name."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.split("\n") if ln]
    header = tuple(lines[0].split(","))
    if header != CSV_COLUMNS:
        raise ValidationError(f"unexpected CSV header {header}")
    data = np.array([[float(tok) for tok in ln.split(",")] for ln in lines[1:]])
    return {name: data[:, k] for k, name in enumerate(CSV_COLUMNS)}


def _emit(text: str, args, cfg: ExperimentConfig | None = None) -> None:
    out = getattr(args, "out", None)
    if out is None and cfg is not None and cfg.outputs:
        target = Path(cfg.outputs[0])
        out = target if target.is_absolute() else cfg.base_dir / target
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")


def _emit_json(obj, args, cfg: ExperimentConfig | None = None) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", args, cfg)


def _config(args) -> ExperimentConfig:
    if args.config is None:
        raise ValidationError("--config is required")
    return _apply_overrides(parse_config(args.config), args)


def _check_field(name: str) -> str:
    if name not in FIELD_NAMES and name != "abs_h":
        raise ValidationError(f"unknown field {name!r}; expected one of {sorted(FIELD_NAMES)}")
    return name


def cmd_simulate(args) -> int:
    cfg = _config(args)
    series = _run_sweep(cfg)
    _emit(series_to_csv(series), args, cfg)
    return EXIT_OK


def cmd_fit(args) -> int:
    cfg = _config(args)
    field = _check_field(args.field)
    series = _run_sweep(cfg)
    if args.method == "semilog":
        if args.window is None:
            window = (float(series.times[0]), float(series.times[-1]))
        else:
            try:
                lo, hi = (float(tok) for tok in args.window.split(","))
            except ValueError as exc:
                raise ValidationError(f"bad window {args.window!r}; expected 'lo,hi'") from exc
            window = (lo, hi)
        fit = fit_semilog(series, field, window)
    elif args.method == "envelope":
        fit = fit_envelope(series, field)
    else:
        raise ValidationError(f"unknown method {args.method!r}")
    _emit_json(
        {
            "field": field,
            "method": fit.method,
            "rate": fit.rate,
            "intercept": fit.intercept,
            "window": [fit.window[0], fit.window[1]],
            "r_squared": fit.r_squared,
        },
        args,
        cfg,
    )
    return EXIT_OK


def cmd_revivals(args) -> int:
    cfg = _config(args)
    field = _check_field(args.field)
    series = _run_sweep(cfg)
    events = detect_revivals(series, field, eps=args.eps)
    _emit_json(
        {
            "field": field,
            "eps": args.eps,
            "events": [
                {
                    "death_time": e.death_time,
                    "revival_time": e.revival_time,
                    "peak_after": e.peak_after,
                }
                for e in events
            ],
        },
        args,
        cfg,
    )
    return EXIT_OK


def cmd_tuple(args) -> int:
    cfg = _config(args)
    state, label = _resolve_state(cfg)
    if state.n_qubits != 3:
        raise ValidationError("tuple is defined for 3-qubit states")
    rho = density_of(state)
    result = tuple_probe(rho) if args.mode == "probe" else tuple_direct(rho)
    payload = {"state": label, "mode": args.mode}
    payload.update(result.as_dict())
    _emit_json(payload, args, cfg)
    return EXIT_OK


def cmd_monogamy(args) -> int:
    cfg = _config(args)
    series = _run_sweep(cfg)
    m = series.field("M")
    sign = monogamy_sign(series, tol=args.tol)
    steady = steady_state(series, "M")
    _emit_json(
        {
            "state": series.state_name,
            "sign_class": sign.value,
            "m_initial": float(m[0]),
            "m_min": float(np.min(m)),
            "m_max": float(np.max(m)),
            "m_steady": steady,
            "classification_initial": classify_monogamy(float(m[0])),
            "regime": regime(series.params).value,
        },
        args,
        cfg,
    )
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    cfg = _config(args)
    params = _bath(cfg)
    grid = np.linspace(0.0, cfg.t_max, cfg.n_points)
    reference = h_oracle(params, grid)
    std = np.array([h_closed(float(t), params, HForm.STANDARD) for t in grid])
    verbatim = np.array([h_closed(float(t), params, HForm.PAPER_VERBATIM) for t in grid])
    _emit_json(
        {
            "lambda": cfg.lam,
            "delta": cfg.delta,
            "t_max": cfg.t_max,
            "n_points": cfg.n_points,
            "max_abs_err_standard": float(np.max(np.abs(std - reference))),
            "max_abs_err_verbatim": float(np.max(np.abs(verbatim - reference))),
        },
        args,
        cfg,
    )
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; route them to the
    # validation exit code instead.
    def error(self, message):
        raise ValidationError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="experiment config file")
    p.add_argument("--out", type=Path, help="output path (default: config outputs, else stdout)")
    p.add_argument("--form", choices=[f.value for f in HForm], help="closed-form variant override")
    p.add_argument("--t-max", dest="t_max", type=float, help="sweep length in gamma0*t")
    p.add_argument("--points", type=int, help="number of grid points")
    p.add_argument("--mask", help="coupled qubits, e.g. 1,2,3 (or 'none')")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cohdyn", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a sweep and write the CSV time series")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="decay-rate fit of one quantity")
    _add_common(p)
    p.add_argument("--field", default="C_total")
    p.add_argument("--method", choices=["semilog", "envelope"], default="semilog")
    p.add_argument("--window", help="semilog fit window 'lo,hi' (default: full range)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("revivals", help="detect death/revival events of one quantity")
    _add_common(p)
    p.add_argument("--field", default="C_total")
    p.add_argument("--eps", type=float, default=1e-3)
    p.set_defaults(func=cmd_revivals)

    p = sub.add_parser("tuple", help="seven-component coherence tuple of the initial state")
    _add_common(p)
    p.add_argument("--mode", choices=["direct", "probe"], default="direct")
    p.set_defaults(func=cmd_tuple)

    p = sub.add_parser("monogamy", help="monogamy sign classification over a sweep")
    _add_common(p)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_monogamy)

    p = sub.add_parser("oracle-check", help="closed forms vs memory-kernel integration")
    _add_common(p)
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ModelViolationError as exc:
        print(f"model violation: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())
