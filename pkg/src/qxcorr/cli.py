"""Command-line front end: point evaluation, sweeps, transition finding, selftest.

Exit codes: 0 success, 2 usage, 3 configuration, 4 domain validation,
5 I/O failure, 6 selftest deviation above tolerance.  All output formatting is
locale-independent and byte-reproducible for identical configurations.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import SWEEP_VARIABLES, SweepSpec, SweepRow, find_transitions, sweep
from .correlations import lqfi_thermal, lqu_thermal, lqu_x, lqfi_x
from .limits import IndeterminateZeroTemperatureLimit, zero_t_limit
from .oracle import lambda_max_closed, oracle_m_matrix, oracle_w_matrix, random_x_state
from .xmodel import HamiltonianParams, XStateParams, derived_radii

__all__ = ["RunConfig", "ConfigError", "parse_config", "run", "main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_DOMAIN = 4
EXIT_IO = 5
EXIT_SELFTEST = 6

#: closed thermal forms divide by T; queries below this floor must use --T0
TEMPERATURE_FLOOR = 1e-6

SELFTEST_STATES = 100
SELFTEST_TOL = 1e-9
DEFAULT_SEED = 20240817

_MODES = ("eval", "sweep", "transitions", "selftest")
_NUMBER_KEYS = ("Jx", "Jy", "Jz", "Dz", "Gz", "B1", "B2", "r1", "r2", "T", "from", "to")
_INT_KEYS = ("points", "jobs", "seed")
_BOOL_KEYS = ("T0", "plot-script")
_STRING_KEYS = ("mode", "var", "out", "format")
_ALL_KEYS = set(_NUMBER_KEYS) | set(_INT_KEYS) | set(_BOOL_KEYS) | set(_STRING_KEYS)

_FULL_ONLY = ("Jx", "Jy", "Dz", "Gz")
_REDUCED_ONLY = ("r1", "r2")


class ConfigError(Exception):
    """Invalid or conflicting configuration (exit code 3)."""


@dataclass(frozen=True)
class RunConfig:
    mode: str
    params: XStateParams
    zero_t: bool
    spec: SweepSpec | None
    out: str | None
    fmt: str
    plot_script: bool
    jobs: int
    seed: int


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qxcorr",
        description=(
            "Local quantum Fisher information and local quantum uncertainty for "
            "thermal two-qubit X states."
        ),
    )
    ap.add_argument("--mode", choices=_MODES, default=None)
    ap.add_argument("--config", default=None, metavar="FILE", help="key = value file; flags override")
    for name in ("Jx", "Jy", "Jz", "Dz", "Gz", "B1", "B2", "r1", "r2", "T"):
        ap.add_argument(f"--{name}", type=float, default=None)
    ap.add_argument("--T0", action="store_true", default=None, help="zero-temperature limits (eval mode)")
    ap.add_argument("--var", choices=list(SWEEP_VARIABLES), default=None)
    ap.add_argument("--from", dest="start", type=float, default=None)
    ap.add_argument("--to", dest="stop", type=float, default=None)
    ap.add_argument("--points", type=int, default=None)
    ap.add_argument("--out", default=None)
    ap.add_argument("--format", choices=("csv", "tsv"), default=None)
    ap.add_argument("--plot-script", action="store_true", default=None, dest="plot_script")
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    return ap


def _read_config_file(path: str) -> dict:
    values: dict = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _NUMBER_KEYS:
            try:
                values[key] = float(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: malformed number {value!r} for {key}") from exc
        elif key in _INT_KEYS:
            try:
                values[key] = int(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: malformed integer {value!r} for {key}") from exc
        elif key in _BOOL_KEYS:
            low = value.lower()
            if low not in ("true", "false"):
                raise ConfigError(f"{path}:{lineno}: expected true/false for {key}, got {value!r}")
            values[key] = low == "true"
        else:
            values[key] = value
    return values


def _merged_value(args: argparse.Namespace, file_values: dict, key: str, attr: str | None = None):
    """Command-line flags override config-file values."""
    flag = getattr(args, attr if attr is not None else key)
    if flag is not None:
        return flag
    return file_values.get(key)


class DomainError(ValueError):
    """Parameter outside its physical domain (exit code 4)."""


def parse_config(argv: list[str] | None = None) -> RunConfig:
    """Merge flags and config file into a validated RunConfig.

    Raises SystemExit(2) for usage problems (argparse), ConfigError for
    configuration problems, DomainError for out-of-domain values.
    """
    ap = _build_parser()
    args = ap.parse_args(argv)
    file_values = _read_config_file(args.config) if args.config else {}

    def get(key: str, attr: str | None = None):
        return _merged_value(args, file_values, key, attr)

    mode = get("mode")
    if mode is None:
        ap.print_usage(sys.stderr)
        print("qxcorr: error: --mode is required", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    if mode not in _MODES:
        raise ConfigError(f"unknown mode {mode!r}")

    full_given = [k for k in _FULL_ONLY if get(k) is not None]
    reduced_given = [k for k in _REDUCED_ONLY if get(k) is not None]
    if full_given and reduced_given:
        raise ConfigError(
            f"conflicting parameter sets: full-Hamiltonian keys {full_given} "
            f"cannot be combined with reduced keys {reduced_given}"
        )

    zero_t = bool(get("T0", "T0"))
    if zero_t and mode != "eval":
        raise ConfigError("--T0 applies to eval mode only")
    t_value = get("T")
    if t_value is None:
        if mode == "eval" and not zero_t:
            raise ConfigError("eval mode needs --T (or --T0)")
        variable = get("var")
        if mode in ("sweep", "transitions") and variable is not None and variable != "T":
            raise ConfigError(f"sweeping {variable} needs a fixed --T")
        t_value = 1.0  # placeholder; unused by --T0 and replaced by T sweeps
    elif t_value < TEMPERATURE_FLOOR:
        raise DomainError(
            f"temperature {t_value!r} is below the {TEMPERATURE_FLOOR} floor; "
            "use --T0 for the zero-temperature limit"
        )

    def num(key: str, default: float = 0.0) -> float:
        value = get(key)
        return default if value is None else float(value)

    if full_given:
        h = HamiltonianParams(
            Jx=num("Jx"), Jy=num("Jy"), Jz=num("Jz"),
            Dz=num("Dz"), Gz=num("Gz"), B1=num("B1"), B2=num("B2"),
        )
        rad = derived_radii(h)
        r1, r2 = rad.r1, rad.r2
        jz, b1, b2 = h.Jz, h.B1, h.B2
    else:
        jz, r1, r2, b1, b2 = num("Jz"), num("r1"), num("r2"), num("B1"), num("B2")

    try:
        params = XStateParams(Jz=jz, r1=r1, r2=r2, B1=b1, B2=b2, T=t_value)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc

    spec = None
    if mode in ("sweep", "transitions"):
        variable = get("var")
        if variable is None:
            raise ConfigError(f"{mode} mode needs --var")
        start = get("from", "start")
        stop = get("to", "stop")
        if start is None or stop is None:
            raise ConfigError(f"{mode} mode needs --from and --to")
        points = get("points")
        if points is None:
            points = 300 if mode == "sweep" else 1000
        if variable == "T" and start is not None and start < TEMPERATURE_FLOOR:
            raise DomainError(f"temperature sweep start {start!r} is below the {TEMPERATURE_FLOOR} floor")
        try:
            spec = SweepSpec(base=params, variable=variable, start=float(start), stop=float(stop), points=int(points))
        except ValueError as exc:
            raise DomainError(str(exc)) from exc

    fmt = get("format") or "csv"
    out = get("out")
    plot_script = bool(get("plot-script", "plot_script"))
    if plot_script and mode != "sweep":
        raise ConfigError("--plot-script applies to sweep mode only")
    if plot_script and out is None:
        raise ConfigError("--plot-script needs --out to know which file to reference")
    jobs = get("jobs")
    jobs = 1 if jobs is None else int(jobs)
    if jobs < 1:
        raise DomainError(f"--jobs must be at least 1, got {jobs}")
    seed = get("seed")
    seed = DEFAULT_SEED if seed is None else int(seed)

    return RunConfig(
        mode=mode, params=params, zero_t=zero_t, spec=spec,
        out=out, fmt=fmt, plot_script=plot_script, jobs=jobs, seed=seed,
    )


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _header(variable: str, sep: str) -> str:
    return sep.join(
        (variable, "F0", "F1", "F", "F_branch", "U0", "U1", "U", "U_branch")
    )


def _row_line(row: SweepRow, sep: str) -> str:
    return sep.join(
        (
            _fmt(row.x),
            _fmt(row.f0), _fmt(row.f1), _fmt(row.f), row.f_branch,
            _fmt(row.u0), _fmt(row.u1), _fmt(row.u), row.u_branch,
        )
    )


def _plot_script_text(csv_name: str, variable: str, sep: str) -> str:
    separator = "," if sep == "," else "\\t"
    return (
        "# gnuplot script emitted alongside the sweep output\n"
        f'set datafile separator "{separator}"\n'
        f'set xlabel "{variable}"\n'
        'set ylabel "correlation"\n'
        "set key left bottom\n"
        "plot \\\n"
        f'    "{csv_name}" using 1:4 with lines title "LQFI", \\\n'
        f'    "{csv_name}" using 1:8 with lines title "LQU"\n'
    )


def _run_eval(config: RunConfig) -> int:
    if config.zero_t:
        print("branch,value")
        for which in ("F0", "U0", "U1"):
            try:
                print(f"{which},{_fmt(zero_t_limit(config.params, which))}")
            except IndeterminateZeroTemperatureLimit:
                print(f"{which},indeterminate")
        return EXIT_OK
    sep = "," if config.fmt == "csv" else "\t"
    f = lqfi_thermal(config.params)
    u = lqu_thermal(config.params)
    row = SweepRow(
        x=config.params.T,
        f0=f.branch0, f1=f.branch1, f=f.value, f_branch=f.active,
        u0=u.branch0, u1=u.branch1, u=u.value, u_branch=u.active,
    )
    print(_header("T", sep))
    print(_row_line(row, sep))
    return EXIT_OK


def _run_sweep(config: RunConfig) -> int:
    sep = "," if config.fmt == "csv" else "\t"
    rows = sweep(config.spec, jobs=config.jobs)
    lines = [_header(config.spec.variable, sep)]
    lines.extend(_row_line(r, sep) for r in rows)
    text = "\n".join(lines) + "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        try:
            Path(config.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"qxcorr: cannot write {config.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        if config.plot_script:
            script_path = Path(str(config.out) + ".gp")
            try:
                script_path.write_text(
                    _plot_script_text(Path(config.out).name, config.spec.variable, sep),
                    encoding="utf-8",
                )
            except OSError as exc:
                print(f"qxcorr: cannot write {script_path}: {exc}", file=sys.stderr)
                return EXIT_IO
    return EXIT_OK


def _run_transitions(config: RunConfig) -> int:
    points = find_transitions(config.spec, jobs=config.jobs)
    for measure in ("LQFI", "LQU"):
        for tp in points:
            if tp.measure == measure:
                print(f"{measure} {_fmt(tp.location)} {tp.residual:.3e}")
    if not points:
        print("no transitions found")
    return EXIT_OK


def _run_selftest(config: RunConfig) -> int:
    rng = np.random.default_rng(config.seed)
    worst = 0.0
    for _ in range(SELFTEST_STATES):
        x = random_x_state(rng)
        rho = x.as_matrix()
        closed_f = lqfi_x(x).value
        closed_u = lqu_x(x).value
        oracle_f = 1.0 - lambda_max_closed(oracle_m_matrix(rho))
        oracle_u = 1.0 - lambda_max_closed(oracle_w_matrix(rho))
        worst = max(worst, abs(closed_f - oracle_f), abs(closed_u - oracle_u))
    print(f"selftest: {SELFTEST_STATES} states, max |closed - oracle| = {worst:.3e}")
    if worst > SELFTEST_TOL:
        print(f"selftest: FAILED (tolerance {SELFTEST_TOL:.1e})", file=sys.stderr)
        return EXIT_SELFTEST
    print("selftest: ok")
    return EXIT_OK


def run(config: RunConfig) -> int:
    if config.mode == "eval":
        return _run_eval(config)
    if config.mode == "sweep":
        return _run_sweep(config)
    if config.mode == "transitions":
        return _run_transitions(config)
    return _run_selftest(config)


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return code
    except ConfigError as exc:
        print(f"qxcorr: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"qxcorr: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        return run(config)
    except ValueError as exc:
        print(f"qxcorr: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"qxcorr: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
