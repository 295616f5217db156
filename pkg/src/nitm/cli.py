"""Command-line front end.

One subcommand per solver or analysis entry point. Numbers print with
6 decimals in table mode (matching the reference tables) and with full
%.17g precision in CSV and JSON so emitted files re-parse exactly.
Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

import json
import math
from pathlib import Path

import click

from . import analysis, solvers
from .errors import (BlowupError, BracketingError, NitmError,
                     NoConvergenceError, ScalingBreakdownError,
                     UnsupportedVariantError)
from .solvers import NitmConfig

HEADERS = ("star_param", "fp_inf_star", "lambda", "physical_param",
           "f0", "fp0", "fpp0")

_FORMATS = ("table", "csv", "json")

_CONFIG_KEYS = ("step", "boundaries", "lambda_tol", "sign", "format",
                "out", "profile")

_DEFAULTS = {"step": 0.01, "lambda_tol": 1e-6, "sign": 1.0, "format": "table"}


def _parse_float(text, name: str) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise click.UsageError(f"{name} must be a number, got {text!r}")
    if not math.isfinite(value):
        raise click.UsageError(f"{name} must be finite, got {text!r}")
    return value


def _parse_sign(value, name: str = "--sign") -> float:
    sign = _parse_float(value, name)
    if sign not in (1.0, -1.0):
        raise click.UsageError(f"{name} must be +1 or -1, got {value!r}")
    return sign


def _parse_boundaries(text) -> tuple[float, ...]:
    parts = [p for p in str(text).split(",") if p.strip()]
    if not parts:
        raise click.UsageError("--boundaries needs at least one value")
    return tuple(_parse_float(p, "--boundaries") for p in parts)


def _parse_values(text) -> list[float]:
    """Explicit comma list (0,0.5,1) or linspace shorthand (lo:hi:count)."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise click.UsageError(f"range syntax is lo:hi:count, got {text!r}")
        lo = _parse_float(parts[0], "--values")
        hi = _parse_float(parts[1], "--values")
        try:
            count = int(parts[2])
        except ValueError:
            raise click.UsageError(f"range count must be an integer, got {parts[2]!r}")
        if count < 2 or hi <= lo:
            raise click.UsageError(f"range needs lo < hi and count >= 2, got {text!r}")
        span = hi - lo
        return [lo + span * i / (count - 1) for i in range(count)]
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise click.UsageError("--values needs at least one value")
    return [_parse_float(p, "--values") for p in parts]


def _load_config_file(path: str) -> dict:
    data = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(f"config line {raw!r} is not key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise click.UsageError(f"unknown config key {key!r}")
        data[key] = value
    return data


class Settings:
    """Merged run configuration: flags override the config file."""

    _FLAG_NAMES = {"format": "fmt"}

    def __init__(self, file_cfg: dict, flags: dict):
        def pick(key):
            flag = flags.get(self._FLAG_NAMES.get(key, key))
            return flag if flag is not None else file_cfg.get(key)

        step = pick("step")
        self.step = _DEFAULTS["step"] if step is None else _parse_float(step, "--step")
        if self.step <= 0.0:
            raise click.UsageError(f"--step must be positive, got {self.step}")
        tol = pick("lambda_tol")
        self.lambda_tol = (_DEFAULTS["lambda_tol"] if tol is None
                           else _parse_float(tol, "--lambda-tol"))
        if self.lambda_tol <= 0.0:
            raise click.UsageError(f"--lambda-tol must be positive, got {self.lambda_tol}")
        boundaries = pick("boundaries")
        self.boundaries = None if boundaries is None else _parse_boundaries(boundaries)
        sign = pick("sign")
        self.sign = _DEFAULTS["sign"] if sign is None else _parse_sign(sign)
        fmt = pick("format")
        self.fmt = _DEFAULTS["format"] if fmt is None else str(fmt)
        if self.fmt not in _FORMATS:
            raise click.UsageError(f"--format must be one of {_FORMATS}, got {self.fmt!r}")
        self.out = pick("out")
        self.profile = pick("profile")

    def nitm_config(self, boundaries=None) -> NitmConfig:
        schedule = boundaries
        if schedule is None:
            schedule = self.boundaries
        if schedule is None:
            schedule = solvers.DEFAULT_SCHEDULE
        try:
            return NitmConfig(step=self.step, boundary_schedule=schedule,
                              lambda_tol=self.lambda_tol)
        except ValueError as exc:
            raise click.UsageError(str(exc))


def _run_options(fn):
    for option in reversed((
            click.option("--step", default=None, help="Grid step (default 0.01)."),
            click.option("--boundaries", default=None,
                         help="Comma-separated truncated-boundary schedule."),
            click.option("--lambda-tol", "lambda_tol", default=None,
                         help="Agreement tolerance on successive lambda values."),
            click.option("--format", "fmt", default=None,
                         type=click.Choice(_FORMATS),
                         help="Output format (default table)."),
            click.option("--out", default=None, type=click.Path(),
                         help="Write the report here instead of stdout."),
            click.option("--profile", default=None, type=click.Path(),
                         help="Write the rescaled profile as CSV (eta,f,fp,fpp)."),
    )):
        fn = option(fn)
    return fn


def _settings(ctx, **flags) -> Settings:
    return Settings(ctx.obj or {}, flags)


def _reason(exc: NitmError) -> str:
    if isinstance(exc, BlowupError):
        return f"integration blowup at eta {exc.eta:.4g}"
    if isinstance(exc, ScalingBreakdownError):
        return "scaling breakdown"
    if isinstance(exc, NoConvergenceError):
        return "no convergence"
    if isinstance(exc, BracketingError):
        return "bracketing failure"
    if isinstance(exc, UnsupportedVariantError):
        return "unsupported variant"
    return str(exc).replace(",", ";")


def _row_from_result(star, res) -> tuple:
    return (star, res.fp_inf_star, res.lam, res.physical_param,
            res.f0, res.fp0, res.fpp0)


def _fmt_table_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, str):
        return value
    if value != 0.0 and abs(value) < 1e-4:
        return f"{value:.6e}"
    return f"{value:.6f}"


def _fmt_full(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return "%.17g" % value


def _cells(row) -> list:
    """Row tuple -> one cell per header, expanding an error row."""
    if len(row) == 2 and isinstance(row[1], NitmError):
        reason = f"ERROR({_reason(row[1])})"
        return [row[0]] + [reason] * (len(HEADERS) - 1)
    return list(row)


def _render_table(rows) -> str:
    grid = [list(HEADERS)] + [[_fmt_table_value(c) if not isinstance(c, str) else c
                               for c in _cells(r)] for r in rows]
    widths = [max(len(line[i]) for line in grid) for i in range(len(HEADERS))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(line, widths))
             for line in grid]
    return "\n".join(lines)


def _render_csv(rows) -> str:
    lines = [",".join(HEADERS)]
    for row in rows:
        lines.append(",".join(_fmt_full(c) for c in _cells(row)))
    return "\n".join(lines)


def _json_object(row) -> dict:
    if len(row) == 2 and isinstance(row[1], NitmError):
        return {"star_param": row[0], "error": _reason(row[1])}
    return dict(zip(HEADERS, row))


def _render_json(rows, single: bool) -> str:
    if single:
        return json.dumps(_json_object(rows[0]), indent=2)
    return json.dumps([_json_object(r) for r in rows], indent=2)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)


def _emit_rows(rows, st: Settings, single: bool, preamble: str = "") -> None:
    if st.fmt == "csv":
        text = _render_csv(rows)
    elif st.fmt == "json":
        text = _render_json(rows, single)
    else:
        text = _render_table(rows)
        if preamble:
            text = preamble + "\n" + text
    _emit(text, st.out)


def _write_profile(table, path) -> None:
    lines = ["eta,f,fp,fpp"]
    for eta, f, fp, fpp in zip(table.etas(), table.f, table.fp, table.fpp):
        lines.append(",".join("%.17g" % v for v in (eta, f, fp, fpp)))
    Path(path).write_text("\n".join(lines) + "\n")


@click.group()
@click.option("--config", "config_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="key=value defaults file; flags override it.")
@click.pass_context
def cli(ctx, config_path):
    """Non-iterative transformation methods for boundary-layer problems."""
    ctx.obj = _load_config_file(config_path) if config_path else {}


@cli.command()
@_run_options
@click.option("--sign", default=None, help="Seeded f''*(0), +1 or -1.")
@click.pass_context
def blasius(ctx, sign, **flags):
    """Classic Blasius via the Topfer transformation.

    With --boundaries, solves each listed boundary as fixed and reports
    its shear; otherwise walks the default schedule to lambda agreement.
    """
    st = _settings(ctx, **flags)
    p = _parse_sign(sign) if sign is not None else st.sign
    spec = solvers.classic_problem(p=p)

    report_lines = []
    if st.boundaries is not None:
        results = [solvers.solve_auxiliary(spec, st.nitm_config((b,)))
                   for b in st.boundaries]
        for b, res in zip(st.boundaries, results):
            report_lines.append(f"boundary {b:g}: shear {res.fpp0:.9f}")
        final = results[-1]
    else:
        final = solvers.solve_auxiliary(spec, st.nitm_config())
        for b in solvers.DEFAULT_SCHEDULE:
            if b > final.eta_inf_star:
                break
            res = solvers.solve_auxiliary(spec, st.nitm_config((b,)))
            report_lines.append(f"boundary {b:g}: shear {res.fpp0:.9f}")
        report_lines.append(f"accepted boundary {final.eta_inf_star:g}: "
                            f"shear {final.fpp0:.9f}")
    _emit_rows([_row_from_result(None, final)], st, single=True,
               preamble="\n".join(report_lines))
    if st.profile:
        _write_profile(final.table, st.profile)
    return 0


@cli.command()
@_run_options
@click.option("--problem", required=True,
              type=click.Choice(("moving-wall", "slip", "gasification")))
@click.option("--values", "values_text", required=True,
              help="Star values: comma list or lo:hi:count.")
@click.option("--sign", default=None, help="Seeded f''*(0), +1 or -1.")
@click.pass_context
def sweep(ctx, problem, values_text, sign, **flags):
    """Solve one row per star value, like the reference tables."""
    st = _settings(ctx, **flags)
    if st.profile:
        raise click.UsageError("--profile applies to single solves, not sweeps")
    values = _parse_values(values_text)
    sign_value = _parse_sign(sign) if sign is not None else st.sign
    rows = solvers.sweep(problem, values, sign_value, st.nitm_config())
    out_rows = []
    succeeded = 0
    for star, row in zip(values, rows):
        if isinstance(row, NitmError):
            out_rows.append((star, row))
        else:
            out_rows.append(_row_from_result(star, row))
            succeeded += 1
    _emit_rows(out_rows, st, single=False)
    return 0 if succeeded else 2


def _single_solve(ctx, variant, star, sign, flags):
    st = _settings(ctx, **flags)
    sign_value = _parse_sign(sign) if sign is not None else st.sign
    star_value = _parse_float(star, "star parameter")
    res = solvers.solve_variant(variant, star_value, sign_value, st.nitm_config())
    _emit_rows([_row_from_result(star_value, res)], st, single=True)
    if st.profile:
        _write_profile(res.table, st.profile)
    return 0


@cli.command("moving-wall")
@_run_options
@click.argument("b_star")
@click.option("--sign", default=None, help="Seeded f''*(0), +1 or -1.")
@click.pass_context
def moving_wall(ctx, b_star, sign, **flags):
    """Moving-wall solve for one b*."""
    return _single_solve(ctx, "moving-wall", b_star, sign, flags)


@cli.command()
@_run_options
@click.argument("c_star")
@click.pass_context
def slip(ctx, c_star, **flags):
    """Slip-flow solve for one c*."""
    return _single_solve(ctx, "slip", c_star, None, flags)


@cli.command()
@_run_options
@click.argument("s_star")
@click.pass_context
def gasification(ctx, s_star, **flags):
    """Surface-gasification solve for one s*."""
    return _single_solve(ctx, "gasification", s_star, None, flags)


@cli.command("critical-b")
@_run_options
@click.option("--scan-lo", default=None, help="Most negative scanned b* (default -5).")
@click.option("--scan-hi", default=None, help="Least negative scanned b* (default -1e-3).")
@click.option("--scan-points", default=None, help="Scan resolution (default 200).")
@click.option("--json", "as_json", is_flag=True, help="Shorthand for --format json.")
@click.pass_context
def critical_b(ctx, scan_lo, scan_hi, scan_points, as_json, **flags):
    """Most negative physical b on the plus branch."""
    st = _settings(ctx, **flags)
    lo = -5.0 if scan_lo is None else _parse_float(scan_lo, "--scan-lo")
    hi = -1e-3 if scan_hi is None else _parse_float(scan_hi, "--scan-hi")
    points = 200
    if scan_points is not None:
        try:
            points = int(scan_points)
        except ValueError:
            raise click.UsageError(f"--scan-points must be an integer, got {scan_points!r}")
    if not (lo < hi < 0.0) or points < 3:
        raise click.UsageError(
            f"scan needs scan_lo < scan_hi < 0 and at least 3 points, "
            f"got ({lo}, {hi}) with {points}"
        )
    result = solvers.find_critical_b(st.nitm_config(), scan_lo=lo, scan_hi=hi,
                                     scan_points=points)
    if as_json or st.fmt == "json":
        text = json.dumps({"b_c": result.b_c, "b_star": result.b_star}, indent=2)
    elif st.fmt == "csv":
        text = "b_c,b_star\n" + ",".join(
            "%.17g" % v for v in (result.b_c, result.b_star))
    else:
        text = (f"b_c = {result.b_c:.6f}\n"
                f"b_star = {result.b_star:.6f}")
    _emit(text, st.out)
    return 0


@cli.command()
@_run_options
@click.option("--problem", required=True,
              type=click.Choice(("moving-wall", "slip", "gasification")))
@click.option("--b", "b_target", default=None, help="Target moving-wall b.")
@click.option("--c", "c_target", default=None, help="Target slip c.")
@click.option("--s", "s_target", default=None, help="Target gasification s.")
@click.option("--sign", default=None, help="Seeded f''*(0), +1 or -1.")
@click.option("--bracket", default=None, help="Star bracket as lo,hi.")
@click.pass_context
def target(ctx, problem, b_target, c_target, s_target, sign, bracket, **flags):
    """Find the star value whose physical parameter hits a target."""
    st = _settings(ctx, **flags)
    sign_value = _parse_sign(sign) if sign is not None else st.sign
    by_flag = {"moving-wall": b_target, "slip": c_target, "gasification": s_target}
    given = [(k, v) for k, v in (("--b", b_target), ("--c", c_target),
                                 ("--s", s_target)) if v is not None]
    if len(given) != 1:
        raise click.UsageError("pass exactly one of --b, --c, --s")
    if by_flag[problem] is None:
        raise click.UsageError(
            f"{given[0][0]} does not match --problem {problem}"
        )
    target_value = _parse_float(given[0][1], given[0][0])
    bracket_pair = None
    if bracket is not None:
        parts = str(bracket).split(",")
        if len(parts) != 2:
            raise click.UsageError(f"--bracket must be lo,hi, got {bracket!r}")
        bracket_pair = (_parse_float(parts[0], "--bracket"),
                        _parse_float(parts[1], "--bracket"))
    res = solvers.find_star_for_target(problem, target_value, sign_value,
                                       st.nitm_config(), bracket=bracket_pair)
    star = _star_of(res, problem)
    _emit_rows([_row_from_result(star, res)], st, single=True)
    if st.profile:
        _write_profile(res.table, st.profile)
    return 0


def _star_of(res, variant: str) -> float:
    k = solvers.PARAM_EXPONENT[variant]
    return res.physical_param * res.lam ** k


@cli.command("series-check")
@click.option("--eta-max", default=None, help="Comparison window end (default 0.5).")
@click.option("--step", default=None, help="Fine comparison step (default 1e-4).")
@click.option("--format", "fmt", default=None, type=click.Choice(_FORMATS))
@click.option("--out", default=None, type=click.Path())
@click.pass_context
def series_check(ctx, eta_max, step, fmt, out):
    """Compare the wall series against a fine star-IVP solve."""
    file_cfg = ctx.obj or {}
    eta_max_value = 0.5 if eta_max is None else _parse_float(eta_max, "--eta-max")
    step_value = 1e-4 if step is None else _parse_float(step, "--step")
    if eta_max_value <= 0 or step_value <= 0 or eta_max_value < 10 * step_value:
        raise click.UsageError("need 0 < step << eta-max")
    fmt_value = fmt or file_cfg.get("format", "table")
    deviation, order = analysis.series_deviation(eta_max_value, step_value)
    ok = order >= 13.0
    if fmt_value == "json":
        text = json.dumps({"max_deviation": deviation, "fitted_order": order,
                           "order_ok": ok}, indent=2)
    else:
        text = (f"max deviation = {deviation:.3e}\n"
                f"fitted order = {order:.2f}\n"
                f"order >= 13: {'yes' if ok else 'NO'}")
    _emit(text, out or file_cfg.get("out"))
    return 0 if ok else 2


@cli.command()
@click.option("--M", "m_value", required=True, help="Truncated boundary.")
@click.option("--format", "fmt", default=None, type=click.Choice(_FORMATS))
@click.option("--out", default=None, type=click.Path())
@click.pass_context
def rubel(ctx, m_value, fmt, out):
    """Truncation error bound at M, validated against the 2M solution."""
    file_cfg = ctx.obj or {}
    M = _parse_float(m_value, "--M")
    if M < 1.0:
        raise click.UsageError(f"--M must be at least 1, got {M}")
    fmt_value = fmt or file_cfg.get("format", "table")
    sol = analysis.truncated_solution(M)
    sol2 = analysis.truncated_solution(2.0 * M)
    bound = analysis.rubel_bound(sol.table)
    n = sol.table.grid.nodes
    empirical = float(abs(sol2.table.f[:n] - sol.table.f[:n]).max())
    valid = empirical <= bound.bound
    if fmt_value == "json":
        text = json.dumps({
            "M": M, "t_star": sol.t_star, "lambda": sol.lam,
            "bound": bound.bound, "empirical_max_error": empirical,
            "valid": valid,
        }, indent=2)
    else:
        text = (f"M = {M:g}\n"
                f"t_star = {sol.t_star:.9f}\n"
                f"lambda = {sol.lam:.9f}\n"
                f"bound = {bound.bound:.6e}\n"
                f"empirical max error = {empirical:.6e}\n"
                f"{'VALID' if valid else 'INVALID'} (error <= bound: "
                f"{'yes' if valid else 'no'})")
    _emit(text, out or file_cfg.get("out"))
    return 0 if valid else 2


def main(argv=None) -> int:
    """Entry point with the package's exit-code contract."""
    try:
        rv = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except NitmError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return rv if isinstance(rv, int) else 0
