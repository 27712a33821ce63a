"""Command-line surface: parameter intake, computation and verification
subcommands, canonical text output and a stable JSON schema.

Exit codes: 0 all passed, 1 a verification failed, 2 usage or parameter
error.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import click

from . import checks, contour, degree, model, mu
from .qform import FactoredForm


# ---------------------------------------------------------------------------
# Parsing and output helpers
# ---------------------------------------------------------------------------

def _parse_q(text: str | None):
    if text is None or text == "symbolic":
        return None
    try:
        return Fraction(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise click.UsageError(f"cannot parse q value {text!r}")


def _parse_deg_sigma(text: str | None):
    if text is None or text == "symbolic":
        return None
    try:
        return Fraction(text)
    except ValueError:
        raise click.UsageError(f"cannot parse deg-sigma value {text!r}")


def _load_config(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(f"config line {line!r} is not key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _require(config: dict[str, str], flag_value, key: str, cast=int):
    """Flag value, falling back to the config file; missing is a usage error."""
    if flag_value is not None:
        return flag_value
    if key in config:
        try:
            return cast(config[key])
        except ValueError:
            raise click.UsageError(f"config value {key}={config[key]!r} is invalid")
    raise click.UsageError(f"missing required parameter --{key.replace('_', '-')}")


def _validated(m, d, t, a, q=None, deg_sigma=None) -> model.SetupParams:
    try:
        return model.validate(m, d, t, a, q=q, deg_sigma=deg_sigma)
    except model.InvalidParamsError as exc:
        raise click.UsageError(str(exc))


def emit_json(obj) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format(obj, ".17g")
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    if isinstance(obj, dict):
        body = ",".join(f"{emit_json(str(k))}:{emit_json(v)}" for k, v in obj.items())
        return "{" + body + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(emit_json(v) for v in obj) + "]"
    raise TypeError(f"cannot emit {type(obj).__name__}")


def _params_doc(p: model.SetupParams) -> dict:
    q = p.q
    if isinstance(q, Fraction):
        q = str(q)
    return {"m": p.m, "d": p.d, "t": p.t, "a": p.a,
            "q": q if q is not None else "symbolic"}


def _result_doc(factored: FactoredForm, rendered: str, numeric) -> dict:
    return {"factored": rendered, "log_grade": factored.log_grade,
            "numeric": float(numeric) if numeric is not None else None}


def _checks_doc(reports) -> list[dict]:
    return [{"name": r.name, "status": r.status, "detail": r.detail} for r in reports]


def _print_reports(reports) -> None:
    for r in reports:
        line = f"[{r.status.upper()}] {r.name} ({r.elapsed_ms} ms)"
        if r.status != "pass":
            line += f"  detail: {r.detail}"
        click.echo(line)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

@click.group()
@click.version_option()
def main():
    """Exact formal-degree engine for discrete series built from a cuspidal block."""


@main.command("degree")
@click.option("--m", type=int, default=None, help="cuspidal block size")
@click.option("--d", type=int, default=None, help="number of blocks")
@click.option("--t", type=int, default=None, help="torsion number of the cuspidal")
@click.option("--a", type=int, default=None, help="pair conductor")
@click.option("--q", "q_text", default=None, help="'symbolic' (default), a rational, or a float > 1")
@click.option("--deg-sigma", "deg_sigma_text", default=None,
              help="'symbolic' (default) or a positive rational")
@click.option("--config", "config_path", default=None, help="key=value parameter file")
@click.option("--json", "as_json", is_flag=True, help="emit JSON")
def cmd_degree(m, d, t, a, q_text, deg_sigma_text, config_path, as_json):
    """Print the formal degree in canonical factored form."""
    config = _load_config(config_path)
    p = _validated(_require(config, m, "m"), _require(config, d, "d"),
                   _require(config, t, "t"), _require(config, a, "a"),
                   q=_parse_q(q_text if q_text is not None else config.get("q")),
                   deg_sigma=_parse_deg_sigma(
                       deg_sigma_text if deg_sigma_text is not None else config.get("deg_sigma")))
    result = degree.closed_form_degree(p)
    if as_json:
        doc = {"params": _params_doc(p),
               "result": _result_doc(result.factored, result.render(), result.numeric),
               "checks": []}
        click.echo(emit_json(doc))
    else:
        click.echo(result.render())
        if result.numeric is not None:
            click.echo(f"numeric: {format(result.numeric, '.17g')}")


@main.command("mu")
@click.option("--d", type=int, default=None)
@click.option("--t", type=int, default=None)
@click.option("--a", type=int, default=None)
@click.option("--level", type=int, default=None,
              help="print the closed level ratio at this level instead of the full product")
@click.option("--config", "config_path", default=None)
@click.option("--json", "as_json", is_flag=True)
def cmd_mu(d, t, a, level, config_path, as_json):
    """Print the mu-function (or one closed level ratio) canonically."""
    config = _load_config(config_path)
    d = _require(config, d, "d")
    t = _require(config, t, "t")
    a = _require(config, a, "a")
    p = _validated(t, d, t, a)
    try:
        form = mu.mu_on_z(p) if level is None else mu.mu_level_ratio_closed(p, level)
    except model.OutOfRangeError as exc:
        raise click.UsageError(str(exc))
    if as_json:
        doc = {"params": _params_doc(p),
               "result": _result_doc(form, form.render(), None),
               "checks": []}
        click.echo(emit_json(doc))
    else:
        click.echo(form.render())


@main.command("contour")
@click.option("--d", type=int, default=None)
@click.option("--q", type=float, default=None)
@click.option("--t", type=int, default=None)
@click.option("--m", type=int, default=None)
@click.option("--a", type=int, default=None)
@click.option("--nodes", type=int, default=256, show_default=True)
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--config", "config_path", default=None)
@click.option("--json", "as_json", is_flag=True)
def cmd_contour(d, q, t, m, a, nodes, tol, config_path, as_json):
    """Check the contour integral against the residue-term sum numerically."""
    config = _load_config(config_path)
    d = _require(config, d, "d")
    q = _require(config, q, "q", cast=float)
    t = _require(config, t, "t")
    m = _require(config, m, "m")
    a = _require(config, a, "a")
    if q <= 1:
        raise click.UsageError(f"q must exceed 1, got {q}")
    p = _validated(m, d, t, a, q=q)
    try:
        spec = contour.QuadratureSpec(q=q, nodes=nodes, tolerance=tol)
        report = contour.decomposition_report(p, spec)
    except (ValueError, contour.ShiftOnPoleError) as exc:
        raise click.UsageError(str(exc))
    status = "pass" if report.relative_error <= tol else "fail"
    if as_json:
        doc = {"params": _params_doc(p),
               "result": {"lhs": [report.lhs.real, report.lhs.imag],
                          "rhs": [report.rhs.real, report.rhs.imag],
                          "chain_terms": [[z.real, z.imag] for z in report.chain_terms],
                          "offchain_term": [report.offchain_term.real,
                                            report.offchain_term.imag],
                          "relative_error": report.relative_error},
               "checks": _checks_doc(
                   [checks.CheckReport("residue decomposition", status,
                                       f"{report.relative_error:.3e}", 0)])}
        click.echo(emit_json(doc))
    else:
        click.echo(f"lhs  = {report.lhs:.15g}")
        click.echo(f"rhs  = {report.rhs:.15g}")
        for l, term in enumerate(report.chain_terms, start=1):
            click.echo(f"  level {l} term = {term:.15g}")
        if p.d == 3:
            click.echo(f"  off-chain term = {report.offchain_term:.15g}")
        click.echo(f"relative error = {report.relative_error:.3e}  [{status}]")
    if status != "pass":
        sys.exit(1)


_SUITES = {
    "pairing": lambda d_max, m_set, t_set, a_set, fault: checks.pairing_reports(
        d_max=d_max, t_set=t_set),
    "ratio": lambda d_max, m_set, t_set, a_set, fault: checks.ratio_reports(
        d_max=d_max, t_set=t_set, a_set=a_set),
    "residue": lambda d_max, m_set, t_set, a_set, fault: checks.residue_reports(
        d_max=d_max, m_set=m_set, a_set=a_set),
    "theorem": lambda d_max, m_set, t_set, a_set, fault: checks.theorem_reports(
        d_max=d_max, m_set=m_set, a_set=a_set, drop_level_inverse=fault),
}

# the pairing layer is cheap and its guarantee extends further up the tower
_SUITE_DEFAULT_D_MAX = {"pairing": 8}


def _parse_int_set(text: str | None, default: tuple[int, ...],
                   minimum: int = 1) -> tuple[int, ...]:
    if text is None:
        return default
    try:
        values = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise click.UsageError(f"cannot parse integer set {text!r}")
    if not values or any(v < minimum for v in values):
        raise click.UsageError(f"invalid grid set {text!r}")
    return values


@main.command("verify")
@click.argument("kind", type=click.Choice(sorted(_SUITES)))
@click.option("--d-max", type=int, default=None,
              help="largest tower depth (default 6; 8 for pairing)")
@click.option("--m-set", default=None, help="comma-separated block sizes (default 1,2,3,6)")
@click.option("--t-set", default=None, help="comma-separated torsion numbers (default 1,2,3)")
@click.option("--a-set", default=None, help="comma-separated conductors (default 0,1,2)")
@click.option("--drop-level-inverse", is_flag=True, hidden=True,
              help="fault injection: omit the 1/(d-l+1) datum factor")
@click.option("--json", "as_json", is_flag=True)
def cmd_verify(kind, d_max, m_set, t_set, a_set, drop_level_inverse, as_json):
    """Run a symbolic identity suite over a parameter grid."""
    if d_max is None:
        d_max = _SUITE_DEFAULT_D_MAX.get(kind, 6)
    if d_max < 1:
        raise click.UsageError(f"--d-max must be positive, got {d_max}")
    m_values = _parse_int_set(m_set, checks.DEFAULT_M_SET)
    t_values = _parse_int_set(t_set, checks.DEFAULT_T_SET)
    a_values = _parse_int_set(a_set, checks.DEFAULT_A_SET, minimum=0)
    reports = _SUITES[kind](d_max, m_values, t_values, a_values, drop_level_inverse)
    reports = sorted(reports, key=lambda r: r.name)
    if as_json:
        doc = {"params": {"kind": kind, "d_max": d_max},
               "result": None,
               "checks": _checks_doc(reports)}
        click.echo(emit_json(doc))
    else:
        _print_reports(reports)
        n_pass = sum(r.passed for r in reports)
        click.echo(f"{n_pass}/{len(reports)} checks passed")
    if not all(r.passed for r in reports):
        sys.exit(1)


if __name__ == "__main__":
    main()
