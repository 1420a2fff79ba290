"""Command-line front end.

Each command validates its inputs, runs the corresponding library
routine, and reports inputs, outputs, and internal consistency
residuals in one of three formats. Exit codes: 0 success, 1 failed
internal check or unexpected axiom signature, 2 usage error, 3 output
I/O error.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from . import boostlink, galilei, lorentz, velocity
from .minkowski import minkowski_dot

RESIDUAL_LIMIT = 1e-8


def io_options(f):
    f = click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "csv", "text"]),
        default="text",
        show_default=True,
        help="Report format.",
    )(f)
    f = click.option(
        "--out",
        "out_path",
        type=click.Path(dir_okay=False),
        default=None,
        help="Write the report to this file instead of stdout.",
    )(f)
    return f


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, np.ndarray):
        for idx, v in np.ndenumerate(value):
            rows.append(("_".join([prefix, *map(str, idx)]), v))
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}_{i}", v, rows)
    elif isinstance(value, bool):
        rows.append((prefix, int(value)))
    else:
        rows.append((prefix, value))


def _csv_cell(value) -> str:
    if isinstance(value, (np.floating, float)):
        return repr(float(value))
    return str(value)


def _text_value(value) -> str:
    if isinstance(value, (np.floating, float)):
        return f"{float(value):.12g}"
    if isinstance(value, np.ndarray):
        if value.ndim == 1:
            return "[" + ", ".join(f"{float(v):.12g}" for v in value) + "]"
        return "[" + "; ".join(
            "[" + ", ".join(f"{float(v):.12g}" for v in row) + "]" for row in value
        ) + "]"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_text_value(v) for v in value) + "]"
    return str(value)


def render(command: str, inputs: dict, outputs: dict, residuals: dict,
           fmt: str, series: tuple | None = None) -> str:
    """Produce the full report text in the requested format."""
    if fmt == "json":
        payload = {
            "command": command,
            "inputs": {k: _jsonable(v) for k, v in inputs.items()},
            "outputs": {k: _jsonable(v) for k, v in outputs.items()},
            "residuals": {k: _jsonable(v) for k, v in residuals.items()},
        }
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        if series is not None:
            name_a, vals_a, name_b, vals_b = series
            lines = [f"{name_a},{name_b}"]
            lines += [f"{_csv_cell(a)},{_csv_cell(b)}" for a, b in zip(vals_a, vals_b)]
            return "\n".join(lines) + "\n"
        rows: list = []
        for k, v in outputs.items():
            _flatten(k, v, rows)
        for k, v in residuals.items():
            _flatten(f"residual_{k}", v, rows)
        lines = ["key,value"] + [f"{k},{_csv_cell(v)}" for k, v in rows]
        return "\n".join(lines) + "\n"
    # text
    lines = [f"command: {command}"]
    if inputs:
        lines.append("inputs:")
        lines += [f"  {k} = {_text_value(v)}" for k, v in inputs.items()]
    if series is not None:
        name_a, vals_a, name_b, vals_b = series
        lines.append(f"{name_a} {name_b}")
        lines += [f"{_text_value(float(a))} {_text_value(float(b))}"
                  for a, b in zip(vals_a, vals_b)]
    if outputs:
        lines.append("outputs:")
        lines += [f"  {k} = {_text_value(v)}" for k, v in outputs.items()]
    if residuals:
        lines.append("residuals:")
        lines += [f"  {k} = {_text_value(v)}" for k, v in residuals.items()]
    return "\n".join(lines) + "\n"


def deliver(report: str, out_path: str | None) -> None:
    """Write the report to stdout or to --out; I/O trouble exits with 3."""
    if out_path is None:
        click.echo(report, nl=False)
        return
    try:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(report)
    except OSError as exc:
        click.echo(f"error writing {out_path}: {exc}", err=True)
        sys.exit(3)


def enforce_residuals(residuals: dict) -> None:
    """Exit 1 when any numeric residual exceeds the internal limit."""
    worst = max(
        (float(v) for v in residuals.values() if isinstance(v, (int, float, np.floating))),
        default=0.0,
    )
    if worst > RESIDUAL_LIMIT:
        click.echo(f"internal consistency check failed: residual {worst:.3e}", err=True)
        sys.exit(1)


def _rotation_angle_axis(d: np.ndarray) -> tuple[float, np.ndarray]:
    axial = 0.5 * np.array(
        [d[2, 1] - d[1, 2], d[0, 2] - d[2, 0], d[1, 0] - d[0, 1]]
    )
    s = float(np.linalg.norm(axial))
    c = 0.5 * (float(np.trace(d)) - 1.0)
    angle = math.atan2(s, c)
    axis = axial / s if s > 1e-15 else np.zeros(3)
    return angle, axis


def _as_state(values, label: str) -> np.ndarray:
    from .minkowski import state_of_motion

    try:
        return state_of_motion(np.array(values, dtype=float))
    except ValueError as exc:
        raise click.UsageError(f"{label}: {exc}")


@click.group()
def main() -> None:
    """Special-relativistic velocity composition tools."""


@main.command()
@io_options
@click.argument("components", nargs=6, type=float)
def add(components, fmt, out_path):
    """Compose two velocities B1 B2 (three components each)."""
    b1 = np.array(components[:3])
    b2 = np.array(components[3:])
    try:
        total = velocity.einstein_add(b1, b2)
        reversed_total = velocity.einstein_add(b2, b1)
        rot = velocity.thomas_rotation(b1, b2)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    gamma = velocity.gamma_compose(b1, b2)
    speed = float(np.linalg.norm(total))
    form_residual = max(
        float(np.max(np.abs(velocity.einstein_add_projection(b1, b2) - total))),
        float(np.max(np.abs(velocity.einstein_add_gamma_form(b1, b2) - total))),
    )
    gamma_residual = abs(gamma - lorentz.gamma_of_beta(total)) / gamma
    mocanu_residual = float(
        np.linalg.norm(-total - rot.matrix @ velocity.einstein_add(-b2, -b1))
    )
    residuals = {
        "form_agreement": form_residual,
        "gamma_consistency": gamma_residual,
        "mocanu": mocanu_residual,
    }
    report = render(
        "add",
        {"b1": b1, "b2": b2},
        {
            "sum": total,
            "sum_reversed": reversed_total,
            "speed": speed,
            "gamma": gamma,
            "thomas_angle_rad": rot.angle,
            "thomas_angle_deg": math.degrees(rot.angle),
        },
        residuals,
        fmt,
    )
    deliver(report, out_path)
    enforce_residuals(residuals)


@main.command("thomas-max")
@io_options
@click.argument("g1", type=float)
@click.argument("g2", type=float)
def thomas_max(g1, g2, fmt, out_path):
    """Largest Thomas angle attainable at gamma factors G1 G2."""
    try:
        result = velocity.max_thomas_angle(g1, g2)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    closed = velocity.cos_max_thomas_angle(g1, g2)
    residual = abs(math.cos(result.theta_max) - closed)
    report = render(
        "thomas-max",
        {"gamma1": g1, "gamma2": g2},
        {
            "gamma_max": result.gamma_max,
            "phi_max_rad": result.phi_max,
            "phi_max_deg": math.degrees(result.phi_max),
            "theta_max_rad": result.theta_max,
            "theta_max_deg": math.degrees(result.theta_max),
            "cos_theta_max": closed,
            "crosses_right_angle": velocity.crosses_right_angle(g1, g2),
        },
        {"angle_form_agreement": residual},
        fmt,
    )
    deliver(report, out_path)
    enforce_residuals({"angle_form_agreement": residual})


@main.command("boost-link")
@io_options
@click.argument("components", nargs=12, type=float)
def boost_link(components, fmt, out_path):
    """Boost w.r.t. state S taking S1 to S2 (four components each).

    States are normalized to unit Minkowski length; pass any
    future-pointing timelike 4-vectors.
    """
    s = _as_state(components[0:4], "s")
    s1 = _as_state(components[4:8], "s1")
    s2 = _as_state(components[8:12], "s2")
    t = boostlink.state_triple(s, s1, s2)
    b = boostlink.link_boost(t)
    v = boostlink.link_velocity(t)
    g = boostlink.link_gamma(t)
    speed_sq = minkowski_dot(v, v)
    speed = math.sqrt(max(speed_sq, 0.0))
    map_residual = float(np.max(np.abs(b @ t.s1 - t.s2)))
    eta = np.diag([-1.0, 1.0, 1.0, 1.0])
    lorentz_residual = float(np.max(np.abs(b.T @ eta @ b - eta)))
    constructive_residual = float(
        np.max(np.abs(b - boostlink.boost_from_velocity(t.s, v)))
    )
    residuals = {
        "mapping": map_residual,
        "lorentz_membership": lorentz_residual,
        "velocity_route_agreement": constructive_residual,
    }
    report = render(
        "boost-link",
        {"s": t.s, "s1": t.s1, "s2": t.s2},
        {
            "gamma1": t.gamma1,
            "gamma2": t.gamma2,
            "gamma12": t.gamma12,
            "link_gamma": g,
            "link_velocity": v,
            "speed": speed,
            "rapidity": float(np.arctanh(min(speed, 1.0 - 1e-16))),
            "boost": b,
        },
        residuals,
        fmt,
    )
    deliver(report, out_path)
    enforce_residuals(residuals)


@main.command("tilt-scan")
@io_options
@click.argument("gamma12", type=float)
@click.option(
    "--mode",
    type=click.Choice(["gamma_star", "phi"]),
    default="gamma_star",
    show_default=True,
    help="Sweep the symmetric-reference gamma or the viewing angle.",
)
@click.option("-n", "--samples", type=click.IntRange(min=2), default=100,
              show_default=True, help="Number of points on the curve.")
@click.option("--upper", type=float, default=None,
              help="Upper end of the gamma* sweep (default 20x the minimum).")
def tilt_scan(gamma12, fmt, out_path, mode, samples, upper):
    """Linking gamma against reference tilt at fixed GAMMA12.

    With --out, also renders the curve to a PNG next to the data file.
    """
    try:
        params, gammas = boostlink.tilt_scan(gamma12, mode, samples, upper)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    series = ("param", params, "gamma", gammas)
    if out_path is None:
        report = render(
            "tilt-scan",
            {"gamma12": gamma12, "mode": mode, "samples": samples},
            {"param": params, "gamma": gammas},
            {},
            fmt,
            series=series,
        )
        deliver(report, None)
    else:
        # the data file is always the bare CSV series
        csv_report = render("tilt-scan", {}, {}, {}, "csv", series=series)
        deliver(csv_report, out_path)
    if out_path is not None:
        png_path = Path(out_path).with_suffix(".png")
        try:
            import matplotlib

            matplotlib.use("Agg")
            import matplotlib.pyplot as plt

            fig, ax = plt.subplots(figsize=(6.0, 4.0))
            ax.plot(params, gammas)
            ax.set_xlabel("gamma*" if mode == "gamma_star" else "phi (rad)")
            ax.set_ylabel("linking gamma")
            ax.set_title(f"tilt curve at gamma12 = {gamma12:g}")
            ax.grid(True, alpha=0.4)
            fig.tight_layout()
            fig.savefig(png_path, dpi=150)
            plt.close(fig)
        except OSError as exc:
            click.echo(f"error writing {png_path}: {exc}", err=True)
            sys.exit(3)


@main.command()
@io_options
@click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), default=0,
              show_default=True, help="Seed for the velocity sampler.")
@click.option("-n", "--samples", type=click.IntRange(min=1), default=1000,
              show_default=True, help="Number of sampled triples.")
@click.option("--collinear", is_flag=True,
              help="Confine samples to one line (group signature expected).")
def axioms(fmt, out_path, seed, samples, collinear):
    """Check the algebraic signature of velocity composition.

    Exits 0 when the observed pass/fail pattern matches the expected
    signature (loop in general, group under --collinear), 1 otherwise.
    """
    rng = np.random.default_rng(seed)
    report_data = velocity.check_loop_axioms(rng, samples, collinear=collinear)
    expected = velocity.GROUP_SIGNATURE if collinear else velocity.LOOP_SIGNATURE
    matches = velocity.signature_matches(report_data, expected)
    outputs: dict = {}
    for name, result in report_data.items():
        outputs[f"{name}_passed"] = result.passed
        outputs[f"{name}_max_residual"] = result.max_residual
        outputs[f"{name}_expected"] = expected[name]
    outputs["signature"] = "group" if collinear else "loop"
    outputs["signature_matches"] = matches
    report = render(
        "axioms",
        {"seed": seed, "samples": samples, "collinear": collinear},
        outputs,
        {},
        fmt,
    )
    deliver(report, out_path)
    if not matches:
        click.echo("axiom signature does not match the expected pattern", err=True)
        sys.exit(1)


@main.command()
@io_options
@click.argument("entries", nargs=16, type=float)
def polar(entries, fmt, out_path):
    """Split a Lorentz matrix (16 row-major entries) into boost times rotation."""
    l = np.array(entries, dtype=float).reshape(4, 4)
    try:
        lorentz.validate_lorentz(l)
        factors = lorentz.polar_decompose(l)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    angle, axis = _rotation_angle_axis(factors.rotation)
    reassembly = float(
        np.max(np.abs(lorentz.to_matrix(factors.beta, factors.rotation) - l))
    )
    b_sqrt, r_sqrt = lorentz.polar_factors_via_sqrt(l)
    sqrt_route = float(
        np.max(np.abs(r_sqrt - lorentz.embed_rotation(factors.rotation)))
    )
    residuals = {"reassembly": reassembly, "sqrt_route_agreement": sqrt_route}
    report = render(
        "polar",
        {"matrix": l},
        {
            "beta": factors.beta,
            "beta_prime": factors.beta_prime,
            "gamma": l[0, 0],
            "rotation": factors.rotation,
            "rotation_angle_rad": angle,
            "rotation_angle_deg": math.degrees(angle),
            "rotation_axis": axis,
        },
        residuals,
        fmt,
    )
    deliver(report, out_path)
    enforce_residuals(residuals)


@main.command("galilei-decompose")
@io_options
@click.argument("entries", nargs=16, type=float)
@click.option("--state", nargs=3, type=float, default=(0.0, 0.0, 0.0),
              show_default=True,
              help="Spatial velocity of the anchor state for the rotation factor.")
def galilei_decompose(entries, fmt, out_path, state):
    """Split a Galilei matrix (16 row-major entries) into boost times rotation."""
    g = np.array(entries, dtype=float).reshape(4, 4)
    try:
        galilei.validate_galilei(g)
        anchor = galilei.galilei_state(np.array(state))
        v, d = galilei.decompose(g, anchor)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    angle, axis = _rotation_angle_axis(d)
    reassembly = float(
        np.max(np.abs(galilei.galilei_boost(v) @ galilei.rotation_embed(anchor, d) - g))
    )
    residuals = {"reassembly": reassembly}
    report = render(
        "galilei-decompose",
        {"matrix": g, "anchor": anchor},
        {
            "boost_velocity": v,
            "rotation": d,
            "rotation_angle_rad": angle,
            "rotation_angle_deg": math.degrees(angle),
            "rotation_axis": axis,
        },
        residuals,
        fmt,
    )
    deliver(report, out_path)
    enforce_residuals(residuals)


if __name__ == "__main__":
    main()
