"""Command-line interface: a thin client of the HTTP service.

By default each command drives the FastAPI app in process; pass
``--server URL`` to target a running instance instead. Exit codes:
0 success, 1 verification failure, 2 invalid arguments, 3 domain error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click
import httpx

from .serialize import dump_csv, dumps


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running su11 service (default: in-process).")
@click.pass_context
def main(ctx: click.Context, server: str | None):
    """SU(1,1) Perelomov number coherent state toolkit."""
    ctx.obj = {"server": server}


def _client(ctx: click.Context) -> httpx.Client:
    server = (ctx.obj or {}).get("server")
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        # the in-process transport import may warn about its own pedigree;
        # that is not actionable for CLI users
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _post(ctx: click.Context, path: str, payload: dict) -> dict:
    try:
        with _client(ctx) as client:
            resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        click.echo(f"error: cannot reach service: {exc}", err=True)
        sys.exit(2)
    if resp.status_code == 409:
        detail = resp.json().get("detail", {})
        click.echo(f"domain error: {detail.get('message', resp.text)}", err=True)
        sys.exit(3)
    if resp.status_code in (400, 422):
        click.echo(f"invalid arguments: {resp.text}", err=True)
        sys.exit(2)
    if resp.status_code != 200:
        click.echo(f"service error {resp.status_code}: {resp.text}", err=True)
        sys.exit(2)
    return resp.json()


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _output_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
                      default="json", show_default=True)(fn)
    fn = click.option("--output", default=None, metavar="PATH",
                      help="Write to a file instead of stdout.")(fn)
    return fn


def _rows_csv(data: dict, header: list[str]) -> str:
    return dump_csv(header, [[row[h] for h in header] for row in data["rows"]])


@main.command()
@click.option("--k", default=1.0, show_default=True, help="Bargmann index (> 0).")
@click.option("--n", default=0, show_default=True, help="Displaced level.")
@click.option("--tau", default=0.5, show_default=True)
@click.option("--phi", default=0.0, show_default=True)
@click.option("--dim", default=128, show_default=True)
@click.option("--tol", default=1e-10, show_default=True)
@_output_options
@click.pass_context
def state(ctx, k, n, tau, phi, dim, tol, fmt, output):
    """Amplitudes of the displaced number state |zeta, k, n>."""
    data = _post(ctx, "/state", {"k": k, "n": n, "tau": tau, "phi": phi,
                                 "dim": dim, "tol": tol})
    if fmt == "csv":
        text = dump_csv(
            ["n", "re", "im", "abs2"],
            [[a["n"], a["re"], a["im"], a["abs2"]] for a in data["amplitudes"]],
        )
    else:
        text = dumps(data) + "\n"
    _emit(text, output)


@main.command()
@click.option("--omega", default=1.0, show_default=True, help="Pump frequency (> 0).")
@click.option("--chi", default=0.5, show_default=True, help="Coupling (>= 0).")
@click.option("--m", default=0, show_default=True, help="Angular momentum.")
@click.option("--n-max", default=10, show_default=True)
@_output_options
@click.pass_context
def spectrum(ctx, omega, chi, m, n_max, fmt, output):
    """Amplifier energies for n = 0..n_max, plus the chi = 0 reference rows."""
    data = _post(ctx, "/spectrum", {"omega": omega, "chi": chi, "m": m,
                                    "n_max": n_max})
    if fmt == "csv":
        text = _rows_csv(data, ["n", "m", "omega", "chi", "energy"])
    else:
        text = dumps(data) + "\n"
    _emit(text, output)


@main.command()
@click.option("--m", default=0, show_default=True, help="Angular momentum.")
@click.option("--n", default=0, show_default=True, help="Radial quantum number.")
@click.option("--tau", default=0.5, show_default=True)
@click.option("--phi", default=0.0, show_default=True)
@click.option("--radial-points", default=32, show_default=True)
@click.option("--angular-points", default=8, show_default=True)
@click.option("--tol", default=1e-10, show_default=True)
@_output_options
@click.pass_context
def wavefunction(ctx, m, n, tau, phi, radial_points, angular_points, tol, fmt, output):
    """Amplifier eigenfunction on a polar grid, series and closed routes."""
    data = _post(ctx, "/wavefunction", {
        "m": m, "n": n, "tau": tau, "phi": phi,
        "radial_points": radial_points, "angular_points": angular_points,
        "tol": tol,
    })
    if fmt == "csv":
        text = _rows_csv(data, [
            "r", "angle", "series_re", "series_im", "series_abs2",
            "closed_re", "closed_im", "closed_abs2", "abs_diff",
            "closed_singular",
        ])
    else:
        text = dumps(data) + "\n"
    _emit(text, output)


@main.command()
@click.option("--k", default=1.0, show_default=True, help="Bargmann index (> 0).")
@click.option("--n", default=0, show_default=True)
@click.option("--omega", default=1.0, show_default=True)
@click.option("--chi", default=0.5, show_default=True)
@click.option("--Phi", "pump_phase", default=0.0, show_default=True,
              help="Pump phase.")
@click.option("--t", default=1.0, show_default=True, help="Final time.")
@click.option("--n-max", default=10, show_default=True,
              help="Number of trace steps (rows = n-max + 1).")
@click.option("--dim", default=128, show_default=True)
@_output_options
@click.pass_context
def evolve(ctx, k, n, omega, chi, pump_phase, t, n_max, dim, fmt, output):
    """Pure-phase evolution trace against the dense propagation oracle."""
    data = _post(ctx, "/evolve", {"k": k, "n": n, "omega": omega, "chi": chi,
                                  "Phi": pump_phase, "t": t, "steps": n_max,
                                  "dim": dim})
    if fmt == "csv":
        text = _rows_csv(data, ["t", "phase_analytic", "phase_oracle",
                                "phase_diff", "overlap_modulus"])
    else:
        text = dumps(data) + "\n"
    _emit(text, output)


@main.command()
@click.option("--dim", default=128, show_default=True)
@click.option("--tol", default=None, type=float,
              help="Override every check tolerance (default: per-check values).")
@_output_options
@click.pass_context
def verify(ctx, dim, tol, fmt, output):
    """Run every module invariant and report pass/fail per check."""
    payload = {"dim": dim}
    if tol is not None:
        payload["tol"] = tol
    data = _post(ctx, "/verify", payload)
    for c in data["checks"]:
        residual = "inf" if c["residual"] is None else f"{c['residual']:.3e}"
        click.echo(
            f"{c['status'].upper():4s} {c['name']:44s} residual {residual}"
            f"  tol {c['tolerance']:.1e}",
            err=True,
        )
    counts = data["counts"]
    click.echo(
        f"{counts['pass']} passed, {counts['warn']} warnings, "
        f"{counts['fail']} failed",
        err=True,
    )
    if fmt == "csv":
        text = dump_csv(
            ["name", "residual", "tolerance", "status"],
            [[c["name"], c["residual"], c["tolerance"], c["status"]]
             for c in data["checks"]],
        )
    else:
        text = dumps(data) + "\n"
    _emit(text, output)
    sys.exit(0 if data["passed"] else 1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
