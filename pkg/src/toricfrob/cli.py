"""Command-line client for the toricfrob service.

By default the commands talk to an in-process instance of the HTTP service;
`--server URL` points them at a remote one instead. Exit codes: 0 success,
1 validation failure, 2 parse error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _client(server):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=False)


def _fan_payload(fan_path, catalog_name):
    if (fan_path is None) == (catalog_name is None):
        click.echo("provide exactly one of --fan or --catalog", err=True)
        sys.exit(EXIT_PARSE)
    if catalog_name is not None:
        return {"catalog": catalog_name}
    try:
        with open(fan_path) as handle:
            text = handle.read()
    except OSError as exc:
        click.echo("cannot read %s: %s" % (fan_path, exc), err=True)
        sys.exit(EXIT_PARSE)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        click.echo(
            "parse error in %s at line %d: %s" % (fan_path, exc.lineno, exc.msg),
            err=True,
        )
        sys.exit(EXIT_PARSE)
    if not isinstance(doc, dict):
        click.echo("parse error: fan document must be a JSON object", err=True)
        sys.exit(EXIT_PARSE)
    return {"fan": doc}


def _post(server, path, payload):
    with _client(server) as client:
        try:
            resp = client.post(path, json=payload)
        except httpx.HTTPError as exc:
            click.echo("request failed: %s" % exc, err=True)
            sys.exit(EXIT_VALIDATION)
    if resp.status_code >= 400:
        try:
            body = resp.json()
        except ValueError:
            body = {}
        message = body.get("message") or resp.text
        code = body.get("exit_code", EXIT_VALIDATION)
        if body.get("diagnostics"):
            message += "\n" + "\n".join("  - %s" % d for d in body["diagnostics"])
        click.echo("error: %s" % message, err=True)
        sys.exit(code)
    return resp.json()


def _emit(data, out, fmt, text_renderer=None):
    if fmt == "text" and text_renderer is not None:
        rendered = text_renderer(data)
    else:
        rendered = json.dumps(data, indent=2) + "\n"
    if out:
        with open(out, "w") as handle:
            handle.write(rendered)
    else:
        click.echo(rendered, nl=False)


def fan_options(fn):
    fn = click.option("--fan", "fan_path", type=click.Path(), help="fan JSON file")(fn)
    fn = click.option("--catalog", "catalog_name", help="built-in fan name")(fn)
    fn = click.option("--server", help="remote service URL (default: in-process)")(fn)
    fn = click.option("--out", type=click.Path(), help="output file (default stdout)")(fn)
    return fn


@click.group()
def main():
    """Frobenius and Mori invariants of projective simplicial toric varieties."""


@main.command()
@fan_options
def validate(fan_path, catalog_name, server, out):
    """Check that a fan is complete, simplicial and well-formed."""
    data = _post(server, "/validate", _fan_payload(fan_path, catalog_name))
    _emit(data, out, "json")
    if not data.get("valid", False):
        sys.exit(EXIT_VALIDATION)


@main.command()
@fan_options
@click.option("--p", default=2, show_default=True, help="prime for decompositions")
@click.option("--e", "e_list", multiple=True, type=int, help="Frobenius exponents")
@click.option("--no-checks", is_flag=True, help="skip theorem cross-checks")
@click.option(
    "--format", "fmt", type=click.Choice(["json", "text"]), default="json",
    show_default=True,
)
def report(fan_path, catalog_name, server, out, p, e_list, no_checks, fmt):
    """Full report: cones, support, signatures, contractions, cross-checks."""
    payload = _fan_payload(fan_path, catalog_name)
    payload.update(
        {"p": p, "e_list": list(e_list) or [1, 2, 3], "checks": not no_checks}
    )
    data = _post(server, "/report", payload)
    from .report import render_text

    _emit(data, out, fmt, text_renderer=render_text)


@main.command()
@fan_options
def fsupp(fan_path, catalog_name, server, out):
    """Frobenius support classes with densities and positivity flags."""
    data = _post(server, "/fsupp", _fan_payload(fan_path, catalog_name))
    _emit(data, out, "json")


@main.command()
@fan_options
@click.option("--p", default=2, show_default=True)
@click.option("--e", default=1, show_default=True)
@click.option("--divisor", help="comma-separated divisor coefficients to twist by")
def decompose(fan_path, catalog_name, server, out, p, e, divisor):
    """Trace-kernel (or twisted pushforward) decomposition at q = p^e."""
    payload = _fan_payload(fan_path, catalog_name)
    payload.update({"p": p, "e": e})
    if divisor:
        try:
            payload["divisor"] = [int(x) for x in divisor.split(",")]
        except ValueError:
            click.echo("bad --divisor: expected comma-separated integers", err=True)
            sys.exit(EXIT_PARSE)
    data = _post(server, "/decompose", payload)
    _emit(data, out, "json")


@main.command()
@fan_options
def signatures(fan_path, catalog_name, server, out):
    """Ample and nef F-signatures."""
    data = _post(server, "/signatures", _fan_payload(fan_path, catalog_name))
    _emit(data, out, "json")


@main.command()
@fan_options
def mori(fan_path, catalog_name, server, out):
    """Mori cone extreme rays and classified extremal contractions."""
    data = _post(server, "/mori", _fan_payload(fan_path, catalog_name))
    _emit(data, out, "json")


@main.command()
@fan_options
def chain(fan_path, catalog_name, server, out):
    """Greedy inert blowdown chain down to an eff = nef terminal fan."""
    data = _post(server, "/chain", _fan_payload(fan_path, catalog_name))
    _emit(data, out, "json")
    if "error" in data:
        sys.exit(EXIT_VALIDATION)


@main.command()
@fan_options
def plot(fan_path, catalog_name, server, out):
    """SVG diagram of the Neron-Severi plane (Picard rank 2 only)."""
    data = _post(server, "/plot", _fan_payload(fan_path, catalog_name))
    svg = data["svg"]
    if out:
        with open(out, "w") as handle:
            handle.write(svg)
    else:
        click.echo(svg, nl=False)


@main.command()
@click.argument("name", required=False)
@click.option("--list", "list_names", is_flag=True, help="list built-in fans")
@click.option("--server", help="remote service URL (default: in-process)")
@click.option("--out", type=click.Path(), help="output file (default stdout)")
def catalog(name, list_names, server, out):
    """Show the catalog, or print a named fan as a JSON document."""
    with _client(server) as client:
        if name and not list_names:
            resp = client.get("/catalog/%s" % name)
        else:
            resp = client.get("/catalog")
    if resp.status_code >= 400:
        body = resp.json()
        click.echo("error: %s" % body.get("message", resp.text), err=True)
        sys.exit(body.get("exit_code", EXIT_VALIDATION))
    _emit(resp.json(), out, "json")


if __name__ == "__main__":
    main()
