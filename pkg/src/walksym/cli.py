"""Command-line interface.

Usage::

    walksym classify H.json               # verdict + witnesses, exit 0/3/4
    walksym invariants H.json             # fundamental cycles and AB phases
    walksym canon H.json                  # canonical gauge representative
    walksym equiv A.json B.json           # gauge witness, exit 0/3
    walksym simulate H.json --grid 10:200 # CSV of t,s,f,P,J
    walksym currents H.json --kind amplitude -t 1.0

Exit codes: 0 success/symmetric/equivalent, 1 unreadable or malformed input,
2 input that parses but fails validation, 3 asymmetric/not equivalent,
4 classification flagged inconclusive by the numeric scan.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import sys

import click
import numpy as np

from .errors import (
    DocumentError,
    HermiticityViolation,
    InconsistentDocument,
    InvalidGenerator,
    NonSquareError,
    WalkSymError,
)
from .gauge import REAL_TOL, canonical_form, fingerprint, compare_fingerprints, gauge_equivalent
from .hermitian import (
    HERMITICITY_TOL,
    evolve,
    max_abs,
    quantum_probability_current,
    transition_probabilities,
    validate_hermitian,
)
from .io import FORMATS, document_to_matrix, format_document, matrix_to_document, parse_document
from .report import build_report, dumps, fingerprint_dict
from .support import default_support_tol
from .symmetry import (
    DEFAULT_POINTS,
    DEFAULT_T_MAX,
    amplitude_current,
    classify,
    default_grid,
    stochastic_current,
)

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_ASYMMETRIC, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
CANON_DIGITS = 12


def _fail(code: int, msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _parse_grid(ctx, param, value):
    if value is None:
        return (DEFAULT_T_MAX, DEFAULT_POINTS)
    try:
        t_max, n = value.split(":")
        spec = (float(t_max), int(n))
        default_grid(*spec)
    except ValueError:
        raise click.BadParameter("expected T_MAX:N_POINTS with T_MAX > 0 and N_POINTS >= 1")
    return spec


def common_options(f):
    @click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                  help="Input format (default: detect from content).")
    @click.option("--tol-support", type=float, default=None,
                  help="Modulus below which entries are treated as zero "
                       "(default 1e-12 * max|H|).")
    @click.option("--tol-herm", type=float, default=HERMITICITY_TOL, show_default=True)
    @click.option("--tol-real", type=float, default=REAL_TOL, show_default=True)
    @click.option("--zero-diagonal", is_flag=True, help="Zero the diagonal before processing.")
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        return f(*args, **kwargs)

    return wrapper


def _load(path, fmt, tol_herm, zero_diagonal=False, hermitian=True):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _fail(EXIT_PARSE, f"cannot read {path}: {exc.strerror}")
    try:
        doc = parse_document(text, fmt)
    except DocumentError as exc:
        _fail(EXIT_PARSE, f"{path}: {exc}")
    try:
        m = document_to_matrix(doc, hermitian, tol_herm)
        if hermitian:
            m = np.array(validate_hermitian(m, tol_herm))
    except (InconsistentDocument, HermiticityViolation, NonSquareError) as exc:
        _fail(EXIT_INVALID, f"{path}: {exc}")
    if zero_diagonal:
        np.fill_diagonal(m, 0)
    return m, doc


def _tolerances(h, tol_support, tol_herm, tol_real):
    return {
        "support": tol_support if tol_support is not None else default_support_tol(h),
        "hermiticity": tol_herm,
        "reality": tol_real,
    }


@click.group()
@click.version_option(package_name="walksym")
def cli():
    """Time-reversal symmetry of continuous-time quantum walks."""


@cli.command("classify")
@click.argument("path", type=click.Path(dir_okay=False))
@common_options
@click.option("--grid", callback=_parse_grid, metavar="T_MAX:N_POINTS",
              help="Scan grid in units of 1/max|H| (default 10:2001).")
@click.option("--no-scan", is_flag=True, help="Skip the numeric current scan.")
def classify_cmd(path, fmt, tol_support, tol_herm, tol_real, zero_diagonal, grid, no_scan):
    """Classify a Hamiltonian's walk as time-symmetric or asymmetric."""
    h, doc = _load(path, fmt, tol_herm, zero_diagonal)
    tols = _tolerances(h, tol_support, tol_herm, tol_real)
    c = classify(h, support_tol=tols["support"], real_tol=tol_real, herm_tol=tol_herm,
                 grid=default_grid(*grid), run_scan=not no_scan)
    fp = fingerprint(h, tols["support"])
    report = build_report(c, fp, dim=h.shape[0], name=doc.name, tolerances=tols,
                          grid_spec=None if no_scan else grid)
    click.echo(report.to_json(), nl=False)
    if c.flags.get("inconclusive"):
        sys.exit(EXIT_INCONCLUSIVE)
    sys.exit(EXIT_OK if c.symmetric else EXIT_ASYMMETRIC)


@cli.command("invariants")
@click.argument("path", type=click.Path(dir_okay=False))
@common_options
def invariants_cmd(path, fmt, tol_support, tol_herm, tol_real, zero_diagonal):
    """List edge moduli, diagonal, fundamental cycles, weights and AB phases."""
    h, doc = _load(path, fmt, tol_herm, zero_diagonal)
    tols = _tolerances(h, tol_support, tol_herm, tol_real)
    out = {"dim": h.shape[0], "name": doc.name,
           "fingerprint": fingerprint_dict(fingerprint(h, tols["support"])),
           "tolerances": tols}
    click.echo(dumps(out), nl=False)


@cli.command("canon")
@click.argument("path", type=click.Path(dir_okay=False))
@common_options
@click.option("--digits", type=int, default=CANON_DIGITS, show_default=True,
              help="Significant digits in the canonical matrix.")
def canon_cmd(path, fmt, tol_support, tol_herm, tol_real, zero_diagonal, digits):
    """Print the canonical gauge representative and the gauge that reaches it."""
    h, doc = _load(path, fmt, tol_herm, zero_diagonal)
    tols = _tolerances(h, tol_support, tol_herm, tol_real)
    cf = canonical_form(h, tols["support"])
    mdoc = matrix_to_document(cf.matrix, name=doc.name, digits=digits,
                              zero_tol=max(tols["support"], 1e-12 * max_abs(h)))
    out = {
        "matrix": json.loads(format_document(mdoc)),
        "gauge": [float(p) + 0.0 for p in cf.gauge],
    }
    click.echo(dumps(out), nl=False)


@cli.command("equiv")
@click.argument("path_a", type=click.Path(dir_okay=False))
@click.argument("path_b", type=click.Path(dir_okay=False))
@common_options
def equiv_cmd(path_a, path_b, fmt, tol_support, tol_herm, tol_real, zero_diagonal):
    """Find a diagonal gauge mapping A to B, exit 3 if none exists."""
    a, _ = _load(path_a, fmt, tol_herm, zero_diagonal)
    b, _ = _load(path_b, fmt, tol_herm, zero_diagonal)
    if a.shape != b.shape:
        click.echo(dumps({"equivalent": False, "reason": "dimensions differ"}), nl=False)
        sys.exit(EXIT_ASYMMETRIC)
    try:
        phases = gauge_equivalent(a, b, tol_real, tol_support)
    except WalkSymError as exc:
        _fail(EXIT_INVALID, str(exc))
    if phases is None:
        reason = compare_fingerprints(fingerprint(a, tol_support), fingerprint(b, tol_support),
                                      tol_real)
        click.echo(dumps({"equivalent": False, "reason": reason}), nl=False)
        sys.exit(EXIT_ASYMMETRIC)
    click.echo(dumps({"equivalent": True, "gauge": [float(p) + 0.0 for p in phases]}), nl=False)


@cli.command("simulate")
@click.argument("path", type=click.Path(dir_okay=False))
@common_options
@click.option("--grid", callback=_parse_grid, metavar="T_MAX:N_POINTS",
              help="Physical time grid (default 10:2001).")
@click.option("--source", type=int, default=None, help="Only rows starting at this vertex.")
@click.option("--full", is_flag=True, help="Emit every (s, f) pair, not just s < f.")
def simulate_cmd(path, fmt, tol_support, tol_herm, tol_real, zero_diagonal, grid,
                 source, full):
    """Write transition probabilities and currents as CSV."""
    h, _ = _load(path, fmt, tol_herm, zero_diagonal)
    n = h.shape[0]
    if source is not None and not 0 <= source < n:
        _fail(EXIT_INVALID, f"source {source} out of range for dim {n}")
    times = default_grid(*grid)
    p = transition_probabilities(evolve(h, times))
    j = quantum_probability_current(h, times)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "s", "f", "P", "J"])
    for k, t in enumerate(times):
        for s in range(n) if source is None else [source]:
            for f in range(n):
                if not full and (f <= s if source is None else f == s):
                    continue
                w.writerow([repr(float(t)), s, f, repr(float(p[k, f, s])),
                            repr(float(j[k, s, f]) + 0.0)])
    click.echo(buf.getvalue(), nl=False)


@cli.command("currents")
@click.argument("path", type=click.Path(dir_okay=False))
@common_options
@click.option("--kind", type=click.Choice(["amplitude", "stochastic"]), default="amplitude",
              show_default=True)
@click.option("-t", "--time", "times", type=float, multiple=True,
              help="Evaluation time; repeatable (default 1.0).")
def currents_cmd(path, fmt, tol_support, tol_herm, tol_real, zero_diagonal, kind, times):
    """Quantum amplitude current of a Hamiltonian, or stochastic current of a
    Markov generator (rows summing to zero, every record taken literally)."""
    times = times or (1.0,)
    stochastic = kind == "stochastic"
    m, _ = _load(path, fmt, tol_herm, zero_diagonal, hermitian=not stochastic)
    out = {"kind": kind, "times": list(times), "currents": []}
    for t in times:
        if stochastic:
            if np.any(m.imag != 0):
                _fail(EXIT_INVALID, "generator entries must be real")
            try:
                c = stochastic_current(m.real, t)
            except (InvalidGenerator, ValueError) as exc:
                _fail(EXIT_INVALID, str(exc))
            out["currents"].append([[float(x) + 0.0 for x in row] for row in c])
        else:
            c = amplitude_current(m, t)
            out["currents"].append(
                [[[float(z.real) + 0.0, float(z.imag) + 0.0] for z in row] for row in c])
    click.echo(dumps(out), nl=False)


def main(argv=None):
    cli.main(args=argv, prog_name="walksym")


if __name__ == "__main__":
    main()
