"""Threshold tables and the f(delta) curve as plain text."""

import csv
import io

import numpy as np

from .criteria import CoefficientTriple, f_delta, ghz_threshold, sweep_threshold
from .errors import ParameterOutOfRange

# (coefficients, published threshold): GHZ family flagged for x below it
TABLE1 = [
    ((-4.0, 1.0, 6.0), 0.75),
    ((3.0, 1.0, 7.0), 0.7857),
    ((5.0, 1.0 / 3.0, 5.0), 0.9),
]
# W family flagged for x above it; c = 0
TABLE2 = [
    ((1.0, 3.0, 0.0), 0.5025),
    ((1.0, 10.0, 0.0), 0.4361),
    ((0.0, 1.0, 0.0), 0.4286),
]
# earlier thresholds for the same two families, for comparison only
BASELINES = [("ghz", "x <", 2.0 / 3.0), ("w", "x >", 0.6), ("w", "x >", 0.4334)]

TABLE_TOL = 5e-4


def table_rows():
    """Yield ``(table, coeffs, published, analytic, numeric)`` for both tables."""
    for coeffs, published in TABLE1:
        yield 1, CoefficientTriple(*coeffs), published, ghz_threshold(coeffs), sweep_threshold("ghz", "cor1", coeffs)
    for coeffs, published in TABLE2:
        c = CoefficientTriple(*coeffs)
        yield 2, c, published, f_delta(c.a / c.b), sweep_threshold("w", "cor2", coeffs)


def _fmt_coeffs(c):
    return ",".join(f"{v:.6g}" for v in c)


def reproduce_tables(tol=TABLE_TOL):
    """Return ``(report_text, ok)``; ``ok`` is false if any row misses by more than ``tol``."""
    out = ["# table family coeffs published analytic numeric delta"]
    ok = True
    for table, coeffs, published, analytic, numeric in table_rows():
        delta = max(abs(analytic - published), abs(numeric - published))
        ok &= delta <= tol
        family = "ghz" if table == 1 else "w"
        out.append(
            f"row {table} {family} {_fmt_coeffs(coeffs)} {published:.4f} {analytic:.6f} {numeric:.6f} {delta:.2e}"
        )
    for family, side, value in BASELINES:
        out.append(f"baseline {family} {side} {value:.4f}")
    out.append(f"status {'ok' if ok else 'tolerance-exceeded'} tol={tol:g}")
    return "\n".join(out) + "\n", ok


def fdelta_grid(start, stop, step):
    if not start < stop or not step > 0:
        raise ParameterOutOfRange("need from < to and step > 0")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) + 0.0 for k in range(count)]


def fdelta_csv(start, stop, step):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["delta", "f"])
    for delta in fdelta_grid(start, stop, step):
        writer.writerow([f"{delta:.12g}", f"{f_delta(delta):.15g}"])
    return buf.getvalue()
