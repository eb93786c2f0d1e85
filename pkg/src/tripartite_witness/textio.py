"""Plain-text matrix files.

A matrix block is a header ``matrix <rows> <cols>`` followed by ``rows*cols``
whitespace-separated entries written as ``RE+IMj`` / ``RE-IMj``.  A density
file prepends a ``dims d d d`` line.  Blank lines and ``#`` comments are
ignored.
"""

import numpy as np

from .errors import FormatError


def format_complex(z):
    z = complex(z)
    re = z.real + 0.0
    im = z.imag + 0.0
    return f"{re:.17g}{im:+.17g}j"


def format_matrix(m):
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    rows, cols = m.shape
    lines = [f"matrix {rows} {cols}"]
    lines += [" ".join(format_complex(z) for z in row) for row in m]
    return "\n".join(lines) + "\n"


def format_density(rho):
    d = round(np.shape(rho)[0] ** (1 / 3))
    return f"dims {d} {d} {d}\n" + format_matrix(rho)


def _tokens(text):
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        yield from line.split()


def _parse_complex(tok):
    try:
        z = complex(tok)
    except ValueError as exc:
        raise FormatError(f"bad complex entry {tok!r}") from exc
    if not np.isfinite(z.real) or not np.isfinite(z.imag):
        raise FormatError(f"non-finite entry {tok!r}")
    return z


def parse_matrix(text):
    toks = list(_tokens(text))
    dims = None
    if toks and toks[0] == "dims":
        dims = tuple(int(t) for t in toks[1:4])
        toks = toks[4:]
    if len(toks) < 3 or toks[0] != "matrix":
        raise FormatError("expected a 'matrix <rows> <cols>' header")
    rows, cols = int(toks[1]), int(toks[2])
    entries = toks[3:]
    if len(entries) != rows * cols:
        raise FormatError(f"header announces {rows * cols} entries, found {len(entries)}")
    m = np.array([_parse_complex(t) for t in entries], dtype=complex).reshape(rows, cols)
    if dims is not None and int(np.prod(dims)) != rows:
        raise FormatError(f"dims {dims} do not match a {rows}x{cols} matrix")
    return m


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, m, density=False):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_density(m) if density else format_matrix(m))
