"""Trace-norm separability tests built from the T, S and N unfoldings."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateCoefficients,
    InvalidSpectrum,
    NoCrossing,
    PreconditionViolated,
    UnsupportedDimension,
)
from .linalg import trace_norm
from .states import BIPARTITIONS, NoiseFamily, as_density, bipartition_label, local_dim, noisy_state, party_of
from .tensor import decompose, n_matrix, s_matrix

DETECTION_MARGIN = 1e-12
# largest |a/b| for which the W-family threshold stays below one, to 4 decimals
RATIO_LIMIT = 1.6248


@dataclass(frozen=True)
class CoefficientTriple:
    a: float
    b: float
    c: float = 0.0

    @property
    def mu(self):
        return abs(self.a + self.c) + abs(self.a - self.c)

    def scaled(self, factor):
        return CoefficientTriple(self.a * factor, self.b * factor, self.c * factor)

    @classmethod
    def parse(cls, text):
        """Parse ``"a,b,c"`` or ``"a,b"``; entries may be fractions like ``1/3``."""
        parts = [p.strip() for p in str(text).split(",") if p.strip()]
        if len(parts) not in (2, 3):
            raise ValueError(f"expected 2 or 3 comma-separated coefficients, got {text!r}")
        values = []
        for p in parts:
            num, _, den = p.partition("/")
            values.append(float(num) / float(den) if den else float(num))
        return cls(*values)

    def __iter__(self):
        return iter((self.a, self.b, self.c))


@dataclass(frozen=True)
class Verdict:
    bipartition: str
    criterion: str
    witness: float
    bound: float
    margin: float = DETECTION_MARGIN
    details: dict = field(default_factory=dict, compare=False)

    @property
    def entangled(self):
        return self.witness > self.bound + self.margin

    @property
    def conclusion(self):
        return "entangled" if self.entangled else "inconclusive"

    def line(self):
        return f"verdict {self.bipartition} {self.witness:.12g} {self.bound:.12g} {self.conclusion}"


def _spectrum(t0, t1):
    if t0 < 0 or t1 < 0 or abs(t0 * t0 + t1 * t1 - 1) > 1e-10:
        raise InvalidSpectrum(f"need t0, t1 >= 0 with t0**2 + t1**2 = 1, got ({t0}, {t1})")


def theorem1_value(case, bipartition, coeffs, t0, t1):
    """Closed-form ``||S^{f|gh}||_tr`` for the canonical qubit states.

    Case ``"i"`` is ``t0|000> + t1|101>`` and case ``"ii"`` is
    ``t0|000> + t1|111>``.
    """
    _spectrum(t0, t1)
    f = party_of(bipartition)
    a, b, c = coeffs
    if case == "i":
        if f == 2:
            return abs(b) * (1 + 4 * t0 * t1)
        return math.sqrt(4 * (a * a + c * c) * t0 * t0 * t1 * t1 + b * b)
    if case == "ii":
        mu = abs(a + c) + abs(a - c)
        return abs(b) * abs(t0 * t0 - t1 * t1) + 2 * mu * t0 * t1
    raise ValueError(f"case must be 'i' or 'ii', got {case!r}")


def corollary1_bound(coeffs):
    """``3|b|`` after checking ``b != 0``, ``mu != 0`` and ``3|b| < mu``."""
    coeffs = CoefficientTriple(*coeffs)
    if coeffs.b == 0 or coeffs.mu == 0 or not 3 * abs(coeffs.b) < coeffs.mu:
        raise PreconditionViolated(f"need b != 0 and 3|b| < mu, got {coeffs}")
    return 3 * abs(coeffs.b)


def corollary2_bound(coeffs):
    """``sqrt(b**2 + 4 a**2)`` after checking ``c = 0``, ``b != 0`` and ``|a/b| < 1.6248``."""
    coeffs = CoefficientTriple(*coeffs)
    if coeffs.c != 0:
        raise PreconditionViolated("the two-term test needs c = 0")
    if coeffs.b == 0 or not abs(coeffs.a / coeffs.b) < RATIO_LIMIT:
        raise PreconditionViolated(f"need b != 0 and |a/b| < {RATIO_LIMIT}, got {coeffs}")
    return math.hypot(coeffs.b, 2 * coeffs.a)


def _qubit(rho):
    rho = as_density(rho)
    if local_dim(rho) != 2:
        raise UnsupportedDimension("this test is defined for three qubits")
    return rho


def corollary1_detect(rho, coeffs, margin=DETECTION_MARGIN, dec=None):
    coeffs = CoefficientTriple(*coeffs)
    bound = corollary1_bound(coeffs)
    dec = dec if dec is not None else decompose(_qubit(rho))
    witness = trace_norm(s_matrix(dec, 2, coeffs))
    return Verdict("2|13", "cor1", witness, bound, margin)


def corollary2_detect(rho, coeffs, margin=DETECTION_MARGIN, dec=None):
    """Two-term test for every bipartition; any entangled verdict suffices."""
    coeffs = CoefficientTriple(*coeffs)
    bound = corollary2_bound(coeffs)
    dec = dec if dec is not None else decompose(_qubit(rho))
    return [
        Verdict(label, "cor2", trace_norm(s_matrix(dec, label, coeffs)), bound, margin)
        for label in BIPARTITIONS
    ]


def f_delta(delta):
    """Critical state weight of the W family for the two-term test with ``a/b = delta``."""
    s = 8 * delta * delta
    root = math.sqrt(25 + 16 * delta * delta)
    denom = math.sqrt(8) + math.sqrt(13 + s + root) + math.sqrt(13 + s - root)
    return math.sqrt(18) * math.sqrt(1 + 4 * delta * delta) / denom


def w_witness_closed_form(coeffs, x):
    """``||a T_1 + b T_2||_tr`` of the W family at state weight ``x``."""
    a, b, _ = coeffs
    if b == 0:
        raise DegenerateCoefficients("closed form is written in terms of a/b; b must be nonzero")
    delta = a / b
    s = 8 * delta * delta
    root = math.sqrt(25 + 16 * delta * delta)
    total = math.sqrt(8) + math.sqrt(13 + s + root) + math.sqrt(13 + s - root)
    return total / math.sqrt(18) * abs(b) * x


def ghz_threshold(coeffs):
    """Largest noise weight below which the GHZ family is flagged: ``1 - 3|b|/mu``."""
    coeffs = CoefficientTriple(*coeffs)
    if coeffs.mu == 0:
        raise DegenerateCoefficients("mu = |a+c| + |a-c| vanishes")
    return min(1.0, max(0.0, 1 - 3 * abs(coeffs.b) / coeffs.mu))


def theorem2_bounds(d):
    """Per-case bounds: fully separable gh-part and entangled gh-part."""
    return {"i": math.sqrt(d**3 * (d - 1)) / 2, "ii": d * d / 2}


def _is_pure(rho, tol=1e-9):
    return abs(np.trace(rho @ rho).real - 1) <= tol


def theorem2_check(state, assume_convexity=False, margin=DETECTION_MARGIN, dec=None):
    """Compare ``||N^{f|gh}||_tr`` against the qudit bounds for every bipartition.

    The bounds are proven for pure inputs.  Mixed inputs are refused unless
    ``assume_convexity`` is set, which relies on the trace norm of an affine
    function of ``rho`` being convex.
    """
    rho = as_density(state)
    d = local_dim(rho)
    if d < 3:
        raise UnsupportedDimension("the qudit test needs d >= 3")
    if not assume_convexity and not _is_pure(rho):
        raise PreconditionViolated("input is mixed; pass assume_convexity=True to extend the bound")
    dec = dec if dec is not None else decompose(rho)
    cases = theorem2_bounds(d)
    binding = max(cases, key=cases.get)
    out = []
    for f in (1, 2, 3):
        bounds = dict(cases) if f != 2 else {"i": d * d / 2, "ii": d * d / 2}
        out.append(
            Verdict(
                bipartition_label(f),
                "thm2",
                trace_norm(n_matrix(dec, f)),
                max(bounds.values()),
                margin,
                details={"case_bounds": bounds, "binding_case": binding},
            )
        )
    return out


def family_witness(family, criterion, coeffs=None, assume_convexity=True):
    """Largest witness-minus-bound over the bipartitions the criterion inspects."""
    rho = noisy_state(family)
    verdicts = evaluate(rho, criterion, coeffs, assume_convexity=assume_convexity)
    return max(v.witness - v.bound for v in verdicts)


def evaluate(rho, criterion, coeffs=None, assume_convexity=False, margin=DETECTION_MARGIN):
    """Dispatch by criterion name (``cor1``, ``cor2`` or ``thm2``); returns a list of verdicts."""
    if criterion == "cor1":
        return [corollary1_detect(rho, coeffs, margin)]
    if criterion == "cor2":
        return corollary2_detect(rho, coeffs, margin)
    if criterion == "thm2":
        return theorem2_check(rho, assume_convexity=assume_convexity, margin=margin)
    raise ValueError(f"unknown criterion {criterion!r}")


def sweep_threshold(family_kind, criterion, coeffs=None, d=2, iterations=60, margin=DETECTION_MARGIN):
    """Bisect the mixing parameter for the point where the witness meets its bound.

    Exactly one end of ``[0, 1]`` must be flagged, otherwise
    :class:`NoCrossing` is raised.  The witness is recomputed from the full
    density matrix at every step.
    """

    def fires(x):
        return family_witness(NoiseFamily(family_kind, x, d), criterion, coeffs) > margin

    lo, hi = 0.0, 1.0
    f_lo, f_hi = fires(lo), fires(hi)
    if f_lo == f_hi:
        raise NoCrossing(f"{criterion} gives the same verdict at x=0 and x=1 for the {family_kind} family")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if fires(mid) == f_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
