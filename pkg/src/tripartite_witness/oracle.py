"""Independent checks: partial transposition, brute-force singular values and
Monte-Carlo searches for states that exceed the biseparable bounds.

A negative partial transpose certifies entanglement across a cut; a positive
one proves nothing, so reports here are one-sided evidence only.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .criteria import CoefficientTriple, theorem2_bounds
from .linalg import hermitian_eigenvalues, trace_norm
from .states import (
    apply_local,
    canonical_biseparable,
    local_dim,
    party_of,
    pure_density,
    random_biseparable,
    random_ket,
    random_spectrum,
    random_unitary,
    arrange,
    bipartition_label,
)
from .tensor import decompose, n_matrix, s_matrix

NPT_TOL = -1e-9


def partial_transpose(rho, party):
    """Transpose the indices of one party (1, 2 or 3)."""
    rho = np.asarray(rho, dtype=complex)
    d = local_dim(rho)
    p = party_of(party) - 1
    t = rho.reshape((d,) * 6)
    axes = list(range(6))
    axes[p], axes[p + 3] = p + 3, p
    return t.transpose(axes).reshape(d**3, d**3)


@dataclass(frozen=True)
class PptReport:
    bipartition: str
    min_eigenvalue: float

    @property
    def is_npt(self):
        return self.min_eigenvalue < NPT_TOL


def ppt_report(rho, bipartition):
    pt = partial_transpose(rho, bipartition)
    return PptReport(bipartition_label(bipartition), float(hermitian_eigenvalues(pt)[-1]))


def brute_singular_values(m):
    """``sqrt(eig(M^dagger M))``, descending; independent of the Jacobi routine."""
    m = np.asarray(m, dtype=complex)
    if m.shape[0] < m.shape[1]:
        m = m.conj().T
    ev = np.linalg.eigvalsh(m.conj().T @ m)[::-1]
    return np.sqrt(np.clip(ev, 0.0, None))


def ppt_threshold(family_min_eig, lo=0.0, hi=1.0, tol=1e-10):
    """Bisect ``x`` for the sign change of ``family_min_eig(x)``."""
    neg_lo = family_min_eig(lo) < 0
    if neg_lo == (family_min_eig(hi) < 0):
        raise ValueError("minimum eigenvalue has the same sign at both ends")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (family_min_eig(mid) < 0) == neg_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass
class BoundReport:
    """Outcome of a bound-violation search.

    ``violations`` counts samples whose witness exceeds ``bound + tol``;
    ``worst_state`` keeps the amplitudes of the largest witness seen.
    """

    d: int
    case: str
    bipartition: str
    frame: str
    samples: int
    bound: float
    max_witness: float
    violations: int
    tol: float
    coeffs: tuple = None
    worst_state: np.ndarray = field(default=None, repr=False)

    @property
    def passed(self):
        return self.violations == 0

    def lines(self):
        tag = "PASS" if self.passed else "VIOLATION"
        coeffs = "" if self.coeffs is None else " coeffs=" + ",".join(f"{c:g}" for c in self.coeffs)
        return [
            f"config d={self.d} case={self.case} bipartition={self.bipartition} frame={self.frame}"
            f" samples={self.samples}{coeffs}",
            f"max_witness {self.max_witness:.12g}",
            f"bound {self.bound:.12g}",
            f"{tag} violations={self.violations}/{self.samples}",
        ]


def default_bound(d, bipartition, coeffs):
    """Biseparable bound used for a configuration.

    Qubits: ``3|b|`` for ``2|13`` and ``sqrt(b**2 + mu**2)`` otherwise.  Qudits:
    the larger of the two per-case bounds.
    """
    if d == 2:
        coeffs = CoefficientTriple(*coeffs)
        if party_of(bipartition) == 2:
            return 3 * abs(coeffs.b)
        return float(np.hypot(coeffs.b, coeffs.mu))
    return max(theorem2_bounds(d).values())


def sample_state(rng, d, case, bipartition, frame):
    """Draw one pure state of the requested case structure.

    ``frame="general"``: a Haar factor on party ``f`` times a gh-factor that is
    a product of two Haar states (case i) or carries a random Schmidt
    spectrum under random local unitaries (case ii).  ``frame="canonical"``:
    the fixed canonical vector with a random spectrum, rotated by random
    unitaries on the two parties other than ``f`` only.
    """
    f = party_of(bipartition)
    if frame == "canonical":
        terms = 2 if d == 2 else d
        t = random_spectrum(rng, d, terms)
        psi = canonical_biseparable(case, bipartition, t, d)
        us = [None, None, None]
        for p in (1, 2, 3):
            if p != f:
                us[p - 1] = random_unitary(rng, d)
        return apply_local(psi, us)
    if frame != "general":
        raise ValueError(f"frame must be 'general' or 'canonical', got {frame!r}")
    single = random_ket(rng, d)
    if case == "i":
        pair = np.kron(random_ket(rng, d), random_ket(rng, d))
    elif case == "ii":
        t = random_spectrum(rng, d)
        pair = np.diag(t).astype(complex)
        pair = random_unitary(rng, d) @ pair @ random_unitary(rng, d).T
    else:
        raise ValueError(f"case must be 'i' or 'ii', got {case!r}")
    return arrange(single, pair, f)


def witness(psi, d, bipartition, coeffs):
    dec = decompose(pure_density(psi))
    if d == 2:
        return trace_norm(s_matrix(dec, bipartition, CoefficientTriple(*coeffs)))
    return trace_norm(n_matrix(dec, bipartition))


def _search(seed, d, case, bipartition, samples, coeffs, frame):
    rng = np.random.default_rng(seed)
    best, best_psi, values = -np.inf, None, np.empty(samples)
    for n in range(samples):
        psi = sample_state(rng, d, case, bipartition, frame)
        values[n] = witness(psi, d, bipartition, coeffs)
        if values[n] > best:
            best, best_psi = values[n], psi
    return values, best_psi


def validate_bounds(
    seed,
    d,
    case,
    bipartition,
    samples=2000,
    coeffs=(0.0, 1.0, 0.0),
    frame="general",
    bound=None,
    tol=1e-8,
    jobs=1,
):
    """Search random biseparable pure states for witnesses above the bound.

    With ``jobs > 1`` the samples are split over worker processes; worker
    ``k`` draws from ``default_rng(seed + k)``.  Excess is reported through
    the returned :class:`BoundReport`, never raised.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    label = bipartition_label(bipartition)
    coeffs = tuple(CoefficientTriple(*coeffs)) if d == 2 else None
    bound = default_bound(d, label, coeffs) if bound is None else bound
    if jobs <= 1:
        values, worst = _search(seed, d, case, label, samples, coeffs, frame)
    else:
        chunks = [samples // jobs + (k < samples % jobs) for k in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            futures = [
                pool.submit(_search, seed + k, d, case, label, n, coeffs, frame)
                for k, n in enumerate(chunks)
                if n
            ]
            parts = [fut.result() for fut in futures]
        values = np.concatenate([p[0] for p in parts])
        worst = max(parts, key=lambda p: p[0].max())[1]
    return BoundReport(
        d=d,
        case=case,
        bipartition=label,
        frame=frame,
        samples=samples,
        bound=float(bound),
        max_witness=float(values.max()),
        violations=int(np.sum(values > bound + tol)),
        tol=tol,
        coeffs=coeffs,
        worst_state=worst,
    )
