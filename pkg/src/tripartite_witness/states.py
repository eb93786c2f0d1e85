"""Reference states, noise families and random sampling for d x d x d systems.

Basis convention: ``|abc>`` sits at flat index ``a*d**2 + b*d + c`` (party 1
most significant).  Pure states are 1-D complex arrays of length ``d**3``;
density matrices are ``d**3 x d**3`` complex arrays.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimension, InvalidSpectrum, ParameterOutOfRange
from .linalg import as_matrix, hermitian_eigenvalues, hermiticity_error, singular_values

BIPARTITIONS = ("1|23", "2|13", "3|12")
DENSITY_TOL = 1e-10
POSITIVITY_TOL = -1e-9


def party_of(bipartition):
    """Single party ``f`` of a bipartition given as ``"f|gh"`` or as ``f``."""
    if isinstance(bipartition, (int, np.integer)):
        f = int(bipartition)
    else:
        text = str(bipartition).strip()
        if text not in BIPARTITIONS:
            raise ValueError(f"unknown bipartition {bipartition!r}; expected one of {BIPARTITIONS}")
        f = int(text[0])
    if f not in (1, 2, 3):
        raise ValueError(f"party must be 1, 2 or 3, got {f}")
    return f


def bipartition_label(f):
    return BIPARTITIONS[party_of(f) - 1]


def _check_dim(d):
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimension(f"dimension must be an integer >= 2, got {d!r}")
    return int(d)


def local_dim(x):
    """Local dimension ``d`` of a tripartite vector or density matrix."""
    n = np.shape(x)[0]
    d = int(round(n ** (1 / 3)))
    if d < 2 or d**3 != n:
        raise InvalidDimension(f"size {n} is not a cube d**3 with d >= 2")
    return d


def basis_ket(d, a, b, c):
    psi = np.zeros(d**3, dtype=complex)
    psi[a * d * d + b * d + c] = 1.0
    return psi


def pure_density(psi):
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def check_density(rho, tol=DENSITY_TOL):
    """Validate a tripartite density matrix and return it as a complex array."""
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    local_dim(rho)
    if hermiticity_error(rho) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix has trace {np.trace(rho).real:.12g}, expected 1")
    if hermitian_eigenvalues(rho, tol)[-1] < POSITIVITY_TOL:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def as_density(state):
    """Accept a pure state vector or a density matrix; return a validated density matrix."""
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        return check_density(pure_density(arr))
    return check_density(arr)


def ghz(d=2):
    """``(|00..0> + |111> + ... + |d-1,d-1,d-1>) / sqrt(d)``."""
    d = _check_dim(d)
    psi = np.zeros(d**3, dtype=complex)
    for k in range(d):
        psi[k * (d * d + d + 1)] = 1.0
    return psi / np.sqrt(d)


def w3():
    """Three-qubit W state ``(|100> + |010> + |001>) / sqrt(3)``."""
    psi = basis_ket(2, 1, 0, 0) + basis_ket(2, 0, 1, 0) + basis_ket(2, 0, 0, 1)
    return psi / np.sqrt(3)


@dataclass(frozen=True)
class NoiseFamily:
    """White-noise mixture of a pure target.

    ``kind="ghz"`` mixes as ``x/d**3 I + (1-x)|GHZ><GHZ|`` (``x`` is the noise
    weight); ``kind="w"`` mixes as ``(1-x)/8 I + x|W><W|`` (``x`` is the
    state weight).  The two conventions are deliberately opposite.
    """

    kind: str
    x: float
    d: int = 2

    def target(self):
        if self.kind == "ghz":
            return ghz(self.d)
        if self.kind == "w":
            if self.d != 2:
                raise InvalidDimension("the W family is defined for qubits only")
            return w3()
        raise ValueError(f"unknown noise family {self.kind!r}")

    @property
    def state_weight(self):
        return 1.0 - self.x if self.kind == "ghz" else self.x


def noisy_state(family):
    if not 0.0 <= family.x <= 1.0:
        raise ParameterOutOfRange(f"mixing parameter must lie in [0, 1], got {family.x}")
    return mix_with_noise(family.target(), family.state_weight)


def mix_with_noise(state, weight):
    """``weight * rho + (1 - weight) * I / n`` for a vector or density matrix."""
    arr = np.asarray(state, dtype=complex)
    rho = pure_density(arr) if arr.ndim == 1 else arr
    n = rho.shape[0]
    return weight * rho + (1.0 - weight) * np.eye(n) / n


def amplitude_unfolding(psi, bipartition):
    """``d x d**2`` matrix with the single party of the bipartition as row index."""
    psi = np.asarray(psi, dtype=complex).ravel()
    d = local_dim(psi)
    f = party_of(bipartition)
    tensor = np.moveaxis(psi.reshape(d, d, d), f - 1, 0)
    return tensor.reshape(d, d * d)


def schmidt_spectrum(psi, bipartition):
    """Schmidt coefficients across ``f|gh``, descending, squares summing to one."""
    return singular_values(amplitude_unfolding(psi, bipartition))


def _check_spectrum(t, d):
    t = np.asarray(t, dtype=float).ravel()
    if len(t) > d:
        raise InvalidSpectrum(f"{len(t)} Schmidt coefficients for dimension {d}")
    if np.any(t < 0) or abs(np.sum(t**2) - 1) > DENSITY_TOL:
        raise InvalidSpectrum("Schmidt coefficients must be non-negative with unit 2-norm")
    return np.concatenate([t, np.zeros(d - len(t))])


def canonical_biseparable(case, bipartition, t, d=2):
    """Canonical pure state of a Schmidt-reduced family.

    ``case="i"`` gives ``sum_k t_k |k, 0, k>`` and ``case="ii"`` gives
    ``sum_k t_k |k, k, k>``.  These are the fixed representatives for which
    the closed-form trace norms of every bipartition are stated, so the
    vector does not depend on ``bipartition`` (it is validated only).
    """
    d = _check_dim(d)
    party_of(bipartition)
    t = _check_spectrum(t, d)
    psi = np.zeros(d**3, dtype=complex)
    for k in range(d):
        if case == "i":
            psi[k * d * d + k] = t[k]
        elif case == "ii":
            psi[k * (d * d + d + 1)] = t[k]
        else:
            raise ValueError(f"case must be 'i' or 'ii', got {case!r}")
    return psi


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_ket(seed, n):
    """Normalised complex-Gaussian vector of length ``n`` (Haar distributed)."""
    rng = _rng(seed)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_pure(seed, d):
    return random_ket(seed, _check_dim(d) ** 3)


def random_unitary(seed, d):
    """Haar unitary from the QR factorisation of a complex Ginibre matrix."""
    rng = _rng(seed)
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def arrange(single, pair, bipartition):
    """Place ``|single>_f (x) |pair>_gh`` into party order 1, 2, 3."""
    single = np.asarray(single, dtype=complex)
    d = len(single)
    pair = np.asarray(pair, dtype=complex).reshape(d, d)
    tensor = np.einsum("f,gh->fgh", single, pair)
    f = party_of(bipartition)
    return np.moveaxis(tensor, 0, f - 1).reshape(-1)


def random_biseparable(seed, d, bipartition):
    """Random ``|phi_f> (x) |phi_gh>`` with both factors Haar distributed."""
    rng = _rng(seed)
    d = _check_dim(d)
    return arrange(random_ket(rng, d), random_ket(rng, d * d), bipartition)


def random_product(seed, d):
    rng = _rng(seed)
    d = _check_dim(d)
    a, b, c = (random_ket(rng, d) for _ in range(3))
    return np.kron(np.kron(a, b), c)


def random_density(seed, n, rank=None):
    """Random ``n x n`` density matrix ``G G^dagger / tr`` from a Ginibre ``G``."""
    rng = _rng(seed)
    k = n if rank is None else rank
    g = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_product_mixed(seed, d):
    """``rho_1 (x) rho_2 (x) rho_3`` with independent random single-party states."""
    rng = _rng(seed)
    d = _check_dim(d)
    a, b, c = (random_density(rng, d) for _ in range(3))
    return np.kron(np.kron(a, b), c)


def random_spectrum(seed, d, terms=None):
    """Random descending Schmidt coefficients with ``terms`` nonzero entries."""
    rng = _rng(seed)
    k = d if terms is None else terms
    t = np.abs(rng.normal(size=k))
    t = np.sort(t / np.linalg.norm(t))[::-1]
    return np.concatenate([t, np.zeros(d - k)])


def apply_local(psi, unitaries):
    """Apply ``U1 (x) U2 (x) U3`` to a pure state; ``None`` entries mean identity."""
    psi = np.asarray(psi, dtype=complex)
    d = local_dim(psi)
    tensor = psi.reshape(d, d, d)
    for axis, u in enumerate(unitaries):
        if u is not None:
            tensor = np.moveaxis(np.tensordot(u, tensor, axes=([1], [axis])), 0, axis)
    return tensor.reshape(-1)


def conjugate_local(rho, unitaries):
    """``U rho U^dagger`` for ``U = U1 (x) U2 (x) U3``; ``None`` means identity."""
    d = local_dim(rho)
    eye = np.eye(d)
    u = [eye if v is None else np.asarray(v) for v in unitaries]
    big = np.kron(np.kron(u[0], u[1]), u[2])
    return big @ rho @ big.conj().T
