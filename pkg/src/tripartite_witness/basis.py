"""Principal (Weyl-Heisenberg type) matrix basis.

For dimension ``d`` and ``omega = exp(2 pi i / d)`` the basis elements are

    A[i, j] = sum_m omega**(i*m) |m><m+j|,      i, j in Z_d,

which are orthogonal under the Hilbert-Schmidt product with
``tr(A[i,j] A[k,l]^dagger) = d * delta_ik * delta_jl``.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import InvalidDimension, NotUnitary
from .linalg import as_matrix, is_unitary


def index_pairs(d, include_identity=False):
    """Index pairs ``(i, j)`` in lexicographic order, ``(0, 0)`` optionally dropped."""
    pairs = list(product(range(d), repeat=2))
    return pairs if include_identity else pairs[1:]


@dataclass(frozen=True)
class PrincipalBasis:
    d: int
    omega: complex
    elements: dict = field(repr=False)

    def __getitem__(self, ij):
        return self.elements[tuple(ij)]

    @property
    def pairs(self):
        """Non-identity index pairs in the fixed lexicographic order."""
        return index_pairs(self.d)

    def stack(self, include_identity=True):
        """All basis matrices as a ``(n, d, d)`` array in lexicographic order."""
        return np.array([self.elements[p] for p in index_pairs(self.d, include_identity)])

    def position(self, ij):
        """Row/column position of a non-identity pair in every unfolding."""
        i, j = ij
        if (i, j) == (0, 0):
            raise KeyError("the identity has no position among non-identity pairs")
        return i * self.d + j - 1


@lru_cache(maxsize=None)
def _build(d):
    omega = np.exp(2j * np.pi / d)
    if d == 2:
        omega = -1.0 + 0j
    elements = {}
    m = np.arange(d)
    for i, j in index_pairs(d, include_identity=True):
        a = np.zeros((d, d), dtype=complex)
        a[m, (m + j) % d] = omega ** ((i * m) % d)
        if d == 2:
            a = a.real.astype(complex)
        a.setflags(write=False)
        elements[(i, j)] = a
    return PrincipalBasis(d, complex(omega), elements)


def principal_basis(d):
    """Return the (cached, read-only) principal basis for dimension ``d``."""
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimension(f"dimension must be an integer >= 2, got {d!r}")
    return _build(int(d))


def expansion_coefficients(basis, b):
    """Coefficients ``tr(A^dagger b) / d`` of ``b`` over all ``d**2`` elements."""
    stack = basis.stack(include_identity=True)
    return np.einsum("nij,ij->n", stack.conj(), as_matrix(b)) / basis.d


def reconstruct(basis, coeffs):
    return np.einsum("n,nij->ij", np.asarray(coeffs), basis.stack(include_identity=True))


def conjugation_coefficients(basis, u, tol=1e-10):
    """Transition matrix of ``A -> u A u^dagger`` over the non-identity elements.

    Entry ``[p, q]`` is the coefficient of element ``q`` in ``u A_p u^dagger``,
    i.e. ``tr(A_q^dagger u A_p u^dagger) / d``; rows and columns follow
    :func:`index_pairs`.  The result is unitary.
    """
    u = as_matrix(u)
    if u.shape != (basis.d, basis.d) or not is_unitary(u, tol):
        raise NotUnitary(f"expected a {basis.d}x{basis.d} unitary")
    stack = basis.stack(include_identity=False)
    conj = u[None] @ stack @ u.conj().T[None]
    return np.einsum("qij,pij->pq", stack.conj(), conj) / basis.d
