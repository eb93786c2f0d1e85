"""Correlation tensors and their unfoldings.

A tripartite state is expanded as

    rho = d**-3 * sum_{p,q,s} R[p, q, s] A_p (x) A_q (x) A_s,
    R[p, q, s] = tr(rho A_p^dagger (x) A_q^dagger (x) A_s^dagger),

with ``p, q, s`` running over all ``d**2`` basis pairs (position 0 is the
identity).  The single-, two- and three-party coefficient families are
slices of ``R``.
"""

from dataclasses import dataclass

import numpy as np

from .basis import index_pairs, principal_basis
from .errors import UnsupportedDimension
from .linalg import trace_norm
from .states import conjugate_local, local_dim, party_of


@dataclass(frozen=True)
class CorrelationDecomposition:
    d: int
    full: np.ndarray

    @property
    def pairs(self):
        return index_pairs(self.d)

    @property
    def u(self):
        return self.full[1:, 0, 0]

    @property
    def v(self):
        return self.full[0, 1:, 0]

    @property
    def w(self):
        return self.full[0, 0, 1:]

    @property
    def xt(self):
        return self.full[1:, 1:, 0]

    @property
    def yt(self):
        return self.full[1:, 0, 1:]

    @property
    def zt(self):
        return self.full[0, 1:, 1:]

    @property
    def r(self):
        return self.full[1:, 1:, 1:]

    def coefficient(self, *pairs):
        """Look up a coefficient by index pairs, ``(0, 0)`` meaning identity."""
        idx = tuple(i * self.d + j for i, j in pairs)
        return self.full[idx]

    def reconstruct(self):
        stack = principal_basis(self.d).stack(include_identity=True)
        n = self.d**3
        t = np.einsum("pqs,pai,qbj,sck->abcijk", self.full, stack, stack, stack, optimize=True)
        return t.reshape(n, n) / n

    def __add__(self, other):
        return CorrelationDecomposition(self.d, self.full + other.full)

    def __mul__(self, scale):
        return CorrelationDecomposition(self.d, self.full * scale)

    __rmul__ = __mul__


def decompose(rho):
    """Full principal-basis correlation tensor of a ``d**3 x d**3`` matrix."""
    rho = np.asarray(rho, dtype=complex)
    d = local_dim(rho)
    adj = principal_basis(d).stack(include_identity=True).conj().transpose(0, 2, 1)
    t = rho.reshape((d,) * 6)
    # contract tr(rho B1 (x) B2 (x) B3) = sum rho[abc, xyz] B1[x, a] B2[y, b] B3[z, c]
    t = np.tensordot(adj, t, axes=([1, 2], [3, 0]))  # p, b, c, y, z
    t = np.tensordot(adj, t, axes=([1, 2], [3, 1]))  # q, p, c, z
    t = np.tensordot(adj, t, axes=([1, 2], [3, 2]))  # s, q, p
    return CorrelationDecomposition(d, t.transpose(2, 1, 0))


def _slice(dec, f, position):
    r = dec.r
    if f == 1:
        return r[position]
    if f == 2:
        return r[:, position, :]
    return r[:, :, position]


def t_matrix(dec, bipartition, k):
    """Qubit unfolding ``T_k^{f|gh}``, ``k = 1, 2, 3`` freezing party ``f`` to pair
    ``(0,1)``, ``(1,0)``, ``(1,1)``.  Rows follow the earlier remaining party,
    columns the later one."""
    if dec.d != 2:
        raise UnsupportedDimension("T matrices are defined for qubits; use n_matrix for d >= 3")
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    return _slice(dec, party_of(bipartition), k - 1)


def s_matrix(dec, bipartition, coeffs):
    """``a T_1 + b T_2 + c T_3`` for the given coefficient triple."""
    a, b, c = (coeffs.a, coeffs.b, coeffs.c) if hasattr(coeffs, "a") else coeffs
    return a * t_matrix(dec, bipartition, 1) + b * t_matrix(dec, bipartition, 2) + c * t_matrix(dec, bipartition, 3)


def qudit_slice(dec, bipartition, i):
    """Unfolding with party ``f`` frozen to the pair ``(i, 1)``."""
    d = dec.d
    return _slice(dec, party_of(bipartition), i * d + 1 - 1)


def n_matrix(dec, bipartition):
    """Phase-weighted sum of the ``(i, 1)`` slices.

    Party 1 uses unit weights; parties 2 and 3 weight slice ``k`` by
    ``omega**k``.
    """
    f = party_of(bipartition)
    omega = principal_basis(dec.d).omega
    out = np.zeros_like(dec.r[0])
    for k in range(dec.d):
        weight = 1.0 if f == 1 else omega**k
        out = out + weight * qudit_slice(dec, f, k)
    return out


def t_scalar(dec):
    """Average trace norm of the three N unfoldings."""
    return sum(trace_norm(n_matrix(dec, f)) for f in (1, 2, 3)) / 3


def transform_covariance_check(rho, u2, u3, f=1):
    """Maximum deviation between ``T_k(rho')`` and ``M^t T_k(rho) N``.

    ``rho' = (I (x) u2 (x) u3) rho (...)^dagger`` and ``M``, ``N`` are the
    conjugation coefficient matrices of ``u2`` and ``u3``.  With ``f`` other
    than 1 the unitaries act on the two remaining parties in order.
    """
    from .basis import conjugation_coefficients

    basis = principal_basis(2)
    m = conjugation_coefficients(basis, u2)
    n = conjugation_coefficients(basis, u3)
    f = party_of(f)
    unitaries = [None, None, None]
    rest = [p for p in (0, 1, 2) if p != f - 1]
    unitaries[rest[0]], unitaries[rest[1]] = u2, u3
    before = decompose(rho)
    after = decompose(conjugate_local(rho, unitaries))
    dev = 0.0
    for k in (1, 2, 3):
        direct = t_matrix(after, f, k)
        mapped = m.T @ t_matrix(before, f, k) @ n
        dev = max(dev, float(np.max(np.abs(direct - mapped))))
    return dev
