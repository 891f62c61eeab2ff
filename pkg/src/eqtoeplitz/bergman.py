"""Weighted Bergman space H_t at finite truncation.

Measure: dmu_t = ((t-1)/pi) (1-|z|^2)^(t-2) dA, so ||1|| = 1 and the
reproducing kernel is (1 - z conj(w))^(-t).  Operators are stored in the
orthonormal basis e_n = z^n / ||z^n||, n = 0..N.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .mobius import MobiusTransform, _check_open_disc

_TABLE_MAX = 1 << 16


def _check_weight(t):
    if not t > 1:
        raise ValueError(f"weight t must exceed 1, got {t}")


@dataclass(frozen=True)
class BasisSpec:
    t: float
    N: int

    def __post_init__(self):
        _check_weight(self.t)
        if int(self.N) != self.N or self.N < 0:
            raise ValueError("N must be a non-negative integer")
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "N", int(self.N))

    @property
    def dim(self):
        return self.N + 1

    def padded(self, d):
        return BasisSpec(self.t, self.N + int(d))


@lru_cache(maxsize=64)
def _norm_table(t, size):
    # h_n = prod_{k<=n} k/(k+t-1); the running product is accurate to a few ulp
    k = np.arange(1, size, dtype=float)
    h = np.concatenate([[1.0], np.cumprod(k / (k + t - 1.0))])
    h.setflags(write=False)
    return h


def log_basis_norm_sq(n, t):
    """log ||z^n||^2 = log( n! Gamma(t) / Gamma(n+t) )."""
    _check_weight(t)
    n = np.asarray(n, dtype=float)
    if np.any(n < 0):
        raise ValueError("degree must be >= 0")
    nmax = float(np.max(n)) if n.size else 0.0
    if n.size and nmax < _TABLE_MAX and np.all(n == np.floor(n)):
        h = _norm_table(float(t), 1 << max(6, int(nmax).bit_length()))
        vals = h[n.astype(np.int64)]
        if np.all(vals > 1e-290):
            return np.log(vals)
    # gammaln route loses ~1e-13 relative for large arguments
    return gammaln(n + 1) + gammaln(t) - gammaln(n + t)


def basis_norm_sq(n, t):
    return np.exp(log_basis_norm_sq(n, t))


def basis_norm(n, t):
    return np.exp(0.5 * log_basis_norm_sq(n, t))


def kernel(z, w, t):
    """Reproducing kernel (1 - z conj(w))^(-t), principal branch."""
    z = np.asarray(z)
    w = np.asarray(w)
    _check_open_disc(z)
    _check_open_disc(w)
    return np.exp(-t * np.log(1 - z * np.conj(w)))


def basis_values(z, spec_or_n, t=None):
    """Matrix V[j, n] = e_n(z_j) for n = 0..N, built by a stable recurrence."""
    if isinstance(spec_or_n, BasisSpec):
        N, t = spec_or_n.N, spec_or_n.t
    else:
        N = int(spec_or_n)
    z = np.asarray(z, dtype=complex).ravel()
    V = np.empty((z.size, N + 1), dtype=complex)
    V[:, 0] = 1.0
    if N >= 1:
        n = np.arange(1, N + 1)
        # e_n / e_{n-1} = z * sqrt(h_{n-1}/h_n) = z * sqrt((n+t-1)/n)
        ratio = np.sqrt((n + t - 1.0) / n)
        for k in range(1, N + 1):
            V[:, k] = V[:, k - 1] * z * ratio[k - 1]
    return V


@dataclass
class TruncatedOperator:
    """Operator compressed to span{e_0..e_N}; entries[m, n] = <A e_n, e_m>."""

    spec: BasisSpec
    entries: np.ndarray

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (self.spec.dim, self.spec.dim):
            raise ValueError(f"entries shape {self.entries.shape} does not match N={self.spec.N}")

    @classmethod
    def identity(cls, spec):
        return cls(spec, np.eye(spec.dim, dtype=complex))

    @property
    def H(self):
        return TruncatedOperator(self.spec, self.entries.conj().T)

    def _other(self, other):
        if isinstance(other, TruncatedOperator):
            if other.spec != self.spec:
                raise ValueError("operators live on different truncations")
            return other.entries
        return other

    def __matmul__(self, other):
        return TruncatedOperator(self.spec, self.entries @ self._other(other))

    def __add__(self, other):
        return TruncatedOperator(self.spec, self.entries + self._other(other))

    def __sub__(self, other):
        return TruncatedOperator(self.spec, self.entries - self._other(other))

    def __mul__(self, c):
        return TruncatedOperator(self.spec, self.entries * c)

    __rmul__ = __mul__

    def __neg__(self):
        return TruncatedOperator(self.spec, -self.entries)

    def commutator(self, other):
        B = self._other(other)
        return TruncatedOperator(self.spec, self.entries @ B - B @ self.entries)

    def block(self, k):
        if k > self.spec.dim:
            raise ValueError("block larger than operator")
        return self.entries[:k, :k]

    def compress(self, N):
        return TruncatedOperator(BasisSpec(self.spec.t, N), self.entries[: N + 1, : N + 1].copy())

    def trace(self):
        return complex(np.trace(self.entries))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            for row in self.entries:
                w.writerow([f"{x.real!r},{x.imag!r}" for x in row])


def corner_trace(A, k):
    """Sum of the first k diagonal entries."""
    E = A.entries if isinstance(A, TruncatedOperator) else np.asarray(A)
    if k > E.shape[0]:
        raise ValueError(f"corner size {k} exceeds operator size {E.shape[0]}")
    if k < 0:
        raise ValueError("corner size must be non-negative")
    return complex(np.sum(np.diag(E)[:k]))


def _contour_params(N):
    # radius close enough to 1 that r^-N stays O(e^4); node count so that r^K ~ e^-64
    r = max(0.75, float(np.exp(-4.0 / (N + 1))))
    K = 16 * (N + 1)
    return r, K


def representation_matrix(g: MobiusTransform, spec: BasisSpec, radius=None, nodes=None,
                          check_block=None):
    """Matrix of pi_t(g): h -> (h o g^-1) * ((g^-1)')^(t/2), compressed to degrees <= N.

    The half-integer power uses log((g^-1)') = -2 [log(conj a') + log1p(conj(b') z / conj(a'))]
    with a' = conj(a), b' = -b the coefficients of g^-1; the second log is analytic on the
    closed disc, so the branch is continuous and equals 1 at the identity.
    Entries come from FFT contour quadrature of the Taylor coefficients.
    """
    N, t = spec.N, spec.t
    r0, K0 = _contour_params(N)
    r = r0 if radius is None else float(radius)
    K = K0 if nodes is None else int(nodes)
    if not 0 < r < 1:
        raise ValueError("contour radius must lie in (0, 1)")
    if K < N + 1:
        raise ValueError("need at least N+1 contour nodes")

    gi = g.inverse()
    ai, bi = gi.a, gi.b
    z = r * np.exp(2j * np.pi * np.arange(K) / K)
    w = gi(z)
    log_base = np.log(ai.conjugate()) + np.log1p(bi.conjugate() * z / ai.conjugate())
    jac = np.exp(-t * log_base)
    E = basis_values(w, spec) * jac[:, None]
    coeff = np.fft.fft(E, axis=0)[: N + 1] / K
    m = np.arange(N + 1)
    scale = np.exp(0.5 * log_basis_norm_sq(m, t) - m * np.log(r))
    U = coeff * scale[:, None]
    op = TruncatedOperator(spec, U)
    if check_block is not None:
        k = min(int(check_block), spec.dim)
        defect = unitarity_defect(op, k)
        if defect > 1e-6:
            warnings.warn(f"unitarity defect {defect:.2e} on the {k}x{k} block exceeds 1e-6",
                          RuntimeWarning, stacklevel=2)
    return op


def unitarity_defect(U, k):
    E = U.entries if isinstance(U, TruncatedOperator) else np.asarray(U)
    G = E.conj().T @ E
    return float(np.linalg.norm(G[:k, :k] - np.eye(k), 2))


def dbar_inverse(spec: BasisSpec) -> TruncatedOperator:
    """z^n -> z^(n+1)/(n+1); subdiagonal entries 1/sqrt((n+1)(n+t))."""
    if spec.N < 1:
        raise ValueError("dbar_inverse needs N >= 1")
    n = np.arange(spec.N)
    E = np.zeros((spec.dim, spec.dim), dtype=complex)
    E[n + 1, n] = 1.0 / np.sqrt((n + 1.0) * (n + spec.t))
    return TruncatedOperator(spec, E)


def derivative_matrix(spec: BasisSpec) -> TruncatedOperator:
    """d/dz on polynomials of degree <= N: superdiagonal sqrt(n (n+t-1))."""
    n = np.arange(1, spec.N + 1)
    E = np.zeros((spec.dim, spec.dim), dtype=complex)
    E[n - 1, n] = np.sqrt(n * (n + spec.t - 1.0))
    return TruncatedOperator(spec, E)
