"""Toeplitz matrices on truncations of H_t and the classical trace formulas.

Products and commutators are formed at a padded size N+1+d and then
corner-traced over the first N+1 modes.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from . import _kernels
from .bergman import BasisSpec, TruncatedOperator, basis_values, corner_trace, log_basis_norm_sq
from .symbols import (Constant, Conjugate, Laurent, Product, Radial, Scaled, Sum, Symbol,
                      boundary_restriction)
from .quadrature import boundary_form_integral


# ---------------------------------------------------------------------------
# assembly


def _laurent_entries(f: Laurent, P, t):
    T = np.zeros((P, P), dtype=complex)
    for (j, k), c in f.coeffs.items():
        n = np.arange(P)
        m = n + k - j
        ok = (m >= 0) & (m < P)
        n, m = n[ok], m[ok]
        # <conj(z)^j z^k e_n, e_m> = h_{n+k} / sqrt(h_n h_m)
        logv = log_basis_norm_sq(n + k, t) - 0.5 * (log_basis_norm_sq(n, t) + log_basis_norm_sq(m, t))
        T[m, n] += c * np.exp(logv)
    return T


def _radial_entries(f: Radial, P, t, nodes=256):
    n = np.arange(P)
    if f.umax is None:
        x, w = roots_jacobi(nodes, t - 2.0, 0.0)
        u = 0.5 * (1 + x)
        w = w / 2.0 ** (t - 1.0)
    else:
        x, w = roots_legendre(nodes)
        u = 0.5 * f.umax * (1 + x)
        w = 0.5 * f.umax * w * (1 - u) ** (t - 2.0)
    phi = np.asarray(f.profile(u), dtype=complex)
    # (t-1) int phi u^n (1-u)^(t-2) du / h_n, evaluated in logs
    logu = np.log(u)
    d = np.array([np.sum(w * phi * np.exp(k * logu - log_basis_norm_sq(k, t))) for k in n])
    return np.diag((t - 1.0) * d)


def _compact_entries(f: Symbol, P, t):
    rule = f.local_rule()
    if rule.nodes.size == 0:
        return np.zeros((P, P), dtype=complex)
    z = rule.nodes
    c = (t - 1.0) / np.pi * rule.weights * (1 - np.abs(z) ** 2) ** (t - 2.0) * f._eval(z)
    V = basis_values(z, P - 1, t)
    return V.conj().T @ (c[:, None] * V)


def _global_entries(f: Symbol, P, t, radial=None, angular=None):
    nr = radial or 2 * P
    na = angular or 4 * P
    x, w = roots_jacobi(nr, t - 2.0, 0.0)
    u = 0.5 * (1 + x)
    w = (t - 1.0) * w / 2.0 ** (t - 1.0)
    phi = 2 * np.pi * np.arange(na) / na
    z = np.sqrt(u)[:, None] * np.exp(1j * phi)[None, :]
    vals = f._eval(z)
    Fh = np.fft.fft(vals, axis=1) / na
    k = np.arange(-(P - 1), P)
    F = Fh[:, np.mod(k, na)]
    n = np.arange(P)
    A = np.exp(0.5 * n[None, :] * np.log(u)[:, None] - 0.5 * log_basis_norm_sq(n, t)[None, :])
    return _kernels.ring_assembly(w, A, F)


def _entries(f, P, t):
    if isinstance(f, Constant):
        return f.value * np.eye(P, dtype=complex)
    if isinstance(f, Laurent):
        return _laurent_entries(f, P, t)
    if isinstance(f, Scaled):
        return f.c * _entries(f.f, P, t)
    if isinstance(f, Sum):
        out = np.zeros((P, P), dtype=complex)
        for term in f.terms:
            out += _entries(term, P, t)
        return out
    if isinstance(f, Conjugate):
        return _entries(f.f, P, t).conj().T
    if isinstance(f, Radial) and f.umax is not None:
        return _radial_entries(f, P, t)
    if f.is_compact and f.local_rule() is not None:
        return _compact_entries(f, P, t)
    if isinstance(f, Radial):
        return _radial_entries(f, P, t)
    return _global_entries(f, P, t)


def toeplitz_matrix(f: Symbol, spec: BasisSpec) -> TruncatedOperator:
    """Matrix of T_f = P_t M_f P_t in the basis e_0..e_N."""
    if not isinstance(f, Symbol):
        f = Constant(f)
    E = _entries(f, spec.dim, spec.t)
    if not np.all(np.isfinite(E)):
        raise ValueError("symbol is not bounded on the disc (non-finite Toeplitz entries)")
    return TruncatedOperator(spec, E)


# ---------------------------------------------------------------------------
# traces


def bandwidth(f):
    if isinstance(f, Laurent):
        return f.bandwidth
    if isinstance(f, Constant):
        return 0
    return None


def default_padding(f, g, N):
    bf, bg = bandwidth(f), bandwidth(g)
    if bf is not None and bg is not None:
        return bf + bg
    return max(N // 4, (bf or 0) + (bg or 0))


def _padded(f, spec, d):
    return toeplitz_matrix(f, spec.padded(d)).entries


def _check_padding(f, g, d):
    bf, bg = bandwidth(f), bandwidth(g)
    if bf is not None and bg is not None and d < bf + bg:
        raise ValueError(f"padding {d} is below the combined bandwidth {bf + bg}")


def commutator_trace(f, g, spec: BasisSpec, padding=None):
    """Corner trace over N+1 modes of [T_f, T_g] formed at size N+1+d."""
    d = default_padding(f, g, spec.N) if padding is None else int(padding)
    _check_padding(f, g, d)
    if f is g:
        return 0.0 + 0.0j
    A = _padded(f, spec, d)
    B = _padded(g, spec, d)
    return corner_trace(A @ B - B @ A, spec.dim)


def semicommutator_trace(f, g, spec: BasisSpec, padding=None):
    """Corner trace of T_{fg} - T_f T_g."""
    d = default_padding(f, g, spec.N) if padding is None else int(padding)
    _check_padding(f, g, d)
    fg = f * g if isinstance(f, Laurent) and isinstance(g, Laurent) else Product(f, g)
    A = _padded(f, spec, d)
    B = _padded(g, spec, d)
    C = _padded(fg, spec, d)
    return corner_trace(C - A @ B, spec.dim)


def hankel_terms(f, spec: BasisSpec, padding=None):
    """Per-mode contributions ||f e_n||^2 - ||P(f e_n)||^2 + (same for conj f), n <= N."""
    d = default_padding(f, f, spec.N) if padding is None else int(padding)
    M = spec.padded(d)
    fb = f.conj()
    ff = f * fb if isinstance(f, (Laurent, Constant)) else Product(f, fb)
    Tf = toeplitz_matrix(f, M).entries
    Tfb = toeplitz_matrix(fb, M).entries
    G = np.real(np.diag(toeplitz_matrix(ff, M).entries))
    n = spec.dim
    a = G[:n] - np.sum(np.abs(Tf[:, :n]) ** 2, axis=0)
    b = G[:n] - np.sum(np.abs(Tfb[:, :n]) ** 2, axis=0)
    return a + b


def hankel_s2_norm_sq(f, spec: BasisSpec, padding=None, tol=None):
    """||H_f||_2^2 + ||H_{conj f}||_2^2 truncated to modes n <= N."""
    terms = hankel_terms(f, spec, padding)
    if tol is not None and abs(terms[-1]) > tol:
        warnings.warn(f"last Hankel term {terms[-1]:.2e} exceeds tolerance {tol:.0e}",
                      RuntimeWarning, stacklevel=2)
    return float(np.sum(terms))


# ---------------------------------------------------------------------------
# Carey-Pincus


def _parse_poly(P):
    """Noncommutative polynomial: dict word -> coefficient, word over 'x' and 'X' (adjoint)."""
    if isinstance(P, str):
        P = {P: 1.0}
    out = {}
    for w, c in dict(P).items():
        if any(ch not in "xX" for ch in w):
            raise ValueError(f"word {w!r} uses letters other than x and X")
        out[w] = complex(c)
    return out


def _poly_degree(P):
    return max((len(w) for w in P), default=0)


def _poly_operator(P, T, Ts):
    n = T.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for w, c in P.items():
        M = np.eye(n, dtype=complex)
        for ch in w:
            M = M @ (T if ch == "x" else Ts)
        out += c * M
    return out


def _poly_symbol(P, f):
    fb = f.conj()
    terms = []
    for w, c in P.items():
        s = Constant(c)
        for ch in w:
            s = s * (f if ch == "x" else fb)
        terms.append(s)
    return Sum(terms)


def carey_pincus_check(P, Q, f, spec: BasisSpec, padding=None, samples=None):
    """(lhs, rhs): corner trace of [P(T*,T), Q(T*,T)] and (1/2 pi i) loop integral of P dQ."""
    P, Q = _parse_poly(P), _parse_poly(Q)
    b = bandwidth(f)
    need = (_poly_degree(P) + _poly_degree(Q)) * (b if b is not None else 1)
    d = need if padding is None else int(padding)
    if b is not None and d < need:
        raise ValueError(f"padding {d} too small for polynomial degrees (need {need})")
    T = toeplitz_matrix(f, spec.padded(d)).entries
    A = _poly_operator(P, T, T.conj().T)
    B = _poly_operator(Q, T, T.conj().T)
    lhs = corner_trace(A @ B - B @ A, spec.dim)
    deg = (_poly_degree(P) + _poly_degree(Q)) * (getattr(f, "degree", 8) or 1)
    n = samples or max(128, 4 * deg + 4)
    rhs = boundary_form_integral(boundary_restriction(_poly_symbol(P, f), samples=n),
                                 boundary_restriction(_poly_symbol(Q, f), samples=n))
    return lhs, rhs
