"""Gamma-equivariant layer: averaging over the group, the trace tau, and the Gamma-index.

tau is normalised by tau(T_f) = Tr(T_{f0}) for f the Poincare series of a
compactly supported seed f0.  Commutator traces are estimated at finite
basis truncation N and word length L; both tails are reported.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from .bergman import BasisSpec, TruncatedOperator, representation_matrix
from .domain import FundamentalDomain, trivial_domain
from .quadrature import two_form_integral
from .symbols import (CollarSeed, Constant, InvariantSymbol, Sum, Symbol, boundary_restriction,
                      log_derivative_integral, support_in_domain, winding_numbers)
from .toeplitz import toeplitz_matrix


class NoValidCut(ValueError):
    pass


@dataclass
class EquivariantTraceEstimate:
    value: complex
    N: int
    L: int
    padding: int
    tail_N: float
    tail_L: float
    sequence: list = field(default_factory=list)  # rows (N, L, value)
    quadrature: complex | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tail_N < 0 or self.tail_L < 0:
            raise ValueError("tail indicators must be nonnegative")

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "L", "value_re", "value_im", "tail_N", "tail_L"])
            for n, l, v in self.sequence:
                w.writerow([n, l, repr(float(np.real(v))), repr(float(np.imag(v))),
                            repr(self.tail_N), repr(self.tail_L)])


# ---------------------------------------------------------------------------
# averaging


def _rows(domain, t, size, k, L):
    """pi_t(gamma)[:k, :size] for every word of length <= L, with the word lengths."""
    spec = BasisSpec(t, size - 1)
    out = []
    for word, g in domain.words(L):
        U = representation_matrix(g, spec).entries
        out.append((len(word), U[:k, :]))
    return out


def level_averages(A: TruncatedOperator, domain: FundamentalDomain, L, k=None):
    """Per word length l <= L: sum over |gamma| = l of pi(gamma) A pi(gamma)^*, top-left k x k."""
    size = A.spec.dim
    k = size if k is None else int(k)
    levels = [np.zeros((k, k), dtype=complex) for _ in range(L + 1)]
    for ell, P in _rows(domain, A.spec.t, size, k, L):
        levels[ell] += P @ A.entries @ P.conj().T
    return levels


def gamma_average(A: TruncatedOperator, domain: FundamentalDomain, L, spec: BasisSpec = None):
    """E_L(A) = sum_{|gamma| <= L} pi(gamma) A pi(gamma)^* compressed to ``spec``.

    ``A`` should be given at a padded size; the result keeps the first
    spec.dim modes (default: all).  Warns when the level-L increment is not
    smaller than the level-(L-1) one.
    """
    if L < 0:
        raise ValueError("L must be >= 0")
    k = A.spec.dim if spec is None else spec.dim
    if k > A.spec.dim:
        raise ValueError("output truncation exceeds the operator size")
    levels = level_averages(A, domain, L, k)
    inc = [np.linalg.norm(x) for x in levels]
    if L >= 2 and inc[L] > inc[L - 1]:
        warnings.warn(f"level-{L} increment {inc[L]:.2e} exceeds level-{L - 1} increment "
                      f"{inc[L - 1]:.2e}; N too small for the orbit spread", RuntimeWarning,
                      stacklevel=2)
    out_spec = BasisSpec(A.spec.t, k - 1)
    return TruncatedOperator(out_spec, np.sum(levels, axis=0))


# ---------------------------------------------------------------------------
# tau of Toeplitz operators


def tau_toeplitz(f0: Symbol, spec: BasisSpec, domain: FundamentalDomain = None):
    """tau(T_f) = Tr(T_{f0}) with a quadrature comparator ((t-1)/pi) int f0 dA/(1-|z|^2)^2."""
    if not spec.t > 2:
        raise ValueError("tau_toeplitz needs t > 2")
    if isinstance(f0, Constant) and f0.value == 0:
        return EquivariantTraceEstimate(0j, spec.N, 0, 0, 0.0, 0.0, [(spec.N, 0, 0j)], 0j)
    if not f0.is_compact:
        raise ValueError("seed support must stay a positive distance from the unit circle")
    if domain is not None and not support_in_domain(f0, domain):
        raise ValueError("seed support touches the boundary of the fundamental domain")
    T = toeplitz_matrix(f0, spec).entries
    diag = np.diag(T)
    value = complex(np.sum(diag))
    rule = f0.local_rule()
    z = rule.nodes
    quad = complex(np.sum(rule.weights * f0._eval(z) / (1 - np.abs(z) ** 2) ** 2)) * (spec.t - 1) / np.pi
    return EquivariantTraceEstimate(value, spec.N, 0, 0, float(abs(diag[-1])), 0.0,
                                    [(spec.N, 0, value)], quad)


# ---------------------------------------------------------------------------
# commutators


def _as_parts(f):
    if isinstance(f, (list, tuple)):
        return list(f)
    return [f]


def select_cut(f0: Symbol, g0: Symbol, domain: FundamentalDomain, candidates=()):
    """First domain among ``domain, *candidates`` containing both supports in its interior."""
    for dom in (domain, *candidates):
        if support_in_domain(f0, dom) and support_in_domain(g0, dom):
            return dom
    raise NoValidCut("no valid cut: the pair has no common vanishing interval on some component")


def _pair_levels(f0, g0, dom, spec, L, d, avg_pad):
    M = spec.N + 1 + d
    big = BasisSpec(spec.t, M + avg_pad - 1)
    A = toeplitz_matrix(f0, big)
    B = toeplitz_matrix(g0, big)
    Eg = level_averages(B, dom, L, M)
    Ef = level_averages(A, dom, L, M)
    return A.entries[:M, :M], B.entries[:M, :M], Ef, Eg


def tau_commutator(f, g, domain: FundamentalDomain, spec: BasisSpec, L, padding=None,
                   avg_padding=None, candidates=(), n_tail=None, quad_nodes=(64, 64),
                   quadrature=True, allow_low_t=False):
    """tau([T_f, T_g]) for f = sum_k PS(f_k), g = sum_s PS(g_s) (constants drop out).

    Each seed pair is evaluated as
        1/2 corner_trace([T_{f_k}, T_{g_s^(L)}] - [T_{g_s}, T_{f_k^(L)}]),
    where T_{h^(L)} is the level-L group average of T_h.  The comparator is
    (1/2 pi i) int_F df dg of the Gamma-invariant extensions.
    """
    if not spec.t > 5 and not allow_low_t:
        raise ValueError("tau_commutator needs t > 5")
    fs, gs = _as_parts(f), _as_parts(g)
    d = spec.N // 4 if padding is None else int(padding)
    ap = d if avg_padding is None else int(avg_padding)
    n_tail = max(1, spec.N // 6) if n_tail is None else int(n_tail)
    Ns = [spec.N - n_tail, spec.N] if spec.N - n_tail >= 0 else [spec.N]
    grid = {(n, l): 0j for n in Ns for l in range(L + 1)}
    same = len(fs) == len(gs) and all(a is b for a, b in zip(fs, gs))
    cuts = []
    if not same:
        for f0 in fs:
            for g0 in gs:
                dom = select_cut(f0, g0, domain, candidates)
                cuts.append(dom)
                A, B, Ef, Eg = _pair_levels(f0, g0, dom, spec, L, d, ap)
                for ell in range(L + 1):
                    C = 0.5 * ((A @ Eg[ell] - Eg[ell] @ A) - (B @ Ef[ell] - Ef[ell] @ B))
                    dg = np.diag(C)
                    for n in Ns:
                        for l in range(ell, L + 1):
                            grid[(n, l)] += np.sum(dg[: n + 1])
    seq = [(n, l, complex(grid[(n, l)])) for n in Ns for l in range(L + 1)]
    value = complex(grid[(spec.N, L)])
    tail_N = float(abs(grid[(spec.N, L)] - grid[(Ns[0], L)])) if len(Ns) > 1 else 0.0
    tail_L = float(abs(grid[(spec.N, L)] - grid[(spec.N, L - 1)])) if L >= 1 else 0.0
    quad = None
    if quadrature:
        quad = 0j if same else two_form_integral(invariant_extension(fs, domain),
                                                 invariant_extension(gs, domain), domain,
                                                 *quad_nodes)
    return EquivariantTraceEstimate(value, spec.N, L, d, tail_N, tail_L, seq, quad,
                                    {"cuts": len(set(map(id, cuts))) if cuts else 0})


def invariant_extension(seeds, domain, constant=0.0):
    seeds = _as_parts(seeds)
    base = seeds[0] if len(seeds) == 1 else Sum(seeds)
    return InvariantSymbol(base, domain, constant)


# ---------------------------------------------------------------------------
# index


def _collar_seeds(f):
    """Seeds of an invariant symbol 1 + sum of winding collars (for the inverse symbol)."""
    if not isinstance(f, InvariantSymbol) or f.constant != 1:
        return None
    base = f.seed
    terms = base.terms if isinstance(base, Sum) else [base]
    if not all(isinstance(s, CollarSeed) and s.kind == "winding" for s in terms):
        return None
    return terms


def _inverse_seed(s: CollarSeed):
    return CollarSeed(s.theta1, s.theta2, s.r0, s.r1, k=-s.k, kind="winding")


@dataclass
class IndexReport:
    index: int
    windings: list
    log_integral: complex
    integral_ok: bool
    experimental: EquivariantTraceEstimate | None = None
    extra: dict = field(default_factory=dict)


def gamma_index(f: Symbol, domain: FundamentalDomain = None, spec: BasisSpec = None, samples=256,
                experimental=False, L=1, tol=1e-10):
    """Sum of per-component winding numbers of f on the quotient boundary."""
    domain = trivial_domain() if domain is None else domain
    bd = boundary_restriction(f, domain, samples)
    if bd.min_abs() < tol:
        raise ValueError("not invertible on boundary")
    w = winding_numbers(bd, tol=tol)
    idx = int(sum(w))
    li = log_derivative_integral(bd)
    rep = IndexReport(idx, w, li, bool(abs(li - idx) < 1e-6))
    if experimental and spec is not None:
        seeds = _collar_seeds(f)
        if seeds is not None:
            inv = [_inverse_seed(s) for s in seeds]
            est = tau_commutator(seeds, inv, domain, spec, L, quadrature=False, allow_low_t=True)
            est.extra["EXPERIMENTAL"] = True
            rep.experimental = est
    return rep


def boundary_witness(domain: FundamentalDomain, component, k=1):
    from .symbols import collar_symbol

    return collar_symbol(domain, component, k)


def extension_probe(domain: FundamentalDomain = None, spec: BasisSpec = None, samples=256):
    """One nonzero-index witness 1 + f per quotient boundary component."""
    domain = trivial_domain() if domain is None else domain
    out = []
    for i in range(len(domain.components)):
        f = boundary_witness(domain, i, 1)
        rep = gamma_index(f, domain, samples=samples)
        out.append({"component": i, "windings": rep.windings, "index": rep.index,
                    "nonzero": rep.index != 0})
    return {"components": len(domain.components), "witnesses": out,
            "ok": all(w["nonzero"] for w in out)}


__all__ = ["EquivariantTraceEstimate", "IndexReport", "NoValidCut", "extension_probe",
           "gamma_average", "gamma_index", "invariant_extension", "level_averages", "select_cut",
           "tau_commutator", "tau_toeplitz"]
