"""Quadrature on the disc.

Measures:

* ``mu_t``     : ((t-1)/pi) (1-|z|^2)^(t-2) dA, total mass 1;
* ``mu_0``     : 4 dA / (1-|z|^2)^2, curvature -1 hyperbolic area;
* ``lebesgue`` : dA.

Rules are tensor products in (u = |z|^2, theta): Gauss-Jacobi / Gauss-Legendre
in u, equispaced trapezoid in theta.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from . import _kernels

MEASURES = ("mu_t", "mu_0", "lebesgue")


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    measure: str
    t: float | None = None
    order: int = 0
    rings: int = 0

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        if np.any(np.abs(self.nodes) >= 1):
            raise ValueError("quadrature nodes must lie strictly inside the disc")
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be positive")

    def __len__(self):
        return self.nodes.size

    def restrict(self, mask):
        mask = np.asarray(mask, dtype=bool)
        return QuadratureRule(self.nodes[mask], self.weights[mask], self.measure, self.t,
                              self.order, 0)


def _u_rule(n, alpha, umax=1.0):
    """Nodes/weights for int_0^umax g(u) (1-u)^alpha du (Jacobi only when umax == 1)."""
    if umax >= 1.0:
        if alpha == 0:
            x, w = roots_legendre(n)
        else:
            x, w = roots_jacobi(n, alpha, 0.0)
        return 0.5 * (1 + x), w / 2.0 ** (alpha + 1)
    x, w = roots_legendre(n)
    u = 0.5 * umax * (1 + x)
    return u, 0.5 * umax * w * (1 - u) ** alpha


def disc_rule(measure, radial_nodes, angular_nodes, t=None, rmax=1.0, decay=None):
    """Tensor rule on {|z| < rmax}.

    For ``mu_0`` the radial Gauss-Jacobi exponent is ``decay - 2`` (default
    ``decay = 2``, i.e. Legendre); choose ``decay`` to match the decay of the
    integrand at the boundary, e.g. ``decay = t`` for delta^t weights.
    """
    if radial_nodes < 4 or angular_nodes < 4:
        raise ValueError("need at least 4 radial and 4 angular nodes")
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}")
    umax = float(rmax) ** 2
    dth = 2 * np.pi / angular_nodes
    if measure == "mu_t":
        if t is None or not t > 1:
            raise ValueError("mu_t rules need t > 1")
        u, w = _u_rule(radial_nodes, t - 2.0, umax)
        wr = (t - 1) / np.pi * 0.5 * w * dth
    elif measure == "mu_0":
        s = 2.0 if decay is None else float(decay)
        u, w = _u_rule(radial_nodes, s - 2.0, umax)
        wr = 2.0 * w * (1 - u) ** (-s) * dth
    else:
        u, w = _u_rule(radial_nodes, 0.0, umax)
        wr = 0.5 * w * dth
    theta = dth * np.arange(angular_nodes)
    z = np.sqrt(u)[:, None] * np.exp(1j * theta)[None, :]
    W = np.repeat(wr, angular_nodes)
    return QuadratureRule(z.ravel(), W, measure, None if t is None else float(t),
                          order=2 * radial_nodes - 1, rings=radial_nodes)


def _values(f, z):
    if hasattr(f, "evaluate"):
        return f.evaluate(z)
    return f(z)


def integrate(f, rule: QuadratureRule):
    """Weighted sum over the rule (numpy's pairwise summation)."""
    vals = np.asarray(_values(f, rule.nodes), dtype=complex)
    return complex(np.sum(vals * rule.weights))


# ---------------------------------------------------------------------------
# delta^t weighted double integrals


def delta_pair_prefactor(t):
    """((t-1)/(4 pi))^2: makes sum over basis of Hankel norms match the double integral."""
    return ((t - 1.0) / (4.0 * np.pi)) ** 2


def mobius_to(b, w):
    """phi_b(w) = (w + b) / (1 + conj(b) w), taking 0 to b."""
    return (w + b) / (1 + np.conj(b) * w)


def delta_integral(t, b0, rule: QuadratureRule):
    """int_D delta^t(a, b0) dmu_0(a) on a plain (non-comoving) mu_0 rule."""
    a = rule.nodes
    d = (1 - np.abs(a) ** 2) * (1 - abs(b0) ** 2) / np.abs(1 - a * np.conj(b0)) ** 2
    return float(np.sum(rule.weights * d ** t))


def delta_pair_integral(f2, t, rule_a, rule_b, restrict_b=None, scheme="comoving",
                        tail_tol=1e-2, chunk=64):
    """((t-1)/4pi)^2 * iint f2(a, b) delta^t(a, b) dmu_0(a) dmu_0(b).

    ``scheme="comoving"`` (default): ``rule_b`` is a mu_0 rule for the outer
    variable b (optionally restricted by the indicator ``restrict_b``) and
    ``rule_a`` is a mu_t rule in the coordinates w with a = phi_b(w); by
    invariance delta^t dmu_0(a) = (4 pi/(t-1)) dmu_t(w), so the peak of the
    weight is integrated exactly.

    ``scheme="tensor"``: both rules are plain mu_0 rules and the weight is
    evaluated pointwise; symmetric in (a, b) when the rules coincide.
    """
    if not t > 1:
        raise ValueError("t must exceed 1")
    if restrict_b is not None:
        mask = np.asarray(restrict_b(rule_b.nodes), dtype=bool)
        rule_b = rule_b.restrict(mask)
    c = delta_pair_prefactor(t)
    b = rule_b.nodes
    wb = rule_b.weights

    if scheme == "tensor":
        total = 0.0 + 0.0j
        a = rule_a.nodes
        wa = rule_a.weights
        sa = 1 - np.abs(a) ** 2
        for s in range(0, b.size, chunk):
            bb = b[s:s + chunk, None]
            d = sa[None, :] * (1 - np.abs(bb) ** 2) / np.abs(1 - a[None, :] * np.conj(bb)) ** 2
            vals = f2(a[None, :], bb)
            total += np.sum(wb[s:s + chunk, None] * wa[None, :] * d ** t * vals)
        return c * complex(total)

    if scheme != "comoving":
        raise ValueError(f"unknown scheme {scheme!r}")
    if rule_a.measure != "mu_t" or rule_a.t != float(t):
        raise ValueError("comoving scheme needs a mu_t inner rule with the same t")
    w = rule_a.nodes
    ww = rule_a.weights
    inner = np.empty(b.size, dtype=complex)
    for s in range(0, b.size, chunk):
        bb = b[s:s + chunk, None]
        a = mobius_to(bb, w[None, :])
        inner[s:s + chunk] = np.sum(np.asarray(f2(a, bb)) * ww[None, :], axis=1)
    inner *= 4 * np.pi / (t - 1)

    if rule_b.rings:
        # contribution of the outermost ring relative to the whole
        na = b.size // rule_b.rings
        outer = np.sum(np.abs(inner[-na:] * wb[-na:]))
        whole = np.sum(np.abs(inner * wb))
        if whole > 0 and outer / whole > tail_tol:
            warnings.warn(f"outer-ring share {outer / whole:.2e} exceeds {tail_tol:.0e}; "
                          "refine the radial rule", RuntimeWarning, stacklevel=2)
    return c * complex(np.sum(inner * wb))


def delta_pair_separable(terms, t, rule_a, rule_b):
    """Tensor-scheme double integral of sum_k u_k(a) v_k(b), via the compiled kernel.

    ``terms`` is a list of pairs of callables ``(u_k, v_k)``.
    """
    a, b = rule_a.nodes, rule_b.nodes
    U = np.column_stack([np.broadcast_to(np.asarray(u(a), dtype=complex), a.shape)
                         for u, _ in terms])
    V = np.column_stack([np.broadcast_to(np.asarray(v(b), dtype=complex), b.shape)
                         for _, v in terms])
    S = _kernels.delta_pair_separable(a, rule_a.weights, b, rule_b.weights, U, V, t)
    return delta_pair_prefactor(t) * complex(np.sum(S))


# ---------------------------------------------------------------------------
# 2-form integrals


@dataclass(frozen=True)
class AreaRule:
    """Nodes and Lebesgue (dA) weights on a star-shaped region."""

    nodes: np.ndarray
    weights: np.ndarray

    def to_mu0(self):
        return self.weights * 4.0 / (1 - np.abs(self.nodes) ** 2) ** 2


def polar_star_rule(radius_fn, breakpoints, radial_nodes=64, angular_nodes=64, periodic=False,
                    rmax=1.0):
    """Rule for {r e^{i theta} : r < min(R(theta), rmax)} where R is smooth between breakpoints.

    Each theta panel uses Gauss-Legendre in s with theta = lo + (hi-lo)(1-cos(pi s))/2,
    which absorbs square-root behaviour of R at the panel ends.  With
    ``periodic`` and no breakpoints a plain trapezoid in theta is used.
    """
    xr, wr = roots_legendre(radial_nodes)
    xr = 0.5 * (1 + xr)
    wr = 0.5 * wr
    thetas, wth = [], []
    if periodic and len(breakpoints) == 0:
        thetas.append(2 * np.pi * np.arange(angular_nodes) / angular_nodes)
        wth.append(np.full(angular_nodes, 2 * np.pi / angular_nodes))
    else:
        bp = np.sort(np.mod(np.asarray(breakpoints, dtype=float), 2 * np.pi))
        edges = np.append(bp, bp[0] + 2 * np.pi)
        xs, ws = roots_legendre(angular_nodes)
        s = 0.5 * (1 + xs)
        ws = 0.5 * ws
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi - lo < 1e-15:
                continue
            thetas.append(lo + (hi - lo) * 0.5 * (1 - np.cos(np.pi * s)))
            wth.append(ws * (hi - lo) * 0.5 * np.pi * np.sin(np.pi * s))
    theta = np.concatenate(thetas)
    wt = np.concatenate(wth)
    R = np.minimum(radius_fn(theta), rmax)
    r = R[:, None] * xr[None, :]
    W = wt[:, None] * (R[:, None] * wr[None, :]) * r
    z = r * np.exp(1j * theta)[:, None]
    return AreaRule(z.ravel(), W.ravel())


def disc_area_rule(radial_nodes=64, angular_nodes=128, rmax=1.0):
    return polar_star_rule(lambda th: np.ones_like(th), [], radial_nodes, angular_nodes,
                           periodic=True, rmax=rmax)


def region_rule(region=None, radial_nodes=64, angular_nodes=128, rmax=1.0):
    if region is None:
        return disc_area_rule(radial_nodes, angular_nodes, rmax)
    return region.area_rule(radial_nodes, angular_nodes, rmax=rmax)


def two_form_density(f, g, z):
    """Coefficient of dA in (1/2 pi i) df ^ dg: -(1/pi)(f_z g_zbar - f_zbar g_z)."""
    return -(f.dz(z) * g.dzbar(z) - f.dzbar(z) * g.dz(z)) / np.pi


def two_form_integral(f, g, region=None, radial_nodes=64, angular_nodes=128, rule=None):
    """(1/2 pi i) int_region df ^ dg with analytic symbol derivatives."""
    if rule is None:
        rule = region_rule(region, radial_nodes, angular_nodes)
    return complex(np.sum(two_form_density(f, g, rule.nodes) * rule.weights))


def boundary_form_integral(bf, bg):
    """(1/2 pi i) sum over components of the loop integral of f dg.

    Evaluated in the form (1/2) loop integral of (f dg - g df), which is
    equal on closed loops and makes the result exactly antisymmetric.
    """
    from .symbols import check_same_grid

    check_same_grid(bf, bg)
    total = 0.0 + 0.0j
    for cf, cg in zip(bf.components, bg.components):
        for sf, sg in zip(cf.segments, cg.segments):
            total += sf.integrate(sf.values * sg.dvalues - sg.values * sf.dvalues)
    return 0.5 * total / (2j * np.pi)
