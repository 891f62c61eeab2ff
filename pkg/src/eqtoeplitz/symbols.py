"""Symbols on the disc and their boundary data.

Every symbol carries closed-form derivatives ``dz`` and ``dzbar``; nothing is
differenced numerically.  Compactly supported symbols also expose a local
Lebesgue quadrature rule covering their support, which the Toeplitz
assembly uses instead of a global disc rule.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_legendre

from .domain import FundamentalDomain, HorizonExceeded, descend, trivial_domain, word_transforms
from .mobius import MobiusTransform, _check_open_disc
from .quadrature import AreaRule

TWO_PI = 2 * np.pi


class GluingError(ValueError):
    pass


class WindingError(ValueError):
    pass


# ---------------------------------------------------------------------------
# smooth profiles


def bump_profile(v):
    """psi(v) = exp(1 - 1/(1-v)) on v < 1, zero beyond; psi(0) = 1."""
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    m = v < 1
    out[m] = np.exp(1.0 - 1.0 / (1.0 - v[m]))
    return out


def bump_profile_deriv(v):
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    m = v < 1
    out[m] = -np.exp(1.0 - 1.0 / (1.0 - v[m])) / (1.0 - v[m]) ** 2
    return out


def _h(x):
    out = np.zeros_like(x)
    m = x > 0
    out[m] = np.exp(-1.0 / x[m])
    return out


def smooth_step(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    x = np.asarray(x, dtype=float)
    a, b = _h(x), _h(1.0 - x)
    return a / (a + b)


def smooth_step_deriv(x):
    x = np.asarray(x, dtype=float)
    a, b = _h(x), _h(1.0 - x)
    da = np.zeros_like(x)
    db = np.zeros_like(x)
    m = x > 0
    da[m] = a[m] / x[m] ** 2
    m = x < 1
    db[m] = b[m] / (1.0 - x[m]) ** 2
    return (da * b + a * db) / (a + b) ** 2


def _polar_rule(center, rho, nr, na):
    x, w = roots_legendre(nr)
    s = 0.5 * (1 + x) * rho
    ws = 0.5 * w * rho * s
    phi = TWO_PI * np.arange(na) / na
    z = center + s[:, None] * np.exp(1j * phi)[None, :]
    W = ws[:, None] * np.full(na, TWO_PI / na)[None, :]
    return AreaRule(z.ravel(), W.ravel())


# ---------------------------------------------------------------------------
# base class


class Symbol:
    """Smooth function on the disc; subclasses implement _eval, _dz, _dzbar."""

    #: Euclidean radius beyond which the symbol vanishes (None: reaches the boundary)
    support_radius = None

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        _check_open_disc(z)
        return self._eval(z)

    __call__ = evaluate

    def dz(self, z):
        return self._dz(np.asarray(z, dtype=complex))

    def dzbar(self, z):
        return self._dzbar(np.asarray(z, dtype=complex))

    def boundary(self, theta):
        """Values on the unit circle (continuous extension)."""
        return self._eval(np.exp(1j * np.asarray(theta, dtype=float)))

    def boundary_dtheta(self, theta):
        z = np.exp(1j * np.asarray(theta, dtype=float))
        return 1j * z * self._dz(z) - 1j * np.conj(z) * self._dzbar(z)

    def local_rule(self):
        """Lebesgue rule covering the support, or None for symbols without compact support."""
        return None

    @property
    def is_compact(self):
        return self.support_radius is not None and self.support_radius < 1

    # algebra
    def conj(self):
        return Conjugate(self)

    def __add__(self, other):
        return Sum([self, _as_symbol(other)])

    __radd__ = __add__

    def __sub__(self, other):
        return Sum([self, Scaled(-1.0, _as_symbol(other))])

    def __rsub__(self, other):
        return Sum([_as_symbol(other), Scaled(-1.0, self)])

    def __neg__(self):
        return Scaled(-1.0, self)

    def __mul__(self, other):
        if np.isscalar(other):
            return Scaled(other, self)
        return Product(self, other)

    def __rmul__(self, other):
        if np.isscalar(other):
            return Scaled(other, self)
        return Product(other, self)


def _as_symbol(x):
    if isinstance(x, Symbol):
        return x
    return Constant(complex(x))


# ---------------------------------------------------------------------------
# variants


class Constant(Symbol):
    support_radius = None

    def __init__(self, value):
        self.value = complex(value)
        if self.value == 0:
            self.support_radius = 0.0

    def _eval(self, z):
        return np.full(np.shape(z), self.value, dtype=complex)

    def _dz(self, z):
        return np.zeros(np.shape(z), dtype=complex)

    _dzbar = _dz

    def local_rule(self):
        return AreaRule(np.zeros(0, dtype=complex), np.zeros(0)) if self.value == 0 else None

    def conj(self):
        return Constant(np.conj(self.value))

    def __mul__(self, other):
        if isinstance(other, Constant):
            return Constant(self.value * other.value)
        if np.isscalar(other):
            return Constant(self.value * other)
        return super().__mul__(other)

    def to_json(self):
        return {"type": "constant", "value": [self.value.real, self.value.imag]}


class Laurent(Symbol):
    """sum of c[j, k] conj(z)^j z^k."""

    def __init__(self, coeffs):
        self.coeffs = {(int(j), int(k)): complex(c) for (j, k), c in dict(coeffs).items() if c != 0}
        for j, k in self.coeffs:
            if j < 0 or k < 0:
                raise ValueError("exponents must be non-negative")

    @classmethod
    def z(cls, k=1):
        return cls({(0, k): 1.0})

    @classmethod
    def zbar(cls, j=1):
        return cls({(j, 0): 1.0})

    @property
    def bandwidth(self):
        return max((abs(k - j) for j, k in self.coeffs), default=0)

    @property
    def degree(self):
        return max((j + k for j, k in self.coeffs), default=0)

    def _eval(self, z):
        zb = np.conj(z)
        out = np.zeros(np.shape(z), dtype=complex)
        for (j, k), c in self.coeffs.items():
            out += c * zb ** j * z ** k
        return out

    def _dz(self, z):
        zb = np.conj(z)
        out = np.zeros(np.shape(z), dtype=complex)
        for (j, k), c in self.coeffs.items():
            if k:
                out += c * k * zb ** j * z ** (k - 1)
        return out

    def _dzbar(self, z):
        zb = np.conj(z)
        out = np.zeros(np.shape(z), dtype=complex)
        for (j, k), c in self.coeffs.items():
            if j:
                out += c * j * zb ** (j - 1) * z ** k
        return out

    def conj(self):
        return Laurent({(k, j): np.conj(c) for (j, k), c in self.coeffs.items()})

    def __add__(self, other):
        if isinstance(other, Laurent):
            c = dict(self.coeffs)
            for key, v in other.coeffs.items():
                c[key] = c.get(key, 0) + v
            return Laurent(c)
        if np.isscalar(other):
            return self + Laurent({(0, 0): other})
        return super().__add__(other)

    __radd__ = __add__

    def __mul__(self, other):
        if np.isscalar(other):
            return Laurent({key: v * other for key, v in self.coeffs.items()})
        if isinstance(other, Laurent):
            c = {}
            for (j1, k1), a in self.coeffs.items():
                for (j2, k2), b in other.coeffs.items():
                    key = (j1 + j2, k1 + k2)
                    c[key] = c.get(key, 0) + a * b
            return Laurent(c)
        return super().__mul__(other)

    def __rmul__(self, other):
        if np.isscalar(other):
            return self * other
        return super().__rmul__(other)

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-1.0) * other

    def to_json(self):
        return {"type": "laurent",
                "coeffs": [[j, k, c.real, c.imag] for (j, k), c in sorted(self.coeffs.items())]}


class Radial(Symbol):
    """phi(|z|^2); ``dprofile`` is phi'.  ``umax`` bounds the support in u = |z|^2."""

    def __init__(self, profile, dprofile, umax=None, name="radial", params=None):
        self.profile = profile
        self.dprofile = dprofile
        self.umax = umax
        self.name = name
        self.params = params or {}
        self.support_radius = None if umax is None else float(np.sqrt(umax))

    @classmethod
    def bump(cls, rho, amplitude=1.0):
        """amplitude * psi(|z|^2 / rho^2), supported in |z| <= rho."""
        if not 0 < rho < 1:
            raise ValueError("radial bump radius must lie in (0, 1)")
        r2 = rho * rho
        amp = complex(amplitude)
        return cls(lambda u: amp * bump_profile(u / r2),
                   lambda u: amp * bump_profile_deriv(u / r2) / r2,
                   umax=r2, name="radial_bump", params={"rho": rho, "amplitude": amp})

    def _eval(self, z):
        return np.asarray(self.profile(np.abs(z) ** 2), dtype=complex)

    def _dz(self, z):
        return self.dprofile(np.abs(z) ** 2) * np.conj(z)

    def _dzbar(self, z):
        return self.dprofile(np.abs(z) ** 2) * z

    def local_rule(self, nr=64, na=64):
        if self.support_radius is None:
            return None
        return _polar_rule(0.0, self.support_radius, nr, na)

    def to_json(self):
        if self.name != "radial_bump":
            raise TypeError("only radial bumps serialize to JSON")
        a = self.params["amplitude"]
        return {"type": "radial_bump", "rho": self.params["rho"], "amplitude": [a.real, a.imag]}


class Bump(Symbol):
    """amplitude * psi(|z - center|^2 / radius^2); closed support inside the open disc."""

    def __init__(self, center, radius, amplitude=1.0, nodes=(48, 96)):
        self.center = complex(center)
        self.radius = float(radius)
        self.amplitude = complex(amplitude)
        self.nodes = nodes
        if self.radius <= 0:
            raise ValueError("bump radius must be positive")
        if abs(self.center) + self.radius >= 1:
            raise ValueError("bump support must stay a positive distance from the unit circle")
        self.support_radius = abs(self.center) + self.radius

    def _v(self, z):
        return np.abs(z - self.center) ** 2 / self.radius ** 2

    def _eval(self, z):
        return self.amplitude * bump_profile(self._v(z))

    def _dz(self, z):
        return self.amplitude * bump_profile_deriv(self._v(z)) * np.conj(z - self.center) / self.radius ** 2

    def _dzbar(self, z):
        return self.amplitude * bump_profile_deriv(self._v(z)) * (z - self.center) / self.radius ** 2

    def local_rule(self):
        return _polar_rule(self.center, self.radius, *self.nodes)

    def to_json(self):
        return {"type": "bump", "center": [self.center.real, self.center.imag],
                "radius": self.radius, "amplitude": [self.amplitude.real, self.amplitude.imag]}


class Composed(Symbol):
    """base o g for a disc automorphism g."""

    def __init__(self, base: Symbol, g: MobiusTransform):
        self.base = base
        self.g = g
        if base.is_compact:
            # image of the support disc under g^-1 stays compact
            gi = g.inverse()
            r = base.support_radius
            ring = gi(r * np.exp(1j * np.linspace(0, TWO_PI, 257)))
            self.support_radius = float(np.max(np.abs(ring)))

    def _eval(self, z):
        return self.base._eval(self.g(z))

    def _dz(self, z):
        return self.base._dz(self.g(z)) * self.g.derivative(z)

    def _dzbar(self, z):
        return self.base._dzbar(self.g(z)) * np.conj(self.g.derivative(z))

    def local_rule(self):
        rule = self.base.local_rule()
        if rule is None:
            return None
        gi = self.g.inverse()
        return AreaRule(gi(rule.nodes), rule.weights * np.abs(gi.derivative(rule.nodes)) ** 2)


class Scaled(Symbol):
    def __init__(self, c, f):
        self.c = complex(c)
        self.f = _as_symbol(f)
        self.support_radius = self.f.support_radius

    def _eval(self, z):
        return self.c * self.f._eval(z)

    def _dz(self, z):
        return self.c * self.f._dz(z)

    def _dzbar(self, z):
        return self.c * self.f._dzbar(z)

    def local_rule(self):
        return self.f.local_rule()

    def to_json(self):
        return {"type": "scaled", "c": [self.c.real, self.c.imag], "f": self.f.to_json()}


class Sum(Symbol):
    def __init__(self, terms):
        self.terms = [_as_symbol(t) for t in terms]
        radii = [t.support_radius for t in self.terms]
        self.support_radius = None if any(r is None for r in radii) else max(radii, default=0.0)

    def _eval(self, z):
        return sum((t._eval(z) for t in self.terms), np.zeros(np.shape(z), dtype=complex))

    def _dz(self, z):
        return sum((t._dz(z) for t in self.terms), np.zeros(np.shape(z), dtype=complex))

    def _dzbar(self, z):
        return sum((t._dzbar(z) for t in self.terms), np.zeros(np.shape(z), dtype=complex))

    def to_json(self):
        return {"type": "sum", "terms": [t.to_json() for t in self.terms]}


class Product(Symbol):
    def __init__(self, f, g):
        self.f = _as_symbol(f)
        self.g = _as_symbol(g)
        radii = [r for r in (self.f.support_radius, self.g.support_radius) if r is not None]
        self.support_radius = min(radii) if radii else None
        self._compact_factor = None
        if radii:
            self._compact_factor = self.f if self.f.support_radius == min(radii) else self.g

    def _eval(self, z):
        return self.f._eval(z) * self.g._eval(z)

    def _dz(self, z):
        return self.f._dz(z) * self.g._eval(z) + self.f._eval(z) * self.g._dz(z)

    def _dzbar(self, z):
        return self.f._dzbar(z) * self.g._eval(z) + self.f._eval(z) * self.g._dzbar(z)

    def local_rule(self):
        if self._compact_factor is None:
            return None
        return self._compact_factor.local_rule()

    def to_json(self):
        return {"type": "product", "f": self.f.to_json(), "g": self.g.to_json()}


class Conjugate(Symbol):
    def __init__(self, f):
        self.f = f
        self.support_radius = f.support_radius

    def _eval(self, z):
        return np.conj(self.f._eval(z))

    def _dz(self, z):
        return np.conj(self.f._dzbar(z))

    def _dzbar(self, z):
        return np.conj(self.f._dz(z))

    def conj(self):
        return self.f

    def local_rule(self):
        return self.f.local_rule()

    def to_json(self):
        return {"type": "conj", "f": self.f.to_json()}


class CollarSeed(Symbol):
    """chi(r) * b(theta), a boundary-collar profile.

    chi rises smoothly from 0 at r0 to 1 at r1.  ``b`` is supported in the
    angular interval [theta1, theta2]:

    * ``kind="winding"``: b = exp(2 pi i k S(theta)) - 1 with S a smooth step
      across the interval, so 1 + b winds k times along it;
    * ``kind="bump"``: b = amplitude * 4 S (1 - S).
    """

    def __init__(self, theta1, theta2, r0=0.8, r1=0.95, k=1, kind="winding", amplitude=1.0):
        if not 0 < r0 < r1 <= 1:
            raise ValueError("need 0 < r0 < r1 <= 1")
        if not 0 < theta2 - theta1 < TWO_PI:
            raise ValueError("angular interval must have length in (0, 2 pi)")
        if kind not in ("winding", "bump"):
            raise ValueError(f"unknown collar kind {kind!r}")
        self.theta1, self.theta2 = float(theta1), float(theta2)
        self.r0, self.r1 = float(r0), float(r1)
        self.k = int(k)
        self.kind = kind
        self.amplitude = complex(amplitude)

    def _s(self, theta):
        th = self.theta1 + np.mod(theta - self.theta1, TWO_PI)
        L = self.theta2 - self.theta1
        x = (th - self.theta1) / L
        return smooth_step(x), smooth_step_deriv(x) / L

    def _b(self, theta):
        S, dS = self._s(theta)
        if self.kind == "winding":
            e = np.exp(2j * np.pi * self.k * S)
            return e - 1.0, 2j * np.pi * self.k * dS * e
        return self.amplitude * 4 * S * (1 - S), self.amplitude * 4 * dS * (1 - 2 * S)

    def _chi(self, r):
        x = (r - self.r0) / (self.r1 - self.r0)
        return smooth_step(x), smooth_step_deriv(x) / (self.r1 - self.r0)

    def _parts(self, z):
        r = np.abs(z)
        th = np.angle(z)
        c, dc = self._chi(r)
        b, db = self._b(th)
        return r, c, dc, b, db

    def _eval(self, z):
        _, c, _, b, _ = self._parts(z)
        return c * b

    def _dz(self, z):
        r, c, dc, b, db = self._parts(z)
        safe = np.where(r > 0, z, 1.0)
        # d r/dz = conj(z)/(2r), d theta/dz = -i/(2z)
        return np.where(r > 0, dc * b * np.conj(safe) / (2 * np.abs(safe)) + c * db * (-0.5j / safe), 0)

    def _dzbar(self, z):
        r, c, dc, b, db = self._parts(z)
        safe = np.where(r > 0, z, 1.0)
        return np.where(r > 0, dc * b * safe / (2 * np.abs(safe)) + c * db * (0.5j / np.conj(safe)), 0)

    def angular_support(self):
        return self.theta1, self.theta2

    def to_json(self):
        return {"type": "collar", "theta1": self.theta1, "theta2": self.theta2, "r0": self.r0,
                "r1": self.r1, "k": self.k, "kind": self.kind,
                "amplitude": [self.amplitude.real, self.amplitude.imag]}


# ---------------------------------------------------------------------------
# Gamma-invariant symbols


class PoincareSeries(Symbol):
    """sum over reduced words |gamma| <= L of f0(gamma z), for compactly supported f0.

    Evaluation checks the horizon: the sum is exact at z only when the
    descent word of z, plus the reach of the seed's support beyond F, fits
    within L.  ``check=False`` skips the test (pure truncated sum).
    """

    def __init__(self, base: Symbol, domain: FundamentalDomain, L, check=True):
        if L < 0:
            raise ValueError("L must be >= 0")
        if not base.is_compact:
            raise ValueError("Poincare series need a seed whose support stays away from the unit circle")
        self.base = base
        self.domain = domain
        self.L = int(L)
        self.check = check
        self.words = domain.words(self.L)
        rule = base.local_rule()
        inside = True if rule is None or rule.nodes.size == 0 else bool(np.all(domain.contains(rule.nodes)))
        self.reach = 0 if inside else 1

    def terms(self):
        """The individual translates base o gamma."""
        return [Composed(self.base, g) for _, g in self.words]

    def _horizon(self, z):
        if not self.check or not self.domain.circles:
            return
        z = np.ravel(z)
        # points on the closed free arcs of F need no descent; arc ends lie on
        # the pairing circles and would otherwise bounce between the two ends
        on_arc = np.zeros(z.shape, dtype=bool)
        edge = np.abs(z) >= 1 - 1e-12
        if np.any(edge):
            th = np.angle(z[edge])
            hit = np.zeros(th.shape, dtype=bool)
            for arc in self.domain.arcs:
                hit |= arc.contains(th, margin=-1e-12)
            on_arc[edge] = hit
        _, n, ok, _ = descend(self.domain, z[~on_arc], max_steps=self.L + self.reach + 1)
        if not np.all(ok) or np.any(n + self.reach > self.L):
            raise HorizonExceeded(
                f"orbit sum not yet locally finite at some point for L={self.L}")

    def _eval(self, z):
        self._horizon(z)
        out = np.zeros(np.shape(z), dtype=complex)
        for _, g in self.words:
            out += self.base._eval(g(z))
        return out

    def _dz(self, z):
        out = np.zeros(np.shape(z), dtype=complex)
        for _, g in self.words:
            out += self.base._dz(g(z)) * g.derivative(z)
        return out

    def _dzbar(self, z):
        out = np.zeros(np.shape(z), dtype=complex)
        for _, g in self.words:
            out += self.base._dzbar(g(z)) * np.conj(g.derivative(z))
        return out

    def to_json(self):
        return {"type": "poincare", "base": self.base.to_json(), "L": self.L}


def poincare_series(f0: Symbol, domain: FundamentalDomain, L, check=True) -> Symbol:
    if isinstance(f0, Constant) and f0.value == 0:
        return f0
    return PoincareSeries(f0, domain, L, check)


def support_in_domain(seed: Symbol, domain: FundamentalDomain, margin=1e-3):
    """True when the seed's support lies in the interior of F (collars and compact seeds)."""
    if not domain.circles:
        return True
    if isinstance(seed, CollarSeed):
        a, b = seed.angular_support()
        for arc in domain.arcs:
            if np.all(arc.contains(np.linspace(a, b, 33), margin)):
                return True
        return False
    if isinstance(seed, Sum):
        return all(support_in_domain(t, domain, margin) for t in seed.terms)
    if isinstance(seed, (Scaled, Conjugate)):
        return support_in_domain(seed.f, domain, margin)
    rule = seed.local_rule()
    if rule is None:
        return False
    if rule.nodes.size == 0:
        return True
    # support boundary, slightly inflated
    c = np.mean(rule.nodes)
    edge = c + (rule.nodes - c) * (1 + margin)
    return bool(np.all(domain.contains(edge)))


class InvariantSymbol(Symbol):
    """constant + sum over all of Gamma of seed o gamma, via orbit descent into F.

    The seed must be supported in the interior of F (collar seeds may reach
    the unit circle inside an arc of F); then only the word carrying z into
    F contributes.
    """

    def __init__(self, seed: Symbol, domain: FundamentalDomain, constant=0.0, max_steps=64):
        if not support_in_domain(seed, domain):
            raise ValueError("seed support is not inside the fundamental domain")
        self.seed = seed
        self.domain = domain
        self.constant = complex(constant)
        self.max_steps = max_steps

    def _pull(self, z):
        z = np.asarray(z, dtype=complex)
        pts, n, ok, let = descend(self.domain, z.ravel(), self.max_steps)
        if not np.all(ok):
            raise HorizonExceeded(f"descent did not reach F within {self.max_steps} steps")
        a, b = word_transforms(self.domain, let, n)
        # derivative of w = (a z + b)/(conj(b) z + conj(a)) is 1/(conj(b) z + conj(a))^2
        zz = z.ravel()
        d = 1.0 / (np.conj(b) * zz + np.conj(a)) ** 2
        return pts.reshape(z.shape), d.reshape(z.shape)

    def _eval(self, z):
        w, _ = self._pull(z)
        return self.constant + self.seed._eval(w)

    def _dz(self, z):
        w, d = self._pull(z)
        return self.seed._dz(w) * d

    def _dzbar(self, z):
        w, d = self._pull(z)
        return self.seed._dzbar(w) * np.conj(d)

    def to_json(self):
        return {"type": "invariant", "seed": self.seed.to_json(),
                "constant": [self.constant.real, self.constant.imag]}


def collar_symbol(domain: FundamentalDomain, component=0, k=1, arc_index=None, frac=(0.25, 0.75),
                  r0=0.8, r1=0.95):
    """Gamma-invariant symbol equal to 1 off a collar, winding k on one boundary component."""
    arc = domain.arcs[domain.components[component][0] if arc_index is None else arc_index]
    a = arc.start + frac[0] * arc.length
    b = arc.start + frac[1] * arc.length
    seed = CollarSeed(a, b, r0, r1, k=k)
    return InvariantSymbol(seed, domain, constant=1.0)


# ---------------------------------------------------------------------------
# JSON


def symbol_from_json(spec, domain=None) -> Symbol:
    t = spec["type"]
    cplx = lambda v: complex(*v) if isinstance(v, (list, tuple)) else complex(v)  # noqa: E731
    if t == "constant":
        return Constant(cplx(spec["value"]))
    if t == "laurent":
        return Laurent({(int(r[0]), int(r[1])): complex(r[2], r[3] if len(r) > 3 else 0.0)
                        for r in spec["coeffs"]})
    if t == "radial_bump":
        return Radial.bump(spec["rho"], cplx(spec.get("amplitude", 1.0)))
    if t == "bump":
        return Bump(cplx(spec["center"]), spec["radius"], cplx(spec.get("amplitude", 1.0)))
    if t == "collar":
        return CollarSeed(spec["theta1"], spec["theta2"], spec.get("r0", 0.8), spec.get("r1", 0.95),
                          spec.get("k", 1), spec.get("kind", "winding"),
                          cplx(spec.get("amplitude", 1.0)))
    if t == "sum":
        return Sum([symbol_from_json(s, domain) for s in spec["terms"]])
    if t == "product":
        return Product(symbol_from_json(spec["f"], domain), symbol_from_json(spec["g"], domain))
    if t == "scaled":
        return Scaled(cplx(spec["c"]), symbol_from_json(spec["f"], domain))
    if t == "conj":
        return Conjugate(symbol_from_json(spec["f"], domain))
    if t in ("poincare", "invariant"):
        if domain is None:
            raise ValueError(f"{t} symbols need a domain")
        if t == "poincare":
            return PoincareSeries(symbol_from_json(spec["base"], domain), domain, spec["L"])
        return InvariantSymbol(symbol_from_json(spec["seed"], domain), domain,
                               cplx(spec.get("constant", 0.0)))
    raise ValueError(f"unknown symbol type {t!r}")


# ---------------------------------------------------------------------------
# boundary data


def clenshaw_curtis(n):
    """Nodes x_j = cos(pi j / n) and weights on [-1, 1], j = 0..n."""
    theta = np.pi * np.arange(n + 1) / n
    x = np.cos(theta)
    w = np.zeros(n + 1)
    v = np.ones(n - 1)
    inner = theta[1:-1]
    if n % 2 == 0:
        w[0] = w[n] = 1.0 / (n * n - 1)
        for k in range(1, n // 2):
            v -= 2 * np.cos(2 * k * inner) / (4 * k * k - 1)
        v -= np.cos(n * inner) / (n * n - 1)
    else:
        w[0] = w[n] = 1.0 / (n * n)
        for k in range(1, (n - 1) // 2 + 1):
            v -= 2 * np.cos(2 * k * inner) / (4 * k * k - 1)
    w[1:-1] = 2 * v / n
    return x, w


@dataclass
class Segment:
    theta: np.ndarray
    values: np.ndarray
    dvalues: np.ndarray  # d/dtheta of the boundary values
    weights: np.ndarray  # quadrature weights for d theta
    periodic: bool = False

    def integrate(self, arr):
        return complex(np.sum(self.weights * arr))

    def derivative(self):
        return self.dvalues


@dataclass
class BoundaryComponent:
    id: int
    segments: list

    @property
    def values(self):
        parts = []
        for s in self.segments:
            parts.append(s.values)
        return np.concatenate(parts)

    @property
    def theta(self):
        return np.concatenate([s.theta for s in self.segments])


@dataclass
class BoundaryData:
    components: list
    samples: int
    meta: dict = field(default_factory=dict)

    def __mul__(self, other):
        check_same_grid(self, other)
        comps = []
        for ca, cb in zip(self.components, other.components):
            segs = [Segment(sa.theta, sa.values * sb.values,
                            sa.dvalues * sb.values + sa.values * sb.dvalues, sa.weights, sa.periodic)
                    for sa, sb in zip(ca.segments, cb.segments)]
            comps.append(BoundaryComponent(ca.id, segs))
        return BoundaryData(comps, self.samples, dict(self.meta))

    def map(self, fn):
        """Apply a pointwise perturbation to values (derivatives are left untouched)."""
        comps = []
        for c in self.components:
            segs = [Segment(s.theta, fn(s.theta, s.values), s.dvalues, s.weights, s.periodic)
                    for s in c.segments]
            comps.append(BoundaryComponent(c.id, segs))
        return BoundaryData(comps, self.samples, dict(self.meta))

    def min_abs(self):
        return float(min(np.min(np.abs(c.values)) for c in self.components))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["component", "theta", "re", "im"])
            for c in self.components:
                for th, v in zip(c.theta, c.values):
                    w.writerow([c.id, repr(float(th)), repr(float(v.real)), repr(float(v.imag))])


def check_same_grid(a: BoundaryData, b: BoundaryData):
    if len(a.components) != len(b.components):
        raise ValueError("boundary data have different component counts")
    for ca, cb in zip(a.components, b.components):
        if len(ca.segments) != len(cb.segments):
            raise ValueError("boundary data have different segment layouts")
        for sa, sb in zip(ca.segments, cb.segments):
            if sa.theta.shape != sb.theta.shape or not np.array_equal(sa.theta, sb.theta):
                raise ValueError("boundary data sampled on different grids")


def _segment(f, a, b, n):
    x, w = clenshaw_curtis(n)
    th = a + (b - a) * 0.5 * (1 - x)
    return Segment(th, np.asarray(f.boundary(th), dtype=complex),
                   np.asarray(f.boundary_dtheta(th), dtype=complex), w * (b - a) * 0.5)


def boundary_restriction(f: Symbol, domain: FundamentalDomain = None, samples=128, glue_tol=1e-8):
    """Sample f on each quotient boundary component.

    The trivial group gives one periodic loop with uniform samples.  Otherwise
    each arc of F on the unit circle gets Chebyshev-Lobatto samples (with
    Clenshaw-Curtis weights) and arcs are chained by the gluing; a jump at a
    glued junction larger than ``glue_tol`` raises GluingError.
    """
    if samples < 64:
        raise ValueError("need at least 64 samples per boundary piece")
    domain = trivial_domain() if domain is None else domain
    if not domain.circles:
        th = TWO_PI * np.arange(samples) / samples
        seg = Segment(th, np.asarray(f.boundary(th), dtype=complex),
                      np.asarray(f.boundary_dtheta(th), dtype=complex),
                      np.full(samples, TWO_PI / samples), periodic=True)
        return BoundaryData([BoundaryComponent(0, [seg])], samples)
    comps = []
    worst = 0.0
    for i, comp in enumerate(domain.components):
        segs = []
        for a in comp:
            arc = domain.arcs[a]
            segs.append(_segment(f, arc.start, arc.end, samples))
        for s, a in zip(segs, comp):
            j = domain.successor[a][0]
            nxt = segs[comp.index(j)]
            worst = max(worst, abs(s.values[-1] - nxt.values[0]))
        comps.append(BoundaryComponent(i, segs))
    if worst > glue_tol:
        raise GluingError(f"boundary data jump by {worst:.2e} across a glued junction; "
                          "the symbol is not invariant/continuous on the quotient boundary")
    return BoundaryData(comps, samples, {"glue_defect": worst})


def _loop_values(loop):
    if isinstance(loop, BoundaryComponent):
        return loop.values
    return np.asarray(loop, dtype=complex).ravel()


def winding_number(b, tol=1e-10, max_jump=np.pi / 2):
    """Winding number about 0 from summed principal argument increments.

    ``b`` is a BoundaryData (summed over components), a BoundaryComponent,
    or an array of samples of one closed loop (the last sample need not
    repeat the first).
    """
    if isinstance(b, BoundaryData):
        return int(sum(winding_number(c, tol, max_jump) for c in b.components))
    v = _loop_values(b)
    if v.size < 2:
        raise WindingError("need at least two samples")
    if np.min(np.abs(v)) < tol:
        raise WindingError("not invertible on boundary")
    inc = np.angle(np.roll(v, -1) / v)
    if np.max(np.abs(inc)) >= max_jump:
        raise WindingError("undersampled: argument jump between consecutive samples too large")
    total = np.sum(inc) / TWO_PI
    k = int(np.rint(total))
    if abs(total - k) > 1e-6:
        raise WindingError(f"argument increment {total} is not an integer")
    return k


def winding_numbers(b: BoundaryData, **kw):
    return [winding_number(c, **kw) for c in b.components]


def log_derivative_integral(b: BoundaryData):
    """(1/2 pi i) sum over components of the loop integral of f^-1 df."""
    total = 0.0 + 0.0j
    for c in b.components:
        for s in c.segments:
            total += s.integrate(s.dvalues / s.values)
    return total / (2j * np.pi)
