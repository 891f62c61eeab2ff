"""Hyperbolic geometry of the unit disc.

Isometries are kept in SU(1,1) normal form ``[[a, b], [conj(b), conj(a)]]``
acting by ``z -> (a z + b) / (conj(b) z + conj(a))``.  Free Fuchsian groups
are given by Schottky pairings of geodesic circles (circles orthogonal to the
unit circle).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import brentq

NORM_TOL = 1e-9


class DiscDomainError(ValueError):
    """A point was required to lie in the open unit disc."""


def _check_open_disc(z):
    if np.any(np.abs(z) >= 1.0):
        raise DiscDomainError("point(s) must satisfy |z| < 1")


@dataclass(frozen=True)
class MobiusTransform:
    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        det = abs(a) ** 2 - abs(b) ** 2
        if det <= 0:
            raise ValueError("|a|^2 - |b|^2 must be positive for a disc automorphism")
        s = np.sqrt(det)
        object.__setattr__(self, "a", a / s)
        object.__setattr__(self, "b", b / s)

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0)

    @classmethod
    def rotation(cls, theta):
        """z -> e^{i theta} z."""
        return cls(np.exp(0.5j * theta), 0.0)

    @classmethod
    def boost(cls, length, direction=0.0):
        """Hyperbolic translation by ``length`` along the diameter at angle ``direction``."""
        g = cls(np.cosh(length / 2), np.sinh(length / 2))
        if direction == 0.0:
            return g
        r = cls.rotation(direction)
        return r @ g @ r.inverse()

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m, dtype=complex)
        m = m / np.sqrt(np.linalg.det(m))
        if not (np.isclose(m[1, 0], np.conj(m[0, 1]), atol=1e-8)
                and np.isclose(m[1, 1], np.conj(m[0, 0]), atol=1e-8)):
            raise ValueError("matrix does not preserve the unit disc")
        return cls(m[0, 0], m[0, 1])

    @property
    def matrix(self):
        a, b = self.a, self.b
        return np.array([[a, b], [b.conjugate(), a.conjugate()]])

    def __call__(self, z):
        """Apply on the closed disc (no domain check; see :func:`apply`)."""
        a, b = self.a, self.b
        return (a * z + b) / (b.conjugate() * z + a.conjugate())

    def derivative(self, z):
        return 1.0 / (self.b.conjugate() * z + self.a.conjugate()) ** 2

    def __matmul__(self, other):
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return MobiusTransform(a1 * a2 + b1 * b2.conjugate(), a1 * b2 + b1 * a2.conjugate())

    def inverse(self):
        return MobiusTransform(self.a.conjugate(), -self.b)

    def __neg__(self):
        return MobiusTransform(-self.a, -self.b)

    def trace(self):
        return 2.0 * self.a.real

    def is_hyperbolic(self):
        return abs(self.trace()) > 2.0 + 1e-12

    def translation_length(self):
        return 2.0 * np.arccosh(abs(self.trace()) / 2.0)

    def power(self, s):
        """Real power of a hyperbolic element along its axis (``s=1`` gives ``self``)."""
        if not self.is_hyperbolic():
            raise ValueError("fractional powers are only defined here for hyperbolic elements")
        m = self.matrix if self.trace() > 0 else -self.matrix
        w, v = np.linalg.eig(m)
        ws = np.exp(s * np.log(w.astype(complex)))
        ms = v @ np.diag(ws) @ np.linalg.inv(v)
        return MobiusTransform(ms[0, 0], ms[0, 1])

    def distance(self, other):
        """Projective matrix distance (sign ambiguity removed)."""
        d1 = abs(self.a - other.a) + abs(self.b - other.b)
        d2 = abs(self.a + other.a) + abs(self.b + other.b)
        return min(d1, d2)


def apply(g: MobiusTransform, z):
    _check_open_disc(z)
    return g(z)


def derivative(g: MobiusTransform, z):
    _check_open_disc(z)
    return g.derivative(z)


def delta(p, q):
    """(1-|p|^2)(1-|q|^2)/|1 - p conj(q)|^2, the Mobius-invariant two-point function."""
    p = np.asarray(p)
    q = np.asarray(q)
    _check_open_disc(p)
    _check_open_disc(q)
    return (1 - np.abs(p) ** 2) * (1 - np.abs(q) ** 2) / np.abs(1 - p * np.conj(q)) ** 2


def hyperbolic_distance(p, q):
    return 2.0 * np.arccosh(1.0 / np.sqrt(delta(p, q)))


# ---------------------------------------------------------------------------
# words and group enumeration


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word; letters are ``(generator index, +1 | -1)``.

    The word ``((i1, e1), (i2, e2), ...)`` denotes ``g_i1^e1 o g_i2^e2 o ...``.
    """

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if e not in (1, -1):
                raise ValueError("exponents must be +1 or -1")
        for (i1, e1), (i2, e2) in zip(letters, letters[1:]):
            if i1 == i2 and e1 == -e2:
                raise ValueError("word is not freely reduced")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self):
        return GroupWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def __mul__(self, other):
        left, right = list(self.letters), list(other.letters)
        while left and right and left[-1][0] == right[0][0] and left[-1][1] == -right[0][1]:
            left.pop()
            right.pop(0)
        return GroupWord(tuple(left + right))

    def transform(self, generators):
        g = MobiusTransform.identity()
        for i, e in self.letters:
            g = g @ (generators[i] if e == 1 else generators[i].inverse())
        return g

    def __str__(self):
        if not self.letters:
            return "e"
        names = "abcdefghijklmnopqrstuvwxyz"
        return "".join(names[i] if e == 1 else names[i].upper() for i, e in self.letters)


def count_reduced_words(m, L):
    return 1 + sum(2 * m * (2 * m - 1) ** (k - 1) for k in range(1, L + 1))


def enumerate_group(generators, L):
    """All freely reduced words of length <= L with their transforms.

    Ordered by length, then by letter order ``(0,+1), (0,-1), (1,+1), ...``.
    """
    if L < 0:
        raise ValueError("L must be >= 0")
    gens = list(generators)
    letters = [(i, e) for i in range(len(gens)) for e in (1, -1)]
    letter_maps = {(i, 1): g for i, g in enumerate(gens)}
    letter_maps.update({(i, -1): g.inverse() for i, g in enumerate(gens)})

    out = [(GroupWord(), MobiusTransform.identity())]
    frontier = out[:]
    for _ in range(L):
        nxt = []
        for word, g in frontier:
            last = word.letters[-1] if word.letters else None
            for let in letters:
                if last is not None and let[0] == last[0] and let[1] == -last[1]:
                    continue
                nxt.append((GroupWord(word.letters + (let,)), g @ letter_maps[let]))
        out.extend(nxt)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# geodesic circles and Schottky pairings


@dataclass(frozen=True)
class GeodesicCircle:
    """Euclidean circle orthogonal to the unit circle: |center|^2 = 1 + radius^2."""

    center: complex
    radius: float

    def __post_init__(self):
        c = complex(self.center)
        r = float(self.radius)
        if r <= 0:
            raise ValueError("radius must be positive")
        if abs(abs(c) ** 2 - 1.0 - r * r) > 1e-8 * max(1.0, abs(c) ** 2):
            raise ValueError(f"circle (center={c}, radius={r}) is not orthogonal to the unit circle")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)

    @classmethod
    def from_angles(cls, phi, half_angle):
        """Circle whose endpoints on the unit circle are e^{i(phi -+ half_angle)}."""
        if not 0 < half_angle < np.pi / 2:
            raise ValueError("half_angle must lie in (0, pi/2)")
        return cls(np.exp(1j * phi) / np.cos(half_angle), np.tan(half_angle))

    @property
    def angle(self):
        return float(np.angle(self.center))

    @property
    def half_angle(self):
        return float(np.arctan(self.radius))

    def endpoints(self):
        """(start, end) on the unit circle, counterclockwise across the circle's arc."""
        phi, al = self.angle, self.half_angle
        return np.exp(1j * (phi - al)), np.exp(1j * (phi + al))

    def inside(self, z, closed=False):
        d = np.abs(np.asarray(z) - self.center)
        return d <= self.radius if closed else d < self.radius

    def reflect(self, z):
        return self.center + self.radius ** 2 / np.conj(np.asarray(z) - self.center)

    def entry_radius(self, theta):
        """Radius at which the ray at angle theta enters the circle's half-disc (1 if it misses)."""
        p = np.real(np.conj(self.center) * np.exp(1j * np.asarray(theta)))
        with np.errstate(invalid="ignore"):
            r = p - np.sqrt(np.maximum(p * p - 1.0, 0.0))
        return np.where(p > 1.0, r, 1.0)

    def to_json(self):
        return {"center": [self.center.real, self.center.imag], "radius": self.radius}


def _cross_ratio(z1, z2, z3, z4):
    return (z1 - z3) * (z2 - z4) / ((z1 - z4) * (z2 - z3))


def _three_point_map(p, q):
    """SL(2,C) matrix of the Mobius map sending p[k] -> q[k], k=0,1,2."""

    def to_std(z1, z2, z3):
        # z1 -> 0, z2 -> 1, z3 -> inf
        return np.array([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]], dtype=complex)

    m = np.linalg.inv(to_std(*q)) @ to_std(*p)
    return m / np.sqrt(np.linalg.det(m))


def _symmetric_points(beta):
    return (np.exp(1j * (np.pi - beta)), np.exp(1j * (np.pi + beta)),
            np.exp(-1j * beta), np.exp(1j * beta))


def pairing_transform(c1: GeodesicCircle, c2: GeodesicCircle) -> MobiusTransform:
    """Hyperbolic element along the common perpendicular taking ext(c1) onto int(c2)."""
    if _arcs_intersect(c1, c2):
        raise ValueError("circles intersect or touch in the closed disc; no hyperbolic pairing")
    p1, q1 = c1.endpoints()
    p2, q2 = c2.endpoints()
    cr = _cross_ratio(p1, q1, p2, q2).real

    def resid(beta):
        return _cross_ratio(*_symmetric_points(beta)).real - cr

    beta = brentq(resid, 1e-12, np.pi / 2 - 1e-12, xtol=1e-15)
    s = _symmetric_points(beta)
    T = MobiusTransform.from_matrix(_three_point_map((p1, q1, p2), s[:3]))
    x0 = 1.0 / np.cos(beta) - np.tan(beta)
    k = 2 * x0 / (1 + x0 * x0)
    boost = MobiusTransform(1.0, k)
    return T.inverse() @ boost @ T


@dataclass(frozen=True)
class Pairing:
    circle1: GeodesicCircle
    circle2: GeodesicCircle
    generator: MobiusTransform = None

    def __post_init__(self):
        if self.generator is None:
            object.__setattr__(self, "generator", pairing_transform(self.circle1, self.circle2))

    def to_json(self):
        return {"circle1": self.circle1.to_json(), "circle2": self.circle2.to_json()}


@dataclass
class SchottkyReport:
    ok: bool
    overlaps: list = field(default_factory=list)
    pairing_errors: list = field(default_factory=list)
    non_icc: bool = False
    messages: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _arcs_intersect(c, d):
    dphi = abs(np.angle(np.exp(1j * (c.angle - d.angle))))
    return dphi <= c.half_angle + d.half_angle


def verify_schottky(pairings) -> SchottkyReport:
    """Ping-pong check: all 2m circles pairwise disjoint in the closed disc.

    Also confirms that each generator carries circle1 onto circle2 with the
    exterior of circle1 going into circle2.
    """
    pairings = list(pairings)
    circles = [c for p in pairings for c in (p.circle1, p.circle2)]
    rep = SchottkyReport(ok=True)
    for i, j in combinations(range(len(circles)), 2):
        if _arcs_intersect(circles[i], circles[j]):
            rep.overlaps.append((i, j))
            rep.messages.append(f"circles {i} and {j} intersect in the closed disc")
    for k, p in enumerate(pairings):
        g = p.generator
        ends = np.array(p.circle1.endpoints())
        img = g(ends)
        if np.max(np.abs(np.abs(img - p.circle2.center) - p.circle2.radius)) > 1e-8:
            rep.pairing_errors.append(k)
            rep.messages.append(f"generator {k} does not map circle1 onto circle2")
            continue
        # 0 lies outside every pairing circle, so its image must be inside circle2
        if not p.circle2.inside(g(0.0)):
            rep.pairing_errors.append(k)
            rep.messages.append(f"generator {k} maps the exterior of circle1 outside circle2")
    if len(pairings) == 1:
        rep.non_icc = True
        rep.messages.append("m=1: cyclic (elementary) group, not icc")
    rep.ok = not rep.overlaps and not rep.pairing_errors and len(pairings) >= 1
    return rep


def classical_pairings(m=2, half_angle=0.3, interlaced=False):
    """Symmetric Schottky pairings with 2m circles at angles k*pi/m.

    Non-interlaced pairs neighbours (0<->1, 2<->3, ...), giving a sphere with
    m+1 holes; ``interlaced`` pairs k <-> k+m, giving a higher genus quotient.
    """
    n = 2 * m
    circles = [GeodesicCircle.from_angles(2 * np.pi * k / n, half_angle) for k in range(n)]
    if interlaced:
        pairs = [(circles[k + m], circles[k]) for k in range(m)]
    else:
        pairs = [(circles[2 * k], circles[2 * k + 1]) for k in range(m)]
    return [Pairing(c1, c2) for c1, c2 in pairs]
