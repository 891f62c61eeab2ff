"""Schottky fundamental domains.

F is the closed exterior of the 2m pairing half-discs, with the tie rule
that points on circle1 of a pairing belong to F and points on circle2 do
not.  The arcs of the unit circle in the closure of F, glued by the
generators, give the boundary components of the quotient surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .mobius import (GeodesicCircle, GroupWord, MobiusTransform, Pairing, _check_open_disc,
                     enumerate_group, verify_schottky)
from .quadrature import polar_star_rule

TWO_PI = 2 * np.pi


class SchottkyError(ValueError):
    pass


class HorizonExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Arc:
    """Counterclockwise arc [start, end] of the unit circle (angles, end > start)."""

    start: float
    end: float
    start_circle: int  # circle whose end-point is the arc's start (-1 for the full circle)
    end_circle: int

    @property
    def length(self):
        return self.end - self.start

    def contains(self, theta, margin=0.0):
        th = self.start + np.mod(np.asarray(theta) - self.start, TWO_PI)
        return (th > self.start + margin) & (th < self.end - margin)


@dataclass
class FundamentalDomain:
    pairings: list
    circles: list  # ordered (c1_0, c2_0, c1_1, c2_1, ...)
    arcs: list
    successor: dict  # arc index -> (next arc index, letter applied to the end point)
    components: list  # each a list of arc indices in loop order
    area_check: dict = field(default_factory=dict)

    # -- group data ---------------------------------------------------------
    @property
    def m(self):
        return len(self.pairings)

    @property
    def generators(self):
        return [p.generator for p in self.pairings]

    def words(self, L):
        return enumerate_group(self.generators, L)

    @property
    def cut_points(self):
        """One point per boundary component: the start of its first arc."""
        return [np.exp(1j * self.arcs[c[0]].start) for c in self.components]

    @property
    def junctions(self):
        """All arc ends per component (points identified with the next arc's start)."""
        return [[np.exp(1j * self.arcs[a].end) for a in c] for c in self.components]

    def component_of_arc(self, a):
        for i, comp in enumerate(self.components):
            if a in comp:
                return i
        raise KeyError(a)

    # -- geometry -----------------------------------------------------------
    def contains(self, z):
        z = np.asarray(z)
        out = np.ones(z.shape, dtype=bool)
        for k, c in enumerate(self.circles):
            out &= ~c.inside(z, closed=(k % 2 == 1))
        return out

    def radius_fn(self, theta):
        theta = np.asarray(theta, dtype=float)
        R = np.ones_like(theta)
        for c in self.circles:
            R = np.minimum(R, c.entry_radius(theta))
        return R

    def breakpoints(self):
        pts = []
        for c in self.circles:
            pts.extend([c.angle - c.half_angle, c.angle + c.half_angle])
        return pts

    def area_rule(self, radial_nodes=64, angular_nodes=64, rmax=1.0):
        return polar_star_rule(self.radius_fn, self.breakpoints(), radial_nodes, angular_nodes,
                               periodic=not self.circles, rmax=rmax)

    def hyperbolic_area(self, rmax, radial_nodes=64, angular_nodes=64):
        rule = self.area_rule(radial_nodes, angular_nodes, rmax=rmax)
        return float(np.sum(rule.to_mu0()))

    def descent_arrays(self):
        cen = np.array([c.center for c in self.circles], dtype=complex)
        rad = np.array([c.radius for c in self.circles], dtype=float)
        ga = np.array([g.a for g in self.generators], dtype=complex)
        gb = np.array([g.b for g in self.generators], dtype=complex)
        return cen, rad, ga, gb

    # -- serialization ------------------------------------------------------
    def to_json(self):
        return {"pairings": [p.to_json() for p in self.pairings]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _circle_interval(c):
    return c.angle - c.half_angle, c.angle + c.half_angle


def build_domain(pairings, area_check=True) -> FundamentalDomain:
    """Fundamental domain of the Schottky group generated by ``pairings``.

    An empty list gives the trivial group (F = D, one boundary component).
    """
    pairings = list(pairings)
    if pairings:
        rep = verify_schottky(pairings)
        if not rep.ok:
            raise SchottkyError("; ".join(rep.messages))
    circles = [c for p in pairings for c in (p.circle1, p.circle2)]
    if not circles:
        arcs = [Arc(0.0, TWO_PI, -1, -1)]
        dom = FundamentalDomain(pairings, circles, arcs, {0: (0, 0)}, [[0]])
        return dom

    n = len(circles)
    order = sorted(range(n), key=lambda k: np.mod(circles[k].angle, TWO_PI))
    arcs = []
    for pos, k in enumerate(order):
        nxt = order[(pos + 1) % n]
        s = _circle_interval(circles[k])[1]
        e = _circle_interval(circles[nxt])[0]
        e = s + np.mod(e - s, TWO_PI)
        arcs.append(Arc(float(s), float(e), k, nxt))

    start_of = {a.start_circle: i for i, a in enumerate(arcs)}
    successor = {}
    for i, a in enumerate(arcs):
        c = a.end_circle
        k, side = divmod(c, 2)
        partner = c + 1 if side == 0 else c - 1
        # end point on circle1 moves by g_k, on circle2 by g_k^-1
        letter = (k + 1) if side == 0 else -(k + 1)
        j = start_of[partner]
        g = pairings[k].generator
        img = g(np.exp(1j * a.end)) if side == 0 else g.inverse()(np.exp(1j * a.end))
        if abs(img - np.exp(1j * arcs[j].start)) > 1e-8:
            raise SchottkyError(f"gluing of arc {i} does not land on the start of arc {j}")
        successor[i] = (j, letter)

    components, seen = [], set()
    for i in range(len(arcs)):
        if i in seen:
            continue
        comp, j = [], i
        while j not in seen:
            seen.add(j)
            comp.append(j)
            j = successor[j][0]
        components.append(comp)

    dom = FundamentalDomain(pairings, circles, arcs, successor, components)
    if area_check:
        areas = [dom.hyperbolic_area(r) for r in (0.9, 0.99, 0.999)]
        grows = areas[2] - areas[1] > areas[1] - areas[0] > 0
        dom.area_check = {"rmax": [0.9, 0.99, 0.999], "area": areas, "diverges": bool(grows)}
        if not grows:
            raise SchottkyError("hyperbolic area of F does not diverge; not an infinite-covolume domain")
    return dom


def trivial_domain():
    return build_domain([])


def flowed_domain(dom: FundamentalDomain, k=0, s=0.2) -> FundamentalDomain:
    """Same group, new cut: both circles of pairing k are moved by g_k^s.

    g_k^s commutes with g_k, so the moved pair is still paired by g_k.
    """
    if not 0 < s < 1:
        raise ValueError("flow parameter must lie in (0, 1)")
    new = list(dom.pairings)
    p = new[k]
    h = p.generator.power(s)
    cs = []
    for c in (p.circle1, p.circle2):
        pts = h(np.array(c.endpoints()))
        a0, a1 = np.angle(pts)
        mid = a0 + 0.5 * np.mod(a1 - a0, TWO_PI)
        half = 0.5 * np.mod(a1 - a0, TWO_PI)
        cs.append(GeodesicCircle.from_angles(mid, half))
    new[k] = Pairing(cs[0], cs[1], p.generator)
    return build_domain(new)


# ---------------------------------------------------------------------------
# orbit descent


def descend(dom: FundamentalDomain, z, max_steps=64):
    """Move each z into F.  Returns (points, lengths, ok, letters[n, max_steps])."""
    z = np.asarray(z, dtype=complex)
    if not dom.circles:
        n = z.size
        return (z.ravel().copy(), np.zeros(n, dtype=np.int64), np.ones(n, dtype=bool),
                np.zeros((n, max_steps), dtype=np.int64))
    return _kernels.descend(z, *dom.descent_arrays(), max_steps)


def _letters_to_word(row, n):
    # the applied maps are h_1, h_2, ... (h_s = g_k^{+-1}); the total map is h_n o ... o h_1
    letters = []
    for v in row[:n][::-1]:
        k = abs(int(v)) - 1
        letters.append((k, 1 if v > 0 else -1))
    out = GroupWord()
    for let in letters:
        out = out * GroupWord((let,))
    return out


def orbit_representative(dom: FundamentalDomain, z, Lmax=64):
    """(w, word) with w in F and word.transform(generators)(z) == w."""
    z = complex(z)
    _check_open_disc(z)
    pts, n, ok, let = descend(dom, np.array([z]), Lmax)
    if not ok[0]:
        raise HorizonExceeded(f"no representative within word length {Lmax}")
    return complex(pts[0]), _letters_to_word(let[0], int(n[0]))


def word_transforms(dom, letters, lengths):
    """Transform per point for descent output; groups identical words."""
    n = lengths.size
    a = np.ones(n, dtype=complex)
    b = np.zeros(n, dtype=complex)
    if n == 0 or lengths.max() == 0:
        return a, b
    keys = np.concatenate([lengths[:, None], letters], axis=1)
    uniq, inv = np.unique(keys, axis=0, return_inverse=True)
    inv = np.ravel(inv)
    gens = dom.generators
    for u, row in enumerate(uniq):
        g = _letters_to_word(row[1:], int(row[0])).transform(gens)
        a[inv == u] = g.a
        b[inv == u] = g.b
    return a, b


# ---------------------------------------------------------------------------
# JSON


def domain_from_json(spec):
    """``{"pairings": [...]}`` or ``{"classical": {m, half_angle, interlaced}}``.

    A pairing is either ``{"circle1": {center, radius}, "circle2": {...}}`` or a
    generator ``{"a_re", "a_im", "b_re", "b_im"}``; a generator is turned into
    its pair of isometric circles, which determine it up to sign.
    """
    from .mobius import classical_pairings

    if isinstance(spec, str):
        spec = json.loads(spec)
    if "classical" in spec:
        c = spec["classical"]
        return build_domain(classical_pairings(int(c.get("m", 2)), float(c.get("half_angle", 0.3)),
                                               bool(c.get("interlaced", False))))
    pairs = []
    for p in spec.get("pairings", []):
        if "circle1" in p:
            cs = [GeodesicCircle(complex(*p[key]["center"]), p[key]["radius"])
                  for key in ("circle1", "circle2")]
        else:
            a, b = complex(p["a_re"], p["a_im"]), complex(p["b_re"], p["b_im"])
            if abs(abs(a) ** 2 - abs(b) ** 2 - 1) > 1e-9:
                raise ValueError("generator must satisfy |a|^2 - |b|^2 = 1")
            if abs(b) < 1e-12:
                raise ValueError("a rotation has no isometric circle; generators must be hyperbolic")
            cs = [GeodesicCircle(-a.conjugate() / b.conjugate(), 1 / abs(b)),
                  GeodesicCircle(a / b.conjugate(), 1 / abs(b))]
        pairs.append(Pairing(*cs))
    return build_domain(pairs)


__all__ = ["Arc", "FundamentalDomain", "HorizonExceeded", "SchottkyError", "build_domain",
           "descend", "domain_from_json", "flowed_domain", "orbit_representative",
           "trivial_domain", "word_transforms", "MobiusTransform"]
