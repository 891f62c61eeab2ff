"""Named experiments.  Each has a parameter grid, a per-point function returning
CSV rows, and a summary with pass/fail and the worst deviation.

Grid points are pure functions of (experiment, point parameters), so they can
be dispatched to worker processes and reassembled in grid order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import quadrature as Q
from .bergman import BasisSpec, basis_norm_sq, basis_values, representation_matrix, unitarity_defect
from .domain import build_domain, flowed_domain, trivial_domain
from .equivariant import extension_probe, gamma_index, invariant_extension, tau_commutator, tau_toeplitz
from .mobius import MobiusTransform, classical_pairings, delta
from .symbols import (Bump, CollarSeed, Composed, Constant, InvariantSymbol, Laurent, Radial,
                      boundary_restriction, collar_symbol, symbol_from_json, winding_numbers)
from .toeplitz import carey_pincus_check, commutator_trace, hankel_s2_norm_sq, toeplitz_matrix

Z = Laurent.z()
ZB = Laurent.zbar()


@dataclass(frozen=True)
class Experiment:
    name: str
    criterion: int | None
    description: str
    defaults: dict
    grid: callable
    point: callable
    summarize: callable


def _result(ok, worst, tol, **details):
    return {"pass": bool(ok), "worst_deviation": float(worst), "tolerance": tol, "details": details}


# ---------------------------------------------------------------------------
# 1. invariant-measure integral of delta^t


def _eq8_grid(cfg):
    b0s = cfg["params"].get("b0", [[0, 0], [0.5, 0], [0.3, 0.6]])
    return [{"t": t, "b0": b} for t in cfg["t"] for b in b0s]


def _eq8_point(p, cfg):
    t = float(p["t"])
    b0 = complex(*p["b0"])
    nr = int(cfg["params"].get("radial", 64))
    rule = Q.disc_rule("mu_0", nr, 2 * nr, decay=t)
    v = Q.delta_integral(t, b0, rule)
    ex = 4 * np.pi / (t - 1)
    return [{"t": t, "b0": b0, "value": v, "expected": ex, "rel_err": abs(v - ex) / ex}]


def _eq8_sum(rows, cfg):
    worst = max(r["rel_err"] for r in rows)
    return _result(worst < cfg["tolerance"], worst, cfg["tolerance"])


# ---------------------------------------------------------------------------
# 2. commutator traces of Laurent pairs


THM1_PAIRS = [
    ("zbar,z", ZB, Z, 1.0),
    ("zbar^2,z", Laurent.zbar(2), Z, 0.0),
    ("zbar+z^2,z+zbar^3", ZB + Laurent.z(2), Z + Laurent.zbar(3), 1.0),
]


def _thm1_pairs(cfg):
    custom = cfg["params"].get("pairs")
    if not custom:
        return THM1_PAIRS
    out = []
    for i, c in enumerate(custom):
        f, g = symbol_from_json(c["f"]), symbol_from_json(c["g"])
        oracle = c.get("oracle")
        if oracle is None and c["f"] == c["g"]:
            oracle = 0.0
        out.append((c.get("label", f"pair{i}"), f, g, oracle))
    return out


def _thm1_grid(cfg):
    return [{"t": t, "pair": i, "N": n} for t in cfg["t"] for i in range(len(_thm1_pairs(cfg)))
            for n in cfg["N"]]


def _thm1_point(p, cfg):
    label, f, g, oracle = _thm1_pairs(cfg)[p["pair"]]
    t, N = float(p["t"]), int(p["N"])
    tr = commutator_trace(f, g, BasisSpec(t, N), cfg.get("padding"))
    interior = Q.two_form_integral(f, g)
    nb = 256
    boundary = Q.boundary_form_integral(boundary_restriction(f, samples=nb),
                                        boundary_restriction(g, samples=nb))
    if oracle is None:
        oracle = boundary
    return [{"t": t, "N": N, "pair": label, "trace": tr, "oracle": complex(oracle),
             "interior": interior, "boundary": boundary, "err": abs(tr - oracle),
             "bound": 2 * (t - 1) / (N + t), "route_gap": abs(interior - boundary)}]


def _thm1_sum(rows, cfg):
    ok = all(r["err"] < r["bound"] and r["route_gap"] < 1e-8 for r in rows)
    worst = max(max(r["err"] / r["bound"] for r in rows), max(r["route_gap"] for r in rows) / 1e-8)
    return _result(ok, worst, "err < 2(t-1)/(N+t); route gap < 1e-8",
                   max_err=max(r["err"] for r in rows), max_route_gap=max(r["route_gap"] for r in rows))


# ---------------------------------------------------------------------------
# 3. Hankel S2 norm of z


def _s2_grid(cfg):
    pts = [{"kind": "telescoping", "t": t, "N": n} for t in cfg["t"] for n in cfg["N"]]
    for t in cfg["params"].get("double_t", [6.0]):
        pts.append({"kind": "double_integral", "t": t, "N": int(cfg["params"].get("rule", 48))})
    return pts


def _s2_point(p, cfg):
    t = float(p["t"])
    if p["kind"] == "telescoping":
        v = hankel_s2_norm_sq(Z, BasisSpec(t, int(p["N"])))
        tol = cfg["tolerance"]
    else:
        n = int(p["N"])
        ra = Q.disc_rule("mu_t", n, 2 * n, t=t)
        rb = Q.disc_rule("mu_0", n, 2 * n, decay=t)
        v = Q.delta_pair_integral(lambda a, b: a * (np.conj(a) - np.conj(b)), t, ra, rb).real
        tol = float(cfg["params"].get("double_tolerance", 1e-2))
    return [{"kind": p["kind"], "t": t, "N": p["N"], "value": v, "err": abs(v - 1.0), "tol": tol}]


def _s2_sum(rows, cfg):
    ok = all(r["err"] < r["tol"] for r in rows)
    worst = max(r["err"] / r["tol"] for r in rows)
    return _result(ok, worst, "telescoping 1e-3, double integral 1e-2 (ratios reported)",
                   failing=[f"{r['kind']} t={r['t']}" for r in rows if r["err"] >= r["tol"]])


# ---------------------------------------------------------------------------
# 4. disjoint supports


def thm2_bumps(R=0.7, rho=0.2, sep=0.3):
    al = np.arcsin((2 * rho + sep) / (2 * R))
    return Bump(R * np.exp(1j * al), rho), Bump(R * np.exp(-1j * al), rho)


def _thm2_grid(cfg):
    Ns = sorted(cfg["N"])
    return [{"t": t, "N": n, "svd": n == Ns[-1]} for t in cfg["t"] for n in Ns]


def _thm2_point(p, cfg):
    f, g = thm2_bumps(**cfg["params"].get("bumps", {}))
    t, N = float(p["t"]), int(p["N"])
    spec = BasisSpec(t, N)
    d = N // 4 if cfg.get("padding") is None else int(cfg["padding"])
    tr = commutator_trace(f, g, spec, d)
    row = {"t": t, "N": N, "trace": tr, "abs": abs(tr), "sv_tail": np.nan}
    if p["svd"]:
        A = toeplitz_matrix(f, spec.padded(d)).entries
        B = toeplitz_matrix(g, spec.padded(d)).entries
        s = np.linalg.svd((A @ B)[:spec.dim, :spec.dim], compute_uv=False)
        c = np.cumsum(s)
        row["sv_tail"] = float(np.max(np.abs(c[-1] - c[spec.dim // 2:])))
    return [row]


def _thm2_sum(rows, cfg):
    out = []
    for t in sorted({r["t"] for r in rows}):
        rs = sorted((r for r in rows if r["t"] == t), key=lambda r: r["N"])
        dec = all(a["abs"] > b["abs"] for a, b in zip(rs, rs[1:]))
        last = rs[-1]
        out.append((dec, last["abs"], last["sv_tail"]))
    ok = all(dec and a < cfg["tolerance"] and s < 1e-6 for dec, a, s in out)
    worst = max(a for _, a, _ in out)
    return _result(ok, worst, cfg["tolerance"], decreasing=[o[0] for o in out],
                   sv_tail=[o[2] for o in out])


# ---------------------------------------------------------------------------
# 5. Carey-Pincus


CP_PAIRS = [("X", "x"), ("XX", "xx")]


def _cp_grid(cfg):
    return [{"t": t, "N": n, "pair": i} for t in cfg["t"] for n in cfg["N"] for i in range(len(CP_PAIRS))]


def _cp_point(p, cfg):
    P, Qp = CP_PAIRS[p["pair"]]
    lhs, rhs = carey_pincus_check(P, Qp, Z, BasisSpec(float(p["t"]), int(p["N"])))
    return [{"t": p["t"], "N": p["N"], "P": P, "Q": Qp, "lhs": lhs, "rhs": rhs, "err": abs(lhs - rhs)}]


def _cp_sum(rows, cfg):
    worst = max(r["err"] for r in rows)
    return _result(worst < cfg["tolerance"], worst, cfg["tolerance"])


# ---------------------------------------------------------------------------
# 6. tau normalisation


def _tau_grid(cfg):
    return [{"t": t, "N": n} for t in cfg["t"] for n in cfg["N"]]


def _tau_point(p, cfg):
    rho = float(cfg["params"].get("rho", 0.4))
    est = tau_toeplitz(Radial.bump(rho), BasisSpec(float(p["t"]), int(p["N"])))
    return [{"t": p["t"], "N": p["N"], "trace": est.value, "quadrature": est.quadrature,
             "err": abs(est.value - est.quadrature), "tail_N": est.tail_N}]


def _tau_sum(rows, cfg):
    worst = max(r["err"] for r in rows)
    return _result(worst < cfg["tolerance"], worst, cfg["tolerance"])


# ---------------------------------------------------------------------------
# 7. finite-stage commutator formula


def thm3_setup(params):
    dom = build_domain(classical_pairings(2, float(params.get("half_angle", 0.3))))
    f0 = Bump(complex(*params.get("f_center", [0.15, 0.0])), float(params.get("radius", 0.3)))
    g0 = Bump(complex(*params.get("g_center", [0.15, 0.2])), float(params.get("radius", 0.3)))
    return dom, f0, g0


def form_scale(f, g, region, nodes=(96, 96)):
    """(1/pi) int_F (|f_z g_zbar| + |f_zbar g_z|) dA: the size the 2-form cancels down from."""
    r = Q.region_rule(region, *nodes)
    z = r.nodes
    dens = np.abs(f.dz(z) * g.dzbar(z)) + np.abs(f.dzbar(z) * g.dz(z))
    return float(np.sum(r.weights * dens) / np.pi)


def _tail_monotone(vals, floor=1e-14):
    inc = np.abs(np.diff(vals))
    return bool(all(b <= a or b < floor for a, b in zip(inc, inc[1:])))


def _thm3_grid(cfg):
    return [{"t": t, "N": n, "L": l} for t in cfg["t"] for n in cfg["N"] for l in cfg["L"]]


def _thm3_point(p, cfg):
    dom, f0, g0 = thm3_setup(cfg["params"])
    t, N, L = float(p["t"]), int(p["N"]), int(p["L"])
    est = tau_commutator(f0, g0, dom, BasisSpec(t, N), L, cfg.get("padding"), quad_nodes=(96, 96))
    scale = form_scale(invariant_extension(f0, dom), invariant_extension(g0, dom), dom)
    rows = []
    for n, l, v in est.sequence:
        rows.append({"t": t, "N": n, "L": l, "value": v, "quadrature": est.quadrature, "scale": scale,
                     "tail_N": est.tail_N, "tail_L": est.tail_L, "final": n == N and l == L})
    return rows


def _thm3_sum(rows, cfg):
    min_n = int(cfg["params"].get("min_N", 40))
    finals = [r for r in rows if r["final"]]
    ok, worst, diag = True, 0.0, []
    for r in finals:
        ref = max(abs(r["quadrature"]), r["scale"])
        dev = abs(r["value"] - r["quadrature"]) / ref
        seqL = [x["value"] for x in rows if x["N"] == r["N"] and x["t"] == r["t"]
                and x["L"] <= r["L"]]
        mono = _tail_monotone(seqL)
        enough = r["N"] >= min_n
        ok &= dev < cfg["tolerance"] and mono and enough
        worst = max(worst, dev)
        diag.append({"N": r["N"], "L": r["L"], "rel_dev": dev, "tail_N": r["tail_N"],
                     "tail_L": r["tail_L"], "monotone_L": mono, "N_ok": enough})
    return _result(ok, worst, cfg["tolerance"], stages=diag)


# ---------------------------------------------------------------------------
# 8. cut independence


def cut_pair(dom):
    f = collar_symbol(dom, 0, 1)
    seed_g = CollarSeed(f.seed.theta1, f.seed.theta2, 0.75, 0.9, kind="bump", amplitude=0.5 + 0.5j)
    g = InvariantSymbol(seed_g, dom, 1.0)
    return f, g


def _cut_grid(cfg):
    return [{"cut": c} for c in ("base", "flowed")]


def _cut_point(p, cfg):
    base = build_domain(classical_pairings(2, float(cfg["params"].get("half_angle", 0.3))))
    f, g = cut_pair(base)
    dom = base if p["cut"] == "base" else flowed_domain(base, int(cfg["params"].get("pairing", 0)),
                                                         float(cfg["params"].get("flow", 0.2)))
    nodes = int(cfg["params"].get("nodes", 64))
    v = Q.two_form_integral(f, g, dom, nodes, nodes)
    cuts = [complex(np.round(c, 12)) for c in dom.cut_points]
    return [{"cut": p["cut"], "value": v, "cut_point_0": cuts[0]}]


def _cut_sum(rows, cfg):
    vals = [r["value"] for r in rows]
    worst = max(abs(a - b) for a in vals for b in vals)
    return _result(worst < cfg["tolerance"], worst, cfg["tolerance"])


# ---------------------------------------------------------------------------
# 9. Gamma-index suite


def index_cases():
    pants = build_domain(classical_pairings(2, 0.3))
    triv = trivial_domain()
    c0 = collar_symbol(pants, 0, 1)
    c1 = collar_symbol(pants, 1, 2)
    c2 = collar_symbol(pants, 2, -3)
    comp1 = pants.components[1]
    c1b = collar_symbol(pants, 1, 1, arc_index=comp1[-1])
    a = 0.3 + 0.2j
    blaschke = Composed(Z, MobiusTransform(1.0, -a))
    return [
        ("const", Constant(1.0), pants, [0, 0, 0]),
        ("collar C0 k=1", c0, pants, [1, 0, 0]),
        ("collar C1 k=2", c1, pants, [0, 2, 0]),
        ("collar C2 k=-3", c2, pants, [0, 0, -3]),
        ("collar C1 second arc", c1b, pants, [0, 1, 0]),
        ("product C1*C2", c1 * c2, pants, [0, 2, -3]),
        ("product C0*C1b*C2", c0 * c1b * c2, pants, [1, 1, -3]),
        ("blaschke", blaschke, triv, [1]),
        ("zbar^3", Laurent.zbar(3), triv, [-3]),
        ("2+z", Z + 2.0, triv, [0]),
    ]


def _index_grid(cfg):
    return [{"part": k} for k in ("cases", "homotopy", "additivity", "probe", "experimental")]


def _index_point(p, cfg):
    cases = index_cases()
    rows = []
    if p["part"] == "cases":
        for name, f, dom, expect in cases:
            rep = gamma_index(f, dom)
            rows.append({"part": "cases", "name": name, "windings": str(rep.windings),
                         "expected": str(expect), "index": rep.index,
                         "log_integral": rep.log_integral, "ok": rep.windings == expect and rep.integral_ok})
    elif p["part"] == "homotopy":
        rng = np.random.default_rng(int(cfg.get("seed", 0)))
        n = int(cfg["params"].get("perturbations", 100))
        fails = 0
        for i in range(n):
            name, f, dom, expect = cases[1 + i % (len(cases) - 1)]
            bd = boundary_restriction(f, dom, 256)
            amp = 0.49 * bd.min_abs()
            K = 6
            c = rng.normal(size=(2, K)) + 1j * rng.normal(size=(2, K))
            c *= amp / np.sum(np.abs(c))

            def pert(th, v, c=c):
                k = np.arange(K)
                return v + c[0] @ np.exp(1j * np.outer(k, th)) * 0.5 + c[1] @ np.exp(-1j * np.outer(k, th)) * 0.5

            w = winding_numbers(bd.map(pert))
            fails += w != expect
        rows.append({"part": "homotopy", "name": f"{n} perturbations", "failures": fails, "ok": fails == 0})
    elif p["part"] == "additivity":
        pants = [c for c in cases if c[2].circles]
        for (n1, f1, d1, e1), (n2, f2, d2, e2) in zip(pants, pants[1:]):
            lhs = gamma_index(f1 * f2, d1).index
            rhs = gamma_index(f1, d1).index + gamma_index(f2, d1).index
            rows.append({"part": "additivity", "name": f"{n1} x {n2}", "index": lhs, "expected": rhs,
                         "ok": lhs == rhs})
    elif p["part"] == "probe":
        for dom in (build_domain(classical_pairings(2, 0.3)), trivial_domain()):
            rep = extension_probe(dom)
            expect = [list(np.eye(rep["components"], dtype=int)[i]) for i in range(rep["components"])]
            got = [w["windings"] for w in rep["witnesses"]]
            rows.append({"part": "probe", "name": f"{rep['components']} components",
                         "windings": str(got), "expected": str(expect), "ok": got == expect})
    else:
        pants = build_domain(classical_pairings(2, 0.3))
        N = int(cfg["params"].get("experimental_N", 60))
        rep = gamma_index(collar_symbol(pants, 0, 1), pants, BasisSpec(6.0, N), experimental=True, L=1)
        e = rep.experimental
        rows.append({"part": "experimental", "name": "tau([T_f,T_R]) EXPERIMENTAL", "index": rep.index,
                     "estimate": e.value, "tail_N": e.tail_N, "tail_L": e.tail_L, "ok": True})
    return rows


def _index_sum(rows, cfg):
    bad = [r["name"] for r in rows if not r["ok"]]
    return _result(not bad, float(len(bad)), 0, failing=bad,
                   cases=sum(r["part"] == "cases" for r in rows))


def _probe_grid(cfg):
    return [{"m": m} for m in cfg["params"].get("m", [0, 1, 2, 3])]


def _probe_point(p, cfg):
    m = int(p["m"])
    dom = trivial_domain() if m == 0 else build_domain(classical_pairings(m, 0.3))
    rep = extension_probe(dom)
    return [{"m": m, "component": w["component"], "windings": str(w["windings"]), "index": w["index"]}
            for w in rep["witnesses"]]


def _probe_sum(rows, cfg):
    bad = [r for r in rows if r["index"] == 0]
    return _result(not bad, float(len(bad)), 0, witnesses=len(rows))


# ---------------------------------------------------------------------------
# 10. infrastructure invariants


def _inv_grid(cfg):
    return [{"suite": s} for s in ("delta", "unitarity", "recurrence", "determinism")]


def _inv_point(p, cfg):
    rng = np.random.default_rng(int(cfg.get("seed", 0)))
    s = p["suite"]
    if s == "delta":
        pts = 0.95 * np.sqrt(rng.random((2, 200))) * np.exp(2j * np.pi * rng.random((2, 200)))
        worst = 0.0
        for _ in range(20):
            g = MobiusTransform.boost(rng.random() * 3, rng.random() * 2 * np.pi) @ \
                MobiusTransform.rotation(rng.random() * 2 * np.pi)
            worst = max(worst, float(np.max(np.abs(delta(g(pts[0]), g(pts[1])) - delta(pts[0], pts[1])))))
        return [{"suite": s, "worst": worst, "tol": 1e-12}]
    if s == "unitarity":
        worst = 0.0
        gs = [MobiusTransform(np.cosh(0.5), np.sinh(0.5)), MobiusTransform.rotation(0.7),
              MobiusTransform.boost(0.8, 1.1) @ MobiusTransform.rotation(-0.4)]
        for t in (2.0, 3.5, 6.0):
            for g in gs:
                worst = max(worst, unitarity_defect(representation_matrix(g, BasisSpec(t, 60)), 10))
        return [{"suite": s, "worst": worst, "tol": 1e-6}]
    if s == "recurrence":
        # exact rational oracle: h_n = prod_{k<=n} k/(k+t-1) for rational t
        worst = 0.0
        r = 0.99 * np.sqrt(rng.random(50))
        th = 2 * np.pi * rng.random(50)
        for t in (Fraction(3, 2), Fraction(2), Fraction(6), Fraction(113, 10)):
            h = [Fraction(1)]
            for k in range(1, 201):
                h.append(h[-1] * k / (k + t - 1))
            exact = np.array([float(x) for x in h])
            n = np.arange(201)
            worst = max(worst, float(np.max(np.abs(basis_norm_sq(n, float(t)) / exact - 1))))
            V = basis_values(r * np.exp(1j * th), 60, float(t))
            m = np.arange(61)
            # moduli only: the phase e^{i m theta} carries ~m*theta ulp in any reference
            D = r[:, None] ** m / np.sqrt(exact[:61])
            worst = max(worst, float(np.max(np.abs(np.abs(V) / D - 1))))
        return [{"suite": s, "worst": worst, "tol": 1e-14}]
    # determinism: the same small experiment serialised with 1 and 2 workers
    from .cli import run_to_bytes

    a = run_to_bytes("eq8", jobs=1, overrides={"t": [3.0, 5.0]})
    b = run_to_bytes("eq8", jobs=2, overrides={"t": [3.0, 5.0]})
    return [{"suite": s, "worst": 0.0 if a == b else 1.0, "tol": 0.5}]


def _inv_sum(rows, cfg):
    ok = all(r["worst"] <= r["tol"] for r in rows)
    worst = max(r["worst"] / r["tol"] for r in rows)
    return _result(ok, worst, "per suite", failing=[r["suite"] for r in rows if r["worst"] > r["tol"]])


# ---------------------------------------------------------------------------
# convergence sweeps


def _sweep1_grid(cfg):
    return [{"t": t, "N": n} for t in cfg["t"] for n in cfg["N"]]


def _sweep1_point(p, cfg):
    t, N = float(p["t"]), int(p["N"])
    tr = commutator_trace(ZB, Z, BasisSpec(t, N))
    return [{"t": t, "N": N, "trace": tr, "err": abs(tr - 1), "err_times_N": abs(tr - 1) * (N + t)}]


def _sweep1_sum(rows, cfg):
    ok = all(r["err"] < 2 * (r["t"] - 1) / (r["N"] + r["t"]) for r in rows)
    return _result(ok, max(r["err"] for r in rows), "2(t-1)/(N+t)",
                   rate=[r["err_times_N"] for r in rows])


def _sweep3_grid(cfg):
    return [{"t": t, "N": n, "L": l} for t in cfg["t"] for n in cfg["N"] for l in cfg["L"]]


def _sweep3_point(p, cfg):
    dom = build_domain(classical_pairings(2, 0.3))
    f = collar_symbol(dom, 0, 1)
    s = f.seed
    est = tau_commutator(s, s.conj(), dom, BasisSpec(float(p["t"]), int(p["N"])), int(p["L"]),
                         quadrature=False)
    bd = boundary_restriction(f, dom, 256)
    ref = Q.boundary_form_integral(bd, boundary_restriction(f.conj(), dom, 256))
    return [{"t": p["t"], "N": p["N"], "L": p["L"], "value": est.value, "boundary": ref,
             "err": abs(est.value - ref), "tail_N": est.tail_N, "tail_L": est.tail_L}]


def _sweep3_sum(rows, cfg):
    out = True
    for t in {r["t"] for r in rows}:
        for L in {r["L"] for r in rows}:
            rs = sorted((r for r in rows if r["t"] == t and r["L"] == L), key=lambda r: r["N"])
            out &= all(b["err"] < a["err"] for a, b in zip(rs, rs[1:]))
    return _result(out, min(r["err"] for r in rows), "error decreasing in N")


# ---------------------------------------------------------------------------

CATALOG = {e.name: e for e in [
    Experiment("eq8", 1, "invariant-measure integral of delta^t equals 4 pi/(t-1)",
               {"t": [3.0, 5.0, 8.0], "N": [0], "L": [0], "tolerance": 1e-6}, _eq8_grid, _eq8_point, _eq8_sum),
    Experiment("thm1-trace", 2, "commutator traces of Laurent pairs vs boundary/interior 2-form",
               {"t": [2.0, 6.0], "N": [500], "L": [0], "tolerance": 1.0}, _thm1_grid, _thm1_point, _thm1_sum),
    Experiment("hankel-s2", 3, "S2 norm of z: telescoping sum and delta^t double integral",
               {"t": [2.0, 6.0], "N": [2000], "L": [0], "tolerance": 1e-3}, _s2_grid, _s2_point, _s2_sum),
    Experiment("thm2-disjoint", 4, "commutator trace of bumps with separated supports tends to 0",
               {"t": [6.0], "N": [40, 60, 80], "L": [0], "tolerance": 1e-4}, _thm2_grid, _thm2_point, _thm2_sum),
    Experiment("carey-pincus", 5, "trace of [P(T*,T), Q(T*,T)] vs boundary integral of P dQ",
               {"t": [2.0], "N": [500], "L": [0], "tolerance": 1e-2}, _cp_grid, _cp_point, _cp_sum),
    Experiment("tau-normalization", 6, "Tr(T_f0) vs ((t-1)/pi) int f0 dA/(1-|z|^2)^2",
               {"t": [6.0], "N": [120], "L": [0], "tolerance": 1e-6}, _tau_grid, _tau_point, _tau_sum),
    Experiment("thm3-commutator", 7, "finite-stage tau([T_f,T_g]) vs (1/2 pi i) int_F df dg",
               {"t": [6.0], "N": [120], "L": [3], "tolerance": 0.05}, _thm3_grid, _thm3_point, _thm3_sum),
    Experiment("cut-independence", 8, "(1/2 pi i) int_F df dg over two cuts of the same quotient",
               {"t": [6.0], "N": [0], "L": [0], "tolerance": 1e-3}, _cut_grid, _cut_point, _cut_sum),
    Experiment("gamma-index", 9, "index = winding numbers: cases, homotopy, additivity, witnesses",
               {"t": [6.0], "N": [0], "L": [0], "tolerance": 1.0}, _index_grid, _index_point, _index_sum),
    Experiment("invariants", 10, "determinism, delta invariance, unitarity blocks, basis recurrence",
               {"t": [6.0], "N": [0], "L": [0], "tolerance": 1.0}, _inv_grid, _inv_point, _inv_sum),
    Experiment("extension-probe", None, "one nonzero-index witness per boundary component (m = 0..3)",
               {"t": [6.0], "N": [0], "L": [0], "tolerance": 1.0}, _probe_grid, _probe_point, _probe_sum),
    Experiment("thm1-convergence", None, "sweep: error of Tr[T_zbar, T_z] against N (rate (t-1)/N)",
               {"t": [2.0, 6.0], "N": [50, 100, 200, 500], "L": [0], "tolerance": 1.0},
               _sweep1_grid, _sweep1_point, _sweep1_sum),
    Experiment("thm3-convergence", None, "sweep: collar tau estimate against N, L vs boundary route",
               {"t": [6.0], "N": [40, 80, 120], "L": [1, 2], "tolerance": 1.0},
               _sweep3_grid, _sweep3_point, _sweep3_sum),
]}


def check_catalog():
    names = [e.name for e in CATALOG.values()]
    if len(set(names)) != len(names):
        raise RuntimeError("duplicate experiment names")
    crit = [e.criterion for e in CATALOG.values() if e.criterion is not None]
    if sorted(crit) != list(range(1, 11)):
        raise RuntimeError("every acceptance criterion must map to exactly one experiment")
    return True


def timed(fn, *a, **k):
    t0 = time.perf_counter()
    out = fn(*a, **k)
    return out, time.perf_counter() - t0


__all__ = ["CATALOG", "Experiment", "check_catalog", "cut_pair", "form_scale", "index_cases",
           "thm2_bumps", "thm3_setup"]
