"""Acceptance criteria 1-10, each run through the experiment catalog at its stated tolerance.

Every test records one ``criterion k: PASS|FAIL ...`` line; the lines are
printed in the pytest terminal summary and by ``python3 tests/test_acceptance.py``.
"""

import time

import pytest

from eqtoeplitz.cli import default_config, run_experiment

LINES = {}


def _record(key, ok, msg):
    LINES[key] = f"criterion {key}: {'PASS' if ok else 'FAIL'}  {msg}"


def _run(name, overrides=None, jobs=1):
    t0 = time.perf_counter()
    rows, summary = run_experiment(default_config(name, overrides), jobs)
    return rows, summary, time.perf_counter() - t0


def test_criterion_1_delta_integral():
    rows, s, dt = _run("eq8")
    assert {r["t"] for r in rows} == {3.0, 5.0, 8.0} and len(rows) == 9
    worst = max(r["rel_err"] for r in rows)
    ok = worst < 1e-6 and dt < 10
    _record("1", ok, f"max rel err {worst:.2e} (< 1e-6), {dt:.1f}s (< 10s)")
    assert ok and s["pass"]


def test_criterion_2_commutator_traces():
    rows, s, dt = _run("thm1-trace")
    assert len(rows) == 6 and all(r["N"] == 500 for r in rows)
    ok = all(r["err"] < 2 * (r["t"] - 1) / (r["N"] + r["t"]) for r in rows)
    ok &= all(r["route_gap"] < 1e-8 for r in rows) and dt < 60
    _record("2", ok, f"max err {max(r['err'] for r in rows):.2e} below 2(t-1)/(N+t), "
                     f"route gap {max(r['route_gap'] for r in rows):.1e} (< 1e-8), {dt:.1f}s (< 60s)")
    assert ok and s["pass"]


def _s2_rows():
    if "_s2" not in LINES:
        LINES["_s2"] = _run("hankel-s2")[0]
    return LINES["_s2"]


def test_criterion_3_telescoping_t2():
    # oracle: the partial sum equals (N+1)/(N+t) exactly
    r = next(r for r in _s2_rows() if r["kind"] == "telescoping" and r["t"] == 2.0)
    ok = r["N"] == 2000 and r["err"] < 1e-3
    _record("3a", ok, f"telescoping t=2, N=2000: err {r['err']:.2e} (< 1e-3)")
    assert ok


def test_criterion_3_double_integral():
    r = next(r for r in _s2_rows() if r["kind"] == "double_integral")
    ok = r["t"] == 6.0 and r["N"] == 48 and r["err"] < 1e-2
    _record("3b", ok, f"double integral t=6, 48x96 per factor: err {r['err']:.2e} (< 1e-2)")
    assert ok


@pytest.mark.xfail(strict=True, reason="the truncated sum telescopes to (N+1)/(N+t), so at t=6, "
                                        "N=2000 the error is exactly 5/2006 = 2.49e-3; 1e-3 needs N >= 4994")
def test_criterion_3_telescoping_t6():
    r = next(r for r in _s2_rows() if r["kind"] == "telescoping" and r["t"] == 6.0)
    ok = r["N"] == 2000 and r["err"] < 1e-3
    _record("3c", ok, f"telescoping t=6, N=2000: err {r['err']:.2e} (< 1e-3) [strict xfail]")
    assert ok


def test_criterion_4_disjoint_supports():
    rows, s, _ = _run("thm2-disjoint")
    rs = sorted(rows, key=lambda r: r["N"])
    assert [r["N"] for r in rs] == [40, 60, 80]
    dec = all(a["abs"] > b["abs"] for a, b in zip(rs, rs[1:]))
    last = rs[-1]
    ok = dec and last["abs"] < 1e-4 and last["sv_tail"] < 1e-6
    _record("4", ok, f"|trace| at N=80 {last['abs']:.2e} (< 1e-4), decreasing={dec}, "
                     f"singular-value tail {last['sv_tail']:.1e} (< 1e-6)")
    assert ok and s["pass"]


def test_criterion_5_carey_pincus():
    rows, s, _ = _run("carey-pincus")
    assert {(r["P"], r["Q"]) for r in rows} == {("X", "x"), ("XX", "xx")}
    worst = max(r["err"] for r in rows)
    ok = worst < 1e-2 and all(r["N"] == 500 and r["t"] == 2.0 for r in rows)
    _record("5", ok, f"max |lhs - rhs| {worst:.2e} (< 1e-2) at N=500, t=2")
    assert ok and s["pass"]


def test_criterion_6_tau_normalization():
    rows, s, _ = _run("tau-normalization")
    r = rows[0]
    ok = r["err"] < 1e-6 and r["t"] == 6.0 and r["N"] == 120
    _record("6", ok, f"|Tr T_f0 - quadrature| {r['err']:.2e} (< 1e-6)")
    assert ok and s["pass"]


def test_criterion_7_finite_stage_commutator():
    rows, s, dt = _run("thm3-commutator")
    fin = next(r for r in rows if r["final"])
    assert fin["N"] == 120 and fin["L"] == 3
    stage = s["details"]["stages"][0]
    ok = stage["rel_dev"] < 0.05 and stage["monotone_L"] and dt < 600
    _record("7", ok, f"rel dev {stage['rel_dev']:.2e} (< 5%), monotone L tail={stage['monotone_L']}, "
                     f"tail_N {fin['tail_N']:.1e}, {dt:.1f}s (< 600s)")
    assert ok and s["pass"]


def test_criterion_8_cut_independence():
    rows, s, _ = _run("cut-independence")
    a, b = (r["value"] for r in rows)
    assert rows[0]["cut_point_0"] != rows[1]["cut_point_0"]
    ok = abs(a - b) < 1e-3
    _record("8", ok, f"|I(base) - I(flowed)| {abs(a - b):.2e} (< 1e-3), value {a.real:.6f}")
    assert ok and s["pass"]


def test_criterion_9_index_suite():
    rows, s, _ = _run("gamma-index")
    cases = [r for r in rows if r["part"] == "cases"]
    assert len(cases) >= 6
    assert any(r["windings"].count(",") >= 2 for r in cases)  # multi-component
    hom = next(r for r in rows if r["part"] == "homotopy")
    assert hom["name"].startswith("100")
    probe = next(r for r in rows if r["part"] == "probe" and r["name"].startswith("3"))
    ok = all(r["ok"] for r in rows if r["part"] != "experimental")
    exp = next(r for r in rows if r["part"] == "experimental")
    _record("9", ok, f"{len(cases)} cases, homotopy failures {hom['failures']}, "
                     f"witnesses {probe['windings']}; EXPERIMENTAL tau {exp['estimate'].real:+.3f} "
                     f"(tail_N {exp['tail_N']:.1e}, not asserted)")
    assert ok and s["pass"]


def test_criterion_10_infrastructure():
    rows, s, _ = _run("invariants")
    by = {r["suite"]: r for r in rows}
    tol = {"delta": 1e-12, "unitarity": 1e-6, "recurrence": 1e-14, "determinism": 0.5}
    ok = all(by[k]["worst"] <= v for k, v in tol.items())
    _record("10", ok, "delta {:.1e}, unitarity {:.1e}, recurrence {:.1e}, byte-identical CSV {}".format(
        by["delta"]["worst"], by["unitarity"]["worst"], by["recurrence"]["worst"],
        by["determinism"]["worst"] == 0))
    assert ok and s["pass"]


def report():
    keys = sorted((k for k in LINES if not k.startswith("_")),
                  key=lambda k: (int("".join(c for c in k if c.isdigit())), k))
    return [LINES[k] for k in keys]


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(report()))
