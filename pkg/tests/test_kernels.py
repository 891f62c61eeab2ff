import importlib.util
import pathlib

import numpy as np
import pytest

from eqtoeplitz import _accel, _kernels

BENCH = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


def _bench():
    spec = importlib.util.spec_from_file_location("bench_kernels", BENCH)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not available")


@needs_numba
@pytest.mark.parametrize("name", ["delta_pair", "ring_assembly", "descend"])
def test_paths_agree(name):
    bench = _bench()
    nb, npf, args = bench.cases(1, seed=7)[name]
    a, b = nb(*args), npf(*args)
    if isinstance(a, tuple):
        assert len(a) == len(b)
        for x, y in zip(a, b):
            assert np.shape(x) == np.shape(y)
    else:
        assert np.shape(a) == np.shape(b)
    scale = max(1.0, float(np.max(np.abs(np.asarray(a if not isinstance(a, tuple) else a[0])))))
    assert bench._maxdiff(a, b) < 1e-11 * scale


def test_dispatch_follows_flag(monkeypatch):
    bench = _bench()
    _, npf, args = bench.cases(1, seed=3)["ring_assembly"]
    monkeypatch.setattr(_kernels, "use_numba", lambda: False)
    np.testing.assert_array_equal(_kernels.ring_assembly(*args), npf(*args))


def test_env_flag_disables_numba():
    import subprocess
    import sys
    code = "from eqtoeplitz import _accel; print(_accel.HAVE_NUMBA)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={"EQTOEPLITZ_NO_NUMBA": "1", "PATH": ""})
    assert out.stdout.strip() == "False"


def test_benchmark_smoke(capsys):
    _bench().main(["--repeat", "1"])
    out = capsys.readouterr().out
    for name in ("delta_pair", "ring_assembly", "descend"):
        assert name in out
