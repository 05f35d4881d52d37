"""Compiled kernels against the numpy fallback."""

import numpy as np
import pytest

from hopfield_lift import _fallback
from hopfield_lift.exact import sample_instance
from hopfield_lift.rng import generator, random_signs

kernels = pytest.importorskip("hopfield_lift._kernels")


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("maximize", [True, False])
def test_gray_sweep_agrees(seed, maximize):
    inst = sample_instance(7 + seed % 5, 9, "gaussian", seed)
    s1 = random_signs(generator(seed), 9)
    s2 = s1.copy()
    a = kernels.gray_sweep(inst.ht, s1, 1, 8, maximize)
    b = _fallback.gray_sweep(inst.ht, s2, 1, 8, maximize)
    assert a[0] == pytest.approx(b[0], rel=1e-12)
    assert a[1] == b[1]
    assert np.allclose(a[2], b[2], rtol=1e-12, atol=1e-12)
    assert np.array_equal(s1, s2)


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("maximize", [True, False])
@pytest.mark.parametrize("steepest", [True, False])
def test_local_search_agrees(seed, maximize, steepest):
    inst = sample_instance(15, 15, "gaussian", seed)
    s1 = random_signs(generator(seed), 15)
    s2 = s1.copy()
    a = kernels.local_search(inst.ht, s1, maximize, steepest, seed, 1000, 1e-12)
    b = _fallback.local_search(inst.ht, s2, maximize, steepest, seed, 1000, 1e-12)
    assert a[0] == pytest.approx(b[0], rel=1e-12)
    assert a[1:] == b[1:]
    assert np.array_equal(s1, s2)


def test_compensated_norm_for_tall_matrices():
    h = sample_instance(10_050, 3, "gaussian", 1)
    s1 = np.ones(3, dtype=np.int8)
    a = kernels.gray_sweep(h.ht, s1.copy(), 1, 2, True)
    b = _fallback.gray_sweep(h.ht, s1.copy(), 1, 2, True)
    assert a[0] == pytest.approx(b[0], rel=1e-14)
    assert a[1] == b[1]


def test_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    code = (
        "from hopfield_lift._backend import BACKEND;"
        "from hopfield_lift.exact import exact_ground_state, sample_instance;"
        "r = exact_ground_state(sample_instance(9, 9, 'gaussian', 3), 'negative');"
        "print(BACKEND, repr(r.value), r.witness_string())"
    )
    env = dict(os.environ, HOPFIELD_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, value, witness = out.stdout.split()
    assert backend == "python"

    from hopfield_lift.exact import exact_ground_state, sample_instance

    r = exact_ground_state(sample_instance(9, 9, "gaussian", 3), "negative")
    assert float(value) == r.value
    assert witness == r.witness_string()
