import numpy as np
import pytest

from hopfield_lift.errors import DomainError
from hopfield_lift.exact import evaluate, exact_ground_state, sample_instance
from hopfield_lift.model import Form, Method
from hopfield_lift.search import SearchConfig, Strategy, bit_flip_search, improving_flips

STRATEGIES = list(Strategy)


@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("form", list(Form))
def test_identity_landscape_is_flat(strategy, form):
    r = bit_flip_search(np.eye(7), form, SearchConfig(restarts=3, strategy=strategy))
    assert r.value == pytest.approx(1.0)
    assert r.extra["flips"] == 0
    assert r.method is Method.BIT_FLIP


@pytest.mark.parametrize("form", list(Form))
def test_single_spin(form):
    h = np.array([[2.0], [-1.0]])
    r = bit_flip_search(h, form, SearchConfig(restarts=1))
    assert r.value == pytest.approx(exact_ground_state(h, form).value)
    assert r.extra["flips"] <= 1


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_matches_exact_mostly(strategy):
    hits = 0
    total = 200
    for seed in range(total):
        n = 6 + seed % 11
        inst = sample_instance(n, n, "gaussian", 500 + seed)
        exact = exact_ground_state(inst, Form.POSITIVE)
        found = bit_flip_search(inst, Form.POSITIVE, SearchConfig(restarts=64, strategy=strategy, seed=seed))
        assert found.value <= exact.value * (1 + 1e-12)
        hits += found.value >= exact.value * (1 - 1e-12)
    assert hits >= 0.95 * total


@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("form", list(Form))
def test_local_optimality_and_direction(strategy, form):
    for seed in range(10):
        inst = sample_instance(12, 11, "gaussian", seed)
        r = bit_flip_search(inst, form, SearchConfig(restarts=4, strategy=strategy, seed=seed))
        assert improving_flips(inst, r.witness, form, tol=1e-9) == []
        exact = exact_ground_state(inst, form).value
        if form is Form.POSITIVE:
            assert r.value <= exact * (1 + 1e-12)
        else:
            assert r.value >= exact * (1 - 1e-12)
        assert evaluate(inst, r.witness) == r.value
        assert not r.hit_max_sweeps


def test_improving_flips_detects_non_optimum():
    h = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert improving_flips(h, [1, -1], Form.POSITIVE) == [0, 1]
    assert improving_flips(h, [1, 1], Form.POSITIVE) == []


def test_monotone_in_restarts():
    inst = sample_instance(30, 30, "gaussian", 8)
    for form in Form:
        prev = None
        for k in (1, 2, 4, 8, 16):
            v = bit_flip_search(inst, form, SearchConfig(restarts=k, seed=3)).value
            if prev is not None:
                assert (v >= prev) if form is Form.POSITIVE else (v <= prev)
            prev = v


def test_deterministic():
    inst = sample_instance(25, 25, "gaussian", 1)
    cfg = SearchConfig(restarts=5, strategy="first", seed=77)
    a = bit_flip_search(inst, "negative", cfg)
    b = bit_flip_search(inst, "negative", cfg)
    assert a == b and np.array_equal(a.witness, b.witness)


def test_max_sweeps_flag():
    inst = sample_instance(40, 40, "gaussian", 2)
    r = bit_flip_search(inst, Form.POSITIVE, SearchConfig(restarts=1, max_sweeps=1))
    assert r.hit_max_sweeps


def test_config_validation():
    with pytest.raises(DomainError):
        SearchConfig(restarts=0)
    with pytest.raises(DomainError):
        SearchConfig(max_sweeps=0)
    assert SearchConfig(strategy="first-improvement").strategy is Strategy.FIRST_IMPROVEMENT
