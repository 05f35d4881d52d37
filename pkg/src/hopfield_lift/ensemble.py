"""Seeded Monte Carlo studies over random Hopfield instances.

Trial ``t`` of a run with seed ``S`` draws its matrix from seed ``mix(S, t)``
(see :mod:`hopfield_lift.rng`); bit-flip searches in that trial use seed
``mix(search.seed, t)``. Aggregates use ``math.fsum`` so that the summary
does not depend on the order trials are folded in.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import baseline_bounds, lifted_bound
from .errors import DomainError, EvaluationError
from .exact import DEFAULT_LIMIT, _check_limit, exact_ground_state, rows_for, sample_instance
from .model import Ensemble, Form, Method
from .rng import generator, mix
from .search import SearchConfig, bit_flip_search

GAUSSIAN_ONLY_CAVEAT = "bounds-proved-for-gaussian"
# beliefs stated for alpha = 1 large-n limits; reported, never asserted
SOFT_EXPECTATIONS = {Form.POSITIVE: 1.78, Form.NEGATIVE: 0.328}


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    alpha: float = 1.0
    trials: int = 10
    ensemble: Ensemble = Ensemble.GAUSSIAN
    method: Method = Method.EXACT_GRAY
    form: Form = Form.POSITIVE
    seed: int = 0
    search: SearchConfig | None = None
    limit: int = DEFAULT_LIMIT

    def __post_init__(self):
        object.__setattr__(self, "ensemble", Ensemble.parse(self.ensemble))
        object.__setattr__(self, "method", Method.parse(self.method))
        object.__setattr__(self, "form", Form.parse(self.form))
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if self.trials < 1:
            raise DomainError("trials must be >= 1")
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")
        if self.ensemble is Ensemble.EXPLICIT:
            raise DomainError("ensemble runs need a random ensemble")
        if self.method is Method.EXACT_NAIVE:
            raise DomainError("ensemble method must be exact-gray or bitflip")
        if self.method is Method.BIT_FLIP and self.search is None:
            object.__setattr__(self, "search", SearchConfig())

    @property
    def m(self):
        return rows_for(self.alpha, self.n)

    def as_dict(self):
        out = {
            "n": self.n,
            "m": self.m,
            "alpha": self.alpha,
            "trials": self.trials,
            "ensemble": self.ensemble.value,
            "method": self.method.value,
            "form": self.form.value,
            "seed": self.seed,
        }
        if self.method is Method.BIT_FLIP:
            out["search"] = {
                "restarts": self.search.restarts,
                "strategy": self.search.strategy.value,
                "max_sweeps": self.search.max_sweeps,
                "seed": self.search.seed,
            }
        return out


@dataclass(frozen=True)
class Trial:
    index: int
    seed: int
    value: float
    normalized: float
    witness: str
    hit_max_sweeps: bool = False


@dataclass(frozen=True)
class EnsembleSummary:
    config: EnsembleConfig
    trials: tuple
    mean: float
    stddev: float
    stderr: float
    minimum: float
    maximum: float
    bound: float
    baseline: float
    violations: int
    caveats: tuple = ()

    @property
    def normalized(self):
        return np.array([t.normalized for t in self.trials])

    def as_dict(self):
        form = self.config.form
        return {
            "config": self.config.as_dict(),
            "trials": [
                {
                    "trial": t.index,
                    "seed": t.seed,
                    "value": t.value,
                    "normalized": t.normalized,
                    "witness": t.witness,
                }
                for t in self.trials
            ],
            "statistics": {
                "mean": self.mean,
                "stddev": self.stddev,
                "stderr": self.stderr,
                "min": self.minimum,
                "max": self.maximum,
            },
            "bound": {
                "kind": "upper" if form is Form.POSITIVE else "lower",
                "lifted": self.bound,
                "baseline": self.baseline,
                "violations": self.violations,
                "soft_expectation": SOFT_EXPECTATIONS[form] if self.config.alpha == 1 else None,
                "caveats": list(self.caveats),
            },
        }


def summarize(values):
    """``(mean, sample stddev, stderr)``, independent of the order of ``values``."""
    values = [float(v) for v in values]
    k = len(values)
    mean = math.fsum(values) / k
    if k > 1:
        var = math.fsum((v - mean) ** 2 for v in values) / (k - 1)
    else:
        var = 0.0
    std = math.sqrt(var)
    return mean, std, std / math.sqrt(k)


def count_violations(values, bound, form):
    form = Form.parse(form)
    if form is Form.POSITIVE:
        return sum(1 for v in values if v > bound)
    return sum(1 for v in values if v < bound)


def run_trial(cfg, t):
    seed = mix(cfg.seed, t)
    inst = sample_instance(cfg.m, cfg.n, cfg.ensemble, seed)
    if cfg.method is Method.EXACT_GRAY:
        res = exact_ground_state(inst, cfg.form, limit=cfg.limit)
    else:
        s = cfg.search
        scfg = SearchConfig(s.restarts, s.strategy, s.max_sweeps, mix(s.seed, t))
        res = bit_flip_search(inst, cfg.form, scfg)
    return Trial(t, seed, res.value, res.normalized, res.witness_string(), res.hit_max_sweeps)


def run_ensemble(cfg):
    """Run ``cfg.trials`` seeded trials and compare with the lifted bound."""
    if cfg.method is Method.EXACT_GRAY:
        _check_limit(sample_instance(1, cfg.n, Ensemble.GAUSSIAN, 0), cfg.limit)
    trials = tuple(run_trial(cfg, t) for t in range(cfg.trials))
    return summarize_trials(cfg, trials)


def summarize_trials(cfg, trials):
    values = [t.normalized for t in trials]
    mean, std, se = summarize(values)
    bound = lifted_bound(cfg.alpha, cfg.form).value
    up, low = baseline_bounds(cfg.alpha)
    caveats = (GAUSSIAN_ONLY_CAVEAT,) if cfg.ensemble is Ensemble.BERNOULLI else ()
    return EnsembleSummary(
        config=cfg,
        trials=tuple(trials),
        mean=mean,
        stddev=std,
        stderr=se,
        minimum=min(values),
        maximum=max(values),
        bound=bound,
        baseline=up if cfg.form is Form.POSITIVE else low,
        violations=count_violations(values, bound, cfg.form),
        caveats=caveats,
    )


@dataclass(frozen=True)
class ConcentrationRow:
    n: int
    m: int
    mean: float
    stddev: float
    stderr: float
    trials: int


@dataclass(frozen=True)
class ConcentrationReport:
    rows: tuple
    bound: float
    flags: tuple = field(default=())


def concentration_report(cfg, n_grid):
    """Per-``n`` statistics of the normalised optimum, with trend flags.

    Flags (not errors) are raised when stddev fails to shrink along the grid
    or, for the positive form, when the mean fails to grow toward the bound.
    """
    rows = []
    for n in n_grid:
        sub = EnsembleConfig(
            n=int(n),
            alpha=cfg.alpha,
            trials=cfg.trials,
            ensemble=cfg.ensemble,
            method=cfg.method,
            form=cfg.form,
            seed=cfg.seed,
            search=cfg.search,
            limit=cfg.limit,
        )
        s = run_ensemble(sub)
        rows.append(ConcentrationRow(sub.n, sub.m, s.mean, s.stddev, s.stderr, sub.trials))
    flags = []
    for a, b in zip(rows, rows[1:]):
        if not b.stddev < a.stddev:
            flags.append(f"stddev-not-decreasing:{a.n}->{b.n}")
        if cfg.form is Form.POSITIVE and not b.mean > a.mean:
            flags.append(f"mean-not-increasing:{a.n}->{b.n}")
    return ConcentrationReport(tuple(rows), lifted_bound(cfg.alpha, cfg.form).value, tuple(flags))


@dataclass(frozen=True)
class ComparisonSample:
    n: int
    m: int
    num_pairs: int
    samples: int
    c3: float
    form: Form
    lhs_mean: float
    rhs_mean: float
    lhs_stderr: float
    rhs_stderr: float

    @property
    def joint_stderr(self):
        return math.hypot(self.lhs_stderr, self.rhs_stderr)

    def holds(self, sigmas=3.0):
        return self.lhs_mean <= self.rhs_mean + sigmas * self.joint_stderr


_EXP_LIMIT = 700.0


class _Moments:
    def __init__(self):
        self.k = 0
        self.mean = 0.0
        self.m2 = 0.0

    def add(self, x):
        # Chan et al. parallel update
        kb = x.shape[0]
        mb = float(np.mean(x))
        m2b = float(np.sum((x - mb) ** 2))
        k = self.k + kb
        d = mb - self.mean
        self.mean += d * kb / k
        self.m2 += m2b + d * d * self.k * kb / k
        self.k = k

    def result(self):
        var = self.m2 / (self.k - 1) if self.k > 1 else 0.0
        return self.mean, math.sqrt(var / self.k)


def _checked_exp(z, c3):
    if np.max(z) > _EXP_LIMIT:
        raise EvaluationError(
            f"exponent {float(np.max(z)):.1f} overflows at c3={c3}; retry with c3 <= {c3 / 2:g}"
        )
    return np.exp(z)


def comparison_smoke_test(n, m, num_pairs, samples, c3, form, seed, chunk=50_000):
    """Monte Carlo estimate of both sides of the exponential comparison inequality.

    Candidates ``x_p`` are uniform over ``{+-1/sqrt(n)}^n`` and ``y_p`` uniform
    on the unit sphere in R^m. Per sample, with fresh ``H, g`` (left) and
    fresh Gaussian vectors ``gv, hv`` (right):

    * positive: ``max_p exp(c3 (y_p' H x_p + g))`` vs ``max_p exp(c3 (gv'y_p + hv'x_p))``
    * negative: ``max_i min_j exp(-c3 (y_j' H x_i + g))`` vs the same with
      ``gv'y_j + hv'x_i``, over the grid of all candidate x's and y's.

    The inequality says the left mean does not exceed the right mean.
    """
    form = Form.parse(form)
    if not c3 > 0:
        raise DomainError("c3 must be positive")
    if num_pairs < 1 or samples < 2 or n < 1 or m < 1:
        raise DomainError("need n, m, num_pairs >= 1 and samples >= 2")
    rng = generator(seed)
    xs = (2.0 * rng.integers(0, 2, size=(num_pairs, n)) - 1.0) / math.sqrt(n)
    ys = rng.standard_normal((num_pairs, m))
    ys /= np.linalg.norm(ys, axis=1, keepdims=True)
    lhs, rhs = _Moments(), _Moments()
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        h = rng.standard_normal((k, m, n))
        g = rng.standard_normal(k)
        gv = rng.standard_normal((k, m))
        hv = rng.standard_normal((k, n))
        gy = gv @ ys.T
        hx = hv @ xs.T
        hx_all = h @ xs.T  # [k, m, x index]
        if form is Form.POSITIVE:
            left = np.einsum("pi,kip->kp", ys, hx_all) + g[:, None]
            right = gy + hx
            lz = c3 * left.max(axis=1)
            rz = c3 * right.max(axis=1)
        else:
            # [k, i (x index), j (y index)]
            left = np.swapaxes(ys @ hx_all, 1, 2) + g[:, None, None]
            right = gy[:, None, :] + hx[:, :, None]
            lz = -c3 * left.max(axis=2).min(axis=1)
            rz = -c3 * right.max(axis=2).min(axis=1)
        lhs.add(_checked_exp(lz, c3))
        rhs.add(_checked_exp(rz, c3))
        done += k
    lm, ls = lhs.result()
    rm, rs = rhs.result()
    return ComparisonSample(n, m, num_pairs, samples, float(c3), form, lm, rm, ls, rs)
