"""Bit-flipping local search for the Hopfield forms.

Each restart draws uniform random signs from ``mix(seed, restart)`` and
descends on the squared norm with single-spin flips until no flip improves it
by more than ``IMPROVEMENT_EPS`` (or ``max_sweeps`` runs out). Flip deltas are
``||v - 2 s_j h_j||^2 - ||v||^2 = 4 ||h_j||^2 - 4 s_j <h_j, v>`` with
``v = H s``, so each candidate costs O(m).
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._backend import BACKEND, kernels
from .errors import DomainError
from .exact import _as_instance, _better, evaluate
from .model import Form, GroundStateResult, Method
from .rng import generator, mix, random_signs

IMPROVEMENT_EPS = 1e-12


class Strategy(enum.Enum):
    STEEPEST = "steepest"
    FIRST_IMPROVEMENT = "first"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        value = str(value).lower().replace("_", "-")
        aliases = {"first-improvement": "first", "firstimprovement": "first"}
        return cls(aliases.get(value, value))


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 16
    strategy: Strategy = Strategy.STEEPEST
    max_sweeps: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise DomainError("restarts must be >= 1")
        if self.max_sweeps < 1:
            raise DomainError("max_sweeps must be >= 1")
        object.__setattr__(self, "strategy", Strategy.parse(self.strategy))


def _restart(inst, form, cfg, r):
    rng = generator(mix(cfg.seed, r))
    signs = random_signs(rng, inst.n)
    start = int(rng.integers(0, inst.n))
    _, sweeps, evals, flips, hit = kernels.local_search(
        inst.ht,
        signs,
        form is Form.POSITIVE,
        cfg.strategy is Strategy.STEEPEST,
        start,
        cfg.max_sweeps,
        IMPROVEMENT_EPS,
    )
    if signs[0] < 0:
        signs = -signs
    v = inst.matrix @ signs.astype(np.float64)
    return float(v @ v), signs, int(evals), int(flips), bool(hit)


def bit_flip_search(h, form, cfg=None):
    """Best 1-flip local optimum over ``cfg.restarts`` random starts."""
    inst = _as_instance(h)
    form = Form.parse(form)
    cfg = cfg or SearchConfig()
    best = None
    evals = flips = 0
    hit_any = False
    for r in range(cfg.restarts):
        sq, signs, e, f, hit = _restart(inst, form, cfg, r)
        evals += e
        flips += f
        hit_any |= hit
        if best is None or _better(form, (sq, signs), best):
            best = (sq, signs)
    value = evaluate(inst, best[1])
    return GroundStateResult(
        form=form,
        value=value,
        witness=best[1],
        normalized=value / math.sqrt(inst.n),
        states_visited=evals,
        method=Method.BIT_FLIP,
        hit_max_sweeps=hit_any,
        extra={"flips": flips, "backend": BACKEND},
    )


def improving_flips(h, s, form, tol=0.0):
    """Indices whose single flip improves ``||H s||^2`` by more than ``tol``.

    Re-evaluates every neighbour from scratch; an empty list means ``s`` is
    1-flip locally optimal.
    """
    inst = _as_instance(h)
    form = Form.parse(form)
    s = np.asarray(s, dtype=np.float64)
    base = float(np.sum((inst.matrix @ s) ** 2))
    out = []
    for j in range(inst.n):
        t = s.copy()
        t[j] = -t[j]
        sq = float(np.sum((inst.matrix @ t) ** 2))
        gain = sq - base if form is Form.POSITIVE else base - sq
        if gain > tol:
            out.append(j)
    return out
