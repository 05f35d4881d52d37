"""Value types shared by the solvers and reports."""

import enum
from dataclasses import dataclass, field

import numpy as np


class Form(enum.Enum):
    """Which Hopfield form: maximise (positive) or minimise (negative) ||Hx||."""

    POSITIVE = "positive"
    NEGATIVE = "negative"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class Ensemble(enum.Enum):
    GAUSSIAN = "gaussian"
    BERNOULLI = "bernoulli"
    EXPLICIT = "explicit"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class Method(enum.Enum):
    EXACT_GRAY = "exact-gray"
    EXACT_NAIVE = "exact-naive"
    BIT_FLIP = "bitflip"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        value = str(value).lower()
        aliases = {"exact": "exact-gray", "gray": "exact-gray", "naive": "exact-naive"}
        return cls(aliases.get(value, value))


@dataclass(frozen=True, eq=False)
class GroundStateResult:
    """Optimum of ``||Hx||_2`` over ``x = s/sqrt(n)`` found by some method.

    ``value`` is the unsquared norm ``||H s||_2 / sqrt(n)``; ``normalized`` is
    ``value / sqrt(n)``, the quantity the asymptotic bounds talk about.
    ``witness`` is canonicalised so that its first spin is +1.
    """

    form: Form
    value: float
    witness: np.ndarray
    normalized: float
    states_visited: int
    method: Method
    hit_max_sweeps: bool = False
    extra: dict = field(default_factory=dict, compare=False)

    def __eq__(self, other):
        if not isinstance(other, GroundStateResult):
            return NotImplemented
        return (
            self.form is other.form
            and self.value == other.value
            and np.array_equal(self.witness, other.witness)
            and self.normalized == other.normalized
            and self.states_visited == other.states_visited
            and self.method is other.method
            and self.hit_max_sweeps == other.hit_max_sweeps
        )

    __hash__ = None

    def witness_string(self):
        return "".join("+" if s > 0 else "-" for s in self.witness)
