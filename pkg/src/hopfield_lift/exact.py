"""Hopfield instances and exact ground states by exhaustive enumeration.

Spins live in the integer domain ``s in {-1, +1}^n``; the physical vector is
``x = s / sqrt(n)``, so ``||H x|| = ||H s|| / sqrt(n)``. Because
``||H s|| = ||H (-s)||`` only the half-cube with ``s[0] = +1`` is enumerated.

The Gray-code enumerator splits the half-cube into ``2**k`` subcubes by
fixing the top ``k`` spins (``k`` depends only on ``n``), sweeps each one in
binary-reflected Gray order starting from all-plus low spins, and reduces by
value with ties going to the lexicographically smallest witness. The result
therefore does not depend on how many threads run the subcubes.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import BACKEND, kernels
from .errors import CapacityError, DomainError
from .model import Ensemble, Form, GroundStateResult, Method
from .rng import generator

DEFAULT_LIMIT = 30
NAIVE_LIMIT = 16
_MAX_SPLIT_BITS = 6
_SPLIT_FROM = 15


@dataclass(frozen=True)
class HopfieldInstance:
    """An ``m x n`` pattern matrix. The array is made read-only on creation."""

    matrix: np.ndarray
    ensemble: Ensemble = Ensemble.EXPLICIT
    seed: int | None = None
    ht: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        h = np.array(self.matrix, dtype=np.float64, copy=True)
        if h.ndim != 2 or h.shape[0] < 1 or h.shape[1] < 1:
            raise DomainError(f"matrix must be 2-d and non-empty, got shape {h.shape}")
        if not np.all(np.isfinite(h)):
            raise DomainError("matrix entries must be finite")
        h.setflags(write=False)
        ht = np.ascontiguousarray(h.T)
        ht.setflags(write=False)
        object.__setattr__(self, "matrix", h)
        object.__setattr__(self, "ht", ht)
        object.__setattr__(self, "ensemble", Ensemble.parse(self.ensemble))

    @property
    def m(self):
        return self.matrix.shape[0]

    @property
    def n(self):
        return self.matrix.shape[1]


def rows_for(alpha, n):
    """``m = round(alpha * n)`` (half away from zero), at least 1."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    return max(1, int(math.floor(alpha * n + 0.5)))


def sample_instance(m, n, ensemble=Ensemble.GAUSSIAN, seed=0):
    """Random instance; a deterministic function of its arguments."""
    if m < 1 or n < 1:
        raise DomainError(f"need m, n >= 1, got m={m}, n={n}")
    ensemble = Ensemble.parse(ensemble)
    rng = generator(seed)
    if ensemble is Ensemble.GAUSSIAN:
        h = rng.standard_normal((m, n))
    elif ensemble is Ensemble.BERNOULLI:
        h = 2.0 * rng.integers(0, 2, size=(m, n)).astype(np.float64) - 1.0
    else:
        raise DomainError("cannot sample an explicit instance")
    return HopfieldInstance(h, ensemble, int(seed))


def _as_instance(h):
    return h if isinstance(h, HopfieldInstance) else HopfieldInstance(h)


def _as_signs(s, n):
    s = np.asarray(s)
    if s.shape != (n,):
        raise DomainError(f"spin vector has shape {s.shape}, expected ({n},)")
    if not np.all(np.abs(s) == 1):
        raise DomainError("spins must be +1 or -1")
    return s.astype(np.int8)


def _sq_norm(v):
    if v.shape[0] > 10000:
        return math.fsum((v * v).tolist())
    return float(v @ v)


def evaluate(h, s):
    """``||H s||_2 / sqrt(n)``, i.e. ``||H x||_2`` at ``x = s / sqrt(n)``."""
    inst = _as_instance(h)
    s = _as_signs(s, inst.n)
    v = inst.matrix @ s.astype(np.float64)
    return math.sqrt(_sq_norm(v)) / math.sqrt(inst.n)


def thread_count(threads=None):
    """Resolve a thread count; ``None`` reads ``HOPFIELD_THREADS`` (0 = auto)."""
    if threads is None:
        raw = os.environ.get("HOPFIELD_THREADS", "0").strip() or "0"
        try:
            threads = int(raw)
        except ValueError:
            raise DomainError(f"HOPFIELD_THREADS must be an integer, got {raw!r}") from None
    if threads < 0:
        raise DomainError("thread count must be >= 0")
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads


def split_bits(n):
    """Number of top spins fixed per subcube; a function of ``n`` only."""
    return max(0, min(_MAX_SPLIT_BITS, n - _SPLIT_FROM))


def _check_limit(inst, limit):
    if inst.n > limit:
        work = (1 << (inst.n - 1)) * inst.m
        raise CapacityError(
            f"n={inst.n} exceeds the enumeration limit {limit}: "
            f"2^{inst.n - 1} = {1 << (inst.n - 1)} states, ~{work:.3e} multiply-adds",
            required_work=work,
        )


def _sweep_subcube(inst, k, b, maximize):
    n = inst.n
    nbits = n - 1 - k
    signs = np.ones(n, dtype=np.int8)
    for t in range(k):
        if (b >> t) & 1:
            signs[n - k + t] = -1
    start = signs.copy()
    best_sq, best_k, v = kernels.gray_sweep(inst.ht, signs, 1, nbits, maximize)
    best_k = int(best_k)
    gray = best_k ^ (best_k >> 1)
    witness = start
    for i in range(nbits):
        if (gray >> i) & 1:
            witness[1 + i] = -witness[1 + i]
    fresh = inst.matrix @ signs.astype(np.float64)
    scale = max(float(np.max(np.abs(fresh))), 1.0)
    drift = float(np.max(np.abs(np.asarray(v) - fresh))) / scale
    return float(best_sq), witness, drift


def _better(form, a, b):
    """Is candidate ``a = (sq, witness)`` preferred over ``b``?"""
    if a[0] != b[0]:
        return a[0] > b[0] if form is Form.POSITIVE else a[0] < b[0]
    return tuple(a[1].tolist()) < tuple(b[1].tolist())


def _result(inst, form, witness, visited, method, **extra):
    value = evaluate(inst, witness)
    return GroundStateResult(
        form=form,
        value=value,
        witness=witness,
        normalized=value / math.sqrt(inst.n),
        states_visited=visited,
        method=method,
        extra=extra,
    )


def exact_ground_state(h, form, limit=DEFAULT_LIMIT, threads=None):
    """Exact ``max`` (positive) or ``min`` (negative) of ``||H x||`` by Gray code.

    Raises :class:`CapacityError` when ``n > limit``.
    """
    inst = _as_instance(h)
    form = Form.parse(form)
    _check_limit(inst, limit)
    n = inst.n
    k = split_bits(n)
    maximize = form is Form.POSITIVE
    subcubes = range(1 << k)
    workers = min(thread_count(threads), len(subcubes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _sweep_subcube(inst, k, b, maximize), subcubes))
    else:
        parts = [_sweep_subcube(inst, k, b, maximize) for b in subcubes]
    best = parts[0]
    for cand in parts[1:]:
        if _better(form, cand, best):
            best = cand
    return _result(
        inst,
        form,
        best[1],
        1 << (n - 1),
        Method.EXACT_GRAY,
        drift=max(p[2] for p in parts),
        subcubes=len(subcubes),
        backend=BACKEND,
    )


def exact_ground_state_naive(h, form, limit=NAIVE_LIMIT):
    """Reference enumerator: recomputes ``H s`` for every state, ``n <= 16``."""
    inst = _as_instance(h)
    form = Form.parse(form)
    if inst.n > limit:
        _check_limit(inst, limit)
    n = inst.n
    count = 1 << (n - 1)
    codes = np.arange(count, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(n - 1, dtype=np.int64)) & 1
    signs = np.ones((count, n), dtype=np.int8)
    signs[:, 1:] = 1 - 2 * bits
    sq = np.einsum("ij,ij->i", *(2 * [signs.astype(np.float64) @ inst.matrix.T]))
    idx = int(np.argmax(sq) if form is Form.POSITIVE else np.argmin(sq))
    return _result(inst, form, signs[idx].copy(), count, Method.EXACT_NAIVE)


def read_matrix(path):
    """Read the ``m n`` header + ``m`` rows text format."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in (raw.strip() for raw in fh) if ln]
    if not lines:
        raise DomainError(f"{path}: empty matrix file")
    try:
        m, n = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise DomainError(f"{path}: header must be 'm n'") from None
    if len(lines) - 1 != m:
        raise DomainError(f"{path}: header says {m} rows, found {len(lines) - 1}")
    rows = []
    for i, ln in enumerate(lines[1:], start=2):
        row = [float(tok) for tok in ln.split()]
        if len(row) != n:
            raise DomainError(f"{path}:{i}: expected {n} values, found {len(row)}")
        rows.append(row)
    return HopfieldInstance(np.array(rows, dtype=np.float64), Ensemble.EXPLICIT)


def write_matrix(path, h):
    """Write the text format with shortest round-trip float representations."""
    inst = _as_instance(h)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{inst.m} {inst.n}\n")
        for row in inst.matrix.tolist():
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")
