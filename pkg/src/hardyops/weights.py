"""Weight sequences defining the spaces H_E(xi).

A space is fixed by a positive sequence ``xi_0, xi_1, ...``; the norm of
``f = sum a_n z^n`` is ``sqrt(sum |a_n|^2 xi_n^2)``.  Only finitely many terms
are ever stored, and they are stored as logarithms: ``sqrt(n!)`` overflows a
double near ``n = 170`` while the ratios ``xi_k / xi_n`` needed by operator
matrices stay moderate.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ConfigError, DegreeExceedsWeights, NonPositiveWeight, ZeroScale

__all__ = [
    "DEFAULT_N_MAX",
    "GrowthReport",
    "WeightSequence",
    "fock_weights",
    "growth_check",
    "load_weights",
    "scale_weights",
    "table_weights",
    "weights_from_config",
]

DEFAULT_N_MAX = 64

# log-domain agreement used when deciding whether two sequences span the same space
_SAME_SPACE_ATOL = 1e-12

KINDS = ("fock", "table")


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """Immutable weight sequence ``xi_0 .. xi_{n_max}`` held as ``log xi_n``."""

    kind: str
    log_values: np.ndarray

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        logs = np.array(self.log_values, dtype=np.float64).reshape(-1)
        if logs.size == 0:
            raise ValueError("a weight sequence needs at least xi_0")
        if not np.all(np.isfinite(logs)):
            raise NonPositiveWeight("log weights must be finite")
        logs.setflags(write=False)
        object.__setattr__(self, "log_values", logs)

    @property
    def n_max(self) -> int:
        return self.log_values.size - 1

    @property
    def values(self) -> np.ndarray:
        """``xi_n`` in double precision (``inf`` where it overflows)."""
        with np.errstate(over="ignore"):
            return np.exp(self.log_values)

    @cached_property
    def extended_values(self) -> np.ndarray:
        """``xi_n`` in extended precision, used to build operator matrices."""
        out = np.exp(self.log_values.astype(np.longdouble))
        out.setflags(write=False)
        return out

    def ratio(self, k: int, n: int) -> float:
        """``xi_k / xi_n`` computed from the logs."""
        self.require(max(k, n))
        return math.exp(self.log_values[k] - self.log_values[n])

    def require(self, degree: int, what: str = "degree") -> None:
        if degree > self.n_max:
            raise DegreeExceedsWeights(
                f"{what} {degree} exceeds n_max={self.n_max} of the weight sequence"
            )

    def agrees_with(self, other: "WeightSequence", upto: int | None = None) -> bool:
        """True when both sequences coincide on indices ``0..upto``."""
        if other is self:
            return True
        if upto is None:
            upto = max(self.n_max, other.n_max)
        if upto > self.n_max or upto > other.n_max:
            return False
        a = self.log_values[: upto + 1]
        b = other.log_values[: upto + 1]
        scale = np.maximum(1.0, np.abs(a))
        return bool(np.all(np.abs(a - b) <= _SAME_SPACE_ATOL * scale))

    def descriptor(self) -> dict:
        """Config-style document describing this sequence."""
        if self.kind == "fock":
            return {"kind": "fock", "n_max": self.n_max}
        return {"kind": "table", "n_max": self.n_max, "values": self.values.tolist()}

    def __repr__(self):
        return f"WeightSequence(kind={self.kind!r}, n_max={self.n_max})"


def fock_weights(n_max: int = DEFAULT_N_MAX) -> WeightSequence:
    """Fock space weights ``xi_n = sqrt(n!)``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    logs = [0.5 * math.lgamma(n + 1.0) for n in range(n_max + 1)]
    return WeightSequence("fock", np.array(logs))


def table_weights(values: Sequence[float]) -> WeightSequence:
    vals = np.asarray(values, dtype=np.float64).reshape(-1)
    if vals.size == 0:
        raise ValueError("a weight table needs at least one entry")
    bad = np.flatnonzero(~(vals > 0) | ~np.isfinite(vals))
    if bad.size:
        n = int(bad[0])
        raise NonPositiveWeight(f"weight xi_{n} = {vals[n]!r} is not a positive finite number")
    return WeightSequence("table", np.log(vals))


def scale_weights(xi: WeightSequence, mu: complex) -> WeightSequence:
    """Weights ``xi_n / |mu|^n`` of the scaled space H_E(xi mu)."""
    if mu == 0:
        raise ZeroScale("the scaled space needs mu != 0")
    n = np.arange(xi.n_max + 1)
    return WeightSequence("table", xi.log_values - n * math.log(abs(mu)))


@dataclass(frozen=True)
class GrowthReport:
    monotone_tail: bool
    last_ratio: float
    window: int
    note: str


def growth_check(xi: WeightSequence, window: int = 10) -> GrowthReport:
    """Heuristic screen for ``xi_n^(1/n) -> infinity``.

    Looks at ``g_n = log(xi_n) / n`` over the last ``window`` indices.  A finite
    prefix can never settle the limit, so this only flags sequences whose tail
    plainly does not grow.
    """
    if window < 1 or window > xi.n_max:
        raise ValueError(f"window must lie in 1..{xi.n_max}")
    n = np.arange(xi.n_max - window + 1, xi.n_max + 1)
    g = xi.log_values[n] / n
    slack = 1e-12 * np.maximum(1.0, np.abs(g[:-1]))
    steps = np.diff(g)
    monotone = bool(np.all(steps >= -slack))
    strictly = bool(np.all(steps > slack))
    last = float(g[-1])
    if strictly:
        note = "log(xi_n)/n increases over the window"
    else:
        note = (
            f"suspicious: log(xi_n)/n does not grow over the last {window} terms "
            f"(last value {last:.6g}); the sequence may violate xi_n^(1/n) -> infinity"
        )
    return GrowthReport(monotone, last, window, note)


def weights_from_config(doc: dict) -> WeightSequence:
    """Build weights from ``{"kind": "fock"|"table", "n_max": int, "values": [...]}``."""
    if not isinstance(doc, dict):
        raise ConfigError("weight config must be a mapping")
    kind = doc.get("kind")
    if kind == "fock":
        n_max = doc.get("n_max", DEFAULT_N_MAX)
        if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 0:
            raise ConfigError("fock weights need a nonnegative integer n_max")
        return fock_weights(n_max)
    if kind == "table":
        values = doc.get("values")
        if not isinstance(values, list) or not values:
            raise ConfigError("table weights need a nonempty 'values' list")
        n_max = doc.get("n_max")
        if n_max is not None and n_max != len(values) - 1:
            raise ConfigError(f"n_max={n_max} disagrees with {len(values)} values")
        try:
            return table_weights(values)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown weight kind {kind!r}")


def load_weights(source: str | Path, n_max: int | None = None) -> WeightSequence:
    """Load weights from a JSON file, or ``"fock"`` for Fock weights."""
    if str(source) == "fock":
        return fock_weights(DEFAULT_N_MAX if n_max is None else n_max)
    path = Path(source)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read weight file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"weight file {path} is not valid JSON: {exc}") from exc
    return weights_from_config(doc)
