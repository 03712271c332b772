"""Structured result of a property or bound experiment."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


def _jsonable(value):
    import numpy as np

    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class VerificationReport:
    """Outcome of one verification run.

    ``fitted_constant`` is the tightest empirical constant observed (None for
    purely boolean checks), ``per_trial`` the per-trial statistics that fed it,
    and ``witness`` identifies where the extreme value was attained.
    ``wall_time_s`` is excluded from serialization so reruns with the same seed
    produce byte-identical documents.
    """

    experiment: str
    passed: bool
    fitted_constant: float | None = None
    per_trial: list = field(default_factory=list)
    seed: int | None = None
    witness: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    wall_time_s: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "experiment": self.experiment,
            "passed": bool(self.passed),
            "fitted_constant": _jsonable(self.fitted_constant),
            "per_trial": _jsonable(self.per_trial),
            "seed": _jsonable(self.seed),
            "witness": _jsonable(self.witness),
            "details": _jsonable(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)
