"""Python access to the kstab engine.

Rationals cross the boundary as strings such as ``"49/26"``; use
:func:`fractions.Fraction` to turn them into numbers.
"""

from __future__ import annotations

import functools
import json
from fractions import Fraction
from typing import Any, Optional

from . import _core

__all__ = [
    "KstabError",
    "check_invariance",
    "default_data_dir",
    "evaluate_formula",
    "find_destabilizer",
    "formula_names",
    "hilbert_prefix",
    "hm_weight",
    "invariant_dimension",
    "peano_invariants",
    "run_case",
    "run_case_doc",
    "run_suite",
    "s_from_volume",
    "toric_product",
]


class KstabError(RuntimeError):
    """Raised for every engine failure; ``kind`` is the short error name."""

    def __init__(self, message: str):
        kind, _, _ = message.partition(":")
        super().__init__(message)
        self.kind = kind.strip()


def _translated(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _core.KstabError as err:
            raise KstabError(str(err)) from None

    return wrapper


@_translated
def default_data_dir() -> str:
    return _core.default_data_dir()


@_translated
def run_case(path: str, data_dir: str = "") -> dict:
    return json.loads(_core.run_case(str(path), str(data_dir)))


@_translated
def run_case_doc(doc: dict, label: str = "inline", data_dir: str = "") -> dict:
    return json.loads(_core.run_case_json(json.dumps(doc), label, str(data_dir)))


@_translated
def run_suite(data_dir: str = "", jobs: int = 1, seed: Optional[int] = None) -> dict:
    return json.loads(_core.run_suite(str(data_dir), jobs, seed))


def formula_names() -> list[str]:
    return list(_core.formula_names())


@_translated
def evaluate_formula(name: str, **params: Any) -> dict:
    clean = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in params.items()}
    return json.loads(_core.evaluate_formula(name, json.dumps(clean)))


@_translated
def hm_weight(support: str, r0: int, r1: int) -> int:
    return _core.hm_weight(support, r0, r1)


@_translated
def find_destabilizer(support: str, bound: int = 5) -> Optional[dict]:
    found = _core.find_destabilizer(support, bound)
    if found is None:
        return None
    r0, r1, weight, semistable = found
    return {"lambda": (r0, r1), "weight": weight, "strictly_semistable_direction": semistable}


def invariant_dimension(k: int) -> int:
    return _core.invariant_dimension(k)


def hilbert_prefix(n: int) -> list[int]:
    return list(_core.hilbert_prefix(n))


@_translated
def peano_invariants(coeffs: dict) -> tuple[Fraction, Fraction, Fraction]:
    clean = {k: str(v) for k, v in coeffs.items()}
    return tuple(Fraction(x) for x in _core.peano_invariants(json.dumps(clean)))


def check_invariance(trials: int = 20, seed: int = 0) -> tuple[int, int]:
    return tuple(_core.check_invariance(trials, seed))


@_translated
def toric_product(model_path: str, indices: list[int]) -> Fraction:
    return Fraction(_core.toric_product(str(model_path), list(indices)))


@_translated
def s_from_volume(pieces: list[dict], a_top) -> Fraction:
    return Fraction(_core.s_from_volume(json.dumps(pieces), str(a_top)))
