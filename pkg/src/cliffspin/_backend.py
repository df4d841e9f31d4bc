"""Kernel selection.

The compiled extension is used when it imports and ``CLIFFSPIN_PURE`` is unset;
otherwise the pure-Python twin.  A compiled call that overflows int64 is
retried on the Python kernel, so results never depend on the backend.
"""

from __future__ import annotations

import logging
import os

import numpy as np

from . import _kernels_py

log = logging.getLogger(__name__)

try:
    if os.environ.get("CLIFFSPIN_PURE"):
        raise ImportError("CLIFFSPIN_PURE set")
    from . import _kernels as _compiled
except ImportError as exc:  # pragma: no cover - depends on the build
    log.debug("compiled kernels unavailable (%s); using pure Python", exc)
    _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _kernels_py.BACKEND
INT64_MAX = 2**63 - 1


PRIME = 2**31 - 1


def _fits(values) -> bool:
    if isinstance(values, np.ndarray):
        return values.dtype.kind in "iu" and (values.size == 0 or int(np.abs(values).max()) <= INT64_MAX)
    return all(-INT64_MAX <= v <= INT64_MAX for v in values)


def _tolist(rows) -> list[list[int]]:
    return [[int(x) for x in r] for r in rows]


def rref(rows: list[list[int]], backend: str | None = None):
    """Integer RREF; returns ``(primitive_rows, pivots)`` as Python ints."""
    use_c = _compiled is not None and backend in (None, "cython")
    if use_c and rows and _fits(x for r in rows for x in r):
        try:
            out, piv = _compiled.rref(rows)
            return _tolist(out), list(piv)
        except OverflowError:
            log.debug("int64 overflow in rref; retrying in Python")
    return _kernels_py.rref(rows)


def spin(gens: list[list[list[int]]], seed: list[int], backend: str | None = None):
    """Semi-echelon integer basis of the spinning closure of ``seed``."""
    use_c = _compiled is not None and backend in (None, "cython")
    flat = gens if isinstance(gens, np.ndarray) else (x for g in gens for r in g for x in r)
    if use_c and _fits(seed) and _fits(flat):
        try:
            return _tolist(_compiled.spin(gens, seed))
        except OverflowError:
            log.debug("int64 overflow in spin; retrying in Python")
    return _kernels_py.spin(gens, seed)


def spin_rank_mod(gens, seed: list[int], p: int = PRIME, backend: str | None = None) -> int:
    """Rank of the spinning closure over GF(p); a full rank certifies full rank over Q."""
    if _compiled is not None and backend in (None, "cython"):
        return int(_compiled.spin_rank_mod(np.asarray(gens, dtype=np.int64), np.asarray(seed, dtype=np.int64), p))
    return _kernels_py.spin_rank_mod(gens, seed, p)


def available() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])
