"""Backend selection and parallel driver for the grid kernels.

The compiled kernel is used when it imports and the problem fits in 64-bit
integers; otherwise the pure-Python twin runs.  Set ``TILTSTAB_PURE_PYTHON=1``
to force the fallback and ``TILTSTAB_THREADS`` to cap the worker count.
"""
from __future__ import annotations

import logging
import os
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import _fujita_py

log = logging.getLogger(__name__)

try:
    if os.environ.get("TILTSTAB_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _fujita_c
except ImportError as exc:  # pragma: no cover - depends on the build
    log.debug("compiled kernel unavailable: %s", exc)
    _fujita_c = None

BACKEND = "cython" if _fujita_c is not None else "python"

_INT64_SAFE = 2 ** 62

_MASK_NAMES = ((_fujita_py.FAIL_A, "A"), (_fujita_py.FAIL_B, "B"), (_fujita_py.FAIL_C, "C"))


def decode_mask(mask: int) -> tuple:
    return tuple(name for bit, name in _MASK_NAMES if mask & bit)


def default_workers() -> int:
    raw = os.environ.get("TILTSTAB_THREADS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"TILTSTAB_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"TILTSTAB_THREADS must be a positive integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class ScanResult:
    rows: tuple  # (d, n_failing, q1, q2, mask) for every d with a failure
    checked: int
    backend: str


def _fits_int64(m: int, alpha: int, bound: int) -> bool:
    return max(m ** 3 * bound, 49 * alpha, bound * bound * 2, m * m * bound) < _INT64_SAFE


def _select(backend: Optional[str], m: int, alpha: int, bound: int):
    if backend is None:
        backend = BACKEND
    if backend == "cython":
        if _fujita_c is None:
            raise RuntimeError("compiled kernel is not available")
        if _fits_int64(m, alpha, bound):
            return "cython", _fujita_c.scan_d_range
        backend = "python"
    if backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return "python", _fujita_py.scan_d_range


def _chunks(lo: int, hi: int, parts: int):
    size, extra = divmod(hi - lo, parts)
    start = lo
    for k in range(parts):
        stop = start + size + (1 if k < extra else 0)
        if stop > start:
            yield start, stop
        start = stop


def _tuples_on_grid(d_lo: int, d_hi: int, bound: int) -> int:
    total = 0
    for d in range(d_lo, d_hi):
        for q1 in range(1, bound + 1):
            total += min(bound, q1 * q1 // d) + 1
    return total * bound


def fujita_scan(
    m: int,
    alpha: int,
    bound: int,
    d_min: int = 1,
    workers: Optional[int] = None,
    backend: Optional[str] = None,
) -> ScanResult:
    """Run the kernel over ``d_min <= d <= bound``, split into contiguous ``d`` ranges.

    Each ``d`` is owned by exactly one worker and results are stored by
    ``d``, so the output does not depend on the partition.
    """
    name, kernel = _select(backend, m, alpha, bound)
    d_lo, d_hi = d_min, bound + 1
    n = max(0, d_hi - d_lo)
    counts, fq1, fq2, fmask = (array("q", bytes(8 * n)) for _ in range(4))
    if workers is None:
        workers = default_workers()
    workers = max(1, min(workers, n or 1))

    def run(span):
        lo, hi = span
        sl = slice(lo - d_lo, hi - d_lo)
        views = [memoryview(buf)[sl] for buf in (counts, fq1, fq2, fmask)]
        kernel(m, alpha, lo, hi, bound, *views)

    spans = list(_chunks(d_lo, d_hi, workers))
    if workers == 1 or len(spans) <= 1:
        for span in spans:
            run(span)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, spans))

    rows = tuple(
        (d_lo + i, counts[i], fq1[i], fq2[i], fmask[i]) for i in range(n) if counts[i]
    )
    return ScanResult(rows, _tuples_on_grid(d_lo, d_hi, bound), name)
