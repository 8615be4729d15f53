"""Blocked evaluation of large phase matrices.

The slow transform paths and the O(N^2) operators all reduce to sums of
the form sum_n exp(j * rows[k] * cols[n]) * vec[n] (possibly with an
extra gathered factor). Building the full (M, N) matrix in one piece is
memory-hungry and numpy's complex exp is the hot spot, so the work is
done in row blocks with cos/sin written straight into the real and
imaginary views. Each output row's arithmetic is independent of the
blocking and of the worker count, so results are bitwise deterministic.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

BLOCK_ROWS = 256
_PARALLEL_THRESHOLD = 1 << 20  # matrix elements below this run inline

_WORKERS = min(4, os.cpu_count() or 1)


def unit_phasor(phase: np.ndarray) -> np.ndarray:
    """exp(1j * phase) without a complex-exp pass over the array."""
    out = np.empty(phase.shape, dtype=np.complex128)
    np.cos(phase, out=out.real)
    np.sin(phase, out=out.imag)
    return out


def run_blocks(work, total_rows: int, element_count: int) -> None:
    """Call ``work(slice)`` over row blocks, threading when worthwhile.

    ``work`` must write only into its own output slice; numpy's ufuncs
    release the GIL, so a small thread pool scales the trig evaluation.
    """
    blocks = [slice(lo, min(lo + BLOCK_ROWS, total_rows))
              for lo in range(0, total_rows, BLOCK_ROWS)]
    if _WORKERS < 2 or element_count < _PARALLEL_THRESHOLD or len(blocks) < 2:
        for block in blocks:
            work(block)
        return
    with ThreadPoolExecutor(max_workers=_WORKERS) as pool:
        # consume to surface worker exceptions
        list(pool.map(work, blocks))


def phase_matvec(rows: np.ndarray, cols: np.ndarray,
                 vec: np.ndarray) -> np.ndarray:
    """out[k] = sum_n exp(1j * rows[k] * cols[n]) * vec[n].

    Any sign or scale belongs in ``rows`` (1-D, cheap) rather than in the
    (M, N) phase matrix.
    """
    rows = np.asarray(rows, dtype=np.float64)
    cols = np.asarray(cols, dtype=np.float64)
    out = np.empty(rows.shape[0], dtype=np.complex128)

    def work(block: slice) -> None:
        out[block] = unit_phasor(np.outer(rows[block], cols)) @ vec

    run_blocks(work, rows.shape[0], rows.shape[0] * cols.shape[0])
    return out
