"""Compensated accumulation and Wynn's epsilon algorithm."""

from __future__ import annotations

import math
from typing import Sequence

from .errors import AccelerationFailure

__all__ = ["CompensatedSum", "wynn_epsilon"]


class CompensatedSum:
    """Running sum with Neumaier's compensation term.

    Like :func:`math.fsum` but usable incrementally, so partial sums can be
    read off after every term.
    """

    __slots__ = ("_s", "_c")

    def __init__(self, start: float = 0.0):
        self._s = float(start)
        self._c = 0.0

    def add(self, x: float) -> None:
        s = self._s
        t = s + x
        if abs(s) >= abs(x):
            self._c += (s - t) + x
        else:
            self._c += (x - t) + s
        self._s = t

    @property
    def value(self) -> float:
        return self._s + self._c


def wynn_epsilon(partial_sums: Sequence[float]) -> tuple[float, float]:
    """Extrapolate the limit of a sequence of partial sums.

    Builds the epsilon table ``e[k+1][j] = e[k-1][j+1] + 1 / (e[k][j+1] - e[k][j])``
    and reads estimates from the even columns. For every even column the error
    is the larger of the last in-column difference and the difference to the
    previous even column's last entry; the estimate with the smallest error is
    returned.

    Parameters
    ----------
    partial_sums : sequence of float
        At least five partial sums, oldest first.

    Returns
    -------
    (value, error_estimate)

    Raises
    ------
    AccelerationFailure
        If the table develops non-finite entries.
    """
    s = [float(v) for v in partial_sums]
    if len(s) < 5:
        raise ValueError("wynn_epsilon needs at least 5 partial sums")
    if not all(math.isfinite(v) for v in s):
        raise AccelerationFailure("non-finite partial sum")

    # col0 only counts as an estimate when the sequence has visibly stopped moving.
    if s[-1] == s[-2]:
        best = (s[-1], 0.0)
    else:
        best = (s[-1], math.inf)

    prev = [0.0] * (len(s) + 1)
    cur = s
    last_even = s
    k = 0
    while len(cur) > 1:
        nxt = []
        for j in range(len(cur) - 1):
            d = cur[j + 1] - cur[j]
            if d == 0.0:
                # Exact stagnation: higher columns are undefined, keep what we have.
                return best
            e = prev[j + 1] + 1.0 / d
            if not math.isfinite(e):
                raise AccelerationFailure(f"non-finite entry in epsilon column {k + 1}")
            nxt.append(e)
        prev, cur = cur, nxt
        k += 1
        if k % 2 == 0 and len(cur) >= 2:
            err = max(abs(cur[-1] - cur[-2]), abs(cur[-1] - last_even[-1]))
            if err < best[1]:
                best = (cur[-1], err)
            last_even = cur
        elif k % 2 == 0:
            last_even = cur
    return best
