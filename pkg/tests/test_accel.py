import math

import pytest

from kdfkit.accel import CompensatedSum, wynn_epsilon
from kdfkit.errors import AccelerationFailure


def partial_sums(terms):
    out, s = [], 0.0
    for t in terms:
        s += t
        out.append(s)
    return out


def test_compensated_sum_recovers_lost_bits():
    acc = CompensatedSum()
    for x in [1e16, 1.0, -1e16, 1.0]:
        acc.add(x)
    assert acc.value == 2.0
    assert acc.value == math.fsum([1e16, 1.0, -1e16, 1.0])


def test_wynn_alternating_log2():
    s = partial_sums((-1) ** n / (n + 1) for n in range(12))
    value, err = wynn_epsilon(s)
    assert abs(value - math.log(2)) < 1e-8
    assert err < 1e-6


def test_wynn_constant_sequence():
    assert wynn_epsilon([3.5] * 5) == (3.5, 0.0)


def test_wynn_harmonic_not_claimed():
    s = partial_sums(1.0 / n for n in range(1, 13))
    try:
        _, err = wynn_epsilon(s)
    except AccelerationFailure:
        return
    assert err > 0.1


def test_wynn_geometric_exact():
    # Shanks transform is exact for a geometric tail
    s = partial_sums(0.5 ** n for n in range(6))
    value, _ = wynn_epsilon(s)
    assert value == pytest.approx(2.0, rel=1e-13)


def test_wynn_needs_five_sums():
    with pytest.raises(ValueError):
        wynn_epsilon([1.0, 2.0, 3.0])


def test_wynn_rejects_nan():
    with pytest.raises(AccelerationFailure):
        wynn_epsilon([1.0, 2.0, math.nan, 3.0, 4.0])
