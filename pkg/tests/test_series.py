import math
import random

import mpmath
import pytest

from helpers import brute_double, mp_2f1, rel_err
from kdfkit.errors import DenominatorPoleError, RangeError
from kdfkit.series import (
    KdFSpec,
    PFQSpec,
    Status,
    eval_2f1,
    eval_appell_f3,
    eval_kdf,
    eval_pfq,
    f3_precheck,
    kdf_precheck,
)


def test_pfq_geometric():
    r = eval_pfq(PFQSpec([1], [], 0.5))
    assert r.value == pytest.approx(2.0, rel=1e-10)
    assert r.status is Status.CONVERGED


def test_pfq_gauss_second_value():
    assert eval_pfq(PFQSpec([1, 1], [1.5], 0.5)).value == pytest.approx(math.pi / 2, rel=1e-10)


def test_pfq_log2_at_minus_one():
    r = eval_pfq(PFQSpec([1, 1], [2], -1))
    assert rel_err(r.value, math.log(2)) <= 1e-10
    assert r.trusted


def test_pfq_terminating_is_exact():
    r = eval_pfq(PFQSpec([-3, 2.5], [1.5], 0.7))
    assert r.status is Status.TERMINATED
    assert r.abs_error_estimate == 0.0
    assert r.value == pytest.approx(mp_2f1(-3, 2.5, 1.5, 0.7), rel=1e-14)


def test_pfq_exponential():
    r = eval_pfq(PFQSpec([], [], 0.7))
    assert r.value == pytest.approx(math.exp(0.7), rel=1e-12)


def test_pfq_denominator_pole():
    with pytest.raises(DenominatorPoleError):
        eval_pfq(PFQSpec([1.5], [-2], 0.3))


def test_pfq_denominator_pole_after_termination_is_fine():
    # numerator terminates at n = 2 before the lower parameter -3 bites
    r = eval_pfq(PFQSpec([-2], [-3], 0.5))
    assert r.value == pytest.approx(1 + (-2) / (-3) * 0.5 + (-2) * (-1) / ((-3) * (-2)) * 0.25 / 2)


def test_pfq_outside_disc_is_inconclusive():
    r = eval_pfq(PFQSpec([0.5, 0.5], [1.5], 1.5))
    assert r.status is Status.INCONCLUSIVE
    assert not r.trusted


def test_pfq_divergent_unit_argument_is_inconclusive():
    r = eval_pfq(PFQSpec([1, 1], [1.5], 1.0))
    assert r.status is Status.INCONCLUSIVE


def test_2f1_equal_parameters():
    assert eval_2f1(2, 0.7, 0.7, 0.3).value == pytest.approx(0.7**-2, rel=1e-10)


def test_2f1_kummer_value():
    assert eval_2f1(1, 0.5, 1.5, -1).value == pytest.approx(math.pi / 4, rel=1e-10)


@pytest.mark.parametrize("b,c,z", [(0.3, 1.7, 0.4), (-2.5, 3.1, -0.9), (5.0, 0.2, 0.99)])
def test_2f1_zero_numerator(b, c, z):
    assert eval_2f1(0, b, c, z).value == 1.0


@pytest.mark.parametrize(
    "a,b,c,z",
    [(0.3, 0.7, 1.9, 0.8), (1.2, -0.4, 2.2, 0.95), (2.5, 1.5, 4.7, 0.6), (0.5, 0.5, 1.5, -0.7)],
)
def test_2f1_matches_mpmath(a, b, c, z):
    r = eval_2f1(a, b, c, z)
    assert rel_err(r.value, mp_2f1(a, b, c, z)) <= 1e-10


def test_2f1_transform_flag_does_not_change_value():
    a, b, c, z = 0.3, 0.7, 1.9, -0.9
    plain = eval_2f1(a, b, c, z, transform=False)
    fast = eval_2f1(a, b, c, z)
    assert rel_err(plain.value, fast.value) <= 1e-9
    assert fast.terms_used < plain.terms_used


def test_kdf_double_exponential():
    r = eval_kdf(KdFSpec(x=0.3, y=0.4))
    assert r.value == pytest.approx(math.exp(0.7), rel=1e-12)


def test_kdf_zero_arguments():
    assert eval_kdf(KdFSpec([0.4], [1.3], [2.0], [0.7], [1.1], [0.9], 0.0, 0.0)).value == 1.0


def test_kdf_y_zero_reduces_to_pfq():
    spec = KdFSpec([0.4], [1.3], [2.0, 0.6], [0.7], [1.1], [0.9], 0.45, 0.0)
    ref = eval_pfq(PFQSpec([0.4, 2.0, 0.6], [1.3, 1.1], 0.45))
    assert rel_err(eval_kdf(spec).value, ref.value) <= 1e-10


def test_kdf_brute_force():
    spec = KdFSpec([0.3], [1.2], [0.4], [0.8, 1.3], [], [2.5], 0.5, 0.5)

    def term(m, n):
        return (mpmath.rf(0.3, m + n) * mpmath.rf(0.4, m) * mpmath.rf(0.8, n) * mpmath.rf(1.3, n)
                / (mpmath.rf(1.2, m + n) * mpmath.rf(2.5, n)) * mpmath.mpf(0.5) ** (m + n)
                / (mpmath.factorial(m) * mpmath.factorial(n)))

    ref = brute_double(term, 80, 80)
    assert rel_err(eval_kdf(spec).value, ref) <= 1e-10


def test_kdf_swap_symmetry():
    spec = KdFSpec([0.7], [2.1], [0.4, 1.1], [0.8], [1.6], [2.5], 0.35, -0.6)
    assert rel_err(eval_kdf(spec).value, eval_kdf(spec.swapped()).value) <= 1e-11


def test_kdf_unit_arguments_brute_force():
    # h - g - max excess is large, so the plain double sum converges quickly
    spec = KdFSpec([1.0], [6.0], [], [1.3], [], [0.3], -1.0, 1.0)
    def term(m, n):
        return (mpmath.rf(1, m + n) * mpmath.rf(1.3, n) / (mpmath.rf(6, m + n) * mpmath.rf(0.3, n))
                * (-1) ** m / (mpmath.factorial(m) * mpmath.factorial(n)))

    # both factorials survive at |x| = |y| = 1, so a modest rectangle is exhaustive
    ref = brute_double(term, 40, 40)
    r = eval_kdf(spec)
    assert r.trusted
    assert rel_err(r.value, ref) <= 1e-8


def test_kdf_precheck_rejects_divergent_edge():
    ok, reason = kdf_precheck(KdFSpec([1.0], [], [], [], [], [], 0.0, 1.0))
    assert not ok and reason


def test_kdf_outside_region_is_range_error():
    with pytest.raises(RangeError):
        eval_kdf(KdFSpec(x=1.5, y=0.1))


def test_kdf_terminating_in_both_indices():
    spec = KdFSpec([], [], [-2], [-3], [1.5], [0.5], 0.8, -0.9)
    r = eval_kdf(spec)
    ref = sum(spec.term(m, n) for m in range(3) for n in range(4))
    assert r.status is Status.TERMINATED
    assert r.value == pytest.approx(ref, rel=1e-13)


def test_f3_origin():
    assert eval_appell_f3(0.3, 1.7, 2.2, 0.9, 1.4, 0.0, 0.0).value == 1.0


def f3_brute(a, a2, b, b2, c, x, y, size=70):
    def term(m, n):
        return (mpmath.rf(a, m) * mpmath.rf(a2, n) * mpmath.rf(b, m) * mpmath.rf(b2, n)
                / mpmath.rf(c, m + n) * mpmath.mpf(x) ** m * mpmath.mpf(y) ** n
                / (mpmath.factorial(m) * mpmath.factorial(n)))
    return brute_double(term, size, size)


def test_f3_brute_force():
    r = eval_appell_f3(1, 1, 1, 1, 3, 0.2, 0.3)
    assert rel_err(r.value, f3_brute(1, 1, 1, 1, 3, 0.2, 0.3)) <= 1e-10


def test_f3_zero_inner_parameter():
    r = eval_appell_f3(0.7, 1.3, 1.1, 0.0, 2.4, 0.6, 0.8)
    assert rel_err(r.value, mp_2f1(0.7, 1.1, 2.4, 0.6)) <= 1e-10


def test_f3_random_against_brute_force():
    rng = random.Random(11)
    for _ in range(10):
        a, a2, b, b2 = (rng.uniform(0.2, 2.0) for _ in range(4))
        c = rng.uniform(1.0, 3.0)
        x, y = rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)
        r = eval_appell_f3(a, a2, b, b2, c, x, y)
        assert rel_err(r.value, f3_brute(a, a2, b, b2, c, x, y, 35)) <= 1e-9


def test_f3_precheck_accepts_interior():
    ok, _ = f3_precheck(0.5, 1.5, 0.3, 0.7, 2.0, 0.4, -0.6)
    assert ok


def test_bad_tolerance():
    with pytest.raises(ValueError):
        eval_pfq(PFQSpec([1], [], 0.5), rel_tol=0.0)
