import math
import random

import pytest

from helpers import FAMILIES, mp_2f1, rel_err, theorem_sample
from kdfkit.errors import RangeError
from kdfkit.series import eval_2f1
from kdfkit.theorems import (
    Family,
    TheoremKind,
    bailey_gen,
    classical,
    evaluate,
    gauss2_gen,
    kummer_gen,
    lavoie_coefficients,
    lavoie_compact,
    theorem_lhs,
)

GEN = {"Kummer": kummer_gen, "Gauss2": gauss2_gen, "Bailey": bailey_gen}


def signed_gen(family, a, b, i):
    return GEN[family](a, b, abs(i), "Plus" if i >= 0 else "Minus")


def test_kummer_classical_value():
    assert kummer_gen(1, 0.5, 0) == pytest.approx(math.pi / 4, rel=1e-14)
    assert classical("Kummer", 1, 0.5) == pytest.approx(math.pi / 4, rel=1e-14)


def test_gauss2_classical_value():
    assert gauss2_gen(1, 1, 0) == pytest.approx(math.pi / 2, rel=1e-14)
    assert classical("Gauss2", 1, 1) == pytest.approx(math.pi / 2, rel=1e-14)


def test_bailey_classical_value():
    ref = math.gamma(0.75) * math.gamma(1.25)
    assert bailey_gen(0.5, 1.5, 0) == pytest.approx(ref, rel=1e-14)
    assert rel_err(ref, mp_2f1(0.5, 0.5, 1.5, 0.5)) < 1e-14


@pytest.mark.parametrize(
    "family,a,b,i",
    [("Kummer", 2.3, 0.7, 2), ("Gauss2", 1.4, 0.6, 3), ("Bailey", 0.3, 2.1, 2),
     ("Kummer", 2.1, -1.2, -4), ("Gauss2", 2.2, 0.45, -5), ("Bailey", 1.35, 0.8, -3)],
)
def test_generalized_matches_mpmath(family, a, b, i):
    A, B, C, z = theorem_lhs(family, a, b, i)
    assert rel_err(signed_gen(family, a, b, i), mp_2f1(A, B, C, z)) <= 1e-12


def test_generalized_matches_direct_series():
    assert rel_err(kummer_gen(2.3, 0.7, 2), eval_2f1(2.3, 0.7, 1 + 2.3 - 0.7 + 2, -1).value) <= 1e-8
    assert rel_err(gauss2_gen(1.4, 0.6, 3), eval_2f1(1.4, 0.6, (1.4 + 0.6 + 4) / 2, 0.5).value) <= 1e-10
    assert rel_err(bailey_gen(0.3, 2.1, 2), eval_2f1(0.3, 1 - 0.3 + 2, 2.1, 0.5).value) <= 1e-10


def test_compact_matches_generalized_example():
    assert rel_err(lavoie_compact("Gauss2", 1.4, 0.6, 2), gauss2_gen(1.4, 0.6, 2)) <= 1e-10


def test_compact_at_zero_is_classical():
    for family in FAMILIES:
        assert lavoie_coefficients(family, 0, 0.7, 0.3)[1] == 0.0
        assert rel_err(lavoie_compact(family, 1.3, 0.4, 0), classical(family, 1.3, 0.4)) <= 1e-13


def test_bailey_three_coefficients():
    assert lavoie_coefficients("Bailey", 3, 1, 2, table="printed") == (-6.0, -2.0)
    assert lavoie_coefficients("Bailey", 3, 1, 2) == (0.0, -2.0)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("i", range(-5, 6))
def test_corrected_compact_matches_generalized(family, i):
    rng = random.Random(100 * FAMILIES.index(family) + i)
    for _ in range(10):
        a, b = theorem_sample(rng, family, i)
        assert rel_err(lavoie_compact(family, a, b, i), signed_gen(family, a, b, i)) <= 1e-9


@pytest.mark.parametrize("family,i", [("Kummer", -5), ("Kummer", 5), ("Gauss2", 4), ("Bailey", -4), ("Bailey", 3)])
def test_printed_rows_disagree_with_generalized(family, i):
    rng = random.Random(5)
    a, b = theorem_sample(rng, family, i)
    printed = lavoie_compact(family, a, b, i, table="printed")
    assert rel_err(printed, signed_gen(family, a, b, i)) > 1e-3


def test_printed_and_corrected_agree_elsewhere():
    bad = {("Kummer", -5), ("Kummer", 5), ("Gauss2", 4), ("Bailey", -4), ("Bailey", 3)}
    for family in FAMILIES:
        for i in range(-5, 6):
            if (family, i) in bad:
                continue
            assert lavoie_coefficients(family, i, 1.7, 0.35, "printed") == lavoie_coefficients(family, i, 1.7, 0.35)


# Printed tables evaluated by hand at (a, b) = (1.5, 0.5).
PRINTED_AT_POINT = {
    "Kummer": {-4: (-1.75, -4.0), -3: (-2.5, 0.5), -1: (1.0, 1.0), 0: (1.0, 0.0), 3: (-6.5, 3.5), 4: (14.25, -12.0)},
    "Gauss2": {-4: (0.5, 2.0), -3: (1.5, 0.5), 0: (1.0, 0.0), 2: (0.5, -2.0), 3: (-1.5, 0.5), 4: (None, 2.0)},
    "Bailey": {-5: (-9.25, 18.75), -4: (-8.75, 6.0), -3: (-0.5, 4.5), 3: (-2.5, -4.5), 4: (11.75, 10.0),
               5: (-25.75, 43.75)},
}


@pytest.mark.parametrize("family", FAMILIES)
def test_printed_table_transcription(family):
    for i, expected in PRINTED_AT_POINT[family].items():
        got = lavoie_coefficients(family, i, 1.5, 0.5, table="printed")
        for g, e in zip(got, expected):
            if e is not None:
                assert g == pytest.approx(e, abs=1e-12), (family, i)


@pytest.mark.parametrize("family", FAMILIES)
def test_zero_collapse(family):
    rng = random.Random(3)
    for _ in range(50):
        a, b = theorem_sample(rng, family, 0)
        ref = classical(family, a, b)
        for variant in ("Plus", "Minus"):
            assert rel_err(GEN[family](a, b, 0, variant), ref) <= 1e-12


def test_evaluate_dispatch():
    assert evaluate(TheoremKind.BAILEY_MINUS, 0.3, 2.1, 2) == bailey_gen(0.3, 2.1, 2, "Minus")
    assert evaluate("KummerPlus", 2.3, 0.7, 1) == kummer_gen(2.3, 0.7, 1)
    with pytest.raises(ValueError):
        evaluate("Kummer", 1, 1, 1)


def test_theorem_lhs_shapes():
    assert theorem_lhs(Family.KUMMER, 2.0, 0.5, -1) == (2.0, 0.5, 1.5, -1.0)
    assert theorem_lhs("Gauss2Minus", 1.0, 2.0, 1) == (1.0, 2.0, 1.5, 0.5)
    assert theorem_lhs("BaileyPlus", 0.3, 2.1, 2) == (0.3, 2.7, 2.1, 0.5)


def test_index_ranges():
    with pytest.raises(RangeError):
        kummer_gen(1, 0.5, -1)
    with pytest.raises(RangeError):
        lavoie_compact("Kummer", 1, 0.5, 6)
    with pytest.raises(ValueError):
        lavoie_coefficients("Kummer", 1, 1, 1, table="draft")
    with pytest.raises(ValueError):
        kummer_gen(1, 0.5, 1, "Sideways")
