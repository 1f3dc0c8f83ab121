"""Closed forms for 2F1 at -1 and 1/2: generalized Kummer, Gauss second and
Bailey theorems, their compact two-term forms for |i| <= 5, and the classical
i = 0 cases.

Every closed form is a short sum of Gamma quotients. Each summand is evaluated
with :func:`kdfkit.gamma.gamma_ratio` over the prefactor and summand Gamma
arguments together, so removable poles cancel instead of raising.
"""

from __future__ import annotations

import enum
import math
from typing import Callable

from .accel import CompensatedSum
from .errors import RangeError
from .gamma import GammaRatioSpec, binomial, gamma_ratio

__all__ = [
    "TheoremKind",
    "Family",
    "kummer_gen",
    "gauss2_gen",
    "bailey_gen",
    "lavoie_compact",
    "lavoie_coefficients",
    "TABLE_CHOICES",
    "classical",
    "theorem_lhs",
    "evaluate",
]

SQRT_PI = math.sqrt(math.pi)


class Variant(str, enum.Enum):
    PLUS = "Plus"
    MINUS = "Minus"


class TheoremKind(str, enum.Enum):
    KUMMER_PLUS = "KummerPlus"
    KUMMER_MINUS = "KummerMinus"
    GAUSS2_PLUS = "Gauss2Plus"
    GAUSS2_MINUS = "Gauss2Minus"
    BAILEY_PLUS = "BaileyPlus"
    BAILEY_MINUS = "BaileyMinus"


class Family(str, enum.Enum):
    KUMMER = "Kummer"
    GAUSS2 = "Gauss2"
    BAILEY = "Bailey"


def _variant(v) -> Variant:
    if isinstance(v, Variant):
        return v
    if isinstance(v, str):
        key = v.strip().lower()
        if key in ("plus", "+"):
            return Variant.PLUS
        if key in ("minus", "-"):
            return Variant.MINUS
    raise ValueError(f"variant must be Plus or Minus, got {v!r}")


def _family(kind) -> Family:
    if isinstance(kind, Family):
        return kind
    for f in Family:
        if str(kind).strip().lower() == f.value.lower():
            return f
    raise ValueError(f"unknown theorem family {kind!r}")


def _check_i(i: int) -> int:
    if int(i) != i or i < 0:
        raise RangeError(f"i must be a non-negative integer, got {i}")
    return int(i)


def _finite_sum(i: int, log2_scale: float, pre_num, pre_den, term) -> float:
    """``2**log2_scale * sum_r sign_r C(i,r) Gamma(pre_num + num_r) / Gamma(pre_den + den_r)``."""
    acc = CompensatedSum()
    for r in range(i + 1):
        sign, num, den = term(r)
        g = gamma_ratio(GammaRatioSpec(list(pre_num) + list(num), list(pre_den) + list(den)))
        if g.sign == 0:
            continue
        acc.add(sign * binomial(i, r) * g.sign * math.exp(g.log_abs + log2_scale * math.log(2.0)))
    return acc.value


def kummer_gen(a: float, b: float, i: int, variant="Plus") -> float:
    """Closed form of ``2F1(a, b; 1 + a - b +/- i; -1)``."""
    i = _check_i(i)
    if _variant(variant) is Variant.PLUS:
        return _finite_sum(
            i, i - 2 * b, [b - i, 1 + a - b + i], [b, a - 2 * b + i + 1],
            lambda r: ((-1) ** r, [(a + r + i + 1) / 2 - b], [(a + r - i + 1) / 2]),
        )
    return _finite_sum(
        i, -i - 2 * b, [1 + a - b - i], [a - 2 * b - i + 1],
        lambda r: (1, [(a + r - i + 1) / 2 - b], [(a + r - i + 1) / 2]),
    )


def gauss2_gen(a: float, b: float, i: int, variant="Plus") -> float:
    """Closed form of ``2F1(a, b; (a + b +/- i + 1)/2; 1/2)``."""
    i = _check_i(i)
    if _variant(variant) is Variant.PLUS:
        return _finite_sum(
            i, b - 1, [(a + b + i + 1) / 2, (a - b - i + 1) / 2], [b, (a - b + i + 1) / 2],
            lambda r: ((-1) ** r, [(b + r) / 2], [(a + r - i + 1) / 2]),
        )
    return _finite_sum(
        i, b - 1, [(a + b - i + 1) / 2], [b],
        lambda r: (1, [(b + r) / 2], [(a + r - i + 1) / 2]),
    )


def bailey_gen(a: float, b: float, i: int, variant="Plus") -> float:
    """Closed form of ``2F1(a, 1 - a +/- i; b; 1/2)``."""
    i = _check_i(i)
    if _variant(variant) is Variant.PLUS:
        return _finite_sum(
            i, i - a, [a - i, b], [a, b - a],
            lambda r: ((-1) ** r, [(b - a + r) / 2], [(b + a + r) / 2 - i]),
        )
    return _finite_sum(
        i, -i - a, [b], [b - a],
        lambda r: (1, [(b - a + r) / 2], [(b + a + r) / 2]),
    )


# Coefficient tables, one pair of polynomials in (a, b) per i in [-5, 5].

def _kummer_m5(a, b):
    u = a - b - 4
    return (4 * u**2 - 2 * b * u - b**2 - 8 * u - 7 * b,
            4 * u**2 + 2 * b * u - b**2 + 16 * u - b + 12)


def _kummer_p5(a, b):
    v = 6 + a - b
    return (-4 * v**2 + 2 * b * v + b**2 + 22 * v - 13 * b - 22,
            4 * v**2 + 2 * b * v - b**2 - 34 * v - b + 62)


_KUMMER_TABLE: dict[int, Callable[[float, float], tuple[float, float]]] = {
    -5: _kummer_m5,
    -4: lambda a, b: (2 * (a - b - 3) * (a - b - 1) - b * (b + 3), 4 * (a - b - 2)),
    -3: lambda a, b: (2 * a - 3 * b - 4, 2 * a - b - 2),
    -2: lambda a, b: (a - b - 1, 2.0),
    -1: lambda a, b: (1.0, 1.0),
    0: lambda a, b: (1.0, 0.0),
    1: lambda a, b: (-1.0, 1.0),
    2: lambda a, b: (1 + a - b, -2.0),
    3: lambda a, b: (3 * b - 2 * a - 5, 2 * a - b + 1),
    4: lambda a, b: (2 * (a - b + 3) * (1 + a - b) - (b - 1) * (b - 4), -4 * (a - b + 2)),
    5: _kummer_p5,
}


def _gauss2_m5(a, b):
    s, t = b + a - 4, b - a - 4
    return (s**2 - t**2 / 4 - s * t / 2 + 4 * s - 7 * t / 2,
            s**2 - t**2 / 4 + s * t / 2 + 8 * s - t / 2 + 12)


def _gauss2_p5(a, b):
    s, t = b + a + 6, b - a + 6
    return (-s**2 + t**2 / 4 + t * s / 2 + 11 * s - 13 * t / 2 - 20,
            s**2 - t**2 / 4 + s * t / 2 - 17 * s - t / 2 + 62)


_GAUSS2_TABLE: dict[int, Callable[[float, float], tuple[float, float]]] = {
    -5: _gauss2_m5,
    -4: lambda a, b: ((b + a - 3) * (b + a + 1) / 2 - (b - a - 3) * (b - a + 3) / 4, 2 * (b + a - 1)),
    -3: lambda a, b: ((3 * a + b - 2) / 2, (3 * b + a - 2) / 2),
    -2: lambda a, b: ((b + a - 1) / 2, 2.0),
    -1: lambda a, b: (1.0, 1.0),
    0: lambda a, b: (1.0, 0.0),
    1: lambda a, b: (-1.0, 1.0),
    2: lambda a, b: ((b + a - 1) / 2, -2.0),
    3: lambda a, b: (-(3 * a + b - 2) / 2, (a + 3 * b - 2) / 2),
    4: lambda a, b: ((b + a - 3) * (b + a + 1) / 2 - (b - a + 3) * (b - a - 3) / 4, 2 * (b + a - 1)),
    5: _gauss2_p5,
}

_BAILEY_TABLE: dict[int, Callable[[float, float], tuple[float, float]]] = {
    -5: lambda a, b: (4 * b**2 - 2 * a * b - a**2 + 8 * b - 7 * a, 4 * b**2 + 2 * a * b - a**2 + 16 * b - a + 12),
    -4: lambda a, b: (2 * b**2 - a**2 + 4 * b - 6 * a, 4 * (b + 1)),
    -3: lambda a, b: (2 * b - a, a + 2 * b + 2),
    -2: lambda a, b: (b, 2.0),
    -1: lambda a, b: (1.0, 1.0),
    0: lambda a, b: (1.0, 0.0),
    1: lambda a, b: (-1.0, 1.0),
    2: lambda a, b: (b - 2, -2.0),
    3: lambda a, b: (a - 2 * b - 3, a + 2 * b - 7),
    4: lambda a, b: (2 * b**2 - a**2 - 12 * b + 5 * a + 12, -4 * b + 12),
    5: lambda a, b: (-4 * b**2 + 2 * a * b + a**2 + 22 * b - 13 * a - 20, 4 * b**2 + 2 * a * b - a**2 - 34 * b - a + 62),
}

_TABLES = {Family.KUMMER: _KUMMER_TABLE, Family.GAUSS2: _GAUSS2_TABLE, Family.BAILEY: _BAILEY_TABLE}


def _kummer_m5_fixed(a, b):
    u = a - b - 4
    return (4 * u**2 - 2 * b * u - b**2 + 8 * u - 7 * b, _kummer_m5(a, b)[1])


def _kummer_p5_fixed(a, b):
    v = 6 + a - b
    return (-4 * v**2 + 2 * b * v + b**2 + 22 * v - 13 * b - 20, _kummer_p5(a, b)[1])


# Rows of the published tables that disagree with the generalized theorems.
# Each fix changes one sign or constant in one entry; the partner entry is kept.
_FIXES = {
    Family.KUMMER: {-5: _kummer_m5_fixed, 5: _kummer_p5_fixed},
    Family.GAUSS2: {
        4: lambda a, b: (_GAUSS2_TABLE[4](a, b)[0], -2 * (b + a - 1)),
    },
    Family.BAILEY: {
        -4: lambda a, b: (2 * b**2 - a**2 + 4 * b - 3 * a, 4 * (b + 1)),
        3: lambda a, b: (a - 2 * b + 3, a + 2 * b - 7),
    },
}

TABLE_CHOICES = ("corrected", "printed")


def lavoie_coefficients(kind, i: int, a: float, b: float, table: str = "corrected") -> tuple[float, float]:
    """The coefficient pair for ``kind`` at index ``i`` in [-5, 5].

    Parameters
    ----------
    table : {"corrected", "printed"}
        ``"printed"`` reproduces the published tables verbatim. ``"corrected"``
        replaces the five published entries that are inconsistent with the
        generalized theorems (Kummer -5 and 5, Gauss2 4, Bailey -4 and 3).
    """
    if int(i) != i or abs(i) > 5:
        raise RangeError(f"tabulated coefficients exist for -5 <= i <= 5, got {i}")
    if table not in TABLE_CHOICES:
        raise ValueError(f"table must be one of {TABLE_CHOICES}, got {table!r}")
    fam = _family(kind)
    row = _TABLES[fam][int(i)]
    if table == "corrected":
        row = _FIXES[fam].get(int(i), row)
    return row(float(a), float(b))


def lavoie_compact(kind, a: float, b: float, i: int, table: str = "corrected") -> float:
    """Two-term compact closed form for ``-5 <= i <= 5``.

    ``i >= 0`` matches the Plus variant of the generalized theorem with the same
    ``i`` and ``i < 0`` the Minus variant with ``|i|``. See
    :func:`lavoie_coefficients` for ``table``.
    """
    fam = _family(kind)
    p, q = lavoie_coefficients(fam, i, a, b, table)
    i = int(i)
    fl_hi = (i + 1) // 2  # floor((i+1)/2), also for negative i
    fl_lo = i // 2
    if fam is Family.KUMMER:
        pre_num = [1 + a - b + i, 1 - b]
        pre_den = [1 - b + (i + abs(i)) / 2]
        log2_scale = -a
        parts = [
            (p, [a / 2 - b + i / 2 + 1, a / 2 + 0.5 + i / 2 - fl_hi]),
            (q, [a / 2 - b + i / 2 + 0.5, a / 2 + i / 2 - fl_lo]),
        ]
    elif fam is Family.GAUSS2:
        pre_num = [a / 2 + b / 2 + i / 2 + 0.5, a / 2 - b / 2 - i / 2 + 0.5]
        pre_den = [a / 2 - b / 2 + 0.5 + abs(i) / 2]
        log2_scale = 0.0
        parts = [
            (p, [a / 2 + 0.5, b / 2 + i / 2 + 0.5 - fl_hi]),
            (q, [a / 2, b / 2 + i / 2 - fl_lo]),
        ]
    else:
        pre_num = [b, 1 - a]
        pre_den = [1 - a + (i + abs(i)) / 2]
        log2_scale = 1 + i - b
        parts = [
            (p, [b / 2 - a / 2 + 0.5, b / 2 + a / 2 - fl_hi]),
            (q, [b / 2 - a / 2, b / 2 + a / 2 - 0.5 - fl_lo]),
        ]
    total = 0.0
    for coef, den in parts:
        if coef == 0:
            continue
        g = gamma_ratio(GammaRatioSpec(pre_num, pre_den + den))
        total += coef * g.to_real()
    return SQRT_PI * 2.0**log2_scale * total


def classical(kind, a: float, b: float) -> float:
    """Classical Kummer, Gauss second and Bailey closed forms (the ``i = 0`` cases)."""
    fam = _family(kind)
    if fam is Family.KUMMER:
        spec = GammaRatioSpec([1 + a / 2, 1 + a - b], [1 + a, 1 + a / 2 - b])
        return gamma_ratio(spec).to_real()
    if fam is Family.GAUSS2:
        spec = GammaRatioSpec([(a + b + 1) / 2], [(a + 1) / 2, (b + 1) / 2])
        return SQRT_PI * gamma_ratio(spec).to_real()
    spec = GammaRatioSpec([b / 2, b / 2 + 0.5], [b / 2 + a / 2, b / 2 - a / 2 + 0.5])
    return gamma_ratio(spec).to_real()


def theorem_lhs(kind, a: float, b: float, i: int) -> tuple[float, float, float, float]:
    """``(a, b, c, z)`` of the 2F1 that a theorem sums; ``i`` may be negative for Minus.

    Parameters
    ----------
    kind : Family or TheoremKind name
    """
    name = getattr(kind, "value", str(kind))
    for suffix, sgn in (("Plus", 1), ("Minus", -1)):
        if name.endswith(suffix):
            name, i = name[: -len(suffix)], sgn * abs(i)
            break
    fam = _family(name)
    if fam is Family.KUMMER:
        return a, b, 1 + a - b + i, -1.0
    if fam is Family.GAUSS2:
        return a, b, (a + b + i + 1) / 2, 0.5
    return a, 1 - a + i, b, 0.5


_GEN = {Family.KUMMER: kummer_gen, Family.GAUSS2: gauss2_gen, Family.BAILEY: bailey_gen}


def evaluate(kind: TheoremKind | str, a: float, b: float, i: int) -> float:
    """Dispatch on a :class:`TheoremKind` name such as ``"KummerMinus"``."""
    name = getattr(kind, "value", str(kind))
    for suffix in ("Plus", "Minus"):
        if name.endswith(suffix):
            return _GEN[_family(name[: -len(suffix)])](a, b, i, suffix)
    raise ValueError(f"unknown theorem kind {kind!r}")
