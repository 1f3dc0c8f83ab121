"""Scalar building blocks: signed log-Gamma, Pochhammer symbols, binomials and
pole-aware Gamma quotients.

Gamma quotients are carried as :class:`SignedLogValue` so that products of many
large or small Gamma values never overflow before the final conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PoleError, RangeError, UncancelledPoleError

__all__ = [
    "POLE_TOL",
    "SignedLogValue",
    "GammaRatioSpec",
    "pole_index",
    "log_gamma_signed",
    "pochhammer",
    "binomial",
    "gamma_ratio",
    "gamma_quotient",
]

#: Arguments closer than this to a non-positive integer are treated as that pole.
POLE_TOL = 1e-12

BINOMIAL_MAX = 60


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as ``sign * exp(log_abs)``.

    ``sign == 0`` means the value is exactly zero and ``log_abs`` is ignored.
    """

    log_abs: float
    sign: int

    @classmethod
    def zero(cls) -> "SignedLogValue":
        return cls(-math.inf, 0)

    @classmethod
    def from_real(cls, value: float) -> "SignedLogValue":
        if value == 0:
            return cls.zero()
        return cls(math.log(abs(value)), 1 if value > 0 else -1)

    def to_real(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue.zero()
        return SignedLogValue(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: "SignedLogValue") -> "SignedLogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by an exact zero SignedLogValue")
        if self.sign == 0:
            return SignedLogValue.zero()
        return SignedLogValue(self.log_abs - other.log_abs, self.sign * other.sign)

    def __float__(self) -> float:
        return self.to_real()


@dataclass(frozen=True)
class GammaRatioSpec:
    """``prod Gamma(numerator_args) / prod Gamma(denominator_args)``."""

    numerator_args: tuple[float, ...] = ()
    denominator_args: tuple[float, ...] = ()

    def __init__(self, numerator_args: Iterable[float] = (), denominator_args: Iterable[float] = ()):
        object.__setattr__(self, "numerator_args", tuple(float(v) for v in numerator_args))
        object.__setattr__(self, "denominator_args", tuple(float(v) for v in denominator_args))


def pole_index(x: float, tol: float = POLE_TOL) -> int | None:
    """Return ``k`` if ``x`` is within ``tol`` of ``-k`` for some integer k >= 0, else None."""
    if x > tol:
        return None
    k = round(-x)
    if k >= 0 and abs(x + k) <= tol:
        return int(k)
    return None


def log_gamma_signed(x: float) -> SignedLogValue:
    """``(ln|Gamma(x)|, sign Gamma(x))`` for real ``x`` off the poles.

    Raises
    ------
    PoleError
        If ``x`` is (within :data:`POLE_TOL`) a non-positive integer.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"log_gamma_signed needs a finite argument, got {x}")
    k = pole_index(x)
    if k is not None:
        raise PoleError(f"Gamma has a pole at {x!r} (= -{k})")
    if x > 0:
        return SignedLogValue(math.lgamma(x), 1)
    # Gamma(x) < 0 on (-(2j+1), -2j), i.e. when ceil(-x) is odd.
    sign = -1 if math.ceil(-x) % 2 == 1 else 1
    return SignedLogValue(math.lgamma(x), sign)


def pochhammer(lam: float, n: int) -> float:
    """Rising factorial ``lam (lam+1) ... (lam+n-1)``, by direct product.

    The direct product gives an exact zero whenever ``lam`` is a non-positive
    integer with ``n > -lam``, which is what terminating series rely on.
    """
    if n < 0:
        raise RangeError(f"pochhammer index must be non-negative, got {n}")
    out = 1.0
    for j in range(n):
        out *= lam + j
        if out == 0.0:
            return 0.0
    return out


def binomial(i: int, r: int) -> float:
    """Binomial coefficient ``C(i, r)`` as an exact float, for ``0 <= r <= i <= 60``."""
    if i < 0 or r < 0 or r > i:
        raise RangeError(f"binomial({i}, {r}) requires 0 <= r <= i")
    if i > BINOMIAL_MAX:
        raise RangeError(f"binomial supports i <= {BINOMIAL_MAX}, got {i}")
    return float(math.comb(i, r))


def gamma_ratio(spec: GammaRatioSpec) -> SignedLogValue:
    """Evaluate a Gamma quotient with pole cancellation.

    Numerator and denominator poles are paired; each pair ``Gamma(-m)/Gamma(-k)``
    contributes its limit ``(-1)**(m-k) k!/m!``. Unpaired denominator poles make
    the result an exact zero, unpaired numerator poles raise.
    """
    log_abs = 0.0
    sign = 1
    num_poles: list[int] = []
    den_poles: list[int] = []

    for x in spec.numerator_args:
        k = pole_index(x)
        if k is not None:
            num_poles.append(k)
            continue
        g = log_gamma_signed(x)
        log_abs += g.log_abs
        sign *= g.sign
    for x in spec.denominator_args:
        k = pole_index(x)
        if k is not None:
            den_poles.append(k)
            continue
        g = log_gamma_signed(x)
        log_abs -= g.log_abs
        sign *= g.sign

    if len(num_poles) > len(den_poles):
        raise UncancelledPoleError(
            f"numerator poles at {[-m for m in num_poles]} not cancelled by "
            f"denominator poles at {[-k for k in den_poles]}"
        )
    if len(den_poles) > len(num_poles):
        return SignedLogValue.zero()
    # Equal counts: the pairing order does not change the product, sort for determinism.
    for m, k in zip(sorted(num_poles), sorted(den_poles)):
        log_abs += math.lgamma(k + 1) - math.lgamma(m + 1)
        if (m - k) % 2:
            sign = -sign
    return SignedLogValue(log_abs, sign)


def gamma_quotient(numerator: Sequence[float], denominator: Sequence[float] = ()) -> float:
    """Shorthand for ``gamma_ratio(GammaRatioSpec(numerator, denominator)).to_real()``."""
    return gamma_ratio(GammaRatioSpec(numerator, denominator)).to_real()
