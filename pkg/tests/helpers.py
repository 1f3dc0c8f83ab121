"""Shared samplers and oracles for the test suite."""

import contextlib
import math
import random
from unittest import mock

import mpmath

import kdfkit.gamma
from kdfkit.errors import PoleError
from kdfkit.theorems import classical, evaluate, lavoie_compact, theorem_lhs

FAMILIES = ("Kummer", "Gauss2", "Bailey")


def near_pole(x, margin=0.05):
    return x < margin and abs(x - round(x)) < margin


@contextlib.contextmanager
def recorded_gamma_arguments():
    """Collect every argument that reaches a Gamma evaluation inside the block."""
    seen = []
    original = kdfkit.gamma.pole_index

    def spy(x, *args, **kw):
        seen.append(x)
        return original(x, *args, **kw)

    with mock.patch("kdfkit.gamma.pole_index", spy):
        yield seen


def _closed_forms(family, a, b, i):
    variant = "Plus" if i >= 0 else "Minus"
    evaluate(family + variant, a, b, abs(i))
    if abs(i) <= 5:
        lavoie_compact(family, a, b, i)
    classical(family, a, b)


def theorem_sample(rng: random.Random, family: str, i: int):
    """Draw (a, b) where the theorem's 2F1 converges and every Gamma argument is off the poles.

    ``a`` is uniform on [0.1, 3] and ``b`` on [0.1, 0.9]; ``i`` is signed and
    negative values select the Minus variant.
    """
    while True:
        a = rng.uniform(0.1, 3.0)
        b = rng.uniform(0.1, 0.9)
        if family == "Kummer" and i < 0:
            # the z = -1 series needs c - a - b > -1, i.e. b < 1 - |i|/2
            b -= abs(i) / 2
        _, _, c, _ = theorem_lhs(family, a, b, i)
        if near_pole(c):
            continue
        try:
            with recorded_gamma_arguments() as args:
                _closed_forms(family, a, b, i)
        except PoleError:
            continue
        if any(near_pole(x) for x in args):
            continue
        return a, b


def mp_2f1(a, b, c, z, dps=40):
    with mpmath.workdps(dps):
        return float(mpmath.hyp2f1(a, b, c, z))


def brute_double(term, m_max, n_max, dps=30):
    """Plain double sum of ``term(m, n)`` over a rectangle, in mpmath."""
    with mpmath.workdps(dps):
        s = mpmath.mpf(0)
        for m in range(m_max + 1):
            for n in range(n_max + 1):
                s += term(m, n)
        return float(s)


def rel_err(x, y):
    return abs(x - y) / max(abs(y), 1e-300)


def isclose(x, y, rel):
    return math.isfinite(x) and rel_err(x, y) <= rel
