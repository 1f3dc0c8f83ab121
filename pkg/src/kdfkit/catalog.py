"""Registry of the double-series summation identities.

Seven reduction formulas (``lw2.1`` ... ``lw2.7``) express a two-variable
series through a single 2F1. Thirty-two closed forms (``thm3.1a`` ...
``thm3.16b``) follow from them by fixing the argument and one parameter, then
summing the resulting 2F1 with a generalized Kummer, Gauss second or Bailey
theorem. ``a`` entries use the ``+i`` offset and ``b`` entries ``-i``.

Every identity exposes its left side as a :class:`~kdfkit.series.KdFSpec` or
an :class:`F3Args` tuple, and one or more right-side *interpretations*:

``printed``
    the formula as published.
``alpha-substituted`` / ``alpha-dropped``
    for ``thm3.15*`` and ``thm3.16*``, whose published right side keeps a
    symbol ``alpha`` that the substitution eliminates.
``corrected``
    for entries whose published right side fails numerically, the smallest
    change found to make it hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping, Union

from .accel import CompensatedSum
from .errors import MissingParam, RangeError, UnexpectedParam, UnknownIdentity
from .gamma import GammaRatioSpec, binomial, gamma_ratio
from .series import (
    DEFAULT_REL_TOL,
    EvalResult,
    KdFSpec,
    Status,
    eval_2f1,
)

__all__ = [
    "SYMBOLS",
    "I_MAX",
    "F3Args",
    "SideSpec",
    "GammaSum",
    "Identity",
    "IdentityInstance",
    "get_identity",
    "list_identities",
    "identity_ids",
    "lhs_spec",
    "rhs_value",
    "rhs_gamma_arguments",
    "corollary_instance",
]

SYMBOLS = ("alpha", "beta", "gamma", "epsilon", "x")
_ALIASES = {"α": "alpha", "β": "beta", "γ": "gamma", "ε": "epsilon", "eps": "epsilon"}
I_MAX = 8
HALF = 0.5


@dataclass(frozen=True)
class F3Args:
    """Arguments of Appell's ``F3(a, a2, b, b2; c; x, y)``."""

    a: float
    a2: float
    b: float
    b2: float
    c: float
    x: float
    y: float

    def as_kdf(self) -> KdFSpec:
        """The same series written as a double series with an (m+n)-coupled lower parameter."""
        return KdFSpec([], [self.c], [self.a, self.b], [self.a2, self.b2], [], [], self.x, self.y)


@dataclass(frozen=True)
class SideSpec:
    """Exactly one of ``kdf`` or ``f3`` is set."""

    kdf: KdFSpec | None = None
    f3: F3Args | None = None

    def __post_init__(self):
        if (self.kdf is None) == (self.f3 is None):
            raise ValueError("SideSpec needs exactly one of kdf, f3")

    def as_kdf(self) -> KdFSpec:
        return self.kdf if self.kdf is not None else self.f3.as_kdf()


@dataclass(frozen=True)
class GammaSum:
    """``sign * 2**log2 * sum_r s_r C(i, r) Gamma(pre_num + num_r) / Gamma(pre_den + den_r)``.

    ``terms`` holds one ``(s_r, num_r, den_r)`` triple per r = 0..i.
    """

    log2: float
    sign: int
    pre_num: tuple[float, ...]
    pre_den: tuple[float, ...]
    terms: tuple[tuple[int, tuple[float, ...], tuple[float, ...]], ...]

    def gamma_arguments(self) -> list[float]:
        out = list(self.pre_num) + list(self.pre_den)
        for _, num, den in self.terms:
            out.extend(num)
            out.extend(den)
        return out

    def evaluate(self) -> EvalResult:
        i = len(self.terms) - 1
        acc = CompensatedSum()
        mag = 0.0
        for r, (s, num, den) in enumerate(self.terms):
            g = gamma_ratio(GammaRatioSpec(self.pre_num + num, self.pre_den + den))
            if g.sign == 0:
                continue
            v = s * binomial(i, r) * g.sign * math.exp(g.log_abs + self.log2 * math.log(2.0))
            acc.add(v)
            mag += abs(v)
        value = self.sign * acc.value
        # lgamma carries a few ulps per argument
        n_args = len(self.pre_num) + len(self.pre_den) + 2
        err = 8 * n_args * 2.220446049250313e-16 * mag
        return EvalResult(value, err, i + 1, Status.CONVERGED)


@dataclass(frozen=True)
class Hyp2F1Form:
    """``prefactor * 2F1(a, b; c; z)``."""

    prefactor: float
    a: float
    b: float
    c: float
    z: float

    def evaluate(self, rel_tol: float) -> EvalResult:
        r = eval_2f1(self.a, self.b, self.c, self.z, rel_tol)
        return EvalResult(self.prefactor * r.value, abs(self.prefactor) * r.abs_error_estimate,
                          r.terms_used, r.status, r.reason)


Box = Mapping[str, tuple[float, float, float]]
Params = Mapping[str, float]


@dataclass(frozen=True)
class Identity:
    """One registered identity.

    Attributes
    ----------
    id : str
    free : tuple of str
        Symbols that must be bound by an instance.
    arguments : tuple of str
        The (x, y) pair as written, e.g. ``("1/2", "-1")`` or ``("x", "-x")``.
    route : str
        Derivation route: the reduction formula and the summation theorem used.
    lhs : callable (i, params) -> SideSpec
    rhs : mapping interpretation -> callable (i, params) -> GammaSum or Hyp2F1Form
    default_interpretation : str
    box : mapping symbol -> (lo, hi, shift_per_i)
        Recommended sampling box; the sample is ``uniform(lo, hi) + shift_per_i * i``.
    source : str or None
        For theorem entries, the reduction formula they specialize.
    substitution : callable (i, params) -> params, optional
        Maps the theorem's free symbols to the source formula's symbols.
    note : str
    """

    id: str
    free: tuple[str, ...]
    arguments: tuple[str, str]
    route: str
    lhs: Callable[[int, Params], SideSpec]
    rhs: Mapping[str, Callable[[int, Params], Union[GammaSum, Hyp2F1Form]]]
    default_interpretation: str
    box: Box
    source: str | None = None
    substitution: Callable[[int, Params], dict] | None = None
    note: str = ""

    @property
    def is_theorem(self) -> bool:
        return self.source is not None

    @property
    def interpretations(self) -> tuple[str, ...]:
        return tuple(self.rhs)


@dataclass(frozen=True)
class IdentityInstance:
    """An identity id with ``i`` and the free symbols bound."""

    id: str
    i: int = 0
    params: Mapping[str, float] = field(default_factory=dict)

    def __init__(self, id: str, i: int | None = 0, params: Mapping[str, float] | None = None, **kw: float):
        merged = dict(params or {})
        merged.update(kw)
        norm = {}
        for k, v in merged.items():
            norm[_ALIASES.get(k, k)] = float(v)
        object.__setattr__(self, "id", id)
        object.__setattr__(self, "i", 0 if i is None else int(i))
        object.__setattr__(self, "params", MappingProxyType(dict(sorted(norm.items()))))

    def validate(self) -> Identity:
        ident = get_identity(self.id)
        missing = [s for s in ident.free if s not in self.params]
        if missing:
            raise MissingParam(f"{self.id} needs {', '.join(missing)}")
        extra = [s for s in self.params if s not in ident.free]
        if extra:
            raise UnexpectedParam(f"{self.id} does not take {', '.join(extra)} (free symbols: {', '.join(ident.free)})")
        if ident.is_theorem:
            if not 0 <= self.i <= I_MAX:
                raise RangeError(f"i must be in [0, {I_MAX}], got {self.i}")
        elif self.i != 0:
            raise RangeError(f"{self.id} has no offset i")
        return ident


# ---------------------------------------------------------------------------
# helpers for building entries


def _kdf(h=(), g=(), a=(), b=(), c=(), d=(), x=0.0, y=0.0) -> SideSpec:
    return SideSpec(kdf=KdFSpec(h, g, a, b, c, d, x, y))


def _f3(a, a2, b, b2, c, x, y) -> SideSpec:
    return SideSpec(f3=F3Args(a, a2, b, b2, c, x, y))


def _gsum(i, log2, pre_num, pre_den, alternating, num, den, sign=1) -> GammaSum:
    terms = tuple(
        ((-1) ** r if alternating else 1, tuple(num(r)), tuple(den(r)))
        for r in range(i + 1)
    )
    return GammaSum(float(log2), sign, tuple(pre_num), tuple(pre_den), terms)


def _unpack(p: Params, names: str):
    return [p[n] for n in names.split()]


_REGISTRY: dict[str, Identity] = {}


def _register(ident: Identity) -> None:
    if ident.id in _REGISTRY:
        raise ValueError(f"duplicate identity {ident.id}")
    _REGISTRY[ident.id] = ident


# ---------------------------------------------------------------------------
# reduction formulas

_LW_BOX_FULL = {"alpha": (0.1, 2.0, 0.0), "beta": (0.6, 3.0, 0.0), "gamma": (0.1, 2.0, 0.0),
                "epsilon": (0.1, 2.0, 0.0), "x": (-0.5, 0.5, 0.0)}


def _box(*names, **override):
    out = {n: _LW_BOX_FULL[n] for n in names}
    out.update(override)
    return out


def _lw_entry(id, free, lhs, rhs, note="", extra_rhs=None, **box_override):
    rhs_map = {"printed": rhs}
    if extra_rhs:
        rhs_map.update(extra_rhs)
    _register(Identity(id, tuple(free), ("x", "x") if id < "lw2.4" else (("x", "x/(x-1)") if id == "lw2.4" else ("x", "-x")),
                       "reduction", lhs, MappingProxyType(rhs_map), "printed",
                       MappingProxyType(_box(*free, **box_override)), note=note))


def _w(x):
    return x / (x - 1.0)


_lw_entry(
    "lw2.1", ("alpha", "beta", "gamma", "epsilon", "x"),
    lambda i, p: _kdf([p["alpha"]], [p["beta"]], [p["epsilon"]], [p["beta"] - p["epsilon"], p["gamma"]],
                      [], [p["gamma"] + p["beta"]], p["x"], p["x"]),
    lambda i, p: Hyp2F1Form((1 - p["x"]) ** (p["beta"] - p["epsilon"] - p["alpha"]),
                            p["beta"] - p["epsilon"], p["gamma"] + p["beta"] - p["alpha"], p["gamma"] + p["beta"], p["x"]),
)
_lw_entry(
    "lw2.2", ("alpha", "beta", "epsilon", "x"),
    lambda i, p: _kdf([p["alpha"]], [p["beta"]], [p["epsilon"]], [p["beta"] - p["epsilon"], p["alpha"] / 2 + 1],
                      [], [p["alpha"] / 2], p["x"], p["x"]),
    lambda i, p: Hyp2F1Form((1 - p["x"]) ** (p["beta"] - p["epsilon"] - p["alpha"]),
                            p["beta"] - p["epsilon"], 1 + p["beta"] / 2, p["beta"] / 2, p["x"]),
)
_lw_entry(
    "lw2.3", ("alpha", "beta", "epsilon", "x"),
    lambda i, p: _kdf([p["alpha"]], [p["beta"]], [p["epsilon"]],
                      [p["beta"] - p["epsilon"], 1 + p["alpha"] / 2, (p["alpha"] - p["beta"]) / 2],
                      [], [p["alpha"] / 2, 1 + (p["alpha"] + p["beta"]) / 2], p["x"], p["x"]),
    lambda i, p: Hyp2F1Form((1 - p["x"]) ** (p["beta"] - p["epsilon"] - p["alpha"]),
                            p["beta"] - p["epsilon"], (p["beta"] - p["alpha"]) / 2, 1 + (p["alpha"] + p["beta"]) / 2, p["x"]),
)
_lw_entry(
    "lw2.4", ("alpha", "beta", "gamma", "epsilon", "x"),
    lambda i, p: _f3(p["alpha"], p["beta"] - p["epsilon"], p["epsilon"], p["gamma"], p["beta"], p["x"], _w(p["x"])),
    lambda i, p: Hyp2F1Form((1 - p["x"]) ** (-p["alpha"]),
                            p["beta"] - p["epsilon"], p["alpha"] + p["gamma"], p["beta"], _w(p["x"])),
    gamma=(0.1, 1.0, 0.0), alpha=(0.1, 1.0, 0.0),
)
_lw_entry(
    "lw2.5", ("alpha", "beta", "gamma", "epsilon", "x"),
    lambda i, p: _kdf([p["alpha"], p["gamma"]], [p["beta"]], [], [p["epsilon"]], [], [p["beta"] + p["epsilon"]],
                      p["x"], -p["x"]),
    lambda i, p: Hyp2F1Form((1 - p["x"]) ** (-p["alpha"]),
                            p["beta"] - p["epsilon"], p["alpha"] + p["gamma"], p["beta"], _w(p["x"])),
    note="published right side coincides with that of lw2.4",
    extra_rhs={
        # inner n-sum is a terminating Chu-Vandermonde sum, leaving a single 2F1
        "corrected": lambda i, p: Hyp2F1Form(1.0, p["alpha"], p["gamma"], p["beta"] + p["epsilon"], p["x"]),
    },
)
_lw_entry(
    "lw2.6", ("alpha", "beta", "gamma", "x"),
    lambda i, p: _kdf([p["alpha"], p["gamma"]], [p["beta"]], [], [p["gamma"] / 2 + 1], [], [p["gamma"] / 2],
                      p["x"], -p["x"]),
    lambda i, p: Hyp2F1Form((1 - p["x"]) ** (-p["alpha"]), p["alpha"], 1 + p["beta"] / 2, p["beta"] / 2, _w(p["x"])),
)
_lw_entry(
    "lw2.7", ("alpha", "beta", "gamma", "x"),
    lambda i, p: _kdf([p["alpha"], p["gamma"]], [p["beta"]], [],
                      [1 + p["gamma"] / 2, (p["gamma"] - p["beta"]) / 2], [],
                      [p["gamma"] / 2, 1 + (p["gamma"] + p["beta"]) / 2], p["x"], -p["x"]),
    lambda i, p: Hyp2F1Form((1 - p["x"]) ** (-p["alpha"]), p["alpha"], (p["beta"] - p["gamma"]) / 2,
                            1 + (p["gamma"] + p["beta"]) / 2, _w(p["x"])),
)


# ---------------------------------------------------------------------------
# theorem entries

_ARGS = {0.5: "1/2", -0.5: "-1/2", -1.0: "-1", 1.0: "1"}


def _thm(id, free, source, theorem, xy, subst, rhs, box, corrected=None, extra=None, default="printed", note=""):
    """Register a theorem entry whose left side is the source formula's left side after ``subst``."""
    src = _REGISTRY[source]

    def lhs(i, p, _src=src, _subst=subst):
        return _src.lhs(0, _subst(i, p))

    rhs_map = {} if default != "printed" else {"printed": rhs}
    if extra:
        rhs_map.update(extra)
    if corrected is not None:
        rhs_map["corrected"] = corrected
    sign = "Plus" if id.endswith("a") else "Minus"
    _register(Identity(
        id, tuple(free), tuple(_ARGS[v] for v in xy), f"{source} + {theorem}{sign}",
        lhs, MappingProxyType(rhs_map), default, MappingProxyType(box),
        source=source, substitution=subst, note=note,
    ))


def _pm(id):
    return 1 if id.endswith("a") else -1


# thm3.1: lw2.1 at x = 1/2, gamma = 1 - alpha - epsilon +/- i
for _id in ("thm3.1a", "thm3.1b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "epsilon": p["epsilon"],
                "gamma": 1 - p["alpha"] - p["epsilon"] + s * i, "x": HALF}

    def _rhs(i, p, s=s, shift=0.0):
        al, be, ep = _unpack(p, "alpha beta epsilon")
        if s > 0:
            return _gsum(i, 1 - al + i + shift, [be - ep - al + i + 1, al - i], [1 - 2 * al - ep + be + i, al], True,
                         lambda r: [(1 - 2 * al - ep + be + i + r) / 2], lambda r: [(be - ep - i + r + 1) / 2])
        return _gsum(i, 1 - al - i + shift, [be - ep - al - i + 1], [1 - 2 * al - ep + be - i], False,
                     lambda r: [(1 - 2 * al - ep + be - i + r) / 2], lambda r: [(be - ep - i + r + 1) / 2])

    _thm(_id, ("alpha", "beta", "epsilon"), "lw2.1", "Gauss2", (0.5, 0.5), _sub, _rhs,
         {"alpha": (0.1, 2.0, 0.0), "beta": (1.0, 3.0, 0.0), "epsilon": (0.1, 1.0, 0.0)},
         corrected=lambda i, p, _r=_rhs: _r(i, p, shift=-1.0),
         note="published prefactor is twice the value of the series")

# thm3.2: lw2.1 at x = 1/2, gamma = 1 + alpha - 2 beta + epsilon +/- i
for _id in ("thm3.2a", "thm3.2b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "epsilon": p["epsilon"],
                "gamma": 1 + p["alpha"] - 2 * p["beta"] + p["epsilon"] + s * i, "x": HALF}

    def _rhs(i, p, s=s):
        al, be, ep = _unpack(p, "alpha beta epsilon")
        if s > 0:
            return _gsum(i, i + al - 2 * be + 2 * ep, [be - ep - i, 1 + al - be + ep + i],
                         [be - ep, 1 + al - 2 * be + 2 * ep + i], True,
                         lambda r: [ep - be + (1 + al + i + r) / 2], lambda r: [(1 + al - i + r) / 2])
        return _gsum(i, -i + al - 2 * be + 2 * ep, [1 + al - be + ep - i], [1 + al - 2 * be + 2 * ep - i], False,
                     lambda r: [ep - be + (1 + al - i + r) / 2], lambda r: [(1 + al - i + r) / 2])

    _thm(_id, ("alpha", "beta", "epsilon"), "lw2.1", "Bailey", (0.5, 0.5), _sub, _rhs,
         {"alpha": (0.1, 2.0, 0.0), "beta": (0.6, 2.0, 0.0), "epsilon": (0.1, 2.0, 0.0)})

# thm3.3: lw2.2 at x = -1, epsilon = beta - 2 -/+ i
for _id in ("thm3.3a", "thm3.3b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "epsilon": p["beta"] - 2 - s * i, "x": -1.0}

    def _rhs(i, p, s=s):
        al, be = _unpack(p, "alpha beta")
        if s > 0:
            # 1/(i+1)! written as 1/Gamma(i+2)
            return _gsum(i, -2 - al, [be / 2], [i + 2, be / 2 - i - 2], True,
                         lambda r: [be / 4 - 1 + (r - i) / 2], lambda r: [be / 4 + 1 + (r - i) / 2])
        return _gsum(i, -2 - al, [be / 2], [be / 2 + i - 2], False,
                     lambda r: [be / 4 - 1 + (r + i) / 2], lambda r: [be / 4 + 1 + (r - i) / 2])

    _thm(_id, ("alpha", "beta"), "lw2.2", "Kummer", (-1.0, -1.0), _sub, _rhs,
         {"alpha": (-0.9, -0.1, 0.0), "beta": (2.2, 3.8, 1.0 if s > 0 else 0.0)})

# thm3.4: lw2.2 at x = 1/2, epsilon = beta/2 + 2 +/- i
for _id in ("thm3.4a", "thm3.4b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "epsilon": p["beta"] / 2 + 2 + s * i, "x": HALF}

    def _rhs(i, p, s=s):
        al, be = _unpack(p, "alpha beta")
        # 1/beta written as Gamma(beta)/Gamma(beta+1)
        if s > 0:
            return _gsum(i, al + 3 + i, [be], [be + 1, i + 2], True,
                         lambda r: [be / 4 + (r + 1) / 2], lambda r: [be / 4 - i + (r - 1) / 2],
                         sign=(-1) ** i)
        return _gsum(i, al + 3 - i, [be], [be + 1], False,
                     lambda r: [be / 4 + (r + 1) / 2], lambda r: [be / 4 + (r - 1) / 2])

    _thm(_id, ("alpha", "beta"), "lw2.2", "Kummer", (0.5, 0.5), _sub, _rhs,
         {"alpha": (0.1, 2.0, 0.0), "beta": (2.2, 4.0, 0.0)})

# thm3.5: lw2.3 at x = -1, epsilon = alpha + beta -/+ i
for _id in ("thm3.5a", "thm3.5b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "epsilon": p["alpha"] + p["beta"] - s * i, "x": -1.0}

    def _rhs(i, p, s=s):
        al, be = _unpack(p, "alpha beta")
        if s > 0:
            return _gsum(i, 0.0, [-al, 1 + (al + be) / 2], [i - al, be / 2 + 3 * al / 2 - i + 1], True,
                         lambda r: [be / 4 + 3 * al / 4 + (r + 1 - i) / 2], lambda r: [be / 4 - al / 4 + (r + 1 - i) / 2])
        return _gsum(i, 0.0, [1 + (al + be) / 2], [be / 2 + 3 * al / 2 + i + 1], False,
                     lambda r: [be / 4 + 3 * al / 4 + (r + 1 + i) / 2], lambda r: [be / 4 - al / 4 + (r + 1 - i) / 2])

    _thm(_id, ("alpha", "beta"), "lw2.3", "Kummer", (-1.0, -1.0), _sub, _rhs,
         {"alpha": (-0.9, -0.1, 0.0 if s > 0 else -0.5), "beta": (1.2, 2.8, 0.0)})

# thm3.6: lw2.3 at x = 1/2, epsilon = beta/2 - 3 alpha/2 - 1 +/- i
for _id in ("thm3.6a", "thm3.6b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"],
                "epsilon": p["beta"] / 2 - 3 * p["alpha"] / 2 - 1 + s * i, "x": HALF}

    def _rhs(i, p, s=s):
        al, be = _unpack(p, "alpha beta")
        if s > 0:
            return _gsum(i, i - al - 2, [al - i + 1, 1 + (al + be) / 2], [al + 1, (be - al) / 2], True,
                         lambda r: [(be - al) / 4 + r / 2], lambda r: [(be + 3 * al) / 4 + 1 - i + r / 2])
        return _gsum(i, -i - al - 2, [1 + (al + be) / 2], [(be - al) / 2], False,
                     lambda r: [(be - al) / 4 + r / 2], lambda r: [(be + 3 * al) / 4 + 1 + r / 2])

    _thm(_id, ("alpha", "beta"), "lw2.3", "Gauss2", (0.5, 0.5), _sub, _rhs,
         {"alpha": (0.1, 2.0, 0.0), "beta": (2.2, 4.0, 0.0)})

# thm3.7: lw2.3 at x = 1/2, epsilon = 3 beta/2 - alpha/2 - 1 -/+ i
for _id in ("thm3.7a", "thm3.7b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"],
                "epsilon": 3 * p["beta"] / 2 - p["alpha"] / 2 - 1 - s * i, "x": HALF}

    def _rhs(i, p, s=s):
        al, be = _unpack(p, "alpha beta")
        if s > 0:
            return _gsum(i, al - 1, [be / 2 - al / 2 - i, 1 + (al + be) / 2], [be / 2 - al / 2, 1 + al], True,
                         lambda r: [(al + r + 1) / 2], lambda r: [(be + r + 1) / 2 - i])
        return _gsum(i, al - 1, [1 + (al + be) / 2], [1 + al], False,
                     lambda r: [(al + r + 1) / 2], lambda r: [(be + r + 1) / 2])

    _thm(_id, ("alpha", "beta"), "lw2.3", "Bailey", (0.5, 0.5), _sub, _rhs,
         {"alpha": (0.1, 2.0, 0.0), "beta": (2.2, 4.0, 0.0)})


# thm3.8 to thm3.10: lw2.4 (Appell F3)
def _rhs_8_9(i, p, s, log2):
    al, be, ep = _unpack(p, "alpha beta epsilon")
    if s > 0:
        return _gsum(i, log2, [1 - ep, be], [1 - ep + i, be + ep - i - 1], True,
                     lambda r: [(be + ep - i + r - 1) / 2], lambda r: [(be - ep - i + r + 1) / 2])
    return _gsum(i, log2, [be], [be + ep + i - 1], False,
                 lambda r: [(be + ep + i + r - 1) / 2], lambda r: [(be - ep - i + r + 1) / 2])


for _id in ("thm3.8a", "thm3.8b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "epsilon": p["epsilon"],
                "gamma": 1 - p["alpha"] - p["epsilon"] + s * i, "x": HALF}

    _thm(_id, ("alpha", "beta", "epsilon"), "lw2.4", "Kummer", (0.5, -1.0), _sub,
         lambda i, p, s=s: _rhs_8_9(i, p, s, p["alpha"] + s * -i + 2 * p["epsilon"] - 2),
         {"alpha": (0.1, 0.9, 0.5 if s > 0 else 0.0), "beta": (2.2, 3.8, 0.0), "epsilon": (0.1, 0.9, 0.0)})

for _id in ("thm3.9a", "thm3.9b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "epsilon": p["epsilon"],
                "gamma": p["beta"] + p["epsilon"] - p["alpha"] - s * i - 1, "x": -1.0}

    _thm(_id, ("alpha", "beta", "epsilon"), "lw2.4", "Kummer", (-1.0, 0.5), _sub,
         lambda i, p, s=s: _rhs_8_9(i, p, s, p["beta"] + p["epsilon"] - p["alpha"] - s * i - 2),
         {"alpha": (0.1, 0.9, 0.0), "beta": (2.2, 3.8, 0.0), "epsilon": (0.1, 0.9, 0.0)})

for _id in ("thm3.10a", "thm3.10b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "epsilon": p["epsilon"],
                "gamma": 1 - p["alpha"] - p["beta"] + p["epsilon"] + s * i, "x": -1.0}

    def _rhs(i, p, s=s, fix=False):
        al, be, ep = _unpack(p, "alpha beta epsilon")
        if s > 0:
            first = be - ep - i if fix else be - ep + i
            return _gsum(i, ep - al - be + i, [first, be], [ep, be - ep], True,
                         lambda r: [(ep + r) / 2], lambda r: [be - i + (r - ep) / 2])
        return _gsum(i, ep - al - be - i, [be], [ep], False,
                     lambda r: [(ep + r) / 2], lambda r: [be + (r - ep) / 2])

    _thm(_id, ("alpha", "beta", "epsilon"), "lw2.4", "Bailey", (-1.0, 0.5), _sub, _rhs,
         {"alpha": (0.1, 0.9, 0.0), "beta": (2.2, 3.0, 0.0), "epsilon": (0.1, 0.9, 0.0)},
         corrected=(lambda i, p, _r=_rhs: _r(i, p, fix=True)) if s > 0 else None,
         note="published Gamma(beta - epsilon + i) fails for i > 0" if s > 0 else "")

# thm3.11: lw2.5 at x = -1, epsilon = alpha - beta - gamma + 1 +/- i
for _id in ("thm3.11a", "thm3.11b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "gamma": p["gamma"],
                "epsilon": p["alpha"] - p["beta"] - p["gamma"] + 1 + s * i, "x": -1.0}

    def _rhs(i, p, s=s):
        al, be, ga = _unpack(p, "alpha beta gamma")
        if s > 0:
            return _gsum(i, i - 2 * ga, [1 + al - ga + i, ga - i], [ga, 1 + al - 2 * ga + i], True,
                         lambda r: [(al + i + r + 1) / 2 - ga], lambda r: [(al - i + r + 1) / 2])
        return _gsum(i, -i - 2 * ga, [1 + al - ga - i], [1 + al - 2 * ga - i], False,
                     lambda r: [(al - i + r + 1) / 2 - ga], lambda r: [(al - i + r + 1) / 2])

    _thm(_id, ("alpha", "beta", "gamma"), "lw2.5", "Kummer", (-1.0, 1.0), _sub, _rhs,
         {"alpha": (1.2, 1.8, 0.0), "beta": (2.2, 3.2, 0.0), "gamma": (0.1, 0.9, 0.0)})

# thm3.12: lw2.5 at x = -1, epsilon = 1 - alpha - beta + gamma +/- i
for _id in ("thm3.12a", "thm3.12b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "gamma": p["gamma"],
                "epsilon": 1 - p["alpha"] - p["beta"] + p["gamma"] + s * i, "x": -1.0}

    def _rhs(i, p, s=s, fix=False):
        al, be, ga = _unpack(p, "alpha beta gamma")
        if s > 0:
            second = 1 + ga - al + i if fix else 1 - al + i
            return _gsum(i, i - 2 * al, [al - i, second], [al, 1 + ga - 2 * al + i], True,
                         lambda r: [(1 + ga + i + r) / 2 - al], lambda r: [(1 + ga - i + r) / 2])
        return _gsum(i, -i - 2 * al, [1 - al + ga - i], [1 + ga - 2 * al - i], False,
                     lambda r: [(1 + ga - i + r) / 2 - al], lambda r: [(1 + ga - i + r) / 2])

    _thm(_id, ("alpha", "beta", "gamma"), "lw2.5", "Kummer", (-1.0, 1.0), _sub, _rhs,
         {"alpha": (0.1, 0.9, 0.0), "beta": (3.0, 4.0, 0.0 if s > 0 else 1.0), "gamma": (1.2, 2.2, 0.0 if s > 0 else 1.0)},
         corrected=(lambda i, p, _r=_rhs: _r(i, p, fix=True)) if s > 0 else None,
         note="published Gamma(1 - alpha + i) fails" if s > 0 else "")

# thm3.13: lw2.6 at x = -1, beta = 2 alpha + 4 +/- 2i
for _id in ("thm3.13a", "thm3.13b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "gamma": p["gamma"], "beta": 2 * p["alpha"] + 4 + 2 * s * i, "x": -1.0}

    def _rhs(i, p, s=s):
        al = p["alpha"]
        # 1/(alpha+2+i) written as Gamma(alpha+2+i)/Gamma(alpha+3+i)
        if s > 0:
            return _gsum(i, i + 2, [al + 2 + i], [al + 3 + i, i + 2], True,
                         lambda r: [(al + i + r + 3) / 2], lambda r: [(al - i + r + 1) / 2], sign=(-1) ** i)
        return _gsum(i, 2 - i, [al + 2 - i], [al + 3 - i], False,
                     lambda r: [(al - i + r + 3) / 2], lambda r: [(al - i + r + 1) / 2])

    _thm(_id, ("alpha", "gamma"), "lw2.6", "Kummer", (-1.0, 1.0), _sub, _rhs,
         {"alpha": (0.2, 2.8, 0.0 if s > 0 else 1.0), "gamma": (0.2, 1.0, 0.0)})

# thm3.14: lw2.7 at x = 1/2, gamma = -alpha +/- i
for _id in ("thm3.14a", "thm3.14b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": p["alpha"], "beta": p["beta"], "gamma": -p["alpha"] + s * i, "x": HALF}

    def _rhs(i, p, s=s):
        al, be = _unpack(p, "alpha beta")
        if s > 0:
            return _gsum(i, i - al, [al - i, 1 + (be - al + i) / 2], [al, 1 + (be - 3 * al + i) / 2], True,
                         lambda r: [(be - 3 * al + i) / 4 + (r + 1) / 2], lambda r: [(be + al - 3 * i) / 4 + (r + 1) / 2])
        return _gsum(i, -i - al, [1 + (be - al - i) / 2], [1 + (be - 3 * al - i) / 2], False,
                     lambda r: [(be - 3 * al - i) / 4 + (r + 1) / 2], lambda r: [(be + al - i) / 4 + (r + 1) / 2])

    _thm(_id, ("alpha", "beta"), "lw2.7", "Kummer", (0.5, -0.5), _sub, _rhs,
         {"alpha": (0.1, 2.0, 0.0), "beta": (0.6, 3.0, 0.0)})


# thm3.15 / thm3.16: lw2.7 at x = -1 with alpha eliminated; the published
# right sides still contain alpha in a power of two.
def _alpha_15(i, p, s):
    return p["beta"] / 2 + 3 * p["gamma"] / 2 + 1 - s * i


def _alpha_16(i, p, s):
    return 1 - p["beta"] / 2 + p["gamma"] / 2 + s * i


for _id in ("thm3.15a", "thm3.15b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": _alpha_15(i, p, s), "beta": p["beta"], "gamma": p["gamma"], "x": -1.0}

    def _rhs(i, p, s=s, keep_alpha=True):
        be, ga = _unpack(p, "beta gamma")
        al = _alpha_15(i, p, s) if keep_alpha else 0.0
        if s > 0:
            return _gsum(i, (be - ga) / 2 - al - 1, [1 + (be + ga) / 2, ga - i + 1], [(be - ga) / 2, ga + 1], True,
                         lambda r: [(be - ga) / 4 + r / 2], lambda r: [(be + 3 * ga) / 4 + 1 - i + r / 2])
        return _gsum(i, (be - ga) / 2 - al - 1, [1 + (be + ga) / 2], [(be - ga) / 2], False,
                     lambda r: [(be - ga) / 4 + r / 2], lambda r: [(be + 3 * ga) / 4 + 1 + r / 2])

    _thm(_id, ("beta", "gamma"), "lw2.7", "Gauss2", (-1.0, 1.0), _sub, None,
         {"beta": (1.2, 2.8, 0.0), "gamma": (-0.9, -0.1, 0.5 if s > 0 else -0.5)},
         extra={"alpha-substituted": _rhs, "alpha-dropped": lambda i, p, _r=_rhs: _r(i, p, keep_alpha=False)},
         default="alpha-substituted",
         note="alpha in the published power of two read as the substituted expression or dropped")

for _id in ("thm3.16a", "thm3.16b"):
    s = _pm(_id)

    def _sub(i, p, s=s):
        return {"alpha": _alpha_16(i, p, s), "beta": p["beta"], "gamma": p["gamma"], "x": -1.0}

    def _rhs(i, p, s=s, keep_alpha=True, fix=False):
        be, ga = _unpack(p, "beta gamma")
        al = _alpha_16(i, p, s) if keep_alpha else 0.0
        last = 1 + ga if fix else be - s * i
        if s > 0:
            return _gsum(i, (ga - be) / 2 - al + i, [(be - ga) / 2 - i, 1 + (be + ga) / 2], [(be - ga) / 2, last], True,
                         lambda r: [(ga + r + 1) / 2], lambda r: [(be + r + 1) / 2 - i])
        return _gsum(i, (ga - be) / 2 - al - i, [1 + (be + ga) / 2], [last], False,
                     lambda r: [(ga + r + 1) / 2], lambda r: [(be + r + 1) / 2])

    _thm(_id, ("beta", "gamma"), "lw2.7", "Bailey", (-1.0, 1.0), _sub, None,
         {"beta": (2.2, 3.8, 1.0 if s > 0 else 0.0), "gamma": (0.1, 0.9, 0.0)},
         extra={"alpha-substituted": _rhs, "alpha-dropped": lambda i, p, _r=_rhs: _r(i, p, keep_alpha=False)},
         corrected=lambda i, p, _r=_rhs: _r(i, p, fix=True),
         default="alpha-substituted",
         note="fails under both readings of alpha; holds with Gamma(1 + gamma) in place of "
              + ("Gamma(beta - i)" if s > 0 else "Gamma(beta + i)"))

del _id, s, _sub

def _sort_key(id: str):
    if id.startswith("lw"):
        return (0, float(id[2:]), "")
    body = id[3:]
    return (1, int(body.split(".")[1][:-1]), body[-1])


_ORDER = tuple(sorted(_REGISTRY, key=_sort_key))


# ---------------------------------------------------------------------------
# public API


def identity_ids() -> tuple[str, ...]:
    """All registered ids, reductions first, then theorems in numeric order."""
    return _ORDER


def get_identity(id: str) -> Identity:
    try:
        return _REGISTRY[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def list_identities() -> list[tuple[str, frozenset, tuple[str, str], str]]:
    """``(id, free symbols, argument pair, route)`` for every registered identity."""
    out = []
    for id in _ORDER:
        ident = _REGISTRY[id]
        route = "reduction" if not ident.is_theorem else ident.route
        out.append((id, frozenset(ident.free), ident.arguments, route))
    return out


def lhs_spec(instance: IdentityInstance) -> SideSpec:
    """Fully bound left side of ``instance``."""
    ident = instance.validate()
    return ident.lhs(instance.i, instance.params)


def _rhs_form(instance: IdentityInstance, interpretation: str | None):
    ident = instance.validate()
    key = interpretation or ident.default_interpretation
    if key not in ident.rhs:
        raise KeyError(f"{ident.id} has no interpretation {key!r}; choose from {', '.join(ident.rhs)}")
    return ident.rhs[key](instance.i, instance.params)


def rhs_value(instance: IdentityInstance, rel_tol: float = DEFAULT_REL_TOL,
              interpretation: str | None = None) -> EvalResult:
    """Evaluate the right side of ``instance``.

    Reduction formulas evaluate a prefactor times a 2F1; theorem entries a
    finite sum of Gamma quotients.

    Raises
    ------
    UncancelledPoleError
        If a Gamma argument sits on a pole that nothing cancels.
    """
    form = _rhs_form(instance, interpretation)
    if isinstance(form, GammaSum):
        return form.evaluate()
    return form.evaluate(rel_tol)


def rhs_gamma_arguments(instance: IdentityInstance, interpretation: str | None = None) -> list[float]:
    """Gamma arguments (theorems) or 2F1 lower parameter (reductions) of the right side."""
    form = _rhs_form(instance, interpretation)
    if isinstance(form, GammaSum):
        return form.gamma_arguments()
    return [form.c]


def corollary_instance(instance: IdentityInstance) -> IdentityInstance:
    """The reduction-formula instance whose left side equals this theorem instance's left side."""
    ident = instance.validate()
    if not ident.is_theorem:
        raise ValueError(f"{ident.id} is not a theorem entry")
    return IdentityInstance(ident.source, 0, ident.substitution(instance.i, instance.params))
