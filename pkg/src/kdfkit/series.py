"""Single and double hypergeometric series: pFq, 2F1, Kampé de Fériet and Appell F3.

All summation is compensated. Arguments on the unit circle are summed with
Wynn's epsilon algorithm after a parameter-excess convergence pre-check; when
convergence cannot be established the result is marked ``Inconclusive``
instead of returning a possibly divergent partial sum.
"""

from __future__ import annotations

import decimal
import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .accel import CompensatedSum, wynn_epsilon
from .errors import AccelerationFailure, DenominatorPoleError, RangeError
from .gamma import pole_index

__all__ = [
    "Status",
    "EvalResult",
    "PFQSpec",
    "KdFSpec",
    "eval_pfq",
    "eval_2f1",
    "eval_kdf",
    "eval_appell_f3",
    "kdf_precheck",
    "f3_precheck",
    "DEFAULT_REL_TOL",
    "DEFAULT_MAX_INDEX",
]

DEFAULT_REL_TOL = 1e-10
DEFAULT_MAX_TERMS = 20_000
DEFAULT_MAX_INDEX = 2000
MAX_TERMS_LIMIT = 10**6
MAX_INDEX_LIMIT = 4000

_EPS = 2.220446049250313e-16
_UNIT_TOL = 1e-14
# Partial sums fed to Wynn's algorithm; longer tables only amplify rounding noise.
_WYNN_WINDOW = 40


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    TERMINATED = "Terminated"
    ACCELERATED = "Accelerated"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EvalResult:
    """Value of a series together with truncation diagnostics.

    Attributes
    ----------
    value : float
        The sum. Not meaningful when ``status`` is Inconclusive (may be NaN).
    abs_error_estimate : float
        Estimated absolute error; exactly 0 for terminated series.
    terms_used : int
        Number of terms (single series) or summation indices (double series) visited.
    status : Status
    reason : str
        Human readable note, mostly for Inconclusive results.
    """

    value: float
    abs_error_estimate: float
    terms_used: int
    status: Status
    reason: str = ""

    @property
    def trusted(self) -> bool:
        return self.status is not Status.INCONCLUSIVE


def _floats(values: Iterable[float]) -> tuple[float, ...]:
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class PFQSpec:
    """``pFq(numerator_params; denominator_params; argument)``."""

    numerator_params: tuple[float, ...]
    denominator_params: tuple[float, ...]
    argument: float

    def __init__(self, numerator_params: Iterable[float], denominator_params: Iterable[float], argument: float):
        object.__setattr__(self, "numerator_params", _floats(numerator_params))
        object.__setattr__(self, "denominator_params", _floats(denominator_params))
        object.__setattr__(self, "argument", float(argument))


@dataclass(frozen=True)
class KdFSpec:
    """Double series with summand

    ``(h)_{m+n} (a)_m (b)_n / ((g)_{m+n} (c)_m (d)_n) * x**m y**n / (m! n!)``

    where each symbol stands for the product over its parameter list.
    """

    h_params: tuple[float, ...] = ()
    g_params: tuple[float, ...] = ()
    a_params: tuple[float, ...] = ()
    b_params: tuple[float, ...] = ()
    c_params: tuple[float, ...] = ()
    d_params: tuple[float, ...] = ()
    x: float = 0.0
    y: float = 0.0

    def __init__(
        self,
        h_params: Iterable[float] = (),
        g_params: Iterable[float] = (),
        a_params: Iterable[float] = (),
        b_params: Iterable[float] = (),
        c_params: Iterable[float] = (),
        d_params: Iterable[float] = (),
        x: float = 0.0,
        y: float = 0.0,
    ):
        for name, vals in (
            ("h_params", h_params),
            ("g_params", g_params),
            ("a_params", a_params),
            ("b_params", b_params),
            ("c_params", c_params),
            ("d_params", d_params),
        ):
            object.__setattr__(self, name, _floats(vals))
        object.__setattr__(self, "x", float(x))
        object.__setattr__(self, "y", float(y))

    def swapped(self) -> "KdFSpec":
        """The same series with the roles of (m, a, c, x) and (n, b, d, y) exchanged."""
        return KdFSpec(self.h_params, self.g_params, self.b_params, self.a_params,
                       self.d_params, self.c_params, self.y, self.x)

    def term(self, m: int, n: int) -> float:
        """Direct evaluation of a single summand (slow, for checks)."""
        from .gamma import pochhammer

        num = 1.0
        for p in self.h_params:
            num *= pochhammer(p, m + n)
        for p in self.a_params:
            num *= pochhammer(p, m)
        for p in self.b_params:
            num *= pochhammer(p, n)
        den = 1.0
        for p in self.g_params:
            den *= pochhammer(p, m + n)
        for p in self.c_params:
            den *= pochhammer(p, m)
        for p in self.d_params:
            den *= pochhammer(p, n)
        if num == 0.0:
            return 0.0
        return num / den * self.x**m * self.y**n / (math.factorial(m) * math.factorial(n))


# ---------------------------------------------------------------------------
# helpers


def _termination_index(params: Sequence[float]) -> int | None:
    """Largest k such that the Pochhammer product over ``params`` is nonzero at index k."""
    ks = [k for k in (pole_index(p) for p in params) if k is not None]
    return min(ks) if ks else None


def _min_none(*values: int | None) -> int | None:
    vals = [v for v in values if v is not None]
    return min(vals) if vals else None


def _check_tol(rel_tol: float) -> None:
    if not rel_tol >= 1e-15:
        raise RangeError(f"rel_tol must be >= 1e-15, got {rel_tol}")


def _is_unit(z: float) -> bool:
    return abs(abs(z) - 1.0) <= _UNIT_TOL


def _excess_converges(nums: Sequence[float], dens: Sequence[float], z: float) -> tuple[bool, str]:
    """Convergence pre-check of a non-terminating series at the argument ``z``.

    Only meaningful for ``|z| <= 1``; for ``|z| < 1`` only p <= q+1 is needed.
    """
    p, q = len(nums), len(dens)
    if z == 0 or p <= q:
        return True, ""
    if p > q + 1:
        return False, f"{p}F{q} series with nonzero argument diverges"
    if abs(z) < 1 - _UNIT_TOL:
        return True, ""
    if abs(z) > 1 + _UNIT_TOL:
        return False, f"|z| = {abs(z):g} > 1"
    excess = sum(dens) - sum(nums)
    if z > 0 and excess <= 0:
        return False, f"parameter excess {excess:.6g} <= 0 at z = 1"
    if z < 0 and excess <= -1:
        return False, f"parameter excess {excess:.6g} <= -1 at z = -1"
    return True, ""


def _inconclusive(reason: str, terms: int = 0, value: float = math.nan) -> EvalResult:
    return EvalResult(value, math.inf, terms, Status.INCONCLUSIVE, reason)


def _try_wynn(partials: Sequence[float], rel_tol: float, extra_err: float = 0.0):
    """Accelerated (value, error) if Wynn's estimate meets ``rel_tol``, else None."""
    if len(partials) < 5:
        return None
    try:
        val, err = wynn_epsilon(partials[-_WYNN_WINDOW:])
    except AccelerationFailure:
        return None
    err += extra_err
    if math.isfinite(val) and err <= rel_tol * abs(val):
        return val, err
    return None


def _checkpoint(n: int) -> bool:
    # n = number of partial sums available; roughly geometric spacing
    return n >= 12 and (n % 4 == 0 if n <= 64 else n % 16 == 0)


# ---------------------------------------------------------------------------
# single series


def _sum_series(nums, dens, z, rel_tol, max_terms, lead=1.0, abs_tol=0.0) -> EvalResult:
    """Sum ``lead * pFq(nums; dens; z)`` by term recurrence. Parameters validated by caller.

    Stops once the error estimate is below ``max(rel_tol * |sum|, abs_tol)``.
    """
    p_term = _termination_index(nums)
    q_pole = _termination_index(dens)
    if q_pole is not None and (p_term is None or q_pole < p_term):
        raise DenominatorPoleError(
            f"denominator Pochhammer vanishes at index {q_pole + 1} before any numerator zero"
        )

    if z == 0.0 or lead == 0.0:
        return EvalResult(lead, 0.0, 1, Status.CONVERGED)

    terminating = p_term is not None and p_term + 1 <= max_terms
    if terminating:
        acc = CompensatedSum(lead)
        t = lead
        for n in range(p_term):
            r = z / (n + 1)
            for a in nums:
                r *= a + n
            for b in dens:
                r /= b + n
            t *= r
            acc.add(t)
        return EvalResult(acc.value, 0.0, p_term + 1, Status.TERMINATED)

    ok, why = _excess_converges(nums, dens, z)
    if not ok:
        return _inconclusive(why)
    unit = len(nums) == len(dens) + 1 and _is_unit(z)
    excess = sum(dens) - sum(nums)

    acc = CompensatedSum(lead)
    t = lead
    abs_sum = abs(lead)
    partials = [lead]
    small = 0
    for n in range(max_terms - 1):
        r = z / (n + 1)
        for a in nums:
            r *= a + n
        for b in dens:
            r /= b + n
        t_new = t * r
        acc.add(t_new)
        abs_sum += abs(t_new)
        s = acc.value
        partials.append(s)
        if len(partials) > 4 * _WYNN_WINDOW:
            del partials[: -_WYNN_WINDOW]
        if not math.isfinite(s):
            return _inconclusive("overflow in partial sums", n + 2)
        round_err = 4 * _EPS * abs_sum
        target = max(rel_tol * abs(s), abs_tol)
        if abs(t_new) < target:
            small += 1
        else:
            small = 0
        ratio = abs(t_new / t) if t != 0 else math.inf
        t = t_new
        if small >= 3:
            if unit:
                # alternating tail is bounded by the next term; a positive
                # algebraic tail behaves like |t| n / excess
                tail = abs(t) if z < 0 else abs(t) * (n + 2) / excess
            elif ratio < 1:
                tail = abs(t) * ratio / (1 - ratio)
            else:
                tail = math.inf
            err = tail + round_err
            if err <= target:
                return EvalResult(s, err, n + 2, Status.CONVERGED)
            if tail <= target * _EPS:
                # more terms cannot help: the cancellation already lost the accuracy
                return _inconclusive(
                    f"rounding error {round_err:.3g} from cancelling terms exceeds the tolerance", n + 2, s)
        if unit and _checkpoint(len(partials)) or n == max_terms - 2:
            acc_res = _try_wynn(partials, rel_tol, round_err)
            if acc_res is not None:
                return EvalResult(acc_res[0], acc_res[1], n + 2, Status.ACCELERATED)
    return _inconclusive(f"no convergence within {max_terms} terms", max_terms, acc.value)


def eval_pfq(spec: PFQSpec, rel_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> EvalResult:
    """Evaluate ``pFq(numerator_params; denominator_params; argument)``.

    Parameters
    ----------
    spec : PFQSpec
    rel_tol : float
        Target relative accuracy, at least 1e-15.
    max_terms : int
        Cap on the number of terms, at most 10**6.

    Returns
    -------
    EvalResult

    Raises
    ------
    DenominatorPoleError
        If a denominator factor vanishes before the series terminates.
    """
    _check_tol(rel_tol)
    if not 1 <= max_terms <= MAX_TERMS_LIMIT:
        raise RangeError(f"max_terms must be in [1, {MAX_TERMS_LIMIT}], got {max_terms}")
    return _sum_series(spec.numerator_params, spec.denominator_params, spec.argument, rel_tol, max_terms)


def eval_2f1(a: float, b: float, c: float, z: float, rel_tol: float = DEFAULT_REL_TOL,
             transform: bool = True, max_terms: int = DEFAULT_MAX_TERMS) -> EvalResult:
    """Gauss hypergeometric function ``2F1(a, b; c; z)`` for ``z`` in [-1, 1).

    For negative ``z`` the Pfaff transformation
    ``2F1(a,b;c;z) = (1-z)**(-a) 2F1(a, c-b; c; z/(z-1))`` maps the argument
    into [0, 1/2], which turns slowly alternating series into fast ones. It is
    skipped for terminating series, which are summed exactly.
    """
    _check_tol(rel_tol)
    z = float(z)
    if not -1.0 - _UNIT_TOL <= z < 1.0:
        raise RangeError(f"eval_2f1 needs z in [-1, 1), got {z}")
    nums = (float(a), float(b))
    dens = (float(c),)
    term_idx = _termination_index(nums)
    if _is_unit(z) and term_idx is None:
        ok, why = _excess_converges(nums, dens, -1.0)
        if not ok:
            return _inconclusive(why)
    if not transform or term_idx is not None or z >= 0:
        return _sum_series(nums, dens, z, rel_tol, max_terms)

    w = z / (z - 1.0)
    # Keep the parameter whose companion makes the transformed series terminate, if any.
    if _termination_index((c - a,)) is not None and _termination_index((c - b,)) is None:
        keep, other = b, c - a
    else:
        keep, other = a, c - b
    if _termination_index((c,)) is not None and _termination_index((keep, other)) is None:
        # pole in c that only the untransformed series can avoid; let it raise there
        return _sum_series(nums, dens, z, rel_tol, max_terms)
    pref = (1.0 - z) ** (-keep)
    inner = _sum_series((keep, other), dens, w, rel_tol, max_terms)
    status = inner.status
    if status is Status.TERMINATED:
        status = Status.CONVERGED  # the original series does not terminate
    return EvalResult(pref * inner.value, abs(pref) * inner.abs_error_estimate, inner.terms_used, status, inner.reason)


# ---------------------------------------------------------------------------
# double series


def _edge_ratio(top: Sequence[float], bottom: Sequence[float], k: int) -> float:
    r = 1.0
    for p in top:
        r *= p + k
    for p in bottom:
        r /= p + k
    return r


def _double_support(spec: KdFSpec):
    """Index limits (max m, max n, max m+n; None = unbounded) and pole checks."""
    k_h = _termination_index(spec.h_params)
    m_lim = _min_none(_termination_index(spec.a_params), k_h, 0 if spec.x == 0 else None)
    n_lim = _min_none(_termination_index(spec.b_params), k_h, 0 if spec.y == 0 else None)
    d_lim = k_h
    if m_lim is not None and n_lim is not None:
        d_lim = _min_none(d_lim, m_lim + n_lim)

    k_c = _termination_index(spec.c_params)
    if k_c is not None and (m_lim is None or m_lim > k_c):
        raise DenominatorPoleError(f"lower m-parameter vanishes at m = {k_c + 1}")
    k_d = _termination_index(spec.d_params)
    if k_d is not None and (n_lim is None or n_lim > k_d):
        raise DenominatorPoleError(f"lower n-parameter vanishes at n = {k_d + 1}")
    k_g = _termination_index(spec.g_params)
    if k_g is not None and (d_lim is None or d_lim > k_g):
        raise DenominatorPoleError(f"lower (m+n)-parameter vanishes at m+n = {k_g + 1}")
    return m_lim, n_lim, d_lim


def _finite_double(spec: KdFSpec, m_lim: int, n_lim: int, d_lim: int) -> float:
    acc = CompensatedSum()
    row_lead = 1.0
    for m in range(m_lim + 1):
        if m > d_lim:
            break
        if m > 0:
            row_lead *= _edge_ratio(spec.h_params + spec.a_params, spec.g_params + spec.c_params, m - 1) * spec.x / m
        t = row_lead
        acc.add(t)
        for n in range(min(n_lim, d_lim - m)):
            t *= _edge_ratio(spec.b_params, spec.d_params, n) * _edge_ratio(spec.h_params, spec.g_params, m + n)
            t *= spec.y / (n + 1)
            acc.add(t)
    return acc.value


def eval_kdf(spec: KdFSpec, rel_tol: float = DEFAULT_REL_TOL, max_index: int = DEFAULT_MAX_INDEX) -> EvalResult:
    """Evaluate the Kampé de Fériet double series described by ``spec``.

    Inside the unit square the series is summed row by row, each row being a
    single series in ``n`` with its own recurrence. When ``|x| = 1`` or
    ``|y| = 1`` the diagonal sums ``sum_{m+n=N}`` are accumulated instead and
    extrapolated with Wynn's epsilon algorithm, after both edge series pass the
    parameter-excess test and the diagonal terms are observed to decay.

    Parameters
    ----------
    spec : KdFSpec
    rel_tol : float
    max_index : int
        Cap on the outer (row or diagonal) index, at most 4000.

    Returns
    -------
    EvalResult
    """
    _check_tol(rel_tol)
    if not 1 <= max_index <= MAX_INDEX_LIMIT:
        raise RangeError(f"max_index must be in [1, {MAX_INDEX_LIMIT}], got {max_index}")
    x, y = spec.x, spec.y
    if abs(x) > 1 + _UNIT_TOL or abs(y) > 1 + _UNIT_TOL:
        raise RangeError(f"eval_kdf needs |x| <= 1 and |y| <= 1, got x={x}, y={y}")

    m_lim, n_lim, d_lim = _double_support(spec)
    if x == 0 and y == 0:
        return EvalResult(1.0, 0.0, 1, Status.CONVERGED)
    if d_lim is not None and d_lim <= 4 * max_index:
        m_cap = d_lim if m_lim is None else min(m_lim, d_lim)
        n_cap = d_lim if n_lim is None else min(n_lim, d_lim)
        value = _finite_double(spec, m_cap, n_cap, d_lim)
        by_zero = not ((m_lim == 0 and spec.x == 0 and n_lim == 0 and spec.y == 0))
        return EvalResult(value, 0.0, d_lim + 1, Status.TERMINATED if by_zero else Status.CONVERGED)

    if _is_unit(x) or _is_unit(y):
        return _kdf_diagonal(spec, rel_tol, max_index, m_lim, n_lim)
    return _kdf_rows(spec, rel_tol, max_index, m_lim)


def _kdf_rows(spec: KdFSpec, rel_tol: float, max_index: int, m_lim: int | None) -> EvalResult:
    x, y = spec.x, spec.y
    row_nums = spec.h_params + spec.a_params
    row_dens = spec.g_params + spec.c_params
    acc = CompensatedSum()
    partials: list[float] = []
    lead = 1.0
    prev_row = None
    small = 0
    err_inner = 0.0
    terms = 0
    all_terminated = True
    last = max_index if m_lim is None else min(max_index, m_lim + 1)
    for m in range(last):
        if m > 0:
            lead *= _edge_ratio(row_nums, row_dens, m - 1) * x / m
        if lead == 0.0 and m_lim is not None and m > m_lim:
            break
        inner = _sum_series(
            tuple(h + m for h in spec.h_params) + spec.b_params,
            tuple(g + m for g in spec.g_params) + spec.d_params,
            y, rel_tol / 4, DEFAULT_MAX_TERMS, lead,
            # a row only needs to be accurate relative to the total so far;
            # the 1/(m+1)^2 weights keep the accumulated row errors below rel_tol / 4
            abs_tol=rel_tol / 8 * abs(acc.value) / (m + 1) ** 2,
        )
        terms += inner.terms_used
        if inner.status is Status.INCONCLUSIVE:
            return _inconclusive(f"row {m}: {inner.reason}", terms)
        if inner.status is not Status.TERMINATED:
            all_terminated = False
        row = inner.value
        err_inner += inner.abs_error_estimate
        acc.add(row)
        s = acc.value
        partials.append(s)
        if not math.isfinite(s):
            return _inconclusive("overflow in row sums", terms)
        if m_lim is not None and m == m_lim:
            status = Status.TERMINATED if all_terminated else Status.CONVERGED
            return EvalResult(s, 0.0 if all_terminated else err_inner, m + 1, status)
        small = small + 1 if abs(row) < rel_tol * abs(s) else 0
        if small >= 3 and prev_row:
            ratio = abs(row / prev_row)
            if ratio < 1:
                err = abs(row) * ratio / (1 - ratio) + err_inner
                if err <= rel_tol * abs(s):
                    return EvalResult(s, err, m + 1, Status.CONVERGED)
                if abs(row) * ratio / (1 - ratio) <= rel_tol * abs(s) * _EPS:
                    return _inconclusive(
                        f"rounding error {err_inner:.3g} from cancelling rows exceeds the tolerance", terms, s)
        if lead == 0.0:
            # the row factor underflowed; every later row is below the smallest double
            return EvalResult(s, err_inner, m + 1, Status.CONVERGED)
        prev_row = row
        # inside the unit disc the rows converge geometrically; extrapolating
        # early there can report an optimistic error near a branch point
        if _is_unit(x) and _checkpoint(len(partials)) and len(partials) >= 24:
            res = _try_wynn(partials, rel_tol, err_inner)
            if res is not None:
                return EvalResult(res[0], res[1], m + 1, Status.ACCELERATED)
    res = _try_wynn(partials, rel_tol, err_inner) if len(partials) >= 5 else None
    if res is not None:
        return EvalResult(res[0], res[1], last, Status.ACCELERATED)
    return _inconclusive(f"row sums did not converge within {max_index} rows", terms, acc.value)


class _Edge:
    """Coefficients ``prod(top)_k / prod(bottom)_k * z**k / k!`` kept as (mantissa, exponent)."""

    def __init__(self, top, bottom, z, limit, factorial=True):
        self.top, self.bottom, self.z, self.limit = top, bottom, z, limit
        self.factorial = factorial
        self.mant = [1.0]
        self.expo = [0]

    def extend(self, k: int) -> None:
        while len(self.mant) <= k:
            j = len(self.mant) - 1
            if self.limit is not None and j >= self.limit:
                m, e = 0.0, 0
            else:
                r = _edge_ratio(self.top, self.bottom, j) * self.z
                if self.factorial:
                    r /= j + 1
                m, e = math.frexp(self.mant[j] * r)
                e += self.expo[j]
            self.mant.append(m)
            self.expo.append(e)

    def exact(self, k: int, ctx: decimal.Context) -> list[decimal.Decimal]:
        D = decimal.Decimal
        out = [D(1)]
        cur = D(1)
        for j in range(k):
            if self.limit is not None and j >= self.limit:
                cur = D(0)
            else:
                num = ctx.multiply(D(self.z), D(1))
                for p in self.top:
                    num = ctx.multiply(num, ctx.add(D(p), D(j)))
                den = D(j + 1) if self.factorial else D(1)
                for p in self.bottom:
                    den = ctx.multiply(den, ctx.add(D(p), D(j)))
                cur = ctx.divide(ctx.multiply(cur, num), den)
            out.append(cur)
        return out


def _decay_ok(diags: Sequence[float]) -> tuple[bool, str]:
    """Empirical check that the diagonal terms decay fast enough to be summable."""
    n_total = len(diags)
    start = max(n_total // 2, 4)
    pts = [(math.log(n), math.log(abs(d)), d) for n, d in enumerate(diags) if n >= start and d != 0.0]
    if len(pts) < 6:
        return True, ""
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((u - mx) ** 2 for u in xs)
    slope = sum((u - mx) * (v - my) for u, v in zip(xs, ys)) / sxx
    one_sign = all(p[2] > 0 for p in pts) or all(p[2] < 0 for p in pts)
    if one_sign and slope > -1.02:
        return False, f"diagonal terms of one sign decay like N^{slope:.3g}"
    if slope > -0.02:
        return False, f"diagonal terms do not decay (slope {slope:.3g})"
    return True, ""


def _edge_check(spec: KdFSpec, m_lim, n_lim) -> tuple[bool, str]:
    """Both edge series (n = 0 and m = 0) must converge on their own."""
    for top, bottom, z, lim, label in (
        (spec.h_params + spec.a_params, spec.g_params + spec.c_params, spec.x, m_lim, "m"),
        (spec.h_params + spec.b_params, spec.g_params + spec.d_params, spec.y, n_lim, "n"),
    ):
        if lim is None:
            ok, why = _excess_converges(top, bottom, z)
            if not ok:
                return False, f"{label}-edge series: {why}"
    return True, ""


def kdf_precheck(spec: KdFSpec) -> tuple[bool, str]:
    """Cheap test of whether :func:`eval_kdf` can be expected to converge.

    Checks the argument range, vanishing lower parameters and, on the unit
    circle, the parameter excess of both edge series. Passing the test does
    not guarantee convergence.

    Returns
    -------
    (ok, reason)
    """
    if abs(spec.x) > 1 + _UNIT_TOL or abs(spec.y) > 1 + _UNIT_TOL:
        return False, "argument outside the unit square"
    try:
        m_lim, n_lim, _ = _double_support(spec)
    except DenominatorPoleError as exc:
        return False, str(exc)
    return _edge_check(spec, m_lim, n_lim)


def f3_precheck(a: float, a2: float, b: float, b2: float, c: float, x: float, y: float) -> tuple[bool, str]:
    """Cheap convergence test for :func:`eval_appell_f3`, see :func:`kdf_precheck`."""
    if abs(x) >= 1 - _UNIT_TOL and abs(y) < 1 - _UNIT_TOL:
        a, a2, b, b2, x, y = a2, a, b2, b, y, x
    if abs(x) >= 1 - _UNIT_TOL or not -1 - _UNIT_TOL <= y < 1:
        return False, "argument outside the supported range"
    if _termination_index((c,)) is not None:
        return False, f"lower parameter {c} is a non-positive integer"
    if _is_unit(y) and _termination_index((a2, b2)) is None:
        return _excess_converges((a2, b2), (c,), y)
    return True, ""


def _kdf_diagonal(spec: KdFSpec, rel_tol: float, max_index: int, m_lim, n_lim) -> EvalResult:
    x, y = spec.x, spec.y
    ok, why = _edge_check(spec, m_lim, n_lim)
    if not ok:
        return _inconclusive(why)

    k_h = _termination_index(spec.h_params)
    diag_lead = _Edge(spec.h_params, spec.g_params, 1.0, k_h, factorial=False)
    A = _Edge(spec.a_params, spec.c_params, x, m_lim)
    B = _Edge(spec.b_params, spec.d_params, y, n_lim)

    acc = CompensatedSum()
    partials: list[float] = []
    diags: list[float] = []
    round_err = 0.0
    small = 0
    exact_cache: dict = {}
    for N in range(max_index):
        A.extend(N)
        B.extend(N)
        diag_lead.extend(N)
        lead_m = diag_lead.mant[N]
        lead_e = diag_lead.expo[N]
        if lead_m == 0.0:
            d_val, d_abs = 0.0, 0.0
        else:
            lo = 0 if n_lim is None else max(0, N - n_lim)
            hi = N if m_lim is None else min(N, m_lim)
            exps = [A.expo[m] + B.expo[N - m] for m in range(lo, hi + 1)]
            if not exps:
                d_val, d_abs, top_e = 0.0, 0.0, 0
            else:
                top_e = max(exps)
                s = 0.0
                sa = 0.0
                for m, e in zip(range(lo, hi + 1), exps):
                    v = math.ldexp(A.mant[m] * B.mant[N - m], e - top_e)
                    s += v
                    sa += abs(v)
                scale = top_e + lead_e
                d_val = _ldexp_safe(s * lead_m, scale)
                d_abs = _ldexp_safe(sa * abs(lead_m), scale)
                if math.isinf(d_val) or math.isinf(d_abs):
                    return _inconclusive("overflow in diagonal sums", N)
                s_ref = abs(acc.value + d_val) or abs(d_val) or 1.0
                if 4 * (N + 4) * _EPS * d_abs > 1e-2 * rel_tol * s_ref and d_abs > 0:
                    d_val = _exact_diagonal(spec, A, B, N, lo, hi, d_abs, s_ref, rel_tol, exact_cache)
                    d_abs_err = 0.0
                else:
                    d_abs_err = 4 * (N + 4) * _EPS * d_abs
                round_err += d_abs_err
        acc.add(d_val)
        diags.append(d_val)
        s_cur = acc.value
        partials.append(s_cur)
        if len(partials) > 4 * _WYNN_WINDOW:
            del partials[: -_WYNN_WINDOW]

        small = small + 1 if abs(d_val) < rel_tol * abs(s_cur) else 0
        if small >= 3 and N >= 6:
            last = diags[-3:]
            geometric = all(d == 0.0 for d in last) or (
                diags[-4] != 0.0 and all(abs(diags[-k] / diags[-k - 1]) < 0.9 for k in (1, 2, 3) if diags[-k - 1] != 0)
            )
            alternating = diags[-1] * diags[-2] < 0 and diags[-2] * diags[-3] < 0
            if geometric or alternating:
                ok, why = _decay_ok(diags)
                if ok:
                    err = abs(d_val) + round_err
                    return EvalResult(s_cur, err, N + 1, Status.CONVERGED)
        if _checkpoint(N + 1) and N + 1 >= 16:
            if N + 1 >= 64:
                ok, why = _decay_ok(diags)
                if not ok:
                    return _inconclusive(why, N + 1)
            res = _try_wynn(partials, rel_tol, round_err)
            if res is not None:
                ok, why = _decay_ok(diags)
                if not ok:
                    return _inconclusive(why, N + 1)
                return EvalResult(res[0], res[1], N + 1, Status.ACCELERATED)
    ok, why = _decay_ok(diags)
    return _inconclusive(why or f"diagonal sums did not converge within {max_index} diagonals", max_index, acc.value)


def _ldexp_safe(m: float, e: int) -> float:
    try:
        return math.ldexp(m, e)
    except OverflowError:
        return math.copysign(math.inf, m)


def _exact_diagonal(spec, A, B, N, lo, hi, d_abs, s_ref, rel_tol, cache) -> float:
    """Recompute one diagonal sum in decimal arithmetic when floats would cancel."""
    digits = int(math.log10(max(d_abs / (s_ref * rel_tol), 10.0))) + 25
    ctx = decimal.Context(prec=digits, Emax=10**6, Emin=-(10**6))
    key = digits
    if key not in cache or len(cache[key][0]) <= N:
        depth = max(N + 16, 2 * N)
        cache.clear()
        lead = _Edge(spec.h_params, spec.g_params, 1.0, _termination_index(spec.h_params), factorial=False)
        cache[key] = (A.exact(depth, ctx), B.exact(depth, ctx), lead.exact(depth, ctx), ctx)
    ea, eb, el, ctx = cache[key]
    s = decimal.Decimal(0)
    for m in range(lo, hi + 1):
        s = ctx.add(s, ctx.multiply(ea[m], eb[N - m]))
    return float(ctx.multiply(s, el[N]))


# ---------------------------------------------------------------------------
# Appell F3


def eval_appell_f3(a: float, a2: float, b: float, b2: float, c: float, x: float, y: float,
                   rel_tol: float = DEFAULT_REL_TOL, max_rows: int = DEFAULT_MAX_INDEX) -> EvalResult:
    """Appell ``F3(a, a2, b, b2; c; x, y)`` as ``sum_m (a)_m (b)_m / (c)_m 2F1(a2, b2; c+m; y) x**m / m!``.

    Requires ``|x| < 1`` and ``y`` in [-1, 1). If instead ``|y| < 1 <= |x|`` the
    symmetric form with the roles of the variables exchanged is used.
    """
    _check_tol(rel_tol)
    x, y = float(x), float(y)
    if abs(x) >= 1 - _UNIT_TOL and abs(y) < 1 - _UNIT_TOL:
        a, a2, b, b2, x, y = a2, a, b2, b, y, x
    if abs(x) >= 1 - _UNIT_TOL or not -1 - _UNIT_TOL <= y < 1:
        raise RangeError(f"eval_appell_f3 needs |x| < 1 and -1 <= y < 1, got x={x}, y={y}")

    m_lim = _termination_index((a, b))
    if x == 0:
        m_lim = 0
    if _termination_index((c,)) is not None and (m_lim is None or m_lim > _termination_index((c,))):
        raise DenominatorPoleError(f"lower parameter {c} vanishes along the outer series")
    acc = CompensatedSum()
    partials: list[float] = []
    lead = 1.0
    prev_row = None
    small = 0
    err_inner = 0.0
    terms = 0
    exact = True
    last = max_rows if m_lim is None else min(max_rows, m_lim + 1)
    for m in range(last):
        if m > 0:
            lead *= (a + m - 1) * (b + m - 1) / (c + m - 1) * x / m
        # rows may cancel, so the inner sums get extra headroom
        inner = eval_2f1(a2, b2, c + m, y, rel_tol / 64)
        terms += inner.terms_used
        if inner.status is Status.INCONCLUSIVE:
            return _inconclusive(f"row {m}: {inner.reason}", terms)
        if inner.status is not Status.TERMINATED:
            exact = False
        row = lead * inner.value
        err_inner += abs(lead) * inner.abs_error_estimate
        acc.add(row)
        s = acc.value
        partials.append(s)
        if m_lim is not None and m == m_lim:
            if exact and x != 0:
                return EvalResult(s, 0.0, m + 1, Status.TERMINATED)
            return EvalResult(s, err_inner, m + 1, Status.CONVERGED)
        small = small + 1 if abs(row) < rel_tol * abs(s) else 0
        if small >= 3 and prev_row:
            ratio = abs(row / prev_row)
            if ratio < 1:
                err = abs(row) * ratio / (1 - ratio) + err_inner
                if err <= rel_tol * abs(s):
                    return EvalResult(s, err, m + 1, Status.CONVERGED)
                if abs(row) * ratio / (1 - ratio) <= rel_tol * abs(s) * _EPS:
                    return _inconclusive(
                        f"rounding error {err_inner:.3g} from cancelling rows exceeds the tolerance", terms, s)
        if lead == 0.0:
            # the row factor underflowed; every later row is below the smallest double
            return EvalResult(s, err_inner, m + 1, Status.CONVERGED)
        prev_row = row
    res = _try_wynn(partials, rel_tol, err_inner) if len(partials) >= 5 else None
    if res is not None:
        return EvalResult(res[0], res[1], last, Status.ACCELERATED)
    return _inconclusive(f"F3 rows did not converge within {max_rows} rows", terms, acc.value)
