"""Numerical verification of registered identities.

Each check evaluates the left side with the series engine and the right side
from its closed form, independently, and compares them. Sweeps draw parameters
from each identity's sampling box with a counter-based generator so that every
record depends only on ``(seed, id, i, sample index)``.
"""

from __future__ import annotations

import enum
import hashlib
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import catalog
from .catalog import IdentityInstance, SideSpec
from .errors import KdfError
from .gamma import pole_index
from .series import (
    DEFAULT_REL_TOL,
    EvalResult,
    Status,
    eval_appell_f3,
    eval_kdf,
    f3_precheck,
    kdf_precheck,
)

__all__ = [
    "Verdict",
    "VerificationRecord",
    "SweepConfig",
    "IdentitySummary",
    "SweepResult",
    "DEFAULT_TOLERANCE",
    "REL_ERR_FLOOR",
    "POLE_MARGIN",
    "MAX_REJECTIONS",
    "MISPRINT_THRESHOLD",
    "VERIFIED_THRESHOLD",
    "evaluate_side",
    "precheck",
    "verify_one",
    "sample_params",
    "summarize",
    "run_sweep",
]

DEFAULT_TOLERANCE = 1e-8
REL_ERR_FLOOR = 1e-30
POLE_MARGIN = 0.05
MAX_REJECTIONS = 20
MISPRINT_THRESHOLD = 0.5
VERIFIED_THRESHOLD = 0.95


class Verdict(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class VerificationRecord:
    """Outcome of one two-sided check.

    ``alternatives`` maps every other registered interpretation of the right
    side to its ``(rhs, rel_err, verdict)``, using the same left side.
    """

    id: str
    i: int
    params: Mapping[str, float]
    lhs: EvalResult
    rhs: EvalResult
    rel_err: float
    verdict: Verdict
    interpretation: str
    reason: str = ""
    alternatives: Mapping[str, tuple[EvalResult, float, Verdict]] = field(default_factory=dict)


def _nan_result(reason: str) -> EvalResult:
    return EvalResult(math.nan, math.inf, 0, Status.INCONCLUSIVE, reason)


def evaluate_side(side: SideSpec, rel_tol: float = DEFAULT_REL_TOL) -> EvalResult:
    """Sum a left side with the series engine."""
    if side.f3 is not None:
        f = side.f3
        return eval_appell_f3(f.a, f.a2, f.b, f.b2, f.c, f.x, f.y, rel_tol)
    return eval_kdf(side.kdf, rel_tol)


def _compare(lhs: EvalResult, rhs: EvalResult, tolerance: float) -> tuple[float, Verdict, str]:
    if not lhs.trusted:
        return math.nan, Verdict.INCONCLUSIVE, f"lhs: {lhs.reason or lhs.status}"
    if not rhs.trusted:
        return math.nan, Verdict.INCONCLUSIVE, f"rhs: {rhs.reason or rhs.status}"
    if not (math.isfinite(lhs.value) and math.isfinite(rhs.value)):
        return math.nan, Verdict.INCONCLUSIVE, "non-finite value"
    rel = abs(lhs.value - rhs.value) / max(abs(rhs.value), REL_ERR_FLOOR)
    return rel, (Verdict.PASS if rel <= tolerance else Verdict.FAIL), ""


def _safe_rhs(instance: IdentityInstance, rel_tol: float, interpretation: str) -> EvalResult:
    try:
        return catalog.rhs_value(instance, rel_tol, interpretation)
    except (KdfError, ArithmeticError, ValueError, OverflowError) as exc:
        return _nan_result(f"{type(exc).__name__}: {exc}")


def verify_one(instance: IdentityInstance, tolerance: float = DEFAULT_TOLERANCE,
               rel_tol: float = DEFAULT_REL_TOL, interpretation: str | None = None) -> VerificationRecord:
    """Check one identity instance.

    Pole and convergence problems never raise; they give an ``Inconclusive``
    verdict with a reason. Invalid instances (unknown id, missing or extra
    symbols, ``i`` out of range) still raise.

    Parameters
    ----------
    instance : IdentityInstance
    tolerance : float
        Largest relative error counted as a pass.
    rel_tol : float
        Target accuracy of each side.
    interpretation : str, optional
        Right-side reading to judge; defaults to the identity's default. All
        other readings are reported in ``alternatives``.
    """
    ident = instance.validate()
    interp = interpretation or ident.default_interpretation
    if interp not in ident.rhs:
        raise KeyError(f"{ident.id} has no interpretation {interp!r}")
    try:
        lhs = evaluate_side(catalog.lhs_spec(instance), rel_tol)
    except (KdfError, ArithmeticError, ValueError, OverflowError) as exc:
        lhs = _nan_result(f"{type(exc).__name__}: {exc}")

    results = {}
    for name in ident.interpretations:
        rhs = _safe_rhs(instance, rel_tol, name)
        rel, verdict, why = _compare(lhs, rhs, tolerance)
        results[name] = (rhs, rel, verdict, why)
    rhs, rel, verdict, why = results[interp]
    alts = {k: v[:3] for k, v in results.items() if k != interp}
    return VerificationRecord(ident.id, instance.i, dict(instance.params), lhs, rhs, rel, verdict, interp, why, alts)


# ---------------------------------------------------------------------------
# sampling


def _near_pole(z: float) -> bool:
    return z < POLE_MARGIN and abs(z - round(z)) < POLE_MARGIN


def precheck(instance: IdentityInstance) -> tuple[bool, str]:
    """Reject instances near Gamma poles or whose left side fails the convergence pre-check."""
    side = catalog.lhs_spec(instance)
    if side.f3 is not None:
        f = side.f3
        lower = [f.c]
        ok, why = f3_precheck(f.a, f.a2, f.b, f.b2, f.c, f.x, f.y)
    else:
        k = side.kdf
        lower = list(k.g_params) + list(k.c_params) + list(k.d_params)
        ok, why = kdf_precheck(k)
    if not ok:
        return False, why
    for z in lower:
        if _near_pole(z):
            return False, f"lower parameter {z:.6g} near a pole"
    ident = catalog.get_identity(instance.id)
    for name in ident.interpretations:
        for z in catalog.rhs_gamma_arguments(instance, name):
            if _near_pole(z) and pole_index(z) is None:
                return False, f"Gamma argument {z:.6g} near a pole"
    return True, ""


def _rng(seed: int, id: str, i: int, index: int) -> random.Random:
    key = f"{seed}/{id}/{i}/{index}".encode()
    return random.Random(int.from_bytes(hashlib.blake2b(key, digest_size=16).digest(), "little"))


def sample_params(id: str, i: int, index: int, seed: int) -> tuple[dict[str, float], bool, str]:
    """Draw the ``index``-th sample of ``id`` at offset ``i``.

    Returns ``(params, accepted, reason)``. After :data:`MAX_REJECTIONS`
    rejected draws the last draw is returned with ``accepted=False``.
    """
    ident = catalog.get_identity(id)
    rng = _rng(seed, id, i, index)
    why = ""
    params: dict[str, float] = {}
    for _ in range(MAX_REJECTIONS + 1):
        params = {s: rng.uniform(lo, hi) + shift * i for s, (lo, hi, shift) in sorted(ident.box.items())}
        ok, why = precheck(IdentityInstance(id, i, params))
        if ok:
            return params, True, ""
    return params, False, f"rejected {MAX_REJECTIONS + 1} draws; last: {why}"


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of a sweep.

    Attributes
    ----------
    ids : "all" or sequence of str
    i_max : int
        Theorem entries run ``i = 0 .. i_max``; reduction formulas only ``i = 0``.
    samples : int
        Samples per identity and ``i``.
    seed : int
        64-bit seed.
    tolerance : float
        Pass threshold on the relative error; at least ``10 * rel_tol``.
    rel_tol : float
        Per-side evaluation accuracy.
    """

    ids: str | tuple[str, ...] = "all"
    i_max: int = 0
    samples: int = 25
    seed: int = 0
    tolerance: float = DEFAULT_TOLERANCE
    rel_tol: float = DEFAULT_REL_TOL

    def __post_init__(self):
        if not isinstance(self.ids, str):
            object.__setattr__(self, "ids", tuple(self.ids))
        elif self.ids != "all":
            raise ValueError(f"ids must be 'all' or a list of ids, got {self.ids!r}")
        for id in self.resolved_ids():
            catalog.get_identity(id)
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= self.i_max <= catalog.I_MAX:
            raise ValueError(f"i_max must be in [0, {catalog.I_MAX}]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.rel_tol > 0 or self.tolerance < 10 * self.rel_tol:
            raise ValueError("tolerance must be at least 10 * rel_tol")

    def resolved_ids(self) -> tuple[str, ...]:
        return catalog.identity_ids() if self.ids == "all" else self.ids

    def jobs(self) -> list[tuple[str, int, int]]:
        out = []
        for id in self.resolved_ids():
            i_top = self.i_max if catalog.get_identity(id).is_theorem else 0
            for i in range(i_top + 1):
                for k in range(self.samples):
                    out.append((id, i, k))
        return out

    def to_dict(self) -> dict:
        return {
            "ids": "all" if self.ids == "all" else list(self.ids),
            "i_max": self.i_max,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "rel_tol": self.rel_tol,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "SweepConfig":
        known = {"ids", "i_max", "samples", "seed", "tolerance", "rel_tol"}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {', '.join(sorted(extra))}")
        kw = dict(d)
        if "ids" in kw and not isinstance(kw["ids"], str):
            kw["ids"] = tuple(kw["ids"])
        return cls(**kw)


@dataclass
class IdentitySummary:
    """Verdict counts of one identity, overall and per right-side interpretation."""

    id: str
    interpretation: str
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    by_interpretation: dict[str, list[int]] = field(default_factory=dict)

    @property
    def conclusive(self) -> int:
        return self.passed + self.failed

    @property
    def pass_rate(self) -> float | None:
        return self.passed / self.conclusive if self.conclusive else None

    @property
    def verified(self) -> bool:
        return self.conclusive > 0 and self.pass_rate >= VERIFIED_THRESHOLD

    @property
    def suspected_misprint(self) -> bool:
        return self.conclusive > 0 and self.failed > MISPRINT_THRESHOLD * self.conclusive

    def passing_interpretations(self) -> list[str]:
        out = []
        for name, (p, f, _) in self.by_interpretation.items():
            if p + f and p / (p + f) >= VERIFIED_THRESHOLD:
                out.append(name)
        return out


@dataclass
class SweepResult:
    config: SweepConfig
    records: list[VerificationRecord]
    summary: list[IdentitySummary]


def _run_job(job: tuple[str, int, int], config: SweepConfig) -> VerificationRecord:
    id, i, k = job
    params, ok, why = sample_params(id, i, k, config.seed)
    inst = IdentityInstance(id, i, params)
    if not ok:
        ident = catalog.get_identity(id)
        bad = _nan_result(why)
        alts = {n: (bad, math.nan, Verdict.INCONCLUSIVE) for n in ident.interpretations
                if n != ident.default_interpretation}
        return VerificationRecord(id, i, dict(inst.params), bad, bad, math.nan, Verdict.INCONCLUSIVE,
                                  ident.default_interpretation, why, alts)
    return verify_one(inst, config.tolerance, config.rel_tol)


def _run_chunk(args: tuple[list[tuple[str, int, int]], SweepConfig]) -> list[VerificationRecord]:
    jobs, config = args
    return [_run_job(j, config) for j in jobs]


def summarize(records: Iterable[VerificationRecord], ids: Sequence[str]) -> list[IdentitySummary]:
    """Per-identity verdict counts in the order of ``ids``."""
    rows: dict[str, IdentitySummary] = {}
    for id in ids:
        ident = catalog.get_identity(id)
        rows[id] = IdentitySummary(id, ident.default_interpretation,
                                   by_interpretation={n: [0, 0, 0] for n in ident.interpretations})
    slot = {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.INCONCLUSIVE: 2}
    for r in records:
        row = rows[r.id]
        if r.verdict is Verdict.PASS:
            row.passed += 1
        elif r.verdict is Verdict.FAIL:
            row.failed += 1
        else:
            row.inconclusive += 1
        row.by_interpretation[r.interpretation][slot[r.verdict]] += 1
        for name, (_, _, v) in r.alternatives.items():
            row.by_interpretation[name][slot[v]] += 1
    return list(rows.values())


def _threads() -> int:
    raw = os.environ.get("KDFKIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_sweep(config: SweepConfig, workers: int | None = None) -> SweepResult:
    """Verify every job of ``config``.

    Records come back in (id, i, sample index) order whatever the degree of
    parallelism. The number of worker processes is ``workers`` or, if unset,
    the ``KDFKIT_THREADS`` environment variable (default 1).
    """
    jobs = config.jobs()
    n = workers if workers is not None else _threads()
    if n <= 1 or len(jobs) < 2:
        records = [_run_job(j, config) for j in jobs]
    else:
        size = max(1, len(jobs) // (4 * n))
        chunks = [(jobs[s:s + size], config) for s in range(0, len(jobs), size)]
        records = []
        with ProcessPoolExecutor(max_workers=n) as pool:
            for part in pool.map(_run_chunk, chunks):
                records.extend(part)
    return SweepResult(config, records, summarize(records, config.resolved_ids()))
