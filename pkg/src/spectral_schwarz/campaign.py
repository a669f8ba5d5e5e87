"""Seeded Monte-Carlo campaigns over both bounds and their special cases.

Trial ``i`` of a campaign draws all of its randomness from the substream
``SeedSequence(seed, spawn_key=(i,))``, so a single trial can be replayed
from ``(seed, i)`` alone and reports do not depend on how trials are
scheduled across workers.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial

import numpy as np

from .bounds import (
    TOL_CHECK,
    ZERO_TOL,
    SlackReport,
    check_theorem1,
    check_theorem2,
    globevnik_check,
    pullback_to_origin,
    ransford_white_check,
)
from .errors import GeneratorViolationError, IllConditionedStructureError, InvalidInputError, NumericalFailureError
from .extremal import disc_sharpness, example_Fd, extremal_self_map, naive_bound_counterexample, sample_Sn
from .hyperbolic import pseudo_hyperbolic
from .linalg import scale_of, spectral_radii, spectral_radius
from .maps import DiscMap, eval_self_map, sample_disc_map, sample_omega, sample_self_map

THEOREMS = ("thm1", "thm2", "globevnik", "ransford-white", "subharmonic", "sharpness", "counterexample")
TOL_QUAD = 1e-6
SAMPLES_PER_CIRCLE = 720


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def random_disc_point(rng, radius: float = 0.999) -> complex:
    return complex(radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


# ---------------------------------------------------------------------------
# Sub-mean-value check


def subharmonicity_check(
    F: DiscMap,
    zeta0: complex,
    radii,
    samples_per_circle: int = SAMPLES_PER_CIRCLE,
    tol_quad: float = TOL_QUAD,
) -> list[SlackReport]:
    """Circle averages of ``r(F(.))`` against the centre value.

    For each radius the report has ``lhs = r(F(zeta0))`` and ``rhs`` the
    trapezoid-rule mean over ``samples_per_circle`` equally spaced points, so
    ``slack = average - centre``.
    """
    if samples_per_circle < 1:
        raise InvalidInputError("samples_per_circle must be positive")
    center = spectral_radius(F(zeta0))
    angles = np.exp(2j * np.pi * np.arange(samples_per_circle) / samples_per_circle)
    reports = []
    for rho in radii:
        if not rho > 0 or abs(zeta0) + rho >= 1:
            raise InvalidInputError(f"circle of radius {rho} about {zeta0} is not inside the disc")
        vals = spectral_radii(F.evaluate_many(zeta0 + rho * angles))
        # averaging deviations keeps a constant map at exactly zero slack
        avg = center + float(np.mean(vals - center))
        ctx = {"zeta0": [complex(zeta0).real, complex(zeta0).imag], "radius": float(rho), "samples": samples_per_circle}
        reports.append(SlackReport(center, avg, ctx, tol_quad))
    return reports


# ---------------------------------------------------------------------------
# Configuration and reports


@dataclass(frozen=True)
class CampaignConfig:
    theorem: str
    n: tuple = (2, 3, 4)
    trials: int = 100
    degree: int = 3
    depth: int = 3
    seed: int = 0
    tol: float | None = None
    pairs: int = 5
    samples_per_circle: int = SAMPLES_PER_CIRCLE
    per_trial: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise InvalidInputError(f"unknown campaign {self.theorem!r}; choose from {THEOREMS}")
        n = (self.n,) if isinstance(self.n, int) else tuple(int(k) for k in self.n)
        object.__setattr__(self, "n", n)
        if not n or min(n) < 2:
            raise InvalidInputError("matrix sizes must be at least 2")
        if self.trials < 0 or self.pairs < 1 or self.degree < 0 or self.depth < 1:
            raise InvalidInputError("trials >= 0, pairs >= 1, degree >= 0 and depth >= 1 are required")
        if not 0 <= self.seed < 2**64:
            raise InvalidInputError("seed must be an unsigned 64-bit integer")

    @property
    def tolerance(self) -> float:
        if self.tol is not None:
            return self.tol
        return TOL_QUAD if self.theorem == "subharmonic" else TOL_CHECK

    def to_dict(self) -> dict:
        out = asdict(self)
        out["n"] = list(self.n)
        out["tol"] = self.tolerance
        del out["jobs"]
        return out


@dataclass
class TrialResult:
    trial: int
    report: SlackReport | None = None
    violation: bool = False
    generator_failure: bool = False
    flagged: int = 0
    note: str | None = None


@dataclass
class CampaignReport:
    config: CampaignConfig
    results: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def reports(self) -> list[SlackReport]:
        return [r.report for r in self.results if r.report is not None]

    @property
    def min_slack(self) -> float | None:
        slacks = [r.slack for r in self.reports]
        return min(slacks) if slacks else None

    @property
    def violations(self) -> list[TrialResult]:
        return [r for r in self.results if r.violation]

    @property
    def generator_failures(self) -> int:
        return sum(r.generator_failure for r in self.results)

    @property
    def flagged(self) -> int:
        return sum(r.flagged for r in self.results)

    def exit_code(self) -> int:
        if self.violations:
            return 1
        if self.generator_failures:
            return 2
        return 0

    def to_dict(self, wall_time: bool = True) -> dict:
        out = {
            "config": self.config.to_dict(),
            "trials": len(self.results),
            "min_slack": self.min_slack,
            "violations": [
                {"trial": v.trial, "slack": v.report.slack if v.report else None, "context": v.report.context if v.report else {"note": v.note}}
                for v in self.violations
            ],
            "generator_failures": self.generator_failures,
            "flagged": self.flagged,
        }
        if self.config.per_trial:
            out["per_trial"] = [
                {"trial": r.trial, **(r.report.to_dict() if r.report else {}), "note": r.note} for r in self.results
            ]
        if wall_time:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, wall_time: bool = True) -> str:
        return json.dumps(self.to_dict(wall_time), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "lhs", "rhs", "slack", "pass"])
        for r in self.results:
            if r.report is None:
                w.writerow([r.trial, "", "", "", ""])
            else:
                rep = r.report
                w.writerow([r.trial, repr(rep.lhs), repr(rep.rhs), repr(rep.slack), str(rep.passed).lower()])
        return buf.getvalue()

    def summary(self) -> str:
        ms = "n/a" if self.min_slack is None else f"{self.min_slack:.3e}"
        return (
            f"{self.config.theorem}: trials={len(self.results)} min_slack={ms} "
            f"violations={len(self.violations)} generator_failures={self.generator_failures} "
            f"flagged={self.flagged} time={self.wall_time:.2f}s"
        )


# ---------------------------------------------------------------------------
# Trials


def _worst(reports):
    return min(reports, key=lambda r: r.slack) if reports else None


def _collect(trial: int, run_one, count: int, with_context=None) -> TrialResult:
    reports, flagged = [], 0
    for k in range(count):
        try:
            rep = run_one(k)
        except IllConditionedStructureError:
            flagged += 1
            continue
        except GeneratorViolationError as exc:
            return TrialResult(trial, generator_failure=True, flagged=flagged, note=str(exc))
        if with_context:
            rep.context.update(with_context)
        reports.append(rep)
    worst = _worst(reports)
    return TrialResult(trial, worst, violation=worst is not None and not worst.passed, flagged=flagged)


def _pick_n(config, rng) -> int:
    return int(config.n[rng.integers(len(config.n))])


def _point_pair(rng):
    z1 = random_disc_point(rng)
    if rng.uniform() < 0.3:
        # nearby pairs probe the regime where the right-hand side is small
        z2 = z1 + 10 ** rng.uniform(-6, -1) * np.exp(2j * np.pi * rng.uniform())
        if abs(z2) >= 1:
            z2 = z1 * 0.99
    else:
        z2 = random_disc_point(rng)
    return z1, complex(z2)


def _trial_thm1(config: CampaignConfig, trial: int) -> TrialResult:
    rng = trial_rng(config.seed, trial)
    n = _pick_n(config, rng)
    K = int(rng.integers(0, config.degree + 1))
    F = sample_disc_map(n, K, rng_seed=rng)
    pairs = [_point_pair(rng) for _ in range(config.pairs)]
    return _collect(trial, lambda k: check_theorem1(F, *pairs[k], config.tolerance), config.pairs, {"n": n, "degree": K, "seed": config.seed, "trial": trial})


def _trial_globevnik(config, trial):
    rng = trial_rng(config.seed, trial)
    n = _pick_n(config, rng)
    K = int(rng.integers(1, max(config.degree, 1) + 1))
    z1 = random_disc_point(rng, 0.95)
    F = sample_disc_map(n, K, rng_seed=rng, vanish_at=z1)
    z2s = [random_disc_point(rng) for _ in range(config.pairs)]
    return _collect(trial, lambda k: globevnik_check(F, z1, z2s[k], config.tolerance), config.pairs, {"n": n, "degree": K, "seed": config.seed, "trial": trial})


def _trial_thm2(config, trial):
    rng = trial_rng(config.seed, trial)
    n = _pick_n(config, rng)
    depth = int(rng.integers(1, config.depth + 1))
    G = sample_self_map(n, depth, rng)
    Xs = [sample_omega(n, rng) for _ in range(config.pairs)]
    return _collect(trial, lambda k: check_theorem2(G, Xs[k], config.tolerance), config.pairs, {"n": n, "depth": depth, "seed": config.seed, "trial": trial})


def _trial_ransford_white(config, trial):
    rng = trial_rng(config.seed, trial)
    n = _pick_n(config, rng)
    depth = int(rng.integers(1, config.depth + 1))
    G = sample_self_map(n, depth, rng)
    Xs = [sample_omega(n, rng) for _ in range(config.pairs)]
    try:
        H = pullback_to_origin(G, n)
        H0 = eval_self_map(H, np.zeros((n, n), dtype=np.complex128))
    except IllConditionedStructureError:
        return TrialResult(trial, flagged=1, note="G(0) has ambiguous Jordan structure")
    except GeneratorViolationError as exc:
        return TrialResult(trial, generator_failure=True, note=str(exc))
    if scale_of(H0) > ZERO_TOL:
        # the Blaschke factors of G(0) are too ill-conditioned to annihilate it cleanly
        return TrialResult(trial, flagged=1, note=f"||H(0)||_F = {scale_of(H0):.3e}")
    return _collect(trial, lambda k: ransford_white_check(H, Xs[k], config.tolerance), config.pairs, {"n": n, "depth": depth, "seed": config.seed, "trial": trial})


def _trial_subharmonic(config, trial):
    rng = trial_rng(config.seed, trial)
    n = _pick_n(config, rng)
    K = int(rng.integers(0, config.degree + 1))
    F = sample_disc_map(n, K, rng_seed=rng)
    z0 = random_disc_point(rng, 0.8)
    room = 1 - abs(z0)
    radii = [f * room for f in (0.3, 0.6, 0.95)]
    reports = subharmonicity_check(F, z0, radii, config.samples_per_circle, config.tolerance)
    for r in reports:
        r.context.update(n=n, degree=K, seed=config.seed, trial=trial)
    worst = _worst(reports)
    return TrialResult(trial, worst, violation=not worst.passed)


def _trial_sharpness(config, trial):
    rng = trial_rng(config.seed, trial)
    n = _pick_n(config, rng)
    d = int(rng.integers(1, n + 1))
    tol = config.tolerance
    try:
        if trial % 2 == 0:
            z = random_disc_point(rng, 0.95)
            w = random_disc_point(rng, 0.95)
            s = disc_sharpness(z, w, n, d, tol)
            rep = s.report
            bad = abs(rep.slack) > tol or (s.distinct_roots and s.backward_error > tol)
            rep.context.update(kind="disc", n=n, d=d, backward_error=s.backward_error, distinct_roots=s.distinct_roots)
        else:
            A = sample_Sn(n, rng)
            rep = check_theorem2(extremal_self_map(n, d), A.matrix, tol)
            bad = abs(rep.slack) > tol or rep.context["dG"] != d
            rep.context.update(kind="self_map", n=n, d=d)
    except IllConditionedStructureError:
        return TrialResult(trial, flagged=1)
    except GeneratorViolationError as exc:
        return TrialResult(trial, generator_failure=True, note=str(exc))
    rep.context.update(seed=config.seed, trial=trial, equality=True)
    return TrialResult(trial, rep, violation=bool(bad))


def _trial_counterexample(config, trial):
    rng = trial_rng(config.seed, trial)
    n = _pick_n(config, rng)
    t = float(rng.uniform(0.001, 0.99))
    _, _, naive, thm2 = naive_bound_counterexample(n, t)
    thm2.context.update(n=n, t=t, naive_slack=naive.slack, seed=config.seed, trial=trial)
    bad = abs(thm2.slack) > config.tolerance or naive.slack >= 0
    return TrialResult(trial, thm2, violation=bool(bad))


TRIALS = {
    "thm1": _trial_thm1,
    "thm2": _trial_thm2,
    "globevnik": _trial_globevnik,
    "ransford-white": _trial_ransford_white,
    "subharmonic": _trial_subharmonic,
    "sharpness": _trial_sharpness,
    "counterexample": _trial_counterexample,
}


def run_trial(config: CampaignConfig, trial: int) -> TrialResult:
    """Run one trial; replaying ``(config, trial)`` reproduces it exactly."""
    try:
        return TRIALS[config.theorem](config, trial)
    except NumericalFailureError as exc:
        return TrialResult(trial, flagged=1, note=f"numerical failure: {exc}")


def run_campaign(config: CampaignConfig) -> CampaignReport:
    """Execute every trial of ``config`` and aggregate in trial order."""
    start = time.perf_counter()
    work = partial(run_trial, config)
    if config.jobs > 1 and config.trials > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            results = list(pool.map(work, range(config.trials), chunksize=max(1, config.trials // (4 * config.jobs))))
    else:
        results = [work(i) for i in range(config.trials)]
    return CampaignReport(config, results, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Example reproduction


def example_grid() -> list[complex]:
    """The origin plus 4 radii x 5 angles: 21 points in the disc."""
    pts = [0j]
    for rho in (0.1, 0.35, 0.6, 0.9):
        for k in range(5):
            pts.append(complex(rho * np.exp(1j * (2 * np.pi * k / 5 + 0.3))))
    return pts


def example_table(sizes=(3, 4, 5), grid=None) -> list[dict]:
    """Spectral radius of the nilpotent-origin example maps over a grid.

    Each row carries the radius error against ``|zeta|^(1/d)`` and the
    smallest margin ``r^q - |zeta|`` over exponents ``q < d``, which is
    positive for ``zeta != 0``.
    """
    grid = example_grid() if grid is None else grid
    rows = []
    for n in sizes:
        for d in range(2, n):
            for zeta in grid:
                r = spectral_radius(example_Fd(n, d, zeta))
                expected = abs(zeta) ** (1.0 / d)
                rho = pseudo_hyperbolic(0, zeta)
                margin = min(r**q - rho for q in range(1, d)) if zeta != 0 else None
                rows.append({
                    "n": n,
                    "d": d,
                    "zeta_re": zeta.real,
                    "zeta_im": zeta.imag,
                    "radius": r,
                    "expected": expected,
                    "error": abs(r - expected),
                    "power_d_minus_M": r**d - rho,
                    "min_margin_q_lt_d": margin,
                })
    return rows


def example_table_ok(rows, radius_tol: float = 1e-10, margin_floor: float = 1e-12) -> bool:
    for row in rows:
        if row["error"] > radius_tol:
            return False
        m = row["min_margin_q_lt_d"]
        if m is not None and (m <= 0 or (abs(complex(row["zeta_re"], row["zeta_im"])) >= 0.1 and m < margin_floor)):
            return False
    return True
