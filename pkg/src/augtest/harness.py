"""Experiment harness: budget sweeps, prediction-quality sweeps, and the
best-empirical-threshold separation error.

For each (budget, algorithm, case) cell the harness runs `trials` seeded
repetitions, feeding exactly `budget` samples per side to the statistic
stage (flattening preparation samples are extra and reported in their own
column).  Raw statistic values are recorded rather than verdicts: the
separation error of an algorithm at a budget is the fraction of pooled
statistic observations misclassified by the best single threshold
distinguishing the p = q case from the far case.  Augmented runs whose
flattened p-side l2 estimate exceeds the inaccuracy gate are excluded from
the histograms and counted in an `inaccurate_rate` column instead.

Per-trial seeds are derived as seed XOR splitmix64(budget * 10^6 +
trial * 4 + case_id * 2 + alg_id), so every row's randomness is a pure
function of its key and output is reproducible byte for byte.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .dist import Distribution, load_dist, tv_distance
from .errors import ConfigError, EmptyInput
from .flatten import build_augmented_flattening, flatten_counts
from .instances import hard_closeness_instance, interpolated_predictor, perturb_heavy
from .l2 import collision_count
from .oracles import DistOracle
from .rng import Rng
from .testers import Verdict, crs15_test, t_statistic

ALG_IDS = {"augmented": 0, "standard": 1, "crs15": 2}
CASE_IDS = {"same": 0, "far": 1}

TRIALS_HEADER = "budget,trial,case,algorithm,statistic,verdict,prep_samples"
SUMMARY_HEADER = "budget,algorithm,threshold,error,inaccurate_rate"
BETA_SUMMARY_HEADER = "beta,tv,budget,algorithm,threshold,error,inaccurate_rate"


@dataclass
class SweepConfig:
    """Configuration for run_sweep / beta_sweep."""

    instance: dict
    budgets: list[int]
    eps: float
    alpha: float
    seed: int
    trials: int = 100
    betas: list[float] = field(default_factory=lambda: [0.0])
    algorithms: list[str] = field(default_factory=lambda: ["augmented", "standard", "crs15"])
    kind: str = "budget"  # "budget" or "beta"

    def __post_init__(self):
        if not self.budgets or any(b <= 0 for b in self.budgets):
            raise ConfigError("budgets must be positive")
        if sorted(self.budgets) != list(self.budgets):
            raise ConfigError("budgets must be ascending")
        if self.trials < 2:
            raise ConfigError("trials must be >= 2")
        unknown = set(self.algorithms) - set(ALG_IDS)
        if unknown:
            raise ConfigError(f"unknown algorithms: {sorted(unknown)}")
        if self.kind not in ("budget", "beta"):
            raise ConfigError(f"kind must be 'budget' or 'beta', got {self.kind!r}")
        if self.kind == "beta" and not self.betas:
            raise ConfigError("beta sweep needs a non-empty betas list")

    @classmethod
    def from_json(cls, path) -> "SweepConfig":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"bad config JSON: {exc}") from exc
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**raw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class TrialRecord:
    budget: int
    trial: int
    case: str  # "same" or "far"
    algorithm: str
    statistic: float
    verdict: str
    prep_samples: int


def separation_error(z_same, z_far) -> tuple[float, float]:
    """Best single-threshold classifier over the pooled statistic values.

    Scans every midpoint of the sorted union (plus +/- infinity) in both
    orientations and returns (threshold, misclassified fraction); ties go
    to the smallest threshold.  With orientation flipping available the
    error never exceeds the trivial 0.5.
    """
    z_same = np.asarray(z_same, dtype=np.float64)
    z_far = np.asarray(z_far, dtype=np.float64)
    if z_same.size == 0 or z_far.size == 0:
        raise EmptyInput("both statistic vectors must be non-empty")
    pooled = np.unique(np.concatenate([z_same, z_far]))
    mids = (pooled[:-1] + pooled[1:]) / 2.0 if pooled.size > 1 else np.empty(0)
    candidates = np.concatenate([[-np.inf], mids, [np.inf]])
    total = z_same.size + z_far.size

    best_err = math.inf
    best_theta = math.inf
    for theta in candidates:
        same_below = int((z_same <= theta).sum())
        far_below = int((z_far <= theta).sum())
        # orientation A: same-case below the threshold, far-case above
        err_a = (z_same.size - same_below) + far_below
        # orientation B: flipped
        err_b = same_below + (z_far.size - far_below)
        err = min(err_a, err_b)
        if err < best_err:
            best_err = err
            best_theta = float(theta)
    return best_theta, best_err / total


def resolve_instance(instance: dict) -> tuple[Distribution, Distribution, Distribution, np.ndarray]:
    """Materialize (p, q, phat, heavy-index vector) from an instance spec.

    The description is either {"name": "hard-closeness", "n": ...} or a map of
    .dist file paths {"p": ..., "q": ..., "phat"?: ...}.  Heavy indices
    (used by the point-wise baseline's degraded hint) are the shared heavy
    block for the named instance, or the top-n^(2/3) elements of q by mass
    for file-based instances.
    """
    if "name" in instance:
        if instance["name"] != "hard-closeness":
            raise ConfigError(f"unknown instance name {instance['name']!r}")
        pair = hard_closeness_instance(int(instance["n"]))
        heavy = np.arange(1, int(pair.metadata["m"]) + 1, dtype=np.int64)
        return pair.p, pair.q, pair.phat, heavy
    if "p" not in instance or "q" not in instance:
        raise ConfigError("instance spec needs either a name or p/q file paths")
    p = load_dist(instance["p"])
    q = load_dist(instance["q"])
    phat = load_dist(instance["phat"]) if "phat" in instance else p
    k = max(1, int(round(q.n ** (2.0 / 3.0))))
    heavy = np.argsort(-q.probs, kind="stable")[:k].astype(np.int64) + 1
    return p, q, phat, heavy


def _flattening_prep_size(n: int, alpha: float, eps: float, budget: int) -> tuple[float, int]:
    a = max(alpha, 1.0 / n)
    s_f = min(n ** (2.0 / 3.0) * a ** (1.0 / 3.0) / eps ** (4.0 / 3.0), float(n))
    return s_f, int(min(budget / 2.0, s_f))


def _run_trial(
    algorithm: str,
    first: Distribution,
    second: Distribution,
    phat: Distribution,
    qhat: Distribution,
    budget: int,
    eps: float,
    alpha: float,
    rng: Rng,
) -> tuple[float, str, int]:
    """One (algorithm, case, trial) cell: (statistic, verdict, prep_samples)."""
    n = first.n
    src_first, src_second = DistOracle(first), DistOracle(second)
    if algorithm == "standard":
        x = src_first.draw_counts(rng, budget)
        y = src_second.draw_counts(rng, budget)
        return t_statistic(x, y), "", 0

    if algorithm == "augmented":
        s_f, prep = _flattening_prep_size(n, alpha, eps, budget)
        freqs = src_first.draw_counts(rng, prep)
        f = build_augmented_flattening(phat, freqs, 1.0 / n)
        x = flatten_counts(f, src_first.draw_counts(rng, budget), rng)
        y = flatten_counts(f, src_second.draw_counts(rng, budget), rng)
        stat = t_statistic(x, y)
        # the theoretical inaccuracy gate, evaluated on the p-side batch itself
        a = max(alpha, 1.0 / n)
        l2_hat = collision_count(x) / (budget * (budget - 1) / 2.0)
        gate = 30.0 * (2.0 * a / s_f + 4.0 / n)
        verdict = "inaccurate" if l2_hat > gate else ""
        return stat, verdict, prep

    if algorithm == "crs15":
        x = src_first.draw_counts(rng, budget)
        y = src_second.draw_counts(rng, budget)
        verdict = crs15_test(phat, qhat, x, y, eps)
        stat = 1.0 if verdict is Verdict.ACCEPT else 0.0
        return stat, verdict.value, 0

    raise ConfigError(f"unknown algorithm {algorithm!r}")


def _sweep_cells(
    cfg: SweepConfig,
    p: Distribution,
    q: Distribution,
    phat: Distribution,
    heavy: np.ndarray,
    budget: int,
) -> tuple[list[TrialRecord], list[tuple]]:
    """All records plus summary rows for one budget across algorithms."""
    cases = {"same": (p, p), "far": (p, q)}
    qhats = {case: perturb_heavy(pair[1], heavy) for case, pair in cases.items()}
    records: list[TrialRecord] = []
    summaries: list[tuple] = []
    for algorithm in cfg.algorithms:
        stats: dict[str, list[float]] = {"same": [], "far": []}
        inaccurate = 0
        for case, (first, second) in cases.items():
            for trial in range(cfg.trials):
                stream = budget * 10**6 + trial * 4 + CASE_IDS[case] * 2 + ALG_IDS[algorithm]
                rng = Rng(cfg.seed).child(stream)
                stat, verdict, prep = _run_trial(
                    algorithm, first, second, phat, qhats[case], budget, cfg.eps, cfg.alpha, rng
                )
                records.append(TrialRecord(budget, trial, case, algorithm, stat, verdict, prep))
                if verdict == "inaccurate":
                    inaccurate += 1
                else:
                    stats[case].append(stat)
        if stats["same"] and stats["far"]:
            threshold, error = separation_error(stats["same"], stats["far"])
        else:
            threshold, error = math.inf, 0.5
        summaries.append(
            (budget, algorithm, threshold, error, inaccurate / (2 * cfg.trials))
        )
    return records, summaries


def run_sweep(cfg: SweepConfig) -> tuple[list[TrialRecord], list[tuple]]:
    """Budget sweep: rows per (budget, algorithm) with separation error."""
    p, q, phat, heavy = resolve_instance(cfg.instance)
    if "name" in cfg.instance and cfg.betas:
        phat = interpolated_predictor(p, cfg.betas[0])
    records: list[TrialRecord] = []
    summaries: list[tuple] = []
    for budget in cfg.budgets:
        recs, rows = _sweep_cells(cfg, p, q, phat, heavy, budget)
        records.extend(recs)
        summaries.extend(rows)
    return records, summaries


def beta_sweep(cfg: SweepConfig) -> tuple[list[TrialRecord], list[tuple]]:
    """Prediction-quality sweep at a fixed budget, keyed by tv(p, phat)."""
    p, q, _, heavy = resolve_instance(cfg.instance)
    budget = cfg.budgets[0]
    records: list[TrialRecord] = []
    rows: list[tuple] = []
    for beta in cfg.betas:
        phat = interpolated_predictor(p, beta)
        tv = tv_distance(p, phat)
        recs, summaries = _sweep_cells(cfg, p, q, phat, heavy, budget)
        records.extend(recs)
        for (b, algorithm, threshold, error, inacc) in summaries:
            rows.append((beta, tv, b, algorithm, threshold, error, inacc))
    return records, rows


# --- CSV output (RFC 4180, header row, deterministic formatting) ------------


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def write_trials_csv(records: list[TrialRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(TRIALS_HEADER + "\r\n")
        for r in records:
            fields = (r.budget, r.trial, r.case, r.algorithm, r.statistic, r.verdict, r.prep_samples)
            fh.write(",".join(_fmt(v) for v in fields) + "\r\n")


def write_summary_csv(rows: list[tuple], path, header: str = SUMMARY_HEADER) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(header + "\r\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\r\n")
