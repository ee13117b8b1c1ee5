"""Accuracy-level search: doubling sample budgets until a conclusive verdict.

The wrapper does not know how accurate the prediction is.  Round i grants a
budget of 2^i * s_min samples, inverts the tester's sample-complexity
function to find the largest accuracy level alpha_i affordable under that
budget, and invokes the augmented tester with it.  Accept/Reject verdicts
are echoed immediately; after t inconclusive rounds the standard tester
decides, so the wrapper itself never answers "inaccurate".  If alpha* is
the true accuracy level, the expected total sample count is at most
6 f(alpha*) for per-round confidence below 1/2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import BudgetTooSmall
from .rng import Rng
from .testers import TestReport, Verdict

_MONOTONE_GRID = 17  # spot-check points for the non-decreasing invariant


@dataclass(frozen=True)
class SampleComplexityFn:
    """Sample budget f(alpha, delta), non-decreasing in alpha.

    Monotonicity is spot-checked on a grid at construction.
    """

    eval: Callable[[float, float], int]
    monotone: bool = field(default=True)

    def __post_init__(self):
        if self.monotone:
            values = [self.eval(k / (_MONOTONE_GRID - 1), 1 / 3) for k in range(_MONOTONE_GRID)]
            if any(a > b for a, b in zip(values, values[1:])):
                raise ValueError("sample-complexity function is not non-decreasing in alpha")


@dataclass(frozen=True)
class SearchReport:
    verdict: Verdict  # accept or reject, never inaccurate
    rounds: int
    alphas: list[float]
    total_samples: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "verdict": self.verdict.value,
                "rounds": self.rounds,
                "alphas": self.alphas,
                "total_samples": self.total_samples,
            }
        )


def inverse_budget(f: SampleComplexityFn, budget: int, delta: float) -> float:
    """Largest alpha in [0, 1] with f(alpha, delta) <= budget.

    Bisection to absolute precision 1e-6, returning the feasible (lower)
    endpoint so the budget constraint is never violated.
    """
    if f.eval(0.0, delta) > budget:
        raise BudgetTooSmall(f"budget {budget} below f(0) = {f.eval(0.0, delta)}")
    if f.eval(1.0, delta) <= budget:
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-6:
        mid = (lo + hi) / 2.0
        if f.eval(mid, delta) <= budget:
            lo = mid
        else:
            hi = mid
    return lo


def search_test(
    tester: Callable[[float, float, Rng], TestReport],
    f: SampleComplexityFn,
    standard: Callable[[float, Rng], TestReport],
    delta_prime: float,
    rng: Rng,
) -> SearchReport:
    """Run the doubling-budget search around an augmented tester.

    tester(alpha, delta, rng) may answer accept/reject/inaccurate; the
    standard fallback answers accept/reject.  Per-round confidence is
    delta_prime / (t + 1) so a union bound over all t + 1 invocations
    gives overall confidence delta_prime.
    """
    if not 0.0 < delta_prime < 0.5:
        raise ValueError("delta_prime must be in (0, 1/2)")
    s_min = f.eval(0.0, 1 / 3)
    s_max = f.eval(1.0, 1 / 3)
    t = math.ceil(math.log2(s_max / s_min)) if s_max > s_min else 0
    delta = delta_prime / (t + 1)

    alphas: list[float] = []
    total = 0
    for i in range(t):
        try:
            alpha_i = inverse_budget(f, (2**i) * s_min, delta)
        except BudgetTooSmall:
            # the delta-adjusted budget cannot fund any alpha yet; keep doubling
            continue
        alphas.append(alpha_i)
        report = tester(alpha_i, delta, rng)
        total += report.samples_used
        if report.verdict in (Verdict.ACCEPT, Verdict.REJECT):
            return SearchReport(report.verdict, i + 1, alphas, total)
    report = standard(delta, rng)
    total += report.samples_used
    return SearchReport(report.verdict, t + 1, alphas, total)
