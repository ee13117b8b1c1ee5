"""Prediction-augmented hypothesis testing for discrete distributions."""

from .dist import (
    Distribution,
    IndexSet,
    SampleBatch,
    draw,
    empirical,
    load_dist,
    make_distribution,
    mass,
    mix,
    poisson_count,
    save_dist,
    scheffe_set,
    singleton,
    tv_distance,
    uniform,
)
from .flatten import (
    Flattening,
    build_augmented_flattening,
    build_multiplicative_flattening,
    flatten_counts,
    flatten_distribution,
    flatten_sample,
    l2sq_exact,
    load_flattening,
    save_flattening,
)
from .harness import SweepConfig, TrialRecord, beta_sweep, run_sweep, separation_error
from .instances import (
    ClosenessLbPair,
    InstancePair,
    UniformityTriple,
    closeness_lb_instance,
    hard_closeness_instance,
    interpolated_predictor,
    perturb_heavy,
    uniformity_lb_triple,
)
from .l2 import L2Estimate, collision_count, estimate_l2sq
from .oracles import DistOracle, FlattenedOracle, as_oracle, flatten_oracle
from .rng import Rng, splitmix64
from .search import SampleComplexityFn, SearchReport, inverse_budget, search_test
from .testers import (
    TestReport,
    Verdict,
    augmented_closeness_test,
    augmented_identity_test,
    closeness_sample_budget,
    crs15_test,
    standard_closeness_sampleflat,
    standard_closeness_test,
    standard_identity_test,
    t_statistic,
)

__version__ = "0.1.0"
