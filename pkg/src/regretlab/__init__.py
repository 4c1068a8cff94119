"""Exact computation of iterated regret minimization and rival solution
concepts on finite strategic and Bayesian games."""

from .core import (
    DeletionTrace,
    DimensionCapError,
    DuplicateLabelError,
    Game,
    GameFormatError,
    MembershipError,
    MissingProfileError,
    MixedStrategy,
    ParameterError,
    Polytope,
    ProfileSpace,
    RegretLabError,
    TraceRound,
    dump_game,
    expected_utility,
    full_simplex,
    load_game,
    make_game,
    make_polytope,
    mixed_space,
    pure_space,
    pure_space_by_labels,
)
from .generators import (
    make_bargaining,
    make_bertrand,
    make_centipede,
    make_coordination,
    make_differ,
    make_example_game,
    make_gencoord,
    make_hawk_dove,
    make_matching_pennies,
    make_mixed_multiround,
    make_pd,
    make_repeated_pd,
    make_rps,
    make_sd_vs_rm,
    make_staircase,
    make_travelers_dilemma,
)
from .pure import (
    RegretReport,
    conditional_regret,
    dominant_actions,
    max_regret,
    regret_report,
    rm_iterate,
    rm_step,
)
from .mixed import (
    DEFAULT_CAP,
    argmin_polytope,
    grid_oracle_min_regret,
    min_mixed_regret,
    mixed_regret,
    regret_given_profile,
    regret_prime,
    rm_mixed_iterate,
)
from .compare import (
    DominationWitness,
    compare_table,
    dominance_step,
    iterate_operator,
    justifiable_step,
    pure_nash,
    risk_dominance,
)
from .beliefs import (
    BeliefProfile,
    LexBelief,
    RationalityTrace,
    always_defect_regret,
    justifiable_belief,
    rational_wrt,
    repeated_pd_analysis,
    rm_prime_step,
)
from .bayes import (
    BayesianGame,
    TypedSpace,
    TypedStrategy,
    combinatorial_first_price_revenue,
    dump_bayesian_game,
    expected_regret,
    full_typed_space,
    load_bayesian_game,
    make_auction,
    mechanism_bound_probe,
    rm_bayes_iterate,
    truthful_strategy,
)

__version__ = "0.1.0"
