"""Ising metastability on regular graphs.

Exact energy landscapes, Metropolis-Glauber dynamics with hitting-time
estimation, isoperimetric analysis, constructive barrier-crossing paths,
and automated verification of the metastable-time exponent sandwich.
"""

from .backend import BACKEND_NAME
from .errors import (
    CapacityError,
    CensoredSampleError,
    GenerationError,
    MetaisingError,
    ParameterError,
)
from .graphs import (
    RegularGraph,
    bollobas_lower_bound,
    complete_bipartite,
    complete_graph,
    edge_boundary,
    generate_random_regular,
    graph_hash,
    isoperimetric_exact,
    isoperimetric_heuristic,
    zeta_condition,
)
from .model import (
    EnergyParams,
    all_minus,
    all_plus,
    flip_delta,
    gibbs_exact,
    hamiltonian,
    hamiltonian_via_boundary,
)
from .landscape import (
    communication_height,
    full_landscape,
    metastable_set_at_level,
    stability_level,
    sublevel_cycle,
)
from .dynamics import (
    estimate_exponent,
    exact_mean_hitting_time,
    run_replicas,
    run_until_hit,
    sample_occupancy,
    transition_probability,
)
from .paths import ascend_lemma_path, descend_lemma_path, reference_path
from .verify import (
    AsymptoticConstants,
    instance_gamma_lower,
    instance_gamma_upper,
    stability_upper_bound,
    sandwich_experiment,
    asymptotic_gamma_bounds,
    verify_conditions,
)

__version__ = "0.1.0"
