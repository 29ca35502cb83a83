"""Synchronizing words for finite automata via the averaging trick."""

from .automaton import (
    Automaton,
    InvalidWordError,
    apply,
    find_collapsing_letter,
    is_strongly_connected,
    is_synchronizing,
    mask,
    members,
    preimage,
    reachable_from,
)
from .classes import (
    UniformWSet,
    is_eulerian,
    one_cluster_detect,
    one_cluster_W,
    pseudo_eulerian_witness,
    verify_uniform_W,
)
from .distributions import (
    WordDistribution,
    cesaro_average,
    expectation_ZS,
    point_mass,
    product,
    uniform_on,
)
from .engine import (
    AveragingInstance,
    SyncCertificate,
    compute_c_bruteforce,
    expand_once,
    sync_one_cluster,
    sync_pseudo_eulerian,
    sync_via_W,
    synchronize,
    synchronize_core,
    theorem_bound,
    verify_hypotheses,
    zscore,
)
from .linalg import ascending_chain_witness, char_vector, distribution_matrix, subspace_span, word_matrix

__version__ = "0.1.0"
