"""Time-reversal symmetry of continuous-time quantum walks.

Classifies a Hamiltonian's walk as time-symmetric or not from its support
graph and gauge invariants, builds the diagonal-unitary witnesses, and checks
every verdict against a brute-force scan of the probability current.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .hermitian import (  # noqa: E402,F401
    diagonal_split,
    evolve,
    gauge_conjugate,
    quantum_probability_current,
    spectral,
    transition_probabilities,
    validate_hermitian,
    wrap_phase,
)
from .support import (  # noqa: E402,F401
    fundamental_cycles,
    is_bipartite,
    is_tree,
    spanning_forest,
    support,
)
from .gauge import (  # noqa: E402,F401
    ab_phase,
    canonical_form,
    conjugate_to_conjugate,
    cycle_weight,
    fingerprint,
    gauge_equivalent,
    gauge_potential,
    trivial_gauge,
)
from .symmetry import (  # noqa: E402,F401
    Verdict,
    amplitude_current,
    classify,
    conjugate_to_negative,
    phase_independent,
    scan,
    stochastic_current,
)
