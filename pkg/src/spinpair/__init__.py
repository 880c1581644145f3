"""Closed-form two-qubit entanglement for four symmetry families.

Two-spin states commuting with one of four signed permutation operators
form nine-parameter families covering Heisenberg XYZ systems with
Dzyaloshinsky-Moriya and Kaplan-Shekhtman-Entin-Wohlman-Aharony
couplings in a magnetic field.  For these states the concurrence and
entanglement of formation come out in closed form through a 3 (+) 1
block reduction and a trigonometric cubic; a brute-force oracle for
arbitrary states, a PPT separability detector, thermal/unitary
pipelines and permutation-symmetric pair reduction round out the
toolkit.
"""

from .entanglement import (
    EntanglementReport,
    QInvariants,
    closed_form,
    eof_from_concurrence,
    q_invariants_symbolic,
    spin_flip,
    wootters_oracle,
)
from .hamiltonians import GibbsSpec, HamiltonianSpec, build, evolve, general_hamiltonian, gibbs
from .manybody import (
    MomentSet,
    dirac_exchange,
    moments_of,
    pair_from_moments,
    reduce_pair,
    twirl_symmetrize,
)
from .separability import (
    ScanConfig,
    ScanGrid,
    boundary_bisect,
    partial_transpose,
    ppt_min_eig,
    scan_grid,
)
from .states import (
    BlochState,
    ValidityReport,
    from_matrix,
    quasidiagonal,
    sample_domain,
    to_matrix,
    validity,
)
from .symmetry import (
    FAMILIES,
    BlockReduction,
    block_reduce,
    classify,
    commutes_with,
    irrep_multiplicities,
    perm_matrix,
    reducing_transform,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "FAMILIES",
    "BlochState",
    "BlockReduction",
    "EntanglementReport",
    "GibbsSpec",
    "HamiltonianSpec",
    "MomentSet",
    "QInvariants",
    "ScanConfig",
    "ScanGrid",
    "ValidityReport",
    "block_reduce",
    "boundary_bisect",
    "build",
    "classify",
    "closed_form",
    "commutes_with",
    "dirac_exchange",
    "eof_from_concurrence",
    "evolve",
    "from_matrix",
    "general_hamiltonian",
    "gibbs",
    "irrep_multiplicities",
    "moments_of",
    "pair_from_moments",
    "partial_transpose",
    "perm_matrix",
    "ppt_min_eig",
    "q_invariants_symbolic",
    "quasidiagonal",
    "reduce_pair",
    "reducing_transform",
    "sample_domain",
    "scan_grid",
    "spin_flip",
    "to_matrix",
    "twirl_symmetrize",
    "validity",
    "wootters_oracle",
]
