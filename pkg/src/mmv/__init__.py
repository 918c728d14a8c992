"""Numerical checks of Bourin and Heinz matrix-mean inequalities.

Complex powers of positive semidefinite matrices, unitarily invariant
norms, the trace functional ``f(z) = Re Tr(A^z B^z A^(1-z) B^(1-z))`` and
one checker per inequality, plus sweeps and a seeded counterexample search.
"""

from .explore import (
    SearchConfig,
    SweepTable,
    builtin_example,
    random_pair,
    random_psd,
    read_csv,
    save_witness,
    search_counterexample,
    sweep_strip,
    sweep_t,
    trial_rng,
    write_csv,
)
from .matcore import (
    HermitianMatrix,
    SpectralDecomposition,
    hermitian,
    load_matrix,
    matrix_power,
    modulus,
    save_matrix,
    singular_values,
    spectral_decompose,
)
from .means import (
    MeanPair,
    bourin_mean,
    commutator_defect,
    heinz_sum,
    mean_pair,
    tau_ab,
    trace_functional,
)
from .norms import FROBENIUS, OPERATOR, NormKind, kyfan, norm, parse_norm, schatten, tau
from .report import InequalityReport
from .verify import (
    DEFAULT_GRID,
    GridSpec,
    check_alt_lemma,
    check_bourin_bound,
    check_bourin_vs_heinz,
    check_frobenius_chain,
    check_heinz,
    check_remark_quantity,
    check_singular_dominance,
    check_strip_inequality,
    equality_interval_scan,
)

__version__ = "0.1.0"
