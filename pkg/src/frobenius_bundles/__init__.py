"""Frobenius-twisted rank-n bundles on P^n x P^n: Chern calculus, explicit
finite-field monads, cohomology tables and splitting types."""
from .bundles import (BundleExpr, DirectSum, Dual, Frobenius, LineBundle, PaperKernel,
                      PullbackQh, PullbackQL, PullbackSolution, Sym, Tensor, Wedge, eval_expr,
                      factor_pullback_obstruction, nondegeneracy_search)
from .chow import (BundleClassData, ChowClass, chern_E0_symbolic, chow_mul, dual_chern,
                   euler_char_hrr, frobenius_pull_chern, inv_unit, twist_chern, wedge_sym_chern)
from .cohomology import (CohomTable, Interval, bott_h, kunneth_h, les_chase, monad_chi,
                         monad_cohom_table, mult_matrix)
from .errors import (ArithmeticFault, DimensionMismatchError, InfeasibleChaseError,
                     ModelInconsistencyError, NonUnitError, SamplingError, SmoothnessError)
from .model import (BilinearFormA, FieldSpec, MonadData, SplittingType, build_monad,
                    charp_multilinear_suite, dual_monad, flip_monad, frobenius_presentation,
                    global_gen_probe, h0_twist, restrict_hyperplane_pair, restrict_to_kA,
                    splitting_type)

__version__ = "0.1.0"
