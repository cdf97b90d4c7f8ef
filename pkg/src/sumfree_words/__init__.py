"""Sum-free sets generated by period-k-folding and Sturmian sequences.

Submodules: ``words`` (morphisms and infinite words), ``sumfree`` (the
binary-sequence/sum-free-set bijection), ``folding`` (period-k-folding
family), ``wnum`` (the associated numeration system), ``sturmian``,
``complexity`` and the command-line ``suite``.
"""

__version__ = "0.1.0"

from .checks import CheckResult
from .folding import FoldingFamily, pkf_stream, sigma_hat_stream, tau_stream
from .sumfree import SumFreeTrace, check_sumfree, gap_counters, theta_forward, theta_inverse
from .words import Morphism, MorphicStream, Word, apply_morphism, fixed_point, gamma, prefix

__all__ = [
    "CheckResult",
    "FoldingFamily",
    "Morphism",
    "MorphicStream",
    "SumFreeTrace",
    "Word",
    "apply_morphism",
    "check_sumfree",
    "fixed_point",
    "gamma",
    "gap_counters",
    "pkf_stream",
    "prefix",
    "sigma_hat_stream",
    "tau_stream",
    "theta_forward",
    "theta_inverse",
]
