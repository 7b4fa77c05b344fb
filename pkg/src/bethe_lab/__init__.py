"""bethe-lab: exact-arithmetic verification of classical and quantum Bethe
subalgebras of antidominantly shifted gl_n loop and RTT algebras."""

__version__ = "0.1.0"

from .polynomial import Poly
from .ncword import NC
from .qseries import QSeries, qseries_free_algebra, qseries_partition_product
from .series import Series, WindowError
from .shift import AntidominanceError, ShiftVector, TwistMatrix, validate_shift
from .jacobian import jacobian_rank, jacobian_rank_randomized
from .report import Report
from .suite import SuiteConfig, run_suite

__all__ = [
    "Poly",
    "NC",
    "QSeries",
    "qseries_free_algebra",
    "qseries_partition_product",
    "Series",
    "WindowError",
    "AntidominanceError",
    "ShiftVector",
    "TwistMatrix",
    "validate_shift",
    "jacobian_rank",
    "jacobian_rank_randomized",
    "Report",
    "SuiteConfig",
    "run_suite",
]
