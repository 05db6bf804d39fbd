"""fnlab: Fenchel-Nielsen coordinates, holonomy and Teichmüller metric comparisons."""

from .certificates import BoundKind, CertifiedBound
from .errors import (DegeneracyError, DomainError, FNLabError, InapplicableError,
                     NonHyperbolicError, NotPureTwistError, UnsupportedError, ValidationError)
from .holonomy import (GeodesicAxis, Holonomy, curve_length, holonomy_rep, intersection_data,
                       ortho_arc_length)
from .hypertrig import (HexagonSides, collar_halfwidth, collar_log_constant, length_trace_convert,
                        solve_right_hexagon, solve_right_pentagon)
from .metrics import (ThickPartSpec, ThickStatus, d_arc_lower, d_fn, d_ls_lower, thick_membership,
                      twist_dls_upper)
from .surface import (CurveClass, FNPoint, PantsDecomposition, RuleFamily, ShigaBounds,
                      boundedness_check, build_decomposition, dehn_twist_class, double_surface,
                      dual_curve, enumerate_arcs, enumerate_curves, make_fn_point, preset)
from .twistflow import (TwistVector, length_along_twist, multi_twist, twist, twist_recover,
                        wolpert_d1, wolpert_d2)

__version__ = "0.1.0"
