"""Fairness-accuracy frontiers for binary decisions over finite distributions."""
from .dist import (Algorithm, ErrorPair, GroupLossMatrix, Instance, LossMatrix, StructureReport,
                   conditional_expected_loss, detect_structure, group_error, project)
from .errors import (ConditioningError, ConsistencyError, ContainmentError, DegenerateReportError, DomainError,
                     FrontierError, InfeasibilityError, NormalizationError, ParseError, PreconditionError,
                     SizeError, UnsupportedModeError)
from .exclusion import (ExclusionReport, ExtremeErrors, decision_relevant, exclude_G_predicate,
                        exclude_Xprime_given_G_predicate, extreme_group_errors, uniform_worsening_report)
from .frontier import (Classification, Constrained, Egalitarian, FeasibleSet, Kind, Rawlsian, SimpleWeights,
                       SocialWelfare, SpecialPoints, Utilitarian, classify, fa_dominates, fa_frontier,
                       feasible_set, preference_optimum, simple_preference_witness, special_points)
from .generalized import (FairnessFunctional, GeneralizedFrontier, PhiTransform, binary_x_balance_check,
                          criteria_loss, generalized_frontier, generalized_group_balanced, phi_frontier,
                          unfairness_d)
from .geometry import (EMPTY, ConvexPolygon, HalfPlane, Point2, Polyline, WeightedSegment, clip, decompose,
                       lower_boundary, polylines_intersect, support_argmin, zonotope)
from .input_design import (AgentWeights, Garbling, ObedienceCertificate, construct_garbling,
                           frontier_equivalence, input_design_feasible, input_design_frontier, no_info_payoff,
                           verify_obedience)
from .svg import emit_svg

__version__ = "0.1.0"
