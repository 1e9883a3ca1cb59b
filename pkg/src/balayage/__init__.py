"""Balayage operators on the unit disk and empirical checks of their
boundedness on Carleson measures."""

from .geometry import (Arc, CarlesonSquare, HyperbolicDisk, dyadic_arcs, dyadic_level,
                       hyperbolic_distance, mobius, poisson_kernel, pseudo_hyperbolic)
from .measures import (Atomic, DiskCap, Measure, Mixture, RadialSegment, WeightedArea,
                       WeightTransform, carleson_constant, carleson_constant_hyperbolic,
                       mass_of_hyperbolic_disk, mass_of_square, measure_from_spec,
                       weight_transform)
from .numerics import (ArcPairRule, NumericalFailure, QuadratureRule, build_disk_rule,
                       integrate_arc_pair, integrate_circle, integrate_disk)
from .operators import (BoundaryGrid, b_balayage, balayage, balayage_at, bergman_projection,
                        besov_norm, projected_derivative)
from .seminorms import (ResolutionError, campanato_seminorm, mean_oscillation,
                        thm1_functional)
from .verify import (TheoremId, VerificationReport, Verdict, verify_bbalayage_lipschitz,
                     verify_besov_lipschitz, verify_campanato_membership, verify_embedding,
                     verify_projection_besov_bound,
                     verify_square_disk_equivalence, verify_thm1, verify_weight_shift)

__version__ = "0.1.0"
