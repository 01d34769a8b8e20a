"""Exact duality for quasi-norms on finite abelian groups, plus 1-D real transforms.

>>> from metricdual import make_group, discrete_norm, dual, regularise
>>> G = make_group([9])
>>> str(dual(discrete_norm(G))((1,)))
'4/9'
>>> str(regularise(discrete_norm(G))((3,)))
'3/4'
"""

from .continuous import (BidualReport, QCResult, RealNorm, TNorm, TransformConfig, ZNorm,
                         ball_lipschitz_bound, circle_norm, is_quasiconcave, real_bidual,
                         real_bidual_fixpoint, real_dual, real_dual_closed, t_dual_at,
                         tabulate_dual, z_dual_at)
from .errors import InputError, NotQuasiConcaveError, TheoremViolation
from .extended import INF
from .groups import (CharacterClasses, FiniteAbelianGroup, Subgroup, abelian_groups,
                     annihilator, character_order, element_order, make_group, pair,
                     subgroup_characters, subgroup_generate)
from .quasinorm import (QuasiNorm, RegularityReport, ValidationResult, ball_violations, bidual,
                        discrete_norm, le,
                        dual, fin_part, infty_qn, is_regular, join, kernel, meet, product,
                        random_quasinorm, regularise, regularise_formula, restrict, scale,
                        subadditive_closure, validate, zero_qn)
from .structures import (EquivalenceReport, MetricStructure, StructureReport,
                         check_prop_metrstr, check_structure, dual_structure)

__version__ = "0.1.0"
