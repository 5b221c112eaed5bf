"""Exact computation of motivic Chern classes, twisted logarithmic-form
classes and their difference, for projective hyperplane arrangements with
free affine cone and for reduced curves on smooth surfaces, together with
the Todd/Hirzebruch pipeline that specialises them to CSM classes.

All arithmetic is exact (arbitrary-precision integers and rationals); all
values are immutable and all operations are pure functions, safe to call
from multiple threads.
"""

from .arrangement import (Arrangement, IntersectionLattice, IntPolynomial,
                          Subspace, TeraoResult, build_lattice,
                          characteristic_polynomial, exponents_via_terao,
                          load_arrangement, parse_arrangement)
from .curves import (CurveDifferenceClass, CurveSingularity, LocalPolynomial,
                     branch_count, csm_minus_chern_curve, delta_from_milnor,
                     difference_class_curve, genus_defect, local_invariants,
                     singularity_from_json, singularity_from_poly)
from .errors import (BranchCountRequiredError, DivisionRemainderError,
                     InconsistencyError, LogmcError,
                     NonIsolatedSingularityError, ValidationError)
from .hirzebruch import (CohClass, CohPoly, chern_character,
                         chern_class_free_exponents, clear_denominator,
                         cohclass_from_json, cohclass_to_json,
                         cohpoly_from_json, cohpoly_to_json, csm_at_minus_one,
                         euler_characteristic, grr_transform, normalize,
                         todd_class)
from .kring import (KClass, KPoly, difference_class_arrangement,
                    exact_div_one_plus_y, kclass_O, kclass_linear_subspace,
                    kpoly_from_json, kpoly_to_json, log_class_free,
                    mc_complement_charpoly, mc_complement_lattice_sum,
                    mc_free_exponents, omega_log_trivial)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
