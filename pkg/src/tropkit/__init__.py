"""Exact tropical geometry: valued scalars, polyhedral complexes, tropical
cycles, weight complexes, hypersurface tropicalization and Chow complexes."""
from .chow import (ChowComplexData, RealizationCertificate, check_realization,
                   chow_complex_of_hypersurface, chow_skeleton_from_cycle,
                   expected_boundary_degree, sample_points)
from .cycles import (NonGenericError, NotRegularPointError, WeightedComplex, compare_cycles,
                     cycle_equal, degree_of_subtorus, is_balanced, multiplicity_at,
                     stable_minkowski_sum, standard_linear_space, tropical_degree)
from .hypersurface import (InitialForm, TropicalPolynomial, coefficient_configuration,
                           groebner_complex, initial_form, tropicalize)
from .polyhedra import (EmptyPolyhedronError, Polyhedron, PolyhedralComplex, common_refinement,
                        contains, skeleton, support_equal)
from .valued import INFINITY, ValuedScalar, add, mul, neg, rescale_value_group, residue, t, val
from .weights import (AdmissibleConditionSystem, HeightedConfiguration, UpperHull,
                      WeightComplexStructure, WeightSubdivision, admissible_conditions,
                      check_conditions, min_support, upper_hull, weight_complex,
                      weight_subdivision)

__version__ = "0.1.0"
