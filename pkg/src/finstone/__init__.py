"""Finite distributive lattices, their Birkhoff duals, propositional sheaves,
modules of motives and the group-level shadows of continuous K-theory."""

from .errors import FinstoneError, ValidationError, VerificationError
from .lattice import (FinDistLattice, LatticeHom, add_top, birkhoff_opens, birkhoff_points,
                      booleanize, check_hom, drop_top, from_tables, join_irreducibles,
                      prime_filters)
from .ktheory import (CoeffProfile, coherent_vs_constructible, k_of_locally_coherent,
                      semiorthogonal_rank_check, sphere_profile)
from .motives import (MotiveModule, certify_free, factor_valuation, motive_hom,
                      motive_module, point_basis_iso, ring_structure, split_top)
from .order import (DownSet, Poset, downsets, height, incidence_algebra, isomorphism,
                    validate_poset)
from .profinite import (InverseSystem, colimit_boolean, continuous_functions,
                        finite_partitions, validate_system)
from .scissors import GridGeometry, generated_sublattice, grid_lattice, polytope_module
from .sites import (FinSite, basis_theorem, enumerate_sheaves, fin_coverage, is_sheaf,
                    sheafify, validate_site)
from .snf import AbGroup, smith_normal_form

__version__ = "0.1.0"
