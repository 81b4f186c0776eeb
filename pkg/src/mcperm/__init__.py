"""Exact permanents of monotone column matrices and their stability."""

from .apolarity import (Disk, HalfPlane, MobiusMap, RootedPolynomial, apolar_complement,
                        apolarity_form, grace_demo, is_apolar, mobius_transform, permanent_form)
from .combinatorics import (cycles, descents, parse_permutation, pi_map, riordan_linear_map,
                            stats)
from .errors import CapExceeded, DegreeError, DimensionError, MCPermError, NotRealRootedError
from .matrices import (FerrersMatrix, MonotoneColumnMatrix, SymbolicMatrix, all_ferrers,
                       build_B, build_JZ_plus_A, eulerian_matrix, ferrers_dual, truncate)
from .permanent import (alpha_permanent, k_permanent, k_sub_mcp_polynomial, mcp_polynomial,
                        permanent)
from .polyalg import (ALPHA, T, Polynomial, UnivariatePolynomial, Var, parse_polynomial, x, y,
                      z)
from .stability import (Interlacing, count_real_roots, interlace_check, rayleigh_check,
                        real_rooted, stability_sample_test, sturm_chain)

__version__ = "0.1.0"
