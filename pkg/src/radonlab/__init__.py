"""radonlab: a desk-scale laboratory for discrete operators of Radon type.

Exact lattice geometry, jump and variation seminorms of sampled paths,
Gauss and Weyl exponential sums, structured denominator sets with their
coprime-product partitions, discrete averaging and truncated singular
convolution operators along monomial mappings, and the multiplier-side
approximation reports that tie the discrete operators to their continuous
symbols near rational frequencies.
"""

__version__ = "0.1.0"

from .errors import (BudgetError, NonconvergenceError, OscillationBudgetError,
                     PreconditionError)
from .multiindex import (FrequencyVector, MultiIndexSet, anisotropic_dilate,
                         canonical_map, degree, full_degree_set, quasi_norm)
from .lattice import (ConvexBody, Cube, DiagonalEllipsoid, EuclideanBall,
                      LatticePointSet, annulus_points, cube, ellipsoid,
                      euclidean_ball, gauge_groups, lattice_points,
                      near_boundary_count)
from .variation import (PathField, SampledPath, block_variation, jump_count,
                        jump_seminorm, r_variation)
from .expsums import (IntegerPolynomial, RationalPoint, ReducedFraction,
                      VandermondeSystem, WeylReport, compose_coefficient,
                      dirichlet_approx, dirichlet_rescale, gauss_decay_scan,
                      gauss_sum, unit_phase, vandermonde_automorphisms,
                      weyl_bound_report, weyl_sum)
from .denominators import (CoprimePowerPart, DenominatorConfig, DenominatorSet,
                           PartitionResult, build_denominator_set,
                           enumerate_power_products, fraction_family,
                           fraction_family_count, has_uniqueness_property,
                           jordan_totient, kappa_coloring, lcm_first_n,
                           l1_lr_inequality_check, partition_coprime_products,
                           prime_window, primes_up_to, reduced_residues,
                           surjection_family)
from .radon import (BlockVariationReport, CZKernelSpec, JumpProfile,
                    LatticeFunction, RadonKernel, apply, apply_on_torus,
                    averaging_kernel, cz_inverse, cz_product, cz_quadrupole,
                    jump_profile, kernel_block_variation_report,
                    radon_along_polynomials, singular_kernel)
from .multipliers import (BoxAverageMultiplier, DecayScanResult,
                          IncrementReport, MajorArcReport, SymbolEvaluation,
                          box_average_multiplier, box_neighborhood_report,
                          continuous_symbol, dirichlet_kernel_identity,
                          discrete_multiplier, major_arc_error,
                          multiplier_breakpoint_profile,
                          multiplier_increment_report, symbol_decay_scan)
