"""Truncated Toeplitz operators on weighted Bergman spaces of the disc, with
Schottky-group equivariance.

Submodules: mobius, bergman, quadrature, domain, symbols, toeplitz,
equivariant, experiments, cli.
"""

from .mobius import (GeodesicCircle, GroupWord, MobiusTransform, Pairing, classical_pairings, delta,
                     enumerate_group, hyperbolic_distance, pairing_transform, verify_schottky)
from .bergman import (BasisSpec, TruncatedOperator, basis_norm, basis_norm_sq, basis_values,
                      corner_trace, kernel, representation_matrix, unitarity_defect)
from .domain import (FundamentalDomain, HorizonExceeded, SchottkyError, build_domain,
                     flowed_domain, orbit_representative, trivial_domain)
from .symbols import (Bump, CollarSeed, Composed, Constant, InvariantSymbol, Laurent,
                      PoincareSeries, Radial, Symbol, boundary_restriction, collar_symbol,
                      poincare_series, winding_number, winding_numbers)
from .toeplitz import (carey_pincus_check, commutator_trace, hankel_s2_norm_sq,
                       semicommutator_trace, toeplitz_matrix)
from .equivariant import (EquivariantTraceEstimate, NoValidCut, extension_probe, gamma_average,
                          gamma_index, tau_commutator, tau_toeplitz)

__version__ = "0.1.0"

__all__ = ["GeodesicCircle", "GroupWord", "MobiusTransform", "Pairing", "classical_pairings",
           "delta", "enumerate_group", "hyperbolic_distance", "pairing_transform",
           "verify_schottky", "BasisSpec", "TruncatedOperator", "basis_norm", "basis_norm_sq",
           "basis_values", "corner_trace", "kernel", "representation_matrix", "unitarity_defect",
           "FundamentalDomain", "HorizonExceeded", "SchottkyError", "build_domain",
           "flowed_domain", "orbit_representative", "trivial_domain", "Bump", "CollarSeed",
           "Composed", "Constant", "InvariantSymbol", "Laurent", "PoincareSeries", "Radial",
           "Symbol", "boundary_restriction", "collar_symbol", "poincare_series", "winding_number",
           "winding_numbers", "carey_pincus_check", "commutator_trace", "hankel_s2_norm_sq",
           "semicommutator_trace", "toeplitz_matrix", "EquivariantTraceEstimate", "NoValidCut",
           "extension_probe", "gamma_average", "gamma_index", "tau_commutator", "tau_toeplitz"]
