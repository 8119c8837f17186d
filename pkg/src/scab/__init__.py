"""scab: an exact workbench for cluster algebras from triangulated surfaces."""

from .exchange import (ExchangeMatrix, ExtendedExchangeMatrix, GeometricSeed,
                       Seed, enumerate_exchange_graph, laurent_check,
                       mutate_extended, mutate_matrix, mutate_seed_geometric,
                       mutate_seed_nonnormalized, rescale_pattern,
                       tropical_propagate, yhat)
from .laminations import (Lamination, MultiLamination, assemble_extended,
                          elementary_lamination, principal_seed, shear_coords,
                          universal_multilamination)
from .poly import LaurentPoly, RationalFunction
from .semifields import SemifieldDescriptor, TropicalElement, deformed_add
from .surface import (MarkedSurface, Triangulation, boundary_extended_matrix,
                      change_tags, flip, flip_graph, signed_adjacency,
                      validate_surface)

__version__ = "0.1.0"
