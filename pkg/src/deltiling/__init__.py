"""Deltoid-tangent arrangements and triangle substitution tilings.

Exact-arithmetic construction of the tangent-line arrangements of the
deltoid, the decorated triangle prototile sets they induce, substitution
rules derived from first principles, deterministic and random tilings,
and verification and analysis tools.
"""

from .field import CycField, Elem, field_for_order, inflation_factor, sin_val
from .algebraic import is_pisot, minimal_polynomial, pisot_check
from .arrangement import (CONCURRENT, SymmetryIndex, TriangleId,
                          census_closed_form, classify_triple,
                          get_arrangement, triangular_pattern,
                          subdivision_sequence, vertex_multiplicities)
from .prototiles import Catalog, EdgeLetter, Prototile, decorate, \
    prototile_catalog
from .substitution import (Isometry, Patch, RuleSet, Tile, derive_edge_words,
                           derive_rules, edge_subdivision, locate_inflated,
                           verify_face_to_face)
from .random import (FlipSite, FlipTemplate, apply_flip, enumerate_flips,
                     find_flippable, polygon_vertices, random_rule_family,
                     random_substitution, rearrangement_sample)
from .analysis import (census_report, pisot_table, substitution_matrix,
                       tile_frequencies, vertex_configurations)
from .patchio import export_patch, import_patch

__version__ = "0.1.0"
