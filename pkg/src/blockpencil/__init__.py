"""Exact computations with pencils of plane curves over finite fields and
the blocking sets formed by their F_q-rational points."""

from .blocking import (Blocking, BlockingClass, IncidenceProfile, PointSet, blokhuis_threshold,
                       bruen_threshold, check_size_bounds, classify, incidence_profile, is_blocking,
                       lemma41_threshold)
from .constructions import (CoverSpec, baer_partition, example31_pencil, extremal_pencil,
                            indicator_poly, interpolate, realize_cover, realize_partition)
from .gf import GF, CubicExtension, cubic_extension, field_create, primitive_element, subfield_elements
from .pencil import (Partition, Pencil, PencilReport, base_locus_points, check_prime_bound,
                     check_prop32, check_thm12, classify_pencil, induced_partition, member,
                     member_points)
from .plane import Line, Param, Plane, Point, lines, plane_for, points
from .poly import (LinearForm, PolyExpr, Power, Product, Scalar, ScalarMul, SparsePoly, Sum,
                   all_lines_product, evaluate, expand, is_zero_at, linear_combination)

__version__ = "0.1.0"
