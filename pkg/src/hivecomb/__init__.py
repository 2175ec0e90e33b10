"""Exact honeycomb and hive computations for GL_n tensor products."""

from .errors import *  # noqa: F401,F403
from .plane import (INF, AXIS_POSITIVE, DIRECTION_ORDER, DIRECTIONS, E, NE,
                    NW, SE, SW, W, Direction, PlanePoint, SegmentOrRay,
                    constant_coordinate, frac, intersect, perp_step)
from .weights import (BoundaryTriple, as_weight, dominant_vectors,
                      is_integral, is_regular, nu_to_sigma, sigma_to_nu)
from .honeycomb import (Edge, Honeycomb, Tinkertoy, build_gl_tinkertoy,
                        build_tinkertoy_from_type, dual_graph,
                        standard_configuration, validate_configuration)
from .diagram import (Diagram, DiagramVertex, Region, canonical_diagram,
                      classify_vertex, degeneracy_graph, diagram, tension)
from .reconstruct import (ElisionEdge, HalfEdge, PostElisionGraph,
                          breathe_loop, elide, overlay, prv_witness,
                          reconstruct)
from .hive import (Hive, HiveShape, Rhombus, boundary_from_weights,
                   bz_pattern, bz_rows, count_gt_patterns,
                   count_lattice_hives, decompose_tensor_product,
                   enumerate_lattice_hives, exists_lattice_hive,
                   flatspace_decomposition, hive_indices, hive_to_honeycomb,
                   honeycomb_to_hive, rhombi, rhombus_value)
from .lift import (InflationVector, LiftReport, LPOutcome, ObjectiveVector,
                   WeightFunction, find_nonintegral_vertex, forest_solve,
                   inflate, inflation_vector, largest_lift, lp_maximize,
                   make_weight_function, max_inflation, molt_regions, wperim,
                   wperim_objective)

__version__ = "0.1.0"
