"""Good drawings of complete graphs: planarized maps, rotation schemes and
Reidemeister moves between drawings that share a rotation scheme."""

from .archdeacon import SchemeScore, convex_scheme, count_nonplanar_k4, harary_hill, hill_climb
from .dual import Arrangement, DualPath, SlideStep, dual_graph, find_dual_path, sliding_sequence
from .gen import convex_drawing, cylindrical_drawing, perturb
from .map_core import (
    CrossingData,
    DrawingError,
    GoodDrawing,
    crossing_data_of,
    drawings_equivalent,
    from_crossing_data,
    rotation_scheme_of,
    trace_faces,
    validate,
)
from .moves import Move, MoveError, MoveSequence, Triangle, apply_move, apply_sequence, find_triangles, ready_moves
from .rotation_facts import CrossingSign, K4Rotation, Side, crossing_set_of, crossing_sign, k4_crossing, triangle_side
from .transform import TransformError, empty_triangle, gioan_transform

__all__ = [
    "Arrangement",
    "CrossingData",
    "CrossingSign",
    "DrawingError",
    "DualPath",
    "GoodDrawing",
    "K4Rotation",
    "Move",
    "MoveError",
    "MoveSequence",
    "SchemeScore",
    "Side",
    "SlideStep",
    "TransformError",
    "Triangle",
    "apply_move",
    "apply_sequence",
    "convex_drawing",
    "convex_scheme",
    "count_nonplanar_k4",
    "crossing_data_of",
    "crossing_set_of",
    "crossing_sign",
    "cylindrical_drawing",
    "drawings_equivalent",
    "dual_graph",
    "empty_triangle",
    "find_dual_path",
    "find_triangles",
    "from_crossing_data",
    "gioan_transform",
    "harary_hill",
    "hill_climb",
    "k4_crossing",
    "perturb",
    "ready_moves",
    "rotation_scheme_of",
    "sliding_sequence",
    "trace_faces",
    "triangle_side",
    "validate",
]
