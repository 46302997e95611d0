"""Arc crossing changes on knot and link diagrams."""
from .diagram import DiagramError, LinkDiagram, from_pd, is_ascending, parse_diagram, serialize
from .moves import AccMove, KinunoMove, MoveError, MoveLog, apply_move, replay
from .search import LimitExceeded
from .stategraph import build_state_graph, compile_trail, find_admissible_trail, is_admissible
from .unknotting import Verdict, certify, unknot, unknot_link_I, unknot_link_II

__all__ = [
    "AccMove",
    "DiagramError",
    "KinunoMove",
    "LimitExceeded",
    "LinkDiagram",
    "MoveError",
    "MoveLog",
    "Verdict",
    "apply_move",
    "build_state_graph",
    "certify",
    "compile_trail",
    "find_admissible_trail",
    "from_pd",
    "is_admissible",
    "is_ascending",
    "parse_diagram",
    "replay",
    "serialize",
    "unknot",
    "unknot_link_I",
    "unknot_link_II",
]
