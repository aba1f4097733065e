"""Deciding intrinsic linking of small graphs and enumerating maximal
linklessly embeddable (maxnIL) graphs.

Two independent deciders: a GF(2) linking-number system over a canonical
book embedding, and forbidden-minor testing against the Petersen family.
"""

__version__ = "0.1.0"

from .graph import Graph, clique_sum, complete, complete_bipartite, cycle  # noqa: F401
from .g6 import decode_g6, encode_g6, stream_g6  # noqa: F401
from .linking import is_maxnil, is_nil_linking  # noqa: F401
from .minors import (  # noqa: F401
    generate_petersen_family,
    has_k6_minor,
    has_minor,
    is_il_minor,
    is_isomorphic,
)
from .planarity import apex_report, is_maximal_planar, is_planar  # noqa: F401
from .search import census, default_sieve  # noqa: F401
