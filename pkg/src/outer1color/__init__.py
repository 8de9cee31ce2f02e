"""Exact chromatic index of outer-1-planar graphs."""

from .chroma import (
    ChromaResult, NotOuter1PlanarError, UndecidedEmbeddingError, chromatic_index,
    color_block_delta3, merge_block_colorings, vizing_color,
)
from .classp import PCertificate, PasteOp, base_graph, generate_p, in_class_p, paste, recognize_p
from .drawing import Drawing, EmbedResult, crossing_pairs, find_embedding, is_valid_outer1, random_outer1
from .graph import (
    BlockDecomposition, ColorAssignment, Graph, GraphError, Verdict, blocks, build_graph,
    max_degree, min_degree, validate_coloring,
)
from .oracle import all_colorings, brute_chi, enumerate_small, is_isomorphic
from .patterns import Configuration, StructureTheoremViolation, find_configuration, match_template
from .reduction import ReductionStep, extend_coloring, reduce

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition", "ChromaResult", "ColorAssignment", "Configuration", "Drawing", "EmbedResult",
    "Graph", "GraphError", "NotOuter1PlanarError", "PCertificate", "PasteOp", "ReductionStep",
    "StructureTheoremViolation", "UndecidedEmbeddingError", "Verdict",
    "all_colorings", "base_graph", "blocks", "brute_chi", "build_graph", "chromatic_index",
    "color_block_delta3", "crossing_pairs", "enumerate_small", "extend_coloring", "find_configuration",
    "find_embedding", "generate_p", "in_class_p", "is_isomorphic", "is_valid_outer1", "match_template",
    "max_degree", "merge_block_colorings", "min_degree", "paste", "random_outer1", "recognize_p", "reduce",
    "validate_coloring", "vizing_color",
]
