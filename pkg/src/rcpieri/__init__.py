"""rc-graphs, Schubert polynomials, and a row-insertion proof of Pieri's rule."""

from .permutation import Permutation, longest, parse_one_line, sigma, word_to_permutation
from .pieri import AbSequence, admissible_expansion, algorithm2, insert, inverse
from .polynomial import MultiPoly, complete_homogeneous, divided_difference, schubert_ddiff
from .rcgraph import Composition, RcGraph, bottom, enumerate_rc, enumerate_rc_by_words

__all__ = [
    "AbSequence",
    "Composition",
    "MultiPoly",
    "Permutation",
    "RcGraph",
    "admissible_expansion",
    "algorithm2",
    "bottom",
    "complete_homogeneous",
    "divided_difference",
    "enumerate_rc",
    "enumerate_rc_by_words",
    "insert",
    "inverse",
    "longest",
    "parse_one_line",
    "schubert_ddiff",
    "sigma",
    "word_to_permutation",
]

__version__ = "0.1.0"
