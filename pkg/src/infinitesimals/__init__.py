"""Exact arithmetic with infinitesimals and checks of their algebraic origins.

Submodules:

``lc``           non-Archimedean ordered field (``LCNumber``)
``sequences``    symbolic sequences, a decidable part of Q^N
``monoids``      ordered monoid instances, Archimedean audits, disjoint families
``hyperspace``   certificates of disjoint proper sub-structures, magma scans
``expr``         expression parser and printer
``cli``          command-line front end
"""

from .lc import EPS, Classification, LCNumber, classify, standard_part, valuation
from .sequences import SymbolicSequence, classify_seq, embed, pointwise_invert

__all__ = [
    "EPS",
    "Classification",
    "LCNumber",
    "SymbolicSequence",
    "classify",
    "classify_seq",
    "embed",
    "pointwise_invert",
    "standard_part",
    "valuation",
]

__version__ = "0.1.0"
