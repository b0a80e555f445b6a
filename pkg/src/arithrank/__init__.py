"""Arithmetical rank of squarefree monomial ideals with few generators or few primes."""

__version__ = "0.1.0"

from .ideal import (  # noqa: E402
    MonomialIdeal,
    SquarefreeMonomial,
    alexander_dual,
    height,
    invariants,
    load_ideal,
    minimal_primes,
    minimalize,
    parse_ideal_text,
)
from .hypergraph import Hypergraph, hypergraph, ideal_from  # noqa: E402
from .resolution import betti_table, pd  # noqa: E402

__all__ = [
    "__version__",
    "Hypergraph",
    "MonomialIdeal",
    "SquarefreeMonomial",
    "alexander_dual",
    "betti_table",
    "height",
    "hypergraph",
    "ideal_from",
    "invariants",
    "load_ideal",
    "minimal_primes",
    "minimalize",
    "parse_ideal_text",
    "pd",
]
