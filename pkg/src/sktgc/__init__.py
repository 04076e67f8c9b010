"""Skew-tolerant Gray codes.

Construction, rank/unrank, verification, exhaustive search, and compact
storage of Gray codes whose consecutive changes stay within k adjacent
positions (binary k in {1,2,3} and m-ary k=1 families).
"""

from .core import (BASELINE_RATE, MAX_MATERIALIZED, Code, Codeword, Indexing,
                   RateMetrics, STANDARD, TransitionSequence, TransitionStep,
                   derive, format_listing, from_transitions, parse_listing,
                   rate_metrics, signed_indexing, transitions)
from .binary import (BaseCase, build_1sktgc, build_1sktgc_even,
                     build_1sktgc_odd, build_2sktgc, build_3sktgc,
                     bundled_base, even_base, growth_constant, make_base,
                     odd_base, predicted_size)
from .codec import (decode_1, decode_2, decode_2c, encode_1, encode_2,
                    encode_2c, level_size)
from .mary import (build_mary_large, build_quaternary, build_ternary,
                   pair_map, pair_map_inverse)
from .verifier import (TransitionGraph, VerificationReport, compatible,
                       induced_graph, toeplitz_edges, verify)
from .search import (SearchResult, search_base, search_complete_1sktgc,
                     validate_base)
from .compress import CompressedCode, compress, decompress
from . import errors

__version__ = "0.1.0"
