"""Context-sensitive repeats, net frequencies and minimal unique substrings
computed from the run-length encoded Burrows-Wheeler transform."""

from .alphabet import Text, char_at, encode_text
from .index import RepeatIndex, build_index
from .net_analysis import (
    MusInterval,
    NetOccurrence,
    all_net_occurrences,
    epsilon_net_occurrences,
    mus_from_net_occurrences,
    net_frequency_table,
)
from .renum import NodeReport, RichRepr, TraversalStats, traverse

__all__ = [
    "MusInterval",
    "NetOccurrence",
    "NodeReport",
    "RepeatIndex",
    "RichRepr",
    "Text",
    "TraversalStats",
    "all_net_occurrences",
    "build_index",
    "char_at",
    "encode_text",
    "epsilon_net_occurrences",
    "mus_from_net_occurrences",
    "net_frequency_table",
    "traverse",
]

__version__ = "0.1.0"
