"""Entropy calculus for classical systems and their crossed-product extensions."""

from ..interval import EntropyInterval
from . import classical, quantum
from .classical import ClassicalEntropyReport, classical_entropy
from .quantum import EntropyReport, quantum_entropy
from .specio import dump_spec, dumps, load_spec, loads
from .synthesis import synthesize_pair
from .trace import HypothesisError, SpecError, TraceEntry

__all__ = [
    "EntropyInterval",
    "classical",
    "quantum",
    "ClassicalEntropyReport",
    "EntropyReport",
    "classical_entropy",
    "quantum_entropy",
    "synthesize_pair",
    "load_spec",
    "dump_spec",
    "loads",
    "dumps",
    "HypothesisError",
    "SpecError",
    "TraceEntry",
]
