"""Certified Mahler measures and entropy bookkeeping for crossed-product automorphisms.

Quick start::

    >>> from mahlerent import parse, mahler
    >>> r = mahler(parse("t^3 - t - 1"))
    >>> r.value.width < 1e-10 and r.value.contains(0.28119957432296186)
    True
"""

from .interval import EntropyInterval
from .lehmer import SearchConfig, SearchRecord, canonicalize, enumerate_polys, search
from .mahler import MahlerInconsistency, MahlerResult, mahler, mahler_from_roots, mahler_jensen
from .poly import CyclotomicSplit, LaurentPoly, PolyParseError, cyclotomic, cyclotomic_split, parse
from .roots import ComplexBall, PrecisionExhausted, roots_with_radii

__version__ = "0.1.0"

__all__ = [
    "EntropyInterval",
    "LaurentPoly",
    "CyclotomicSplit",
    "PolyParseError",
    "parse",
    "cyclotomic",
    "cyclotomic_split",
    "ComplexBall",
    "PrecisionExhausted",
    "roots_with_radii",
    "MahlerResult",
    "MahlerInconsistency",
    "mahler",
    "mahler_from_roots",
    "mahler_jensen",
    "SearchConfig",
    "SearchRecord",
    "canonicalize",
    "enumerate_polys",
    "search",
]
