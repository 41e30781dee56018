"""Exhaustive search for integer polynomials of small positive Mahler measure.

Polynomials are enumerated once per orbit of the measure-preserving moves
f -> -f, f -> t^k f, f(t) -> f(-t) and f(t) -> f(1/t).  A vectorized double
precision screen gives proof-backed lower bounds, so only candidates that
could still enter the current top-k are certified in full.  Results do not
depend on the number of workers: each chunk of the enumeration is reduced to
its own top-k and the merge is an exact top-k of the union.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Callable, Iterator, Optional

import numpy as np

from .interval import EntropyInterval, format_ext, parse_ext
from .mahler import mahler
from .poly import LaurentPoly, cyclotomic_split, format_poly
from .roots import float_measure_lower_bounds

__all__ = [
    "SearchConfig",
    "SearchRecord",
    "CheckpointMismatch",
    "canonicalize",
    "enumerate_polys",
    "search",
    "merge_records",
    "read_results",
    "write_results",
]

CHUNK_SIZE = 1024
FORMAT_VERSION = 1


class CheckpointMismatch(ValueError):
    """The checkpoint on disk was written for a different configuration."""


@dataclass(frozen=True)
class SearchConfig:
    max_degree: int
    height: int
    monic_reciprocal_only: bool = False
    top_k: int = 10
    eps: float = 1e-10

    def validate(self) -> "SearchConfig":
        if self.max_degree < 1:
            raise ValueError("max_degree must be at least 1")
        if self.height < 1:
            raise ValueError("height must be at least 1")
        if self.top_k < 1:
            raise ValueError("top_k must be at least 1")
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        return self

    def to_json(self) -> dict:
        return asdict(self)

    def digest(self, chunk_size: int = CHUNK_SIZE) -> str:
        payload = json.dumps({**self.to_json(), "chunk_size": chunk_size,
                              "version": FORMAT_VERSION}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class SearchRecord:
    poly: LaurentPoly
    measure: EntropyInterval
    degree: int
    discovered_at: int
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def sort_key(self):
        return (self.measure.hi, self.degree, self.poly.coeffs)

    def to_json(self) -> dict:
        return {
            "type": "record",
            "poly": format_poly(self.poly),
            "coeffs": list(self.poly.coeffs),
            "degree": self.degree,
            "measure_lo": format_ext(self.measure.lo),
            "measure_hi": format_ext(self.measure.hi),
            "discovered_at": self.discovered_at,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SearchRecord":
        return cls(
            poly=LaurentPoly(obj["coeffs"]),
            measure=EntropyInterval(parse_ext(obj["measure_lo"]), parse_ext(obj["measure_hi"])),
            degree=int(obj["degree"]),
            discovered_at=int(obj["discovered_at"]),
            warnings=tuple(obj.get("warnings", ())),
        )


# ------------------------------------------------------------------ orbits


def _orbit_max(c: tuple[int, ...]) -> tuple[int, ...]:
    """Greatest ascending coefficient tuple in the orbit of ``c``."""
    alt = tuple(x if k % 2 == 0 else -x for k, x in enumerate(c))
    best = None
    for v in (c, c[::-1], alt, alt[::-1]):
        for w in (v, tuple(-x for x in v)):
            if best is None or w > best:
                best = w
    return best


def canonicalize(f: LaurentPoly) -> LaurentPoly:
    """Orbit representative under sign, monomial shift, t -> -t and t -> 1/t.

    The representative is the lexicographically greatest ascending coefficient
    tuple in the orbit, so its constant term is positive.
    """
    if f.is_zero:
        raise ValueError("cannot canonicalize the zero polynomial")
    return LaurentPoly(_orbit_max(f.coeffs))


def _kronecker_trivial(c: tuple[int, ...]) -> bool:
    return cyclotomic_split(LaurentPoly(c)).remainder.degree == 0


def enumerate_polys(config: SearchConfig) -> Iterator[LaurentPoly]:
    """One primitive representative per orbit, degree 1..max_degree, coefficients
    bounded by ``height``; products of cyclotomics and monomials are skipped."""
    h = config.height
    inner = range(-h, h + 1)
    ends = (1, -1) if config.monic_reciprocal_only else tuple(
        x for x in range(h, -h - 1, -1) if x != 0)
    for d in range(1, config.max_degree + 1):
        for c0 in ends:
            if c0 < 0:
                continue  # the representative has a positive constant term
            for mid in itertools.product(inner, repeat=d - 1):
                for cd in ends:
                    c = (c0,) + mid + (cd,)
                    if _orbit_max(c) != c:
                        continue
                    g = 0
                    for x in c:
                        g = gcd(g, x)
                    if g != 1 or _kronecker_trivial(c):
                        continue
                    yield LaurentPoly(c)


# ------------------------------------------------------------------ search


def merge_records(a: list[SearchRecord], b: list[SearchRecord], k: int) -> list[SearchRecord]:
    """Top-k of the union; associative and commutative."""
    seen = {}
    for r in itertools.chain(a, b):
        seen.setdefault(r.poly.coeffs, r)
    return sorted(seen.values(), key=SearchRecord.sort_key)[:k]


def _measure(f: LaurentPoly, index: int, eps: float) -> Optional[SearchRecord]:
    res = mahler(f, eps)
    warnings = () if res.tolerance_met else (f"enclosure wider than eps={eps}",)
    if res.value.lo <= 0:
        return None
    return SearchRecord(f, res.value, f.degree, index, warnings)


def _process_chunk(args) -> list[SearchRecord]:
    items, k, eps, bound = args
    by_degree: dict[int, list] = {}
    for index, coeffs in items:
        by_degree.setdefault(len(coeffs) - 1, []).append((index, coeffs))
    screened = []
    for _, group in sorted(by_degree.items()):
        lbs = float_measure_lower_bounds(np.array([c for _, c in group], dtype=float))
        screened.extend((float(lb), index, coeffs) for lb, (index, coeffs) in zip(lbs, group))
    # cheapest-looking candidates first tighten the local bound fastest
    screened.sort()
    best: list[SearchRecord] = []
    for lb, index, coeffs in screened:
        cutoff = bound
        if len(best) >= k:
            cutoff = min(cutoff, best[-1].measure.hi)
        if lb > cutoff:
            continue
        rec = _measure(LaurentPoly(coeffs), index, eps)
        if rec is not None:
            best = merge_records(best, [rec], k)
    return best


def _chunks(config: SearchConfig, size: int):
    stream = ((i, f.coeffs) for i, f in enumerate(enumerate_polys(config)))
    while True:
        chunk = list(itertools.islice(stream, size))
        if not chunk:
            return
        yield chunk


def write_results(path: str, config: SearchConfig, records: list[SearchRecord],
                  chunks_done: int, complete: bool, chunk_size: int = CHUNK_SIZE) -> None:
    """Atomically write the JSON-lines results/checkpoint file."""
    header = {
        "type": "header",
        "version": FORMAT_VERSION,
        "config": config.to_json(),
        "config_hash": config.digest(chunk_size),
        "chunk_size": chunk_size,
        "chunks_done": chunks_done,
        "complete": complete,
    }
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps(r.to_json(), sort_keys=True) for r in records]
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".lehmer-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_results(path: str) -> tuple[dict, list[SearchRecord]]:
    with open(path) as fh:
        rows = [json.loads(line) for line in fh if line.strip()]
    if not rows or rows[0].get("type") != "header":
        raise ValueError(f"{path}: missing header line")
    return rows[0], [SearchRecord.from_json(r) for r in rows[1:]]


def search(config: SearchConfig, workers: int = 1, checkpoint: Optional[str] = None,
           chunk_size: int = CHUNK_SIZE, max_chunks: Optional[int] = None,
           progress: Optional[Callable[[int, int], None]] = None) -> list[SearchRecord]:
    """Top-k smallest positive Mahler measures, sorted by (measure.hi, degree, coeffs).

    With ``checkpoint`` the state is saved after every chunk and a matching
    file is resumed.  ``max_chunks`` stops early (the file stays resumable).
    """
    config.validate()
    k = config.top_k
    records: list[SearchRecord] = []
    done = 0
    if checkpoint and os.path.exists(checkpoint):
        header, saved = read_results(checkpoint)
        if header.get("config_hash") != config.digest(chunk_size):
            raise CheckpointMismatch("checkpoint config mismatch")
        records, done = saved, int(header["chunks_done"])
        if header.get("complete"):
            return records

    chunks = itertools.islice(_chunks(config, chunk_size), done, None)
    processed = 0

    def bound():
        return records[-1].measure.hi if len(records) >= k else float("inf")

    def absorb(result):
        nonlocal records, done, processed
        records = merge_records(records, result, k)
        done += 1
        processed += 1
        if checkpoint:
            write_results(checkpoint, config, records, done, False, chunk_size)
        if progress:
            progress(done, len(records))

    def budget_left():
        return max_chunks is None or processed < max_chunks

    if workers <= 1:
        for chunk in chunks:
            if not budget_left():
                break
            absorb(_process_chunk((chunk, k, config.eps, bound())))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending = []
            exhausted = False
            while True:
                while not exhausted and len(pending) < 2 * workers and (
                        max_chunks is None or processed + len(pending) < max_chunks):
                    chunk = next(chunks, None)
                    if chunk is None:
                        exhausted = True
                        break
                    pending.append(pool.submit(_process_chunk, (chunk, k, config.eps, bound())))
                if not pending:
                    break
                # consume in submission order so checkpoints cover a prefix
                absorb(pending.pop(0).result())

    finished = max_chunks is None or next(chunks, None) is None
    if checkpoint:
        write_results(checkpoint, config, records, done, finished, chunk_size)
    return records
