"""
=========================================
Searching for small Mahler measures
=========================================

Enumerate integer polynomials up to a degree and height, one per symmetry
class, and keep the smallest certified positive measures.
"""

# %%
# Small search, every candidate visible
# -------------------------------------

import tempfile
import time
from pathlib import Path

from mahlerent.lehmer import SearchConfig, enumerate_polys, search

cfg = SearchConfig(max_degree=3, height=1)
print("degree <= 3, height 1 candidates:", [str(f) for f in enumerate_polys(cfg)])

# %%
# Lehmer's polynomial
# -------------------
#
# Among monic reciprocal-ended polynomials of degree at most 10 with
# coefficients in {-1, 0, 1}, the smallest positive measure belongs to
# Lehmer's polynomial.

cfg = SearchConfig(max_degree=10, height=1, monic_reciprocal_only=True, top_k=5)
t0 = time.perf_counter()
records = search(cfg)
print(f"search took {time.perf_counter() - t0:.1f}s")
for i, r in enumerate(records, 1):
    print(f"{i}. {r.measure}  {r.poly}")

# %%
# Checkpoints
# -----------
#
# The results file doubles as a checkpoint; a stopped run resumes where it
# left off and ends with the same bytes.

with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "run.jsonl"
    cfg = SearchConfig(max_degree=7, height=1, top_k=3)
    search(cfg, checkpoint=str(path), chunk_size=128, max_chunks=1)
    print(path.read_text().splitlines()[0])
    search(cfg, checkpoint=str(path), chunk_size=128)
    print(path.read_text())
