"""
==========================================
Realizing a prescribed pair of entropies
==========================================

For any 0 <= s <= t <= inf, ``synthesize_pair`` builds a system whose
Cartan entropy is s and whose total entropy is t.
"""

# %%
import math

from mahlerent.calculus import dumps, quantum_entropy, synthesize_pair

LOG2 = math.log(2)

for s, t in [(0, LOG2), (LOG2, 3 * LOG2), (0.3, 0.3), (1.0, math.pi), (0, math.inf), (math.inf, math.inf)]:
    q = synthesize_pair(s, t)
    r = quantum_entropy(q)
    print(f"target ({s:.4f}, {t:.4f})  achieved cartan {r.cartan}  total {r.total}")
    print("   ", dumps(q))

# %%
# The order matters
# -----------------

try:
    synthesize_pair(1.0, 0.5)
except ValueError as e:
    print("refused:", e)
