"""
=====================================
Entropy calculus for crossed products
=====================================

Build small expression trees of dynamical systems and read off the Cartan
entropy and the total entropy as enclosures, together with the rule used at
each node.
"""

# %%
# A non-ergodic system with a gap
# -------------------------------
#
# Half the mass on a fair coin shift, half on a fair four-sided die.  KS
# entropy averages the two, the approximation entropy takes the larger.

import math

from mahlerent.calculus import classical_entropy, dumps, quantum_entropy
from mahlerent.calculus.classical import Bernoulli, WeightedUnion
from mahlerent.calculus.quantum import (
    BinaryShiftTorus,
    CrossedProductCommuting,
    FlowTime,
    PadicDoubling,
    Tensor,
    TwistedTorus,
)

LOG2 = math.log(2)

mixed = WeightedUnion(Bernoulli((0.5, 0.5)), Bernoulli((0.25,) * 4), 0.5)
rep = classical_entropy(mixed)
print(f"ks   = {rep.ks}  ({rep.ks.mid / LOG2:.3f} log 2)")
print(f"hcpa = {rep.hcpa}  ({rep.hcpa.mid / LOG2:.3f} log 2)")

# %%
# Presets and the twisted torus
# -----------------------------

for q in (PadicDoubling(3), BinaryShiftTorus(), TwistedTorus("t^2 - t - 1", 2)):
    r = quantum_entropy(q)
    print(f"{type(q).__name__:<18} cartan {r.cartan}  total {r.total}")

# %%
# The hypotheses are checked
# --------------------------
#
# A torus needs unit end coefficients and no root on the unit circle.

from mahlerent.calculus import HypothesisError  # noqa: E402

for f in ("t - 2", "t^2 + 1", "t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1"):
    try:
        quantum_entropy(TwistedTorus(f, 2))
    except HypothesisError as e:
        print("rejected:", e)

# %%
# Flows and tensor products, with the derivation trace
# ----------------------------------------------------

q = Tensor(FlowTime(PadicDoubling(3), 2.0), FlowTime(CrossedProductCommuting(Bernoulli((0.5, 0.5))), 1.0))
r = quantum_entropy(q)
for e in r.trace:
    vals = ", ".join(f"{k} {v}" for k, v in e.values.items())
    print(f"{e.node:<16} {e.rule:<22} {vals}")
print("as JSON:", dumps(q))
