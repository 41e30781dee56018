"""JSON form of system specs: one object per node with a ``kind`` field.

Examples::

    {"kind": "padic", "p": 3}
    {"kind": "twisted_torus", "f": "t^2 - t - 1", "n": 2}
    {"kind": "flow", "t": 2.0, "inner": {...}}
    {"kind": "tensor", "left": {...}, "right": {...}}
    {"kind": "crossed_product", "system": {"kind": "bernoulli", "p": [0.5, 0.5]}}

``power`` and ``flow`` exist in both layers; the layer is read off the
innermost leaf.
"""

from __future__ import annotations

import json
import math
from typing import Union

from ..interval import format_ext, parse_ext
from ..poly import PolyParseError, format_poly, parse
from . import classical as C
from . import quantum as Q
from .trace import HypothesisError, SpecError

__all__ = ["load_spec", "dump_spec", "loads", "dumps", "is_quantum"]

_CLASSICAL_KINDS = {"bernoulli", "markov", "rotation", "algebraic_dual", "product", "weighted_union"}
_QUANTUM_KINDS = {"crossed_product", "twisted_torus", "binary_shift_torus", "padic", "tensor",
                  "infinite_tensor_power"}


def _need(obj: dict, key: str):
    if key not in obj:
        raise SpecError(f"{obj.get('kind', '?')} node is missing {key!r}")
    return obj[key]


def _count(raw) -> Union[int, float]:
    if isinstance(raw, str):
        v = parse_ext(raw)
        if v != math.inf:
            raise SpecError(f"expected an integer or 'inf', got {raw!r}")
        return v
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise SpecError(f"expected an integer or 'inf', got {raw!r}")
    return raw


def _poly(raw):
    try:
        return parse(raw)
    except PolyParseError as e:
        raise SpecError(f"bad polynomial {raw!r}: {e}") from e


def _layer(obj) -> str:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpecError("every node must be an object with a 'kind'")
    kind = obj["kind"]
    if kind in _CLASSICAL_KINDS:
        return "classical"
    if kind in _QUANTUM_KINDS:
        return "quantum"
    if kind in ("power", "flow"):
        return _layer(_need(obj, "inner"))
    raise SpecError(f"unknown kind {kind!r}")


def is_quantum(obj: dict) -> bool:
    return _layer(obj) == "quantum"


def _classical(obj):
    kind = obj.get("kind")
    if kind == "bernoulli":
        return C.Bernoulli(tuple(_need(obj, "p")))
    if kind == "markov":
        return C.Markov(tuple(map(tuple, _need(obj, "P"))), tuple(_need(obj, "pi")))
    if kind == "rotation":
        return C.IrrationalRotation()
    if kind == "algebraic_dual":
        return C.AlgebraicDual(_poly(_need(obj, "f")), _count(obj.get("n", 1)))
    if kind == "product":
        return C.Product(_classical(_need(obj, "left")), _classical(_need(obj, "right")),
                         obj.get("ergodic"))
    if kind == "power":
        return C.Power(_classical(_need(obj, "inner")), _count(_need(obj, "m")))
    if kind == "flow":
        return C.FlowTime(_classical(_need(obj, "inner")), float(_need(obj, "t")))
    if kind == "weighted_union":
        return C.WeightedUnion(_classical(_need(obj, "left")), _classical(_need(obj, "right")),
                               float(_need(obj, "weight")))
    raise SpecError(f"{kind!r} is not a classical node")


def _quantum(obj):
    kind = obj.get("kind")
    if kind == "crossed_product":
        return Q.CrossedProductCommuting(_classical(_need(obj, "system")))
    if kind == "twisted_torus":
        return Q.TwistedTorus(_poly(_need(obj, "f")), _count(obj.get("n", 2)))
    if kind == "binary_shift_torus":
        return Q.BinaryShiftTorus(bool(obj.get("special_character", True)))
    if kind == "padic":
        return Q.PadicDoubling(_count(obj.get("p", 3)))
    if kind == "tensor":
        return Q.Tensor(_quantum(_need(obj, "left")), _quantum(_need(obj, "right")))
    if kind == "power":
        return Q.Power(_quantum(_need(obj, "inner")), _count(_need(obj, "m")))
    if kind == "flow":
        return Q.FlowTime(_quantum(_need(obj, "inner")), float(_need(obj, "t")))
    if kind == "infinite_tensor_power":
        return Q.InfiniteTensorPower(_quantum(_need(obj, "inner")))
    raise SpecError(f"{kind!r} is not a quantum node")


def load_spec(obj: dict):
    """Build a classical or quantum spec from its JSON object."""
    try:
        return _quantum(obj) if _layer(obj) == "quantum" else _classical(obj)
    except (SpecError, HypothesisError):
        raise
    except (TypeError, ValueError) as e:
        raise SpecError(str(e)) from e


def _n(v):
    return format_ext(v) if v == math.inf else v


def dump_spec(s) -> dict:
    if isinstance(s, C.Bernoulli):
        return {"kind": "bernoulli", "p": list(s.p)}
    if isinstance(s, C.Markov):
        return {"kind": "markov", "P": [list(r) for r in s.P], "pi": list(s.pi)}
    if isinstance(s, C.IrrationalRotation):
        return {"kind": "rotation"}
    if isinstance(s, C.AlgebraicDual):
        return {"kind": "algebraic_dual", "f": format_poly(s.f), "n": _n(s.n)}
    if isinstance(s, C.Product):
        out = {"kind": "product", "left": dump_spec(s.left), "right": dump_spec(s.right)}
        if s.ergodic is not None:
            out["ergodic"] = s.ergodic
        return out
    if isinstance(s, C.WeightedUnion):
        return {"kind": "weighted_union", "left": dump_spec(s.left),
                "right": dump_spec(s.right), "weight": s.weight}
    if isinstance(s, (C.Power, Q.Power)):
        return {"kind": "power", "m": s.m, "inner": dump_spec(s.inner)}
    if isinstance(s, (C.FlowTime, Q.FlowTime)):
        return {"kind": "flow", "t": s.t, "inner": dump_spec(s.inner)}
    if isinstance(s, Q.CrossedProductCommuting):
        return {"kind": "crossed_product", "system": dump_spec(s.system)}
    if isinstance(s, Q.TwistedTorus):
        return {"kind": "twisted_torus", "f": format_poly(s.f), "n": _n(s.n)}
    if isinstance(s, Q.BinaryShiftTorus):
        return {"kind": "binary_shift_torus", "special_character": s.special_character}
    if isinstance(s, Q.PadicDoubling):
        return {"kind": "padic", "p": s.p}
    if isinstance(s, Q.Tensor):
        return {"kind": "tensor", "left": dump_spec(s.left), "right": dump_spec(s.right)}
    if isinstance(s, Q.InfiniteTensorPower):
        return {"kind": "infinite_tensor_power", "inner": dump_spec(s.inner)}
    raise SpecError(f"cannot serialize {s!r}")


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON: {e}") from e
    return load_spec(obj)


def dumps(s, indent=None) -> str:
    return json.dumps(dump_spec(s), indent=indent)
