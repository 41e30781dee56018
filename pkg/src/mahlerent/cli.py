"""Command-line front end: ``mahlerent {mahler,entropy,synthesize,lehmer}``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from .calculus import (
    EntropyInterval,
    HypothesisError,
    SpecError,
    dump_spec,
    load_spec,
    quantum_entropy,
    synthesize_pair,
)
from .calculus.classical import classical_entropy
from .calculus.specio import is_quantum
from .interval import format_ext, parse_ext
from .lehmer import CheckpointMismatch, SearchConfig, search
from .mahler import MahlerInconsistency, mahler
from .poly import PolyParseError, format_poly, parse

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_TOLERANCE = 3
EXIT_INCONSISTENT = 4
EXIT_HYPOTHESIS = 5
EXIT_ROUNDTRIP = 6
EXIT_CHECKPOINT = 7

SYNTH_TOL = 1e-9
_LOG2 = math.log(2.0)


class Output:
    """Display settings.  Values are nats internally; conversion happens here."""

    def __init__(self, as_json: bool, units: str, digits: Optional[int]):
        self.as_json = as_json
        self.units = units
        self.digits = digits

    def convert(self, x: float) -> float:
        if self.units == "nats" or math.isinf(x) or x == 0:
            return x
        return x / _LOG2

    def number(self, x: float) -> str:
        x = self.convert(x)
        if math.isinf(x):
            return "inf"
        return f"{x:.{self.digits}g}" if self.digits else repr(x)

    def interval(self, iv: EntropyInterval) -> str:
        if iv.is_point:
            return self.number(iv.lo)
        return f"[{self.number(iv.lo)}, {self.number(iv.hi)}]"

    def json_interval(self, iv: EntropyInterval) -> dict:
        return {"lo": format_ext(self.convert(iv.lo)), "hi": format_ext(self.convert(iv.hi))}

    def emit(self, payload: dict, text: str) -> None:
        if self.as_json:
            payload = {"units": self.units, **payload}
            print(json.dumps(payload, indent=2))
        else:
            print(text)


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


# ------------------------------------------------------------------ mahler


def cmd_mahler(args, out: Output) -> int:
    try:
        f = parse(args.poly)
    except PolyParseError as e:
        _err(str(e))
        return EXIT_PARSE
    try:
        res = mahler(f, args.eps, validate=args.validate)
    except MahlerInconsistency as e:
        _err(str(e))
        return EXIT_INCONSISTENT
    except (ValueError, ZeroDivisionError) as e:
        _err(str(e))
        return EXIT_PARSE

    payload = res.to_json()
    payload["value"] = out.json_interval(res.value)
    split = res.split
    lines = [f"f       = {format_poly(f)}",
             f"m(f)    = {out.interval(res.value)} {out.units}"]
    if split.cyclo_factors:
        lines.append("cyclotomic factors: " + ", ".join(
            f"Phi_{d}" + (f"^{e}" if e > 1 else "") for d, e in split.cyclo_factors))
    if split.content != 1:
        lines.append(f"content = {split.content}")
    lines.append(f"methods = {', '.join(res.method_tags)}; precision {res.precision} bits")
    if res.jensen is not None:
        lines.append(f"jensen  = {out.interval(res.jensen.value)} (grid {res.jensen.grid})")
    if not res.tolerance_met:
        lines.append(f"warning: enclosure width {res.value.width:.3g} exceeds eps {args.eps}")
    out.emit(payload, "\n".join(lines))
    return EXIT_OK if res.tolerance_met else EXIT_TOLERANCE


# ------------------------------------------------------------------ entropy


def _trace_text(trace, out: Output) -> list[str]:
    lines = []
    for e in trace:
        vals = ", ".join(f"{k}={out.interval(v)}" for k, v in e.values.items())
        lines.append(f"  {e.node:<24} {e.rule:<26} {vals}")
        lines.append(f"  {'':<24} {e.citation}")
        for n in e.notes:
            lines.append(f"  {'':<24} note: {n}")
    return lines


def _evaluate(spec_obj: dict, eps: float):
    spec = load_spec(spec_obj)
    if is_quantum(spec_obj):
        return spec, quantum_entropy(spec, eps)
    return spec, classical_entropy(spec, eps)


def cmd_entropy(args, out: Output) -> int:
    try:
        with open(args.spec) if args.spec != "-" else sys.stdin as fh:
            obj = json.load(fh)
        spec, rep = _evaluate(obj, args.eps)
    except OSError as e:
        _err(str(e))
        return EXIT_PARSE
    except json.JSONDecodeError as e:
        _err(f"invalid JSON: {e}")
        return EXIT_PARSE
    except HypothesisError as e:
        _err(f"hypothesis violated: {e}")
        return EXIT_HYPOTHESIS
    except SpecError as e:
        _err(f"schema error: {e}")
        return EXIT_PARSE

    payload = rep.to_json()
    if hasattr(rep, "cartan"):
        payload["cartan"] = out.json_interval(rep.cartan)
        payload["total"] = out.json_interval(rep.total)
        head = [f"cartan entropy = {out.interval(rep.cartan)} {out.units}",
                f"total entropy  = {out.interval(rep.total)} {out.units}"]
    else:
        payload["ks"] = out.json_interval(rep.ks)
        payload["hcpa"] = out.json_interval(rep.hcpa)
        head = [f"KS entropy = {out.interval(rep.ks)} {out.units}",
                f"hcpa       = {out.interval(rep.hcpa)} {out.units}",
                f"ergodic    = {rep.ergodic}"]
    lines = head + ["trace:"] + _trace_text(rep.trace, out)
    lines += [f"warning: {w}" for w in rep.warnings]
    out.emit(payload, "\n".join(lines))
    return EXIT_OK


# ------------------------------------------------------------------ synthesize


def _hits(target: float, got: EntropyInterval) -> bool:
    if math.isinf(target):
        return got.lo == math.inf
    return got.is_finite and abs(got.lo - target) <= SYNTH_TOL and abs(got.hi - target) <= SYNTH_TOL


def cmd_synthesize(args, out: Output) -> int:
    try:
        s, t = parse_ext(args.s), parse_ext(args.t)
        spec = synthesize_pair(s, t)
    except ValueError as e:
        _err(str(e))
        return EXIT_USAGE
    rep = quantum_entropy(spec, args.eps)
    ok = _hits(s, rep.cartan) and _hits(t, rep.total)
    payload = {
        "spec": dump_spec(spec),
        "target": {"cartan": format_ext(out.convert(s)), "total": format_ext(out.convert(t))},
        "achieved": {"cartan": out.json_interval(rep.cartan),
                     "total": out.json_interval(rep.total)},
        "within_tolerance": ok,
    }
    text = "\n".join([
        "spec: " + json.dumps(dump_spec(spec)),
        f"target   cartan {out.number(s)}, total {out.number(t)} {out.units}",
        f"achieved cartan {out.interval(rep.cartan)}, total {out.interval(rep.total)} {out.units}",
        "round-trip ok" if ok else f"round-trip misses tolerance {SYNTH_TOL}",
    ])
    out.emit(payload, text)
    return EXIT_OK if ok else EXIT_ROUNDTRIP


# ------------------------------------------------------------------ lehmer


def cmd_lehmer(args, out: Output) -> int:
    config = SearchConfig(args.max_degree, args.height, args.monic_reciprocal, args.top, args.eps)
    try:
        config.validate()
    except ValueError as e:
        _err(f"invalid config: {e}")
        return EXIT_USAGE
    if args.workers < 1:
        _err("invalid config: workers must be at least 1")
        return EXIT_USAGE

    def progress(chunks: int, kept: int) -> None:
        print(f"lehmer: {chunks} chunks done, {kept} records kept", file=sys.stderr)

    try:
        records = search(config, workers=args.workers, checkpoint=args.checkpoint,
                         progress=progress)
    except CheckpointMismatch as e:
        _err(str(e))
        return EXIT_CHECKPOINT
    payload = {"config": config.to_json(),
               "records": [dict(r.to_json(), measure=out.json_interval(r.measure))
                           for r in records]}
    lines = [f"{i:>3}  {out.interval(r.measure):<44} {format_poly(r.poly)}"
             for i, r in enumerate(records, 1)]
    out.emit(payload, "\n".join(lines) if lines else "no records")
    return EXIT_OK


# ------------------------------------------------------------------ entry


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies suppress defaults so flags given before the subcommand survive
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=d(False),
                        help="machine-readable output")
    common.add_argument("--units", choices=("nats", "bits", "log2-units"), default=d("nats"))
    common.add_argument("--eps", type=float, default=d(1e-10),
                        help="target enclosure width (nats)")
    common.add_argument("--precision", type=int, default=d(None), metavar="DIGITS",
                        help="significant digits to print (default: shortest round-trip)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(True)
    p = argparse.ArgumentParser(prog="mahlerent", parents=[_common(False)],
                                description="Certified Mahler measures and entropy calculus.",)
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mahler", parents=[common], help="Mahler measure of a Laurent polynomial")
    m.add_argument("poly")
    m.add_argument("--validate", action="store_true", help="cross-check with the Jensen integral")
    m.set_defaults(func=cmd_mahler)

    e = sub.add_parser("entropy", parents=[common], help="evaluate a system spec (JSON file or -)")
    e.add_argument("spec")
    e.set_defaults(func=cmd_entropy)

    s = sub.add_parser("synthesize", parents=[common], help="system with entropies (s, t)")
    s.add_argument("s")
    s.add_argument("t")
    s.set_defaults(func=cmd_synthesize)

    lh = sub.add_parser("lehmer", parents=[common], help="search for small Mahler measures")
    lh.add_argument("--max-degree", type=int, required=True)
    lh.add_argument("--height", type=int, default=1)
    lh.add_argument("--monic-reciprocal", action="store_true")
    lh.add_argument("--top", type=int, default=10)
    lh.add_argument("--workers", type=int, default=1)
    lh.add_argument("--checkpoint", default=None)
    lh.set_defaults(func=cmd_lehmer)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.precision is not None and args.precision < 1:
        _err("--precision must be positive")
        return EXIT_USAGE
    if not args.eps > 0:
        _err("--eps must be positive")
        return EXIT_USAGE
    out = Output(args.json, args.units, args.precision)
    return args.func(args, out)


if __name__ == "__main__":
    sys.exit(main())
