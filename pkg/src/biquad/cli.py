"""Command line front end: ``biquad analyze|pbw|normalize|calculus|catalog``.

Exit codes: 0 success, 1 the presentation is invalid or has no PBW basis,
2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, TextIO

from .calculus import Obstruction, derive_forced_twists
from .catalog import UnknownName, catalog_names, catalog_text
from .formats import ParseError, ValidationError, parse_presentation_file, parse_word
from .freealg import LEFTMOST, RIGHTMOST, normalize
from .presentation import AlgebraPresentation, check_pbw3_closed, check_pbw_by_overlaps
from .scalar import ScalarSyntaxError
from .smoothness import (
    DEFAULT_DEPTH,
    SMOOTH,
    InconsistentPresentation,
    analyze,
    verify_witness,
)

__all__ = ["Report", "build_parser", "load_target", "run_command", "emit_report", "analysis_report", "main"]

EXIT_OK, EXIT_ANALYSIS, EXIT_USAGE = 0, 1, 2

INCONSISTENT = "inconsistent"


class UsageError(Exception):
    pass


@dataclass
class Report:
    kind: str
    payload: Dict[str, Any]
    format: str = "text"


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------

def load_target(target: str) -> AlgebraPresentation:
    """A presentation from a file path, or from the catalog if no such file exists.

    The presentation keeps the orientation it was written in.
    """
    if os.path.exists(target):
        try:
            with open(target, encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise UsageError(f"{target}: cannot read file ({exc})") from None
    else:
        try:
            text = catalog_text(target)
        except UnknownName:
            raise UsageError(f"{target}: no such file or catalog entry") from None
    return parse_presentation_file(text, translate=False)


def _src_name(pres: AlgebraPresentation, target: str) -> str:
    return pres.name if pres.name is not None else target


# ---------------------------------------------------------------------------
# payload builders
# ---------------------------------------------------------------------------

def _failures(pbw) -> List[Dict[str, Any]]:
    return [{"triple": list(t), "difference": diff.render()} for t, diff in pbw.failures]


def _depth_flag(passed: Optional[bool], depth: int):
    if passed is None:
        return None
    return depth if passed else False


def analysis_report(pres: AlgebraPresentation, target: str, depth: int = DEFAULT_DEPTH) -> Dict[str, Any]:
    """The analyze payload, keys in the documented order."""
    t0 = time.perf_counter()
    out: Dict[str, Any] = {
        "name": _src_name(pres, target),
        "n": pres.n,
        "orientation": pres.orientation,
    }
    try:
        v = analyze(pres, depth)
    except InconsistentPresentation as exc:
        out["pbw"] = {"consistent": False, "failures": _failures(exc.report)}
        out["verdict"] = {"status": INCONSISTENT}
        out["conditions"] = []
        out["checks"] = {"dd_zero_depth": None, "leibniz_depth": None,
                         "connectedness_depth": None, "integral_identity": None}
        out["timings"] = {"total": round(time.perf_counter() - t0, 6)}
        return out
    out["pbw"] = {"consistent": True, "failures": []}
    verdict: Dict[str, Any] = {"status": v.status}
    if v.obstruction is not None:
        verdict["obstruction"] = list(v.obstruction)
    if v.witness is not None:
        verdict["witness"] = v.witness.render()
    out["verdict"] = verdict
    out["conditions"] = [
        {"id": c.id, "condition": c.label, "indices": list(c.indices), "lhs": c.lhs.render(), "holds": c.holds}
        for c in v.conditions
    ]
    ch = v.checks
    out["checks"] = {
        "dd_zero_depth": _depth_flag(ch and ch.dd_zero, depth),
        "leibniz_depth": _depth_flag(ch and ch.leibniz, depth),
        "connectedness_depth": _depth_flag(ch and ch.connected, depth),
        "integral_identity": None if ch is None else all(ch.integral.values()),
    }
    timings = {k: round(s, 6) for k, s in v.timings.items()}
    timings["total"] = round(time.perf_counter() - t0, 6)
    out["timings"] = timings
    # text-only extras, dropped from json
    out["_relations"] = [pres.relation_text(i, j) for i, j in pres.pairs()]
    if ch is not None:
        out["_twist_checks"] = {
            "endomorphism": ch.endomorphism,
            "commute": ch.commute,
            "volume": ch.volume,
            "defects": {f"rho{k}": {f"({i},{j})": p.render() for (i, j), p in d.items()}
                        for k, d in ch.defects.items()},
        }
    return out


def pbw_report(pres: AlgebraPresentation, target: str) -> Dict[str, Any]:
    r = check_pbw_by_overlaps(pres)
    out: Dict[str, Any] = {
        "name": _src_name(pres, target),
        "n": pres.n,
        "orientation": pres.orientation,
        "consistent": r.consistent,
        "failures": _failures(r),
        "closed_conditions": None,
    }
    if pres.n == 3:
        out["closed_conditions"] = [
            {"id": c.id, "condition": c.text, "lhs": c.lhs.render(), "rhs": c.rhs.render(),
             "difference": c.difference.render(), "holds": c.holds}
            for c in check_pbw3_closed(pres)
        ]
    return out


def calculus_report(pres: AlgebraPresentation, target: str, degree: int) -> Dict[str, Any]:
    out: Dict[str, Any] = {"name": _src_name(pres, target), "n": pres.n, "degree": degree}
    tw = derive_forced_twists(pres)
    if isinstance(tw, Obstruction):
        out["obstruction"] = list(tw.triple)
        out["twists"] = None
        out["checks"] = None
        return out
    rep = verify_witness(pres, tw, degree)
    out["obstruction"] = None
    out["twists"] = tw.render()
    out["checks"] = {
        "endomorphism": rep.endomorphism,
        "commute": rep.commute,
        "dd_zero": rep.dd_zero,
        "leibniz": rep.leibniz,
        "connected": rep.connected,
        "volume": rep.volume,
        "integral_identity": {str(j): ok for j, ok in rep.integral.items()},
        "passed": rep.passed,
    }
    return out


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _public(payload: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v for k, v in payload.items() if not k.startswith("_")}


def _rho_lines(tables: Dict[str, Dict[str, str]]) -> List[str]:
    return [f"  {r}: " + ", ".join(f"{x} -> {img}" for x, img in t.items()) for r, t in tables.items()]


def _text_analysis(p: Dict[str, Any]) -> List[str]:
    lines = [f"algebra: {p['name']} (n = {p['n']}, {p['orientation']})"]
    rel = p.get("_relations")
    if rel:
        lines.append("relations:")
        lines += [f"  {r}" for r in rel]
    pbw = p["pbw"]
    lines.append("pbw: " + ("consistent" if pbw["consistent"] else "INCONSISTENT"))
    for f in pbw["failures"]:
        lines.append(f"  overlap {tuple(f['triple'])}: {f['difference']}")
    v = p["verdict"]
    lines.append(f"verdict: {v['status']}")
    if "obstruction" in v:
        i, j, k = v["obstruction"]
        lines.append(f"obstruction: a({i},{j},{k}) ≠ 0")
    if "witness" in v:
        lines.append("twists (p dx_k = dx_k rho_k(p)):")
        lines += _rho_lines(v["witness"])
    tc = p.get("_twist_checks")
    if tc and v["status"] != SMOOTH:
        lines.append(f"forced twists: endomorphism {tc['endomorphism']}, commute {tc['commute']}")
        for r, d in tc["defects"].items():
            for pair, poly in d.items():
                lines.append(f"  {r} breaks relation {pair}: defect {poly}")
    if p["conditions"]:
        failed = sum(1 for c in p["conditions"] if not c["holds"])
        lines.append(f"sufficient conditions (ascending form): {len(p['conditions']) - failed} hold, {failed} fail")
        for c in p["conditions"]:
            tag = "ok  " if c["holds"] else "FAIL"
            idx = ",".join(map(str, c["indices"]))
            lines.append(f"  [{tag}] {c['condition']} = {c['lhs']}  ({idx})")
    ch = p["checks"]
    if any(val is not None for val in ch.values()):
        lines.append("checks: " + ", ".join(f"{k}={_fmt_check(val)}" for k, val in ch.items()))
    return lines


def _fmt_check(v) -> str:
    if v is None:
        return "n/a"
    if v is True:
        return "pass"
    if v is False:
        return "FAIL"
    return str(v)


def _text_pbw(p: Dict[str, Any]) -> List[str]:
    lines = [f"algebra: {p['name']} (n = {p['n']}, {p['orientation']})",
             "pbw: " + ("consistent" if p["consistent"] else "INCONSISTENT")]
    for f in p["failures"]:
        lines.append(f"  overlap {tuple(f['triple'])}: {f['difference']}")
    if p["closed_conditions"] is not None:
        lines.append("closed conditions (11)-(20):")
        for c in p["closed_conditions"]:
            tag = "ok  " if c["holds"] else "FAIL"
            lines.append(f"  [{tag}] ({c['id']}) {c['condition']}   lhs - rhs = {c['difference']}")
    return lines


def _text_calculus(p: Dict[str, Any]) -> List[str]:
    lines = [f"algebra: {p['name']} (n = {p['n']}), verification degree {p['degree']}"]
    if p["obstruction"] is not None:
        i, j, k = p["obstruction"]
        lines.append(f"obstruction: a({i},{j},{k}) ≠ 0; no free calculus of rank {p['n']}")
        return lines
    lines.append("twists (p dx_k = dx_k rho_k(p)):")
    lines += _rho_lines(p["twists"])
    for k, val in p["checks"].items():
        if k == "integral_identity":
            val = ", ".join(f"j={j}: {_fmt_check(ok)}" for j, ok in val.items()) or "n/a"
            lines.append(f"  {k}: {val}")
        else:
            lines.append(f"  {k}: {_fmt_check(val)}")
    return lines


def emit_report(report: Report) -> str:
    """Deterministic rendering; json keys follow insertion order."""
    payload = report.payload
    if report.format == "json":
        if isinstance(payload, list):
            data = [_public(p) for p in payload]
        else:
            data = _public(payload)
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    render = {"analyze": _text_analysis, "pbw": _text_pbw, "calculus": _text_calculus}[report.kind]
    items = payload if isinstance(payload, list) else [payload]
    return "\n\n".join("\n".join(render(p)) for p in items) + "\n"


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _depth(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="biquad", description="Bi-quadratic algebras: PBW checks, normal forms and differential smoothness.")
    sub = p.add_subparsers(dest="verb", metavar="COMMAND")
    fmt = dict(choices=("text", "json"), default="text", help="output format (default text)")

    a = sub.add_parser("analyze", help="smoothness verdict for one or more presentations")
    a.add_argument("targets", nargs="+", metavar="FILE", help="presentation file or catalog name")
    a.add_argument("--depth", type=_depth, default=DEFAULT_DEPTH, help=f"verification degree (default {DEFAULT_DEPTH})")
    a.add_argument("--format", **fmt)

    b = sub.add_parser("pbw", help="PBW consistency by overlaps (and closed conditions when n = 3)")
    b.add_argument("target", metavar="FILE")
    b.add_argument("--format", **fmt)

    c = sub.add_parser("normalize", help="PBW normal form of a word")
    c.add_argument("target", metavar="FILE")
    c.add_argument("--word", required=True, help='word such as "x2 x1^2"')
    c.add_argument("--strategy", choices=(LEFTMOST, RIGHTMOST), default=LEFTMOST)
    c.add_argument("--format", **fmt)

    d = sub.add_parser("calculus", help="forced twists and calculus verification record")
    d.add_argument("target", metavar="FILE")
    d.add_argument("--degree", type=_depth, default=DEFAULT_DEPTH)
    d.add_argument("--format", **fmt)

    e = sub.add_parser("catalog", help="list catalog entries or print one as a presentation file")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("name", nargs="?")
    return p


def _run(args, out: TextIO) -> int:
    if args.verb == "analyze":
        payloads = []
        code = EXIT_OK
        for t in args.targets:
            pres = load_target(t)
            rep = analysis_report(pres, t, args.depth)
            if rep["verdict"]["status"] == INCONSISTENT:
                code = EXIT_ANALYSIS
            payloads.append(rep)
        payload = payloads[0] if len(payloads) == 1 else payloads
        out.write(emit_report(Report("analyze", payload, args.format)))
        return code
    if args.verb == "pbw":
        pres = load_target(args.target)
        out.write(emit_report(Report("pbw", pbw_report(pres, args.target), args.format)))
        return EXIT_OK
    if args.verb == "normalize":
        pres = load_target(args.target)
        if not check_pbw_by_overlaps(pres).consistent:
            raise InconsistentPresentation(check_pbw_by_overlaps(pres))
        word = parse_word(args.word, pres.n)
        nf = normalize(word, pres.descending(), args.strategy)
        if args.format == "json":
            out.write(json.dumps({"word": args.word, "strategy": args.strategy, "normal_form": nf.render()},
                                 indent=2) + "\n")
        else:
            out.write(nf.render() + "\n")
        return EXIT_OK
    if args.verb == "calculus":
        pres = load_target(args.target)
        if not check_pbw_by_overlaps(pres).consistent:
            raise InconsistentPresentation(check_pbw_by_overlaps(pres))
        out.write(emit_report(Report("calculus", calculus_report(pres, args.target, args.degree), args.format)))
        return EXIT_OK
    if args.verb == "catalog":
        if args.list:
            out.write("\n".join(catalog_names()) + "\n")
        else:
            try:
                out.write(catalog_text(args.name))
            except UnknownName:
                raise UsageError(f"unknown catalog entry {args.name!r}") from None
        return EXIT_OK
    raise UsageError("missing command (analyze, pbw, normalize, calculus, catalog)")


def run_command(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Run one invocation; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(list(argv))
        return _run(args, out)
    except UsageError as exc:
        err.write(f"biquad: error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        where = f"line {exc.line}: " if exc.line is not None else ""
        err.write(f"biquad: parse error: {where}{exc.message}\n")
        return EXIT_USAGE
    except ScalarSyntaxError as exc:
        err.write(f"biquad: parse error: {exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        err.write("biquad: invalid presentation:\n" + "".join(f"  {v}\n" for v in exc.violations))
        return EXIT_ANALYSIS
    except InconsistentPresentation as exc:
        err.write(f"biquad: {exc}\n")
        return EXIT_ANALYSIS
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def main() -> None:
    for stream in (sys.stdout, sys.stderr):
        try:
            stream.reconfigure(errors="replace")
        except AttributeError:
            pass
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
