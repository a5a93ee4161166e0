"""Command-line front end.

Exit status: 0 for a positive answer (feasible, invertible, holds, found),
1 for a valid negative answer, 2 for bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import complete3 as c3
from . import dimcards, harte, nblock
from .errors import (
    HypothesisViolated, Infeasible, NotInvertible, NotSquare, SchemaError, ShapeMismatch,
    Singular, UnsatisfiableBounds,
)
from .exact import Mat, is_invertible
from .generate import GenSpec, generate

COMMANDS = ("check3", "complete3", "verify", "factor", "ghost", "dims", "checkn", "reduce", "search", "gen")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    seed: int = 0
    format: str = "json"
    options: dict = field(default_factory=dict)


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load(path: str, parser):
    obj = _load_json(path)
    try:
        return parser(obj)
    except SchemaError as exc:
        raise UsageError(f"{path}: field {exc}") from None


def _check3(cfg):
    inst = _load(cfg.inputs[0], c3.Instance3.from_json)
    rep = c3.check_conditions(inst)
    return (0 if rep.feasible else 1), {"command": "check3", "dims": inst.dims, "report": rep.to_json()}


def _complete3(cfg):
    inst = _load(cfg.inputs[0], c3.Instance3.from_json)
    try:
        comp, trace = c3.construct_completion(inst)
    except Infeasible as exc:
        return 1, {"command": "complete3", "feasible": False, "failed_condition": exc.condition,
                   "report": exc.report.to_json()}
    cert = c3.certify(c3.assemble(inst, comp))
    return 0, {
        "command": "complete3", "feasible": True,
        "completion": comp.to_json(), "trace": trace.to_json(), "certificate": cert.to_json(),
    }


def _verify(cfg):
    M = _load(cfg.inputs[0], Mat.from_json)
    try:
        cert = c3.certify(M)
    except NotSquare as exc:
        return 1, {"command": "verify", "invertible": False, "reason": str(exc)}
    except Singular as exc:
        return 1, {"command": "verify", "invertible": False, "rank": exc.rank,
                   "kernel_witness": exc.kernel_vector.to_json()}
    return 0, {"command": "verify", "invertible": True, "certificate": cert.to_json()}


def _factor(cfg):
    inst = _load(cfg.inputs[0], c3.Instance3.from_json)
    comp = _load(cfg.inputs[1], c3.Completion3.from_json)
    factors = c3.factorize(inst, comp)
    M = c3.assemble(inst, comp)
    exact = c3.product(factors) == M
    inv2, inv4 = is_invertible(factors[1]), is_invertible(factors[3])
    split = harte.theorem_splittings(factors)
    ok = exact and inv2 and inv4
    return (0 if ok else 1), {
        "command": "factor",
        "factors": [f.to_json() for f in factors],
        "product_equals_assembled": exact,
        "factor2_invertible": inv2, "factor4_invertible": inv4,
        "splittings": split.to_json(),
    }


def _ghost(cfg):
    S = _load(cfg.inputs[0], Mat.from_json)
    T = _load(cfg.inputs[1], Mat.from_json)
    rep = harte.ghost_identity(S, T)
    return (0 if rep.holds else 1), {"command": "ghost", "report": rep.to_json()}


def _dims(cfg):
    try:
        k, m, n, l = (dimcards.ExtDim.parse(cfg.options[x]) for x in "kmnl")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {"command": "dims", "k": k.to_json(), "m": m.to_json(), "n": n.to_json(), "l": l.to_json()}
    try:
        w = dimcards.decide_quotient_iso(k, m, n, l)
    except HypothesisViolated as exc:
        out.update(found=False, violated=exc.which)
        return 1, out
    out.update(found=True, achievable_J1=dimcards.achievable_codims(k, m).to_json(),
               achievable_J2=dimcards.achievable_codims(n, l).to_json(), **w.to_json())
    return 0, out


def _checkn(cfg):
    inst = _load(cfg.inputs[0], nblock.InstanceN.from_json)
    rep = nblock.check_necessary_n(inst)
    return (0 if rep.holds else 1), {"command": "checkn", "n": inst.n, "report": rep.to_json()}


def _reduce(cfg):
    inst = _load(cfg.inputs[0], nblock.InstanceN.from_json)
    comp = _load(cfg.inputs[1], nblock.CompletionN.from_json)
    try:
        art = nblock.reduce(inst, comp)
    except NotInvertible as exc:
        out = {"command": "reduce", "invertible": False, "rank": exc.rank}
        if exc.kernel_vector is not None:
            out["kernel_witness"] = exc.kernel_vector.to_json()
        return 1, out
    return 0, {"command": "reduce", "invertible": True, "artifacts": art.to_json(),
               "extracted_invertible": nblock.extracted_invertible(art)}


def _search(cfg):
    inst = _load(cfg.inputs[0], nblock.InstanceN.from_json)
    o = cfg.options
    res = nblock.search_completion_n(inst, cfg.seed, o["trials"], o["bound"])
    out = {"command": "search", "seed": cfg.seed, "trials": o["trials"], "bound": o["bound"]}
    if res is None:
        out["found"] = False
        return 1, out
    out.update(found=True, trial=res.trial, completion=res.completion.to_json())
    return 0, out


def _gen(cfg):
    o = cfg.options
    spec = GenSpec(kind=o["kind"], seed=cfg.seed, max_dim=o["max_dim"], bound=o["bound"], n=o["n"])
    try:
        return 0, generate(spec)
    except (UnsatisfiableBounds, ValueError) as exc:
        raise UsageError(str(exc)) from None


_HANDLERS = {
    "check3": _check3, "complete3": _complete3, "verify": _verify, "factor": _factor,
    "ghost": _ghost, "dims": _dims, "checkn": _checkn, "reduce": _reduce,
    "search": _search, "gen": _gen,
}


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict) and {"rows", "cols", "entries"} <= obj.keys():
        lines.append(f"{pad}[{obj['rows']}x{obj['cols']}]")
        for r in obj["entries"]:
            lines.append(pad + "  " + " ".join(f"{x:>5}" for x in r))
    elif isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not (isinstance(v, list) and not isinstance(v[0], (dict, list))):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            lines.append(f"{pad}- [{i}]")
            lines.append(render_text(v, indent + 1))
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Dispatch one command; returns (exit status, report). Raises UsageError on bad input."""
    if cfg.command not in _HANDLERS:
        raise UsageError(f"unknown command {cfg.command!r}")
    try:
        return _HANDLERS[cfg.command](cfg)
    except ShapeMismatch as exc:
        raise UsageError(f"shape mismatch: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(
        prog="blockcomplete",
        description="Decide, construct and certify invertible completions of block upper triangular matrices.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("check3", parents=[common], help="feasibility report for a 3x3 instance")
    s.add_argument("instance")
    s = sub.add_parser("complete3", parents=[common], help="construct and certify a completion")
    s.add_argument("instance")
    s = sub.add_parser("verify", parents=[common], help="certify a matrix invertible or give a kernel witness")
    s.add_argument("matrix")
    s = sub.add_parser("factor", parents=[common], help="five-factor decomposition of an assembled matrix")
    s.add_argument("instance")
    s.add_argument("completion")
    s = sub.add_parser("ghost", parents=[common], help="ghost-of-an-index dimension identity for S, T")
    s.add_argument("S")
    s.add_argument("T")
    s = sub.add_parser("dims", parents=[common], help="quotient-dimension witness over finite and aleph-0 dimensions")
    for name in "kmnl":
        s.add_argument(f"--{name}", required=True, help="nonnegative integer or 'inf'")
    s = sub.add_parser("checkn", parents=[common], help="necessary conditions for an n x n instance")
    s.add_argument("instance")
    s = sub.add_parser("reduce", parents=[common], help="reduce an invertible n x n completion")
    s.add_argument("instance")
    s.add_argument("completion")
    s = sub.add_parser("search", parents=[common], help="seeded random search for an n x n completion")
    s.add_argument("instance")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--bound", type=int, default=2)
    s = sub.add_parser("gen", parents=[common], help="generate a seeded instance")
    s.add_argument("--kind", choices=GenSpec.KINDS, required=True)
    s.add_argument("--max-dim", type=int, default=4)
    s.add_argument("--bound", type=int, default=2)
    s.add_argument("--n", type=int, default=4, help="number of diagonal blocks for randomN")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    inputs = [getattr(ns, k) for k in ("instance", "matrix", "S", "T", "completion") if getattr(ns, k, None)]
    options = {}
    if ns.command == "dims":
        options = {x: getattr(ns, x) for x in "kmnl"}
    elif ns.command == "search":
        options = {"trials": ns.trials, "bound": ns.bound}
    elif ns.command == "gen":
        options = {"kind": ns.kind, "max_dim": ns.max_dim, "bound": ns.bound, "n": ns.n}
    return RunConfig(ns.command, inputs, ns.output, ns.seed, ns.format, options)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        status, report = run(cfg)
    except UsageError as exc:
        print(f"blockcomplete {cfg.command}: error: {exc}", file=sys.stderr)
        return 2
    text = dumps(report) if cfg.format == "json" else render_text(report) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
