"""Batch command-line front end.

Every command prints a JSON (or plain text) report and exits with 0 for a
YES/accept outcome, 1 for NO/reject and 2 for errors. Reports are
deterministic apart from their ``timing`` block.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
import warnings
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .complex import BudgetExceeded, CliqueComplexView, hodge_laplacian, homology_summary
from .graphs import GraphError, SignedGraph, has_balanced_component, has_bipartite_component
from .harness import crosscheck_report
from .io import ParseError, format_dense, format_edge_list, parse_edge_list
from .linalg import kernel_dim
from .oracle import DEFAULT_INDEX_BUDGET, MARKED, OracleError, SparseAccess, conformance_check, from_explicit, materialize
from .reductions import CliqueReductionInstance, clique_oracle, marked_to_traditional, negative_subdivision_oracle
from .spectral import SIGN_COUNT, ADJ_COUNT, signed_laplacian, signless_laplacian, simulate_verifier

SCHEMA = "sparsebalance.report/1"
STAGES = ("clique-signed", "subdivide", "marked-traditional")
DEFAULT_CHAIN = ",".join(STAGES)

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class IncompatibleChain(ValueError):
    pass


class Timer:
    def __init__(self):
        self.marks: Dict[str, float] = {}

    def run(self, key: str, fn, *args, **kwargs):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.marks[key] = round(self.marks.get(key, 0.0) + time.perf_counter() - t0, 6)


def _load(path: str) -> Tuple[object, Dict]:
    raw = Path(path).read_bytes()
    g = parse_edge_list(raw.decode("utf-8"))
    desc = {
        "file": Path(path).name,
        "sha256": hashlib.sha256(raw).hexdigest(),
        "kind": "signed" if isinstance(g, SignedGraph) else "unsigned",
        "n_bits": g.n_bits,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
    }
    return g, desc


def _base_report(command: str, instance: Optional[Dict]) -> Dict:
    return {"schema": SCHEMA, "version": __version__, "command": command, "instance": instance,
            "warnings": []}


def _laplacian(g):
    return signed_laplacian(g) if isinstance(g, SignedGraph) else signless_laplacian(g)


def _decide(g, count_isolated: bool = True) -> bool:
    if isinstance(g, SignedGraph):
        return has_balanced_component(g, count_isolated).answer
    return has_bipartite_component(g, count_isolated).answer


class Artifacts:
    """Writes text artifacts under ``--out``; a no-op when no directory was given."""

    def __init__(self, out: Optional[str]):
        self.root = Path(out) if out else None
        self.names: List[str] = []
        if self.root:
            self.root.mkdir(parents=True, exist_ok=True)

    def write(self, name: str, text: str) -> None:
        self.names.append(name)
        if self.root:
            (self.root / name).write_text(text, encoding="utf-8", newline="\n")


def _complex_from(g, budget: int) -> CliqueComplexView:
    if isinstance(g, SignedGraph):
        raise IncompatibleChain("clique homology needs an unsigned graph file")
    return CliqueComplexView.from_graph(g, budget=max(budget, 1))


# -- commands ------------------------------------------------------------------------

def cmd_homology(args, timer: Timer) -> Tuple[Dict, int]:
    g, desc = _load(args.graph)
    c = _complex_from(g, args.budget)
    rep = _base_report("homology", desc)
    summary = timer.run("betti", homology_summary, c, args.p)
    lap = timer.run("hodge", hodge_laplacian, c, args.p)
    kdim = timer.run("kernel", kernel_dim, lap)
    arts = Artifacts(args.out)
    arts.write(f"hodge-p{args.p}.matrix", format_dense(lap.exact()))
    if kdim != summary["betti"]:
        rep["warnings"].append(f"kernel dimension {kdim} differs from betti number {summary['betti']}")
    rep.update({
        "p": args.p,
        "homology": summary,
        "hodge_kernel_dim": kdim,
        "decisions": {"betti_nonzero": summary["betti"] > 0},
        "answer": "YES" if summary["betti"] > 0 else "NO",
        "artifacts": arts.names,
    })
    return rep, EXIT_YES if summary["betti"] > 0 else EXIT_NO


def build_chain(g, stages: Sequence[str], p: Optional[int], lenient: bool,
                budget: int) -> List[Tuple[str, SparseAccess, Dict]]:
    """Apply the reduction stages in order; returns ``(stage, oracle, params)`` per stage."""
    out: List[Tuple[str, SparseAccess, Dict]] = []
    current: Optional[SparseAccess] = None
    zero_sign_rows = False
    for k, stage in enumerate(stages):
        if stage == "clique-signed":
            if k != 0:
                raise IncompatibleChain("clique-signed must be the first stage")
            if p is None:
                raise IncompatibleChain("clique-signed needs --p")
            inst = CliqueReductionInstance(_complex_from(g, budget), p)
            current = clique_oracle(inst)
            zero_sign_rows = True
            params = {"p": p, "complex_vertices": inst.n, "candidates": inst.candidates, "m": inst.m}
        else:
            if current is None:
                current = from_explicit(g)
            if stage == "subdivide":
                if not current.signed:
                    raise IncompatibleChain("subdivide needs a signed input")
                if current.mode != MARKED:
                    raise IncompatibleChain("subdivide needs marked access")
                soft = lenient or zero_sign_rows
                current = negative_subdivision_oracle(current, lenient=soft)
                zero_sign_rows = False
                params = {"lenient": soft}
            elif stage == "marked-traditional":
                if current.mode != MARKED:
                    raise IncompatibleChain("marked-traditional applied twice")
                current = marked_to_traditional(current)
                params = {}
            else:
                raise IncompatibleChain(f"unknown stage {stage!r}")
        params.update({"n_bits": current.n_bits, "S": current.S, "mode": current.mode,
                       "signed": current.signed})
        out.append((stage, current, params))
    return out


def _parse_chain(text: str) -> List[str]:
    stages = [s.strip() for s in text.split(",") if s.strip()]
    if not stages:
        raise IncompatibleChain("empty chain")
    for s in stages:
        if s not in STAGES:
            raise IncompatibleChain(f"unknown stage {s!r}; choose from {', '.join(STAGES)}")
    return stages


def _agreement(decisions: Dict[str, bool]) -> Dict:
    keys = sorted(decisions)
    matrix = {f"{a} | {b}": decisions[a] == decisions[b] for a, b in combinations(keys, 2)}
    return {"all_equal": len(set(decisions.values())) <= 1, "pairs": matrix}


def cmd_reduce(args, timer: Timer) -> Tuple[Dict, int]:
    g, desc = _load(args.graph)
    stages = _parse_chain(args.chain or DEFAULT_CHAIN)
    rep = _base_report("reduce", desc)
    arts = Artifacts(args.out)
    arts.write("00-input.edges", format_edge_list(g))
    decisions: Dict[str, bool] = {}
    if stages[0] == "clique-signed":
        if args.p is None:
            raise IncompatibleChain("clique-signed needs --p")
        c = _complex_from(g, args.budget)
        summary = timer.run("betti", homology_summary, c, args.p)
        decisions["betti_nonzero"] = summary["betti"] > 0
        rep["homology"] = summary
        arts.write(f"hodge-p{args.p}.matrix", format_dense(hodge_laplacian(c, args.p).exact()))
    else:
        decisions["balanced_component@input" if isinstance(g, SignedGraph) else
                  "bipartite_component@input"] = _decide(g)
    chain = timer.run("build", build_chain, g, stages, args.p, args.lenient, args.budget)
    stage_reports = []
    for k, (stage, o, params) in enumerate(chain, start=1):
        h = timer.run(f"materialize:{stage}", materialize, o, budget=args.budget)
        problem = "balanced_component" if o.signed else "bipartite_component"
        decisions[f"{problem}@{stage}"] = _decide(h)
        lap = _laplacian(h)
        tag = f"{k:02d}-{stage}"
        arts.write(f"{tag}.edges", format_edge_list(h))
        arts.write(f"{tag}.laplacian.matrix", format_dense(lap.exact()))
        stage_reports.append({
            "stage": stage, "params": params,
            "graph": {"vertices": len(h.vertices), "edges": len(h.edges)},
            "problem": problem,
            "answer": decisions[f"{problem}@{stage}"],
            "answer_ignoring_isolated": _decide(h, count_isolated=False),
            "laplacian_kernel_dim": kernel_dim(lap),
            "oracle_calls": o.calls,
        })
    rep["stages"] = stage_reports
    if args.delta is not None:
        final = chain[-1][1]
        task = "balance" if final.signed else "bipartite"
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            out = timer.run("verify", simulate_verifier, final, args.delta, task,
                            diag_mode=args.diag_mode, budget=args.budget)
        rep["verifier"] = out.to_dict()
        rep["warnings"].extend(out.warnings)
        decisions[f"verifier@{chain[-1][0]}"] = out.accepted
    rep["decisions"] = decisions
    rep["agreement"] = _agreement(decisions)
    if not rep["agreement"]["all_equal"]:
        rep["warnings"].append("decision procedures disagree; see agreement.pairs")
    rep["artifacts"] = arts.names
    first = next(iter(decisions.values()))
    rep["answer"] = "YES" if first else "NO"
    return rep, EXIT_YES if first else EXIT_NO


def _oracle_for(g, args) -> SparseAccess:
    if args.chain:
        return build_chain(g, _parse_chain(args.chain), args.p, args.lenient, args.budget)[-1][1]
    if args.p is not None:
        return build_chain(g, ["clique-signed"], args.p, args.lenient, args.budget)[-1][1]
    return from_explicit(g)


def cmd_verify(args, timer: Timer) -> Tuple[Dict, int]:
    g, desc = _load(args.graph)
    o = _oracle_for(g, args)
    task = args.task or ("balance" if o.signed else "bipartite")
    rep = _base_report("verify", desc)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out = timer.run("verify", simulate_verifier, o, args.delta, task,
                        diag_mode=args.diag_mode, budget=args.budget)
    h = timer.run("materialize", materialize, o, budget=args.budget)
    exact = _decide(h)
    rep.update({
        "oracle": {"n_bits": o.n_bits, "S": o.S, "mode": o.mode, "signed": o.signed},
        "verifier": out.to_dict(),
        "decisions": {"verifier": out.accepted, "exact": exact},
        "answer": "accept" if out.accepted else "reject",
        "oracle_calls": o.calls,
    })
    rep["warnings"].extend(out.warnings)
    if out.accepted != exact:
        rep["warnings"].append("verifier and exact test disagree")
    return rep, EXIT_YES if out.accepted else EXIT_NO


def cmd_conformance(args, timer: Timer) -> Tuple[Dict, int]:
    g, desc = _load(args.graph)
    o = _oracle_for(g, args)
    rep = _base_report("conformance", desc)
    res = timer.run("check", conformance_check, o, exhaustive=not args.sample, strict=not args.lenient,
                    samples=args.samples, seed=args.seed, budget=args.budget)
    rep.update({
        "oracle": {"n_bits": o.n_bits, "S": o.S, "mode": o.mode, "signed": o.signed, "name": o.name},
        "conformance": res.to_dict(),
        "answer": "YES" if res.ok else "NO",
    })
    return rep, EXIT_YES if res.ok else EXIT_NO


def cmd_crosscheck(args, timer: Timer) -> Tuple[Dict, int]:
    rep = _base_report("crosscheck", None)
    result = timer.run("crosscheck", crosscheck_report, args.max_n, args.budget)
    rep["crosscheck"] = result
    clean = not result["discrepancies"]
    rep["answer"] = "YES" if clean else "NO"
    return rep, EXIT_YES if clean else EXIT_NO


# -- plumbing ------------------------------------------------------------------------

def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError(f"delta must be positive, got {text}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_INDEX_BUDGET,
                        help="cap on index-space size and simplex enumeration")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    common.add_argument("--out", help="directory for report.json and text artifacts")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("graph", help="edge-list file")
    graph.add_argument("--p", type=int, help="simplex dimension for clique homology")

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument("--chain", help=f"comma-separated stages from: {', '.join(STAGES)} "
                        f"(reduce defaults to {DEFAULT_CHAIN})")
    oracle.add_argument("--lenient", action="store_true",
                        help="tolerate adjacency entries with zero sign")

    diag = argparse.ArgumentParser(add_help=False)
    diag.add_argument("--diag-mode", choices=(SIGN_COUNT, ADJ_COUNT), default=SIGN_COUNT)

    parser = argparse.ArgumentParser(prog="sparsebalance", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", parents=[common, graph], help="Betti number of a clique complex")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("reduce", parents=[common, graph, oracle, diag], help="run a reduction chain")
    p.add_argument("--delta", type=_positive_float, help="also run the verifier on the final stage")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", parents=[common, graph, oracle, diag], help="spectral verifier")
    p.add_argument("--delta", type=_positive_float, required=True)
    p.add_argument("--task", choices=("balance", "bipartite"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conformance", parents=[common, graph, oracle], help="oracle contract check")
    p.add_argument("--sample", action="store_true", help="probe random rows instead of every index")
    p.add_argument("--samples", type=int, default=256)
    p.set_defaults(func=cmd_conformance)

    p = sub.add_parser("crosscheck", parents=[common], help="kernel dimensions against Betti numbers")
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(func=cmd_crosscheck)
    return parser


def _to_text(report: Dict, prefix: str = "") -> List[str]:
    lines = []
    for key in sorted(report):
        val = report[key]
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            lines += _to_text(val, name + ".")
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            for k, item in enumerate(val):
                lines += _to_text(item, f"{name}[{k}].")
        else:
            lines.append(f"{name}: {json.dumps(val, sort_keys=True)}")
    return lines


def render(report: Dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_to_text(report)) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    timer = Timer()
    try:
        report, code = args.func(args, timer)
    except (ParseError, GraphError, OracleError, BudgetExceeded, IncompatibleChain, ValueError, OSError) as exc:
        print(f"sparsebalance {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.timing:
        report["timing"] = timer.marks
    text = render(report, "json")
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "report.json").write_text(text, encoding="utf-8", newline="\n")
    sys.stdout.write(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
