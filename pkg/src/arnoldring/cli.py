"""Command-line front end.

    arnoldring betti --graph k4.txt --parity even
    arnoldring poincare --graph k4.txt --r 3 --chromatic --format json
    arnoldring check --graph k4.txt --parity odd --all

Exit status: 0 success, 1 a requested check failed, 2 bad input,
3 internal inconsistency (two independent computations disagree).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, TextIO

from arnoldring.algebra import Element, Parity
from arnoldring.graph import GraphFormatError, Multigraph
from arnoldring.ideal import (
    InternalInconsistency,
    NbcValidationError,
    arnold_classes_json,
    betti_table,
    nbc_candidate_basis,
    normal_form,
)
from arnoldring.morphisms import CHECKS, run_checks
from arnoldring.poincare import chromatic_crosscheck, delcon_tree, poincare

COMMANDS = ("betti", "poincare", "basis", "reduce", "arnold", "check", "delcon-tree")
DEFAULT_CHECKS = ("ses", "pullback", "middle", "gsurj")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    graph: str
    parity: Optional[Parity] = None
    r: Optional[int] = None
    order: Optional[List[int]] = None
    weights: Optional[range] = None
    format: str = "text"
    checks: Sequence[str] = DEFAULT_CHECKS
    chromatic: bool = False
    seed: int = 0
    element: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.r is not None:
            if self.r < 2:
                raise InputError("--r must be at least 2")
            if self.parity is not None and self.parity is not Parity.of(self.r):
                raise InputError(f"--parity {self.parity.value} contradicts --r {self.r}")
            self.parity = Parity.of(self.r)
        if self.parity is None and self.command not in ("poincare", "delcon-tree"):
            raise InputError("give --parity even|odd or --r")


def _parse_weights(text: str) -> range:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text)
    if not m:
        raise argparse.ArgumentTypeError("weights must look like a..b")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError("empty weight range")
    return range(lo, hi + 1)


def _parse_order(text: str) -> List[int]:
    try:
        return [int(tok.strip().lstrip("e")) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("order must be a comma list like e3,e1,e2") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arnoldring", description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--graph", required=True, help="graph file ('vertices: n' then 'id: tail head' lines)")
    ap.add_argument("--parity", choices=[p.value for p in Parity])
    ap.add_argument("--r", type=int, help="ambient dimension r >= 2 (fixes the parity, enables true degrees)")
    ap.add_argument("--weights", type=_parse_weights, help="weight range a..b (in units of r-1)")
    ap.add_argument("--order", type=_parse_order, help="edge order for NBC bases, least first")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--checks", help=f"comma list from {','.join(CHECKS)}")
    ap.add_argument("--all", action="store_true", help="run every check")
    ap.add_argument("--chromatic", action="store_true", help="add the chromatic-polynomial cross-check")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomised checks")
    ap.add_argument("--element", help="element to reduce, e.g. '+1·e0e1 -2·e2e3'")
    return ap


def config_from_args(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.all:
        checks = CHECKS
    elif ns.checks:
        checks = tuple(c.strip() for c in ns.checks.split(",") if c.strip())
        bad = [c for c in checks if c not in CHECKS]
        if bad:
            raise InputError(f"unknown checks {bad}")
    else:
        checks = DEFAULT_CHECKS
    return RunConfig(
        command=ns.command,
        graph=ns.graph,
        parity=Parity(ns.parity) if ns.parity else None,
        r=ns.r,
        order=ns.order,
        weights=ns.weights,
        format=ns.format,
        checks=checks,
        chromatic=ns.chromatic,
        seed=ns.seed,
        element=ns.element,
    )


def _mono_text(m) -> str:
    return "".join(f"e{a}" for a in m) if m else "1"


def _degrees(cfg: RunConfig, ks: Sequence[int]) -> Optional[List[int]]:
    return [k * (cfg.r - 1) for k in ks] if cfg.r is not None else None


def _emit(cfg: RunConfig, payload, text_lines: List[str], out: TextIO) -> None:
    if cfg.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _load_graph(cfg: RunConfig) -> Multigraph:
    try:
        with open(cfg.graph) as fh:
            g = Multigraph.from_text(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {cfg.graph}: {exc}") from None
    except GraphFormatError as exc:
        raise InputError(f"{cfg.graph}: {exc}") from None
    if cfg.order is not None and sorted(cfg.order) != list(g.edge_ids):
        raise InputError("--order must list every edge id exactly once")
    return g


def _cmd_betti(cfg, g, out):
    g_use = g
    if cfg.order is not None:
        g_use = g.relabel_edges({e: i for i, e in enumerate(cfg.order)})
    table = betti_table(g_use, cfg.parity)
    poly = poincare(g)
    if table.ranks != list(poly.coeffs):
        raise InternalInconsistency(
            f"SNF ranks {table.ranks} disagree with deletion-contraction {list(poly.coeffs)}"
        )
    payload = table.to_json_dict(g, cfg.parity)
    ks = [k for k, _, _ in table.entries]
    degs = _degrees(cfg, ks)
    if degs is not None:
        payload["degrees"] = degs
    lines = [f"# R^r(G), parity {cfg.parity.value}" + (f", r = {cfg.r}" if cfg.r else "")]
    for i, (k, rk, tors) in enumerate(table.entries):
        deg = f" degree={degs[i]}" if degs else ""
        tor = " torsion=" + ",".join(f"Z/{d}" for d in tors) if tors else ""
        lines.append(f"weight={k}{deg} rank={rk}{tor}")
    _emit(cfg, payload, lines, out)
    return EXIT_OK


def _cmd_poincare(cfg, g, out):
    poly = poincare(g)
    payload = poly.to_json_dict()
    lines = [f"P(q) = {poly}   (q = t^(r-1))", f"coeffs: {list(poly.coeffs)}"]
    status = EXIT_OK
    if cfg.chromatic:
        if not g.is_simple():
            raise InputError("--chromatic needs a simple graph (no loops or parallel edges)")
        rep = chromatic_crosscheck(g, poly)
        payload["chromatic_crosscheck"] = rep
        lines.append(f"chromatic cross-check (external identity): {'pass' if rep['pass'] else 'FAIL'}")
        if not rep["pass"]:
            status = EXIT_FAIL
    _emit(cfg, payload, lines, out)
    return status


def _cmd_basis(cfg, g, out):
    ks = cfg.weights or range(g.num_edges + 1)
    order = cfg.order or list(g.edge_ids)
    bases, lines = [], [f"# NBC basis, edge order {','.join(f'e{e}' for e in order)}"]
    status = EXIT_OK
    for k in ks:
        try:
            b = nbc_candidate_basis(g, order, k, cfg.parity)
        except NbcValidationError as exc:
            bases.append({"weight": k, "valid": False, "error": str(exc)})
            lines.append(f"weight={k} INVALID: {exc}")
            status = EXIT_FAIL
            continue
        bases.append({"weight": k, "valid": True, "monomials": [_mono_text(m) for m in b]})
        lines.append(f"weight={k} [{len(b)}] " + " ".join(_mono_text(m) for m in b))
    _emit(cfg, {"parity": cfg.parity.value, "order": order, "bases": bases}, lines, out)
    return status


def _cmd_reduce(cfg, g, out):
    if cfg.element is None:
        raise InputError("reduce needs --element")
    try:
        x = Element.from_text(cfg.element, cfg.parity)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    unknown = x.support - set(g.edge_ids)
    if unknown:
        raise InputError(f"element uses edges {sorted(unknown)} not in the graph")
    if not x.is_zero() and x.weight is None:
        raise InputError("element must be homogeneous")
    k = x.weight or 0
    order = cfg.order or list(g.edge_ids)
    try:
        basis = nbc_candidate_basis(g, order, k, cfg.parity)
    except NbcValidationError as exc:
        out.write(f"basis validation failed: {exc}\n")
        return EXIT_FAIL
    coords = normal_form(x, g, cfg.parity, order, weight=k)
    reduced = Element({m: c for m, c in zip(basis, coords) if c})
    payload = {
        "element": x.to_text(),
        "weight": k,
        "basis": [_mono_text(m) for m in basis],
        "coords": coords,
        "normal_form": reduced.to_text(),
    }
    _emit(cfg, payload, [f"{x.to_text()}  ==  {reduced.to_text()}  (mod I)"], out)
    return EXIT_OK


def _cmd_arnold(cfg, g, out):
    classes = arnold_classes_json(g, cfg.parity)
    lines = [
        f"A({'-'.join(f'e{e}' for e in c['edges'])}) = {c['class']}" for c in classes
    ]
    _emit(cfg, {"parity": cfg.parity.value, "classes": classes}, lines or ["(no circuits)"], out)
    return EXIT_OK


def _cmd_check(cfg, g, out):
    reports = run_checks(g, cfg.parity, cfg.checks, cfg.weights, cfg.seed)
    lines = []
    for r in reports:
        where = f"edge={r['edge']}" + (f" weight={r['weight']}" if r["weight"] is not None else "")
        if "other_edge" in r:
            where += f" other_edge={r['other_edge']}"
        status = "pass" if r["pass"] else f"FAIL ({r['detail']}; witness {r.get('witness')})"
        lines.append(f"{r['check']:<15} {where:<28} {status}")
    npass = sum(r["pass"] for r in reports)
    lines.append(f"{npass}/{len(reports)} checks passed")
    _emit(cfg, reports, lines, out)
    return EXIT_OK if npass == len(reports) else EXIT_FAIL


def _cmd_delcon_tree(cfg, g, out):
    poly, tree, memo = delcon_tree(g)
    stats = {"hits": memo.hits, "misses": memo.misses, "entries": len(memo)}
    payload = {"poincare": poly.to_json_dict(), "stats": stats, "tree": tree.to_json_dict()}
    lines = []

    def walk(node, depth):
        label = node.kind + (f" e{node.edge}" if node.edge is not None else "")
        lines.append(f"{'  ' * depth}{label} [{node.edges} edges] {node.graph[:16]}")
        for c in node.children:
            walk(c, depth + 1)

    walk(tree, 0)
    lines.append(f"P(q) = {poly}; memo hits={stats['hits']} misses={stats['misses']} entries={stats['entries']}")
    _emit(cfg, payload, lines, out)
    return EXIT_OK


_HANDLERS = {
    "betti": _cmd_betti,
    "poincare": _cmd_poincare,
    "basis": _cmd_basis,
    "reduce": _cmd_reduce,
    "arnold": _cmd_arnold,
    "check": _cmd_check,
    "delcon-tree": _cmd_delcon_tree,
}


def run(cfg: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        g = _load_graph(cfg)
        return _HANDLERS[cfg.command](cfg, g, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except InternalInconsistency as exc:
        err.write(f"internal inconsistency: {exc}\n")
        return EXIT_INTERNAL


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
