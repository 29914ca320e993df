"""Command line interface: ``python -m milnorck <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 crossing budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .catalog import ENTRIES, catalog, entry
from .constructions import (BudgetExceeded, TreeClasper, bing_double, cable, clasper_surgery,
                            realization_clasper, realize_milnor, whitehead_double)
from .diagram import (DiagramError, LinkDiagram, format_slice_word, from_word, linking_matrix,
                      parse_slice_word, pd_from_json, pd_to_json)
from .harness import verify_cmk, verify_theorem1
from .milnor import MagnusData, MilnorIndex, milnor_table
from .polynomials import BracketBudgetExceeded, conway, jones

__all__ = ["main", "run_command", "load_link"]


def load_link(source: str) -> LinkDiagram:
    """Catalog name, slice-word file, or PD JSON file."""
    if os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            pd = pd_from_json(text)
            return LinkDiagram(None, (), pd, provenance=(f"file {source}",))
        return from_word(parse_slice_word(text), provenance=(f"file {source}",))
    return catalog(source)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _diagram_payload(d: LinkDiagram) -> dict:
    out = {"components": d.n_components, "crossings": d.n_crossings,
           "provenance": list(d.provenance)}
    if d.word is not None:
        out["word"] = format_slice_word(d.word)
        out["order"] = list(d.order)
    out["pd"] = json.loads(pd_to_json(d.pd))
    return out


def _diagram_text(d: LinkDiagram) -> str:
    head = f"# {d.n_components} components, {d.n_crossings} crossings"
    if d.word is None:
        return head + "\n" + pd_to_json(d.pd)
    if list(d.order) != sorted(d.order):
        head += f"\n# component order {list(d.order)}"
    return head + "\n" + format_slice_word(d.word).rstrip()


def cmd_milnor(args):
    d = load_link(args.link)
    if args.index:
        I = MilnorIndex.parse(args.index).entries
        v = MagnusData(d, len(I) - 1).mu_bar(I)
        _emit(args, v.to_json(I) | {"residue": v.residue}, f"value {v.value}, delta {v.delta}")
    else:
        table = milnor_table(d, args.max_len)
        rows = [v.to_json(I) for I, v in table.items() if v.value or v.delta]
        text = "\n".join(f"mu({''.join(map(str, r['I']))}) = {r['value']} (delta {r['delta']})"
                         for r in rows) or "all invariants vanish"
        _emit(args, {"max_len": args.max_len, "nonzero": rows}, text)


def cmd_jones(args):
    d = load_link(args.link)
    p = jones(d, args.crossing_budget)
    _emit(args, {"jones": p.to_json()}, str(p))


def cmd_conway(args):
    d = load_link(args.link)
    c = conway(d)
    text = str(c) + ("" if c.sign_fixed else "   (overall sign not determined)")
    _emit(args, {"conway": c.to_json()}, text)


def cmd_lk(args):
    d = load_link(args.link)
    m = linking_matrix(d)
    _emit(args, {"lk": m.tolist()}, "\n".join(" ".join(f"{x:3d}" for x in row) for row in m))


def _construction_out(args, d):
    _emit(args, _diagram_payload(d), _diagram_text(d))


def cmd_cable(args):
    d = load_link(args.link)
    mult = [int(x) for x in args.mult.split(",")]
    out, h = cable(d, mult, budget=args.crossing_budget)
    if args.json:
        print(json.dumps(_diagram_payload(out) | {"index_map": list(h)}, sort_keys=True))
    else:
        print(_diagram_text(out) + f"\n# index map {list(h)}")


def cmd_bing(args):
    _construction_out(args, bing_double(load_link(args.link), args.component, budget=args.crossing_budget))


def cmd_whitehead(args):
    d = whitehead_double(load_link(args.link), args.component, args.clasp_sign, budget=args.crossing_budget)
    _construction_out(args, d)


def cmd_clasper(args):
    d = load_link(args.link)
    with open(args.clasper) as fh:
        t = TreeClasper.from_json(json.load(fh))
    _construction_out(args, clasper_surgery(d, t, budget=args.crossing_budget))


def cmd_realize(args):
    I = MilnorIndex.parse(args.index).entries
    d = realize_milnor(I, budget=args.crossing_budget)
    v = MagnusData(d, len(I) - 1).mu_bar(I)
    if args.json:
        print(json.dumps(_diagram_payload(d) | {"clasper": realization_clasper(I).to_json(),
                                                 "mu": v.to_json(I)}, sort_keys=True))
    else:
        print(_diagram_text(d) + f"\n# mu({args.index}) = {v.value}, delta {v.delta}")


def cmd_catalog(args):
    if args.action == "list":
        names = list(ENTRIES) + ["unlink-<n>"]
        rows = [(n, ENTRIES[n].description if n in ENTRIES else "n-component unlink") for n in names]
        _emit(args, {"links": [n for n, _ in rows]}, "\n".join(f"{n:26s} {desc}" for n, desc in rows))
        return
    if not args.name:
        raise DiagramError("catalog show needs a link name")
    e = entry(args.name)
    d = e.build()
    payload = _diagram_payload(d) | {"name": e.name, "description": e.description,
                                     "expected": e.expected, "alternates": list(e.alternates)}
    _emit(args, payload, f"# {e.name}: {e.description}\n" + _diagram_text(d))


def cmd_verify(args):
    if args.campaign == "theorem1":
        rep = verify_theorem1(args.k, args.max_len or 6, args.trials, args.seed)
    else:
        rep = verify_cmk(args.m, args.k, args.trials, args.seed, args.max_len or 5)
    if args.json:
        print(rep.to_json())
    else:
        print(rep.summary())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="milnorck", description="Milnor invariants and self C_k-moves")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--crossing-budget", type=int, default=None,
                        help="maximum crossings for constructions (512) and the bracket (24)")
    sub = p.add_subparsers(dest="command", required=True)

    def link_cmd(name, func, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--link", required=True, help="catalog name or diagram file")
        s.set_defaults(func=func)
        return s

    s = link_cmd("milnor", cmd_milnor, "mu-bar invariants")
    s.add_argument("--index", help="e.g. 123123, or comma separated")
    s.add_argument("--max-len", type=int, default=4)
    link_cmd("jones", cmd_jones, "Jones polynomial")
    link_cmd("conway", cmd_conway, "Conway polynomial")
    link_cmd("lk", cmd_lk, "linking matrix")
    s = link_cmd("cable", cmd_cable, "zero-framed cable")
    s.add_argument("--mult", required=True, help="multiplicity per component, e.g. 2,1")
    s = link_cmd("bing", cmd_bing, "Bing double one component")
    s.add_argument("--component", type=int, default=1)
    s = link_cmd("whitehead-double", cmd_whitehead, "Whitehead double one component")
    s.add_argument("--component", type=int, default=1)
    s.add_argument("--clasp-sign", type=int, choices=(1, -1), default=1)
    s = link_cmd("clasper", cmd_clasper, "surgery on a tree clasper given as JSON")
    s.add_argument("--clasper", required=True, help="TreeClasper JSON file")
    s = sub.add_parser("realize", parents=[common], help="link with mu(I) = +-1 from the unlink")
    s.add_argument("--index", required=True)
    s.set_defaults(func=cmd_realize)
    s = sub.add_parser("catalog", parents=[common], help="list or show catalog links")
    s.add_argument("action", choices=("list", "show"))
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_catalog)
    s = sub.add_parser("verify", parents=[common], help="seeded verification campaigns")
    s.add_argument("campaign", choices=("theorem1", "cmk"))
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-len", type=int, default=None)
    s.set_defaults(func=cmd_verify)
    return p


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    budget = args.crossing_budget
    try:
        if args.func in (cmd_jones,):
            args.crossing_budget = 24 if budget is None else budget
        elif budget is None:
            args.crossing_budget = 512
        args.func(args)
    except (BudgetExceeded, BracketBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DiagramError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)
