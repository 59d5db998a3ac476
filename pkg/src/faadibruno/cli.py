"""Command-line surface: build jets, compose and differentiate them, and run
the law suites with machine-readable reports.

Exit codes: 0 all checks pass, 1 law failure, 2 usage or parse error,
3 sampling starvation."""

from __future__ import annotations

import argparse
import json
import sys

from .config import RunConfig
from .corpus import (
    CorpusError,
    DEFAULT_CORPUS_TEXTS,
    corpus_maps,
    corpus_pairs,
    corpus_split_entries,
    parse_corpus,
)
from .expr import ExprError
from .jets import (
    JetError,
    cofree_jet,
    compose_jets,
    jet_from_dict,
)
from .jetlaws import run_comonad_suite, run_faa_r_suite, run_linear_suite
from .laws import run_cd_suite, run_dr_suite
from .report import overall_status, render_json, report_document, sort_results
from .smooth import CLASSICAL, apply_map, d_n, parse_smooth_map
from .splitting import SplitError, check_split_cdc

SUITES = ("cd", "dr", "faa-r", "comonad", "linear", "split")

_EXIT = {"pass": 0, "fail": 1, "starved": 3}


def _add_config_flags(p: argparse.ArgumentParser):
    p.add_argument("--order", type=int, default=4, help="jet truncation order")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--tol-rel", type=float, default=1e-9)
    p.add_argument("--tol-abs", type=float, default=1e-8)


def _config(args) -> RunConfig:
    return RunConfig(seed=args.seed, samples=args.samples, tol_rel=args.tol_rel,
                     tol_abs=args.tol_abs, order=args.order)


def _parse_vector(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def cmd_jet(args) -> int:
    f = parse_smooth_map(args.map)
    jet = cofree_jet(f, CLASSICAL, args.order)
    print(f"star: {jet.star}")
    for n, comp in enumerate(jet.derivs, start=1):
        print(f"D_{n}:  {comp}")
    if args.point is not None:
        point = _parse_vector(args.point)
        directions = ([_parse_vector(v) for v in args.directions.split(";")]
                      if args.directions else [tuple(1.0 for _ in range(f.dom.dim))])
        while len(directions) < args.order:
            directions.append(directions[-1])
        tower = [apply_map(jet.star, point)]
        for n, comp in enumerate(jet.derivs, start=1):
            flat = tuple(v for d in directions[:n] for v in d) + point
            tower.append(apply_map(comp, flat))
        rendered = [list(v) if len(v) != 1 else v[0] for v in tower]
        print(f"tower at {list(point)}: {rendered}")
    return 0


def cmd_compose(args) -> int:
    f = parse_smooth_map(args.f)
    g = parse_smooth_map(args.g)
    jet = compose_jets(cofree_jet(f, CLASSICAL, args.order),
                       cofree_jet(g, CLASSICAL, args.order))
    print(f"star: {jet.star}")
    for n, comp in enumerate(jet.derivs, start=1):
        print(f"(fg)_{n}:  {comp}")
    return 0


def cmd_diff(args) -> int:
    f = parse_smooth_map(args.map)
    print(d_n(f, args.order, CLASSICAL))
    return 0


def _load_corpus(args, suite: str):
    if args.corpus:
        with open(args.corpus, "r", encoding="utf-8") as fh:
            return parse_corpus(fh.read())
    return parse_corpus(DEFAULT_CORPUS_TEXTS[suite])


def _run_suite(suite: str, args, cfg: RunConfig):
    entries = _load_corpus(args, suite)
    if suite == "cd":
        return run_cd_suite(corpus_pairs(entries), CLASSICAL, cfg)
    if suite == "dr":
        return run_dr_suite(corpus_pairs(entries), CLASSICAL, cfg)
    if suite == "faa-r":
        extra = []
        if getattr(args, "jets", None):
            with open(args.jets, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
            jets = payload if isinstance(payload, list) else [payload]
            extra = [jet_from_dict(d) for d in jets]
        return run_faa_r_suite(corpus_pairs(entries), cfg, extra_jets=extra)
    if suite == "comonad":
        return run_comonad_suite(corpus_maps(entries), cfg)
    if suite == "linear":
        return run_linear_suite(cfg)
    if suite == "split":
        return check_split_cdc(corpus_split_entries(entries), cfg)
    raise CorpusError(f"unknown suite {suite!r}")


def cmd_axioms(args) -> int:
    cfg = _config(args)
    results = sort_results(_run_suite(args.suite, args, cfg))
    for r in results:
        comp = f" [{r.component}]" if r.component is not None else ""
        tag = "" if r.gating else " (informational)"
        note = f"  ({r.note})" if r.note and r.status != "pass" else ""
        witness = (f"  witness={list(r.witness_point)}"
                   if r.status == "fail" and r.witness_point is not None else "")
        print(f"{r.suite} #{r.map_index} {r.axiom}{comp}: {r.status}{tag}"
              f"  worst_residual={r.worst_residual:.3e}{note}{witness}")
    status = overall_status(results)
    print(f"suite {args.suite}: {status} ({len(results)} checks)")
    if args.json:
        document = report_document(results, cfg, [args.suite])
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(render_json(document))
    return _EXIT[status]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faadibruno",
        description="jet towers, partition-sum composition, and the axiom harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jet", help="print the derivative tower of a map")
    p.add_argument("map")
    p.add_argument("--point", help="comma-separated evaluation point")
    p.add_argument("--directions", help="semicolon-separated direction vectors")
    _add_config_flags(p)
    p.set_defaults(fn=cmd_jet)

    p = sub.add_parser("compose", help="compose two jet towers")
    p.add_argument("f")
    p.add_argument("g")
    _add_config_flags(p)
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("diff", help="print the symmetric derivative of given order")
    p.add_argument("map")
    _add_config_flags(p)
    p.set_defaults(fn=cmd_diff)

    p = sub.add_parser("axioms", help="run a law suite over a corpus")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--corpus", help="corpus file (defaults to the built-in one)")
    p.add_argument("--jets", help="JSON file of serialized jets to validate (faa-r)")
    p.add_argument("--json", help="write the machine-readable report here")
    _add_config_flags(p)
    p.set_defaults(fn=cmd_axioms)

    for alias, suite in (("comonad-check", "comonad"), ("linear-check", "linear"),
                         ("split-check", "split")):
        p = sub.add_parser(alias, help=f"run the {suite} suite")
        p.add_argument("--corpus")
        p.add_argument("--json")
        _add_config_flags(p)
        p.set_defaults(fn=cmd_axioms, suite=suite, jets=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ExprError, JetError, SplitError, CorpusError, OSError,
            json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
