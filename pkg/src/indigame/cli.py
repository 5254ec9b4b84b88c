"""Batch front door: solve, recognize, decompose, brooks-check, chi-i,
generate, trace-replay, embed, and serve."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import IndigameError
from .graphs import LabeledPair, pair_to_json, read_pair, write_pair
from .solver import DEFAULT_CHI_CAP, DEFAULT_SOLVE_CAP, PruningConfig

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _default_cap(fallback: int) -> int:
    env = os.environ.get("INDIGAME_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return fallback


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a single JSON document")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized subcommands")
    p = argparse.ArgumentParser(prog="indigame",
                                description="indicated list-colouring game toolkit")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add("solve", help="decide feasibility of a pair file")
    s.add_argument("file")
    s.add_argument("--uniform", type=int, metavar="K", help="replace lists by [K]")
    s.add_argument("--fast", action="store_true", help="use the reverse-reduction decider")
    s.add_argument("--cap", type=int, default=None)
    s.add_argument("--prunings", choices=["on", "off"], default="on")
    s.add_argument("--with-strategy", action="store_true")

    s = add("recognize", help="expanded Gallai-tree recognition")
    s.add_argument("file")

    s = add("blocks", help="expanded block decomposition")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=64)

    s = add("brooks", help="IC-Brooks decision")
    s.add_argument("file")

    s = add("chi-i", help="indicated chromatic number")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=None)

    s = add("gen", help="generate a named family member")
    s.add_argument("family", choices=[
        "complete", "cycle", "theta", "gallai-tree", "c5-blowup", "example6",
        "fig14a", "fig14b", "fig5-cubic", "theta-plus", "double-chorded",
        "near-odd-wheel",
    ])
    s.add_argument("params", nargs="*", help="family parameters (integers; JSON for gallai-tree)")
    s.add_argument("-o", "--out", help="write the pair to this file")

    s = add("replay", help="replay a construction trace file")
    s.add_argument("file")
    s.add_argument("-o", "--out")

    s = add("embed", help="embed a graph into a regular one with the same property")
    s.add_argument("file")
    s.add_argument("-o", "--out")

    s = add("serve", help="run the interactive game service")
    s.add_argument("--port", type=int, default=8642)
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--static", default=None, help="directory with the web UI bundle")
    s.add_argument("--journal", default=None, help="append-only session journal file")
    return p


def _emit(doc: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(doc, sort_keys=True))
        return
    for key, value in doc.items():
        print(f"{key}: {json.dumps(value, sort_keys=True)}")


def _load_pair(path: str) -> LabeledPair:
    return read_pair(path)


def run(args: argparse.Namespace) -> int:
    from . import brooks, construct, recognize, solver
    from .graphs import Graph, ListAssignment

    verb = args.verb
    if verb == "solve":
        pair = _load_pair(args.file)
        if args.uniform is not None:
            pair = LabeledPair.build(pair.graph, ListAssignment.uniform(pair.graph, range(1, args.uniform + 1)))
        if pair.lists is None:
            raise IndigameError("pair file has no lists; pass --uniform K")
        if args.fast:
            _emit({"status": solver.decide_pair_fast(pair)}, args.json)
            return EXIT_OK
        cap = args.cap if args.cap is not None else _default_cap(DEFAULT_SOLVE_CAP)
        prunings = PruningConfig() if args.prunings == "on" else PruningConfig.none()
        verdict = solver.solve_pair(pair, cap=cap, prunings=prunings,
                                    with_strategy=args.with_strategy)
        _emit(verdict.to_json(), args.json)
        return EXIT_OK

    if verb == "recognize":
        pair = _load_pair(args.file)
        doc = _decomposition_doc(pair.graph)
        doc["expanded_gallai_tree"] = recognize.is_expanded_gallai_tree(pair.graph, cap=None)
        _emit(doc, args.json)
        return EXIT_OK

    if verb == "blocks":
        pair = _load_pair(args.file)
        _emit(_decomposition_doc(pair.graph, cap=args.cap), args.json)
        return EXIT_OK

    if verb == "brooks":
        pair = _load_pair(args.file)
        _emit(brooks.brooks_report(pair.graph), args.json)
        return EXIT_OK

    if verb == "chi-i":
        pair = _load_pair(args.file)
        cap = args.cap if args.cap is not None else _default_cap(DEFAULT_CHI_CAP)
        _emit({"chi_i": solver.chi_i(pair.graph, cap=cap)}, args.json)
        return EXIT_OK

    if verb == "gen":
        pair = _generate(args.family, args.params, args.seed)
        if args.out:
            write_pair(pair, args.out)
            _emit({"written": args.out, "vertices": pair.graph.n}, args.json)
        else:
            _emit(pair_to_json(pair), args.json)
        return EXIT_OK

    if verb == "replay":
        trace = construct.read_trace(args.file)
        pair = construct.replay(trace)
        if args.out:
            write_pair(pair, args.out)
            _emit({"written": args.out, "vertices": pair.graph.n}, args.json)
        else:
            _emit(pair_to_json(pair), args.json)
        return EXIT_OK

    if verb == "embed":
        pair = _load_pair(args.file)
        out, embedding = construct.embed_into_ic_brooks(pair.graph)
        doc = pair_to_json(LabeledPair(out, None))
        doc["meta"] = dict(out.meta)
        doc["meta"]["embedding"] = {str(k): v for k, v in embedding.items()}
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=1)
                fh.write("\n")
            _emit({"written": args.out, "vertices": out.n, "r": out.degree(out.vertices[0])}, args.json)
        else:
            _emit(doc, args.json)
        return EXIT_OK

    if verb == "serve":
        from .service import serve

        serve(host=args.host, port=args.port, static_dir=args.static, journal=args.journal)
        return EXIT_OK

    raise IndigameError(f"unknown verb {verb!r}")


def _decomposition_doc(g, cap=None) -> dict:
    from .recognize import expanded_blocks

    dec = expanded_blocks(g, cap=cap)
    blocks = []
    for b in dec.blocks:
        entry = {"vertices": sorted(b.vertices), "kind": b.kind}
        if b.kind == "odd_cycle_blowup":
            entry["base_length"] = len(b.base_cycle)
            entry["multiplicities"] = {
                str(min(cls)): len(cls) for cls in b.base_cycle
            }
            entry["root_clique"] = sorted(b.root_clique) if b.root_clique else None
        blocks.append(entry)
    return {
        "blocks": blocks,
        "clique_cuts": [{"vertices": sorted(s), "elementary": flag} for s, flag in dec.clique_cuts],
    }


def _generate(family: str, params: list, seed: int) -> LabeledPair:
    from . import construct
    from .graphs import Graph

    def ints(k=None):
        vals = [int(x) for x in params]
        if k is not None and len(vals) != k:
            raise IndigameError(f"{family} expects {k} integer parameters")
        return vals

    if family == "complete":
        return construct.gen_complete(ints(1)[0]).pair
    if family == "cycle":
        out = construct.gen_cycle(ints(1)[0])
        return out.pair if hasattr(out, "pair") else out
    if family == "theta":
        return construct.gen_theta(*ints()).builder.pair
    if family == "gallai-tree":
        spec = json.loads(params[0])
        return construct.gen_gallai_tree([tuple(b) for b in spec]).pair
    if family == "c5-blowup":
        return construct.gen_c5_blowup(ints(1)[0])
    if family == "example6":
        n, m = ints(2)
        return construct.gen_example6(n, m).pair
    if family == "fig14a":
        return construct.gen_fig14a(ints(1)[0])
    if family == "fig14b":
        return construct.gen_fig14b(ints(1)[0])
    if family == "fig5-cubic":
        return construct.gen_fig5_cubic().pair
    if family == "theta-plus":
        vals = ints()
        k1, k2, k3 = vals[:3]
        chords = list(zip(vals[3::2], vals[4::2]))
        return LabeledPair(construct.gen_theta_plus(k1, k2, k3, chords), None)
    if family == "double-chorded":
        length, i, j, s, t = ints(5)
        return LabeledPair(construct.gen_double_chorded_cycle(length, (i, j), (s, t)), None)
    if family == "near-odd-wheel":
        vals = ints()
        return LabeledPair(construct.gen_near_odd_wheel(vals[0], vals[1:]), None)
    raise IndigameError(f"unknown family {family!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return run(args)
    except IndigameError as exc:
        print(json.dumps({"error": {"kind": exc.kind, "detail": str(exc)}}), file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(json.dumps({"error": {"kind": "io", "detail": str(exc)}}), file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
