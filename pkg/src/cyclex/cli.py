"""Command-line interface: check, decompose, generate, recognize, reduce, corpus.

Machine output (JSON) goes to stdout, human summaries to stderr.
Exit codes: 0 CE, 1 NotCE, 2 NotApplicable, 3 internal error, 4 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from .graph import CapExceeded, GraphError
from .io import ParseError, graph_to_json, read_graph, to_dot, to_edgelist, to_graph6
from .recognizer import EXIT_INTERNAL, EXIT_NOT_APPLICABLE, EXIT_PARSE, InternalError, bug_report


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _say(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def cmd_check(args) -> int:
    from .recognizer import decide

    g = read_graph(args.path, args.format)
    d = decide(g, args.mode, allow_nonplanar=args.allow_nonplanar)
    if args.json:
        _emit(d.to_json())
    else:
        sys.stdout.write(d.verdict + "\n")
    summary = f"{args.path}: {d.verdict}"
    if d.reason:
        summary += f" ({d.reason})"
    elif d.certificate is not None:
        summary += f" [family {d.certificate.tag}]"
    elif d.terminal == "K2":
        summary += " [reduces to K2]"
    if d.witness is not None:
        summary += f" witness cycle {list(d.witness.vertices)}"
    _say(summary)
    if args.dot and d.witness is not None:
        Path(args.dot).write_text(to_dot(g, highlight_edges=d.witness.edges, highlight_vertices=d.witness.vertices))
    return d.exit_code


def cmd_decompose(args) -> int:
    from .decomposition import tight_cut_decomposition
    from .matching import is_matching_covered

    g = read_graph(args.path, args.format)
    if not (g.n >= 2 and g.is_connected() and is_matching_covered(g)):
        _emit({"verdict": "NotApplicable", "reason": "graph is not matching covered"})
        return EXIT_NOT_APPLICABLE
    d = tight_cut_decomposition(g, policy=args.policy)
    _emit(d.to_json())
    _say(f"{args.path}: b = {d.b}, p = {d.p}, {len(d.pieces)} piece(s): " + ", ".join(d.kinds))
    return 0


def _spec_from_args(args) -> dict:
    if args.spec:
        try:
            spec = json.loads(args.spec)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--spec is not valid JSON: {exc}") from None
        if not isinstance(spec, dict):
            raise ParseError("--spec must be a JSON object")
    else:
        spec = {}
    if args.k is not None:
        spec["k"] = args.k
    if args.path_length is not None:
        spec["path_length"] = args.path_length
    if args.parts is not None:
        try:
            spec["parts"] = [int(x) for x in args.parts.split(",") if x.strip()]
        except ValueError:
            raise ParseError("--parts must be a comma-separated list of even integers") from None
    return spec


def cmd_generate(args) -> int:
    from .families import FamilySpec, gen_half_biwheel, gen_prism, gen_wheel, generate

    spec = _spec_from_args(args)
    cert = None
    fam = args.family
    if fam == "wheel":
        g = gen_wheel(int(spec.get("k", 5)))
    elif fam == "prism":
        g = gen_prism(int(spec.get("k", 3)))
    elif fam == "halfbiwheel":
        g = gen_half_biwheel(int(spec.get("path_length", 0)))
    else:
        g, cert = generate(FamilySpec.from_json(spec, fam))
    out = {"family": fam, "graph": graph_to_json(g), "graph6": to_graph6(g)}
    if cert is not None:
        out["certificate"] = cert.to_json()
    if args.out:
        path = Path(args.out)
        suffix = path.suffix.lower()
        if suffix == ".g6":
            text = to_graph6(g) + "\n"
        elif suffix == ".json":
            text = json.dumps(graph_to_json(g), indent=2) + "\n"
        elif suffix == ".dot":
            text = to_dot(g)
        else:
            text = to_edgelist(g)
        path.write_text(text)
        if cert is not None:
            path.with_name(path.name + ".cert.json").write_text(json.dumps(cert.to_json(), indent=2) + "\n")
        out["written"] = str(path)
    _emit(out)
    _say(f"generated {fam}: {g.n} vertices, {g.m} edges")
    return 0


def cmd_recognize(args) -> int:
    from .families import recognize_family
    from .planarity import is_planar
    from .reduction import is_irreducible
    from .matching import is_matching_covered

    g = read_graph(args.path, args.format)
    if not (g.n >= 2 and g.is_connected() and is_matching_covered(g) and is_planar(g) and is_irreducible(g)):
        _emit({"family": None, "reason": "input must be an irreducible planar matching covered graph"})
        return EXIT_NOT_APPLICABLE
    if g.n == 2:
        _emit({"family": "K2"})
        return 0
    cert = recognize_family(g)
    _emit({"family": cert.tag if cert else None, "certificate": cert.to_json() if cert else None})
    _say(f"{args.path}: " + (f"member of {cert.tag}" if cert else "no family"))
    return 0 if cert else 1


def cmd_reduce(args) -> int:
    from .matching import is_matching_covered
    from .reduction import to_irreducible

    g = read_graph(args.path, args.format)
    if not (g.n >= 2 and g.is_connected() and is_matching_covered(g)):
        _emit({"reason": "graph is not matching covered"})
        return EXIT_NOT_APPLICABLE
    h, trace = to_irreducible(g)
    out = {"irreducible": graph_to_json(h)}
    if args.trace:
        out["trace"] = trace.to_json()
    _emit(out)
    _say(f"{args.path}: {len(trace.steps)} reduction step(s), irreducible graph has {h.n} vertices and {h.m} edges")
    return 0


def cmd_corpus(args) -> int:
    from .corpus import build_corpus, write_corpus

    man = build_corpus(args.n_max, sample_seed=args.seed, sample_size=args.sample,
                       mcg_only=args.mcg_only, workers=args.workers)
    path = write_corpus(man, args.out)
    mc = sum(1 for r in man.records if r.labels["mcg"])
    ce = sum(1 for r in man.records if r.labels["ce"])
    _emit({"manifest": str(path), "records": len(man.records), "matching_covered": mc, "ce": ce})
    _say(f"wrote {len(man.records)} records to {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclex", description="Cycle-extendability of planar matching covered graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_arg(sp):
        sp.add_argument("path", help="graph file (edge list, graph6 or JSON)")
        sp.add_argument("--format", choices=["edgelist", "graph6", "json"], default=None,
                        help="input format (default: from extension, then content)")

    sp = sub.add_parser("check", help="decide cycle-extendability")
    graph_arg(sp)
    sp.add_argument("--mode", choices=["fast", "oracle", "both"], default="fast")
    sp.add_argument("--json", action="store_true", help="print the full decision as JSON")
    sp.add_argument("--allow-nonplanar", action="store_true",
                    help="with --mode oracle, run on nonplanar input (the structural test assumes planarity)")
    sp.add_argument("--dot", help="write a DOT drawing with the witness cycle highlighted")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("decompose", help="tight cut decomposition")
    graph_arg(sp)
    sp.add_argument("--policy", choices=["smallest", "largest"], default="smallest")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("generate", help="generate a family member")
    sp.add_argument("--family", required=True, choices=["g0", "g1", "g2", "g3", "wheel", "prism", "halfbiwheel"])
    sp.add_argument("--spec", help="spec as JSON")
    sp.add_argument("--k", type=int, help="shorthand: number of K2 parts (g0, g1) or rim length (wheel, prism)")
    sp.add_argument("--path-length", type=int, help="shorthand: half biwheel path length (g3, halfbiwheel)")
    sp.add_argument("--parts", help="shorthand: comma-separated path lengths (g0, g1, g2)")
    sp.add_argument("--out", help="also write the graph here (.el, .g6, .json or .dot)")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("recognize", help="family certificate of an irreducible graph")
    graph_arg(sp)
    sp.set_defaults(func=cmd_recognize)

    sp = sub.add_parser("reduce", help="series/parallel reduction to an irreducible graph")
    graph_arg(sp)
    sp.add_argument("--trace", action="store_true", help="include the reduction trace")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("corpus", help="build a labelled corpus")
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--out", required=True)
    sp.add_argument("--sample", type=int, default=0, help="add a seeded sample of this many graphs at n = 10, 12")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mcg-only", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    from .families import SpecError

    try:
        return args.func(args)
    except (ParseError, SpecError, OSError) as exc:
        _say(f"error: {exc}")
        return EXIT_PARSE
    except InternalError as exc:
        _say(bug_report(exc))
        return EXIT_INTERNAL
    except (CapExceeded, GraphError, ValueError) as exc:
        _say(f"error: {exc}")
        return EXIT_INTERNAL
    except Exception:  # pragma: no cover - last-resort guard
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
