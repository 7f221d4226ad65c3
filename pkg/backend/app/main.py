"""
Command-line entry point for the topological cryptogroup toolkit

    cd backend && python -m app.main analyze ../data/fixtures/ex2_1.json --text
"""
import argparse
import json
from typing import Callable, Dict, List, Optional

from loguru import logger

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import settings
from .documents import (
    document_for, emit_instance, load_instance, load_topo_semigroup, parse_neighborhoods,
    parse_subset, read_source,
)
from .models.errors import AlgebraError, BadParams
from .models.schemas import ErrorResponse
from .services.corpus import TOPOLOGY_KINDS, build_corpus
from .services.finsemigroup import FinSemigroup, generate, h_structure
from .services.fintopology import (
    FinTopology, discrete_topology, generate_topology, indiscrete_topology,
    partition_topology, separation_flags,
)
from .services.reports import build_report, render_ledger, render_text, subset_line
from .services.subcrypto import quotient_by_n, subcrypto_entries
from .services.topoalgebra import TopoSemigroup, quotient_by_h, star, topology_from_neighborhoods
from .services.verification import ledger_passed, verify_theorems

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


def configure_logging():
    """Stderr sink plus an optional rotating file sink; stdout is for payloads"""
    logger.remove()
    logger.add(sys.stderr, level=settings.LOG_LEVEL)
    if settings.LOG_FILE:
        logger.add(
            settings.LOG_FILE,
            rotation="1 day",
            retention="30 days",
            level=settings.LOG_LEVEL
        )


def emit_json(payload):
    print(json.dumps(payload, indent=2))


def _separation(flag: str) -> Callable[[TopoSemigroup], bool]:
    return lambda TS: getattr(separation_flags(TS.T), flag)


PROPERTIES: Dict[str, Callable[[TopoSemigroup], bool]] = {
    "topological-semigroup": lambda TS: TS.flags.is_topological_semigroup,
    "topological-cryptogroup": lambda TS: TS.flags.is_topological_cryptogroup,
    "botg": lambda TS: TS.is_botg,
    "hausdorff": _separation("t2"),
    "t0": _separation("t0"),
    "t1": _separation("t1"),
    "regular": _separation("regular"),
    "completely-regular": _separation("completely_regular"),
    "normal": _separation("normal"),
    "connected": _separation("connected"),
}


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    TS = load_topo_semigroup(read_source(args.file))
    report = build_report(TS, with_theorems=not args.no_theorems)
    if args.text:
        print(render_text(report))
    else:
        emit_json(report.model_dump(mode="json"))
    return EXIT_TRUE


def cmd_check(args) -> int:
    TS = load_topo_semigroup(read_source(args.file))
    holds = PROPERTIES[args.property](TS)
    logger.info(f"{TS.name}: {args.property} = {holds}")
    print("true" if holds else "false")
    return EXIT_TRUE if holds else EXIT_FALSE


def cmd_subcryptogroups(args) -> int:
    _, TS = load_instance(read_source(args.file))
    entries = subcrypto_entries(TS, only_normal=args.normal, cap=args.cap)
    emit_json([entry.model_dump(mode="json") for entry in entries])
    return EXIT_TRUE


def _named_or_csv(doc, text: str) -> int:
    if text in doc.subsets:
        return parse_subset(",".join(str(x) for x in doc.subsets[text]), doc.n)
    return parse_subset(text, doc.n)


def cmd_quotient(args) -> int:
    doc, TS = load_instance(read_source(args.file))
    if args.by_h:
        Q = quotient_by_h(TS)
    else:
        N = _named_or_csv(doc, args.by_n)
        Q = quotient_by_n(TS, N)
    print(emit_instance(document_for(Q)), end="")
    return EXIT_TRUE


def cmd_star(args) -> int:
    doc, TS = load_instance(read_source(args.file))
    U = _named_or_csv(doc, args.set) if args.set is not None else 0
    V = _named_or_csv(doc, args.set2) if args.set2 is not None else 0
    result = star(TS, args.kind, x=args.x, y=args.y, U=U, V=V)
    print(subset_line(result))
    return EXIT_TRUE


def cmd_build_topology(args) -> int:
    doc, S, NS = parse_neighborhoods(read_source(args.file))
    T = topology_from_neighborhoods(S, NS)
    print(emit_instance(document_for(TopoSemigroup(S, T, name=doc.name))), end="")
    return EXIT_TRUE


def parse_generator(kind: str, params: List[str]) -> FinSemigroup:
    """KIND key=value ...; direct_product takes s1=KIND:key=value,... and s2=..."""
    parsed = {}
    for token in params:
        if "=" not in token:
            raise BadParams(f"expected key=value, got {token!r}", {"token": token})
        key, value = token.split("=", 1)
        if key in ("s1", "s2"):
            inner_kind, _, inner = value.partition(":")
            parsed[key] = parse_generator(inner_kind, [p for p in inner.split(",") if p])
        else:
            try:
                parsed[key] = int(value)
            except ValueError:
                raise BadParams(f"parameter {key} must be an integer", {key: value})
    return generate(kind, **parsed)


def generator_topology(S: FinSemigroup, spec: str) -> FinTopology:
    if spec == "discrete":
        return discrete_topology(S.n)
    if spec == "indiscrete":
        return indiscrete_topology(S.n)
    if spec == "h-block":
        return partition_topology(h_structure(S).h_partition)
    if spec.startswith("subbase="):
        try:
            subbase = [[int(x) for x in part.split(",") if x.strip()] for part in spec[len("subbase="):].split(";")]
        except ValueError:
            raise BadParams(f"malformed subbase {spec!r}", {"topology": spec})
        return generate_topology(S.n, subbase)
    raise BadParams(f"unknown topology {spec!r}", {"choices": list(TOPOLOGY_KINDS) + ["subbase=..."]})


def cmd_gen(args) -> int:
    S = parse_generator(args.kind, args.params)
    T = generator_topology(S, args.topology)
    name = args.name or f"{args.kind}({','.join(args.params)})"
    print(emit_instance(document_for(TopoSemigroup(S, T, name=name))), end="")
    return EXIT_TRUE


def cmd_verify_theorems(args) -> int:
    if args.corpus:
        instances = build_corpus()
    elif args.file:
        instances = [load_topo_semigroup(read_source(args.file))]
    else:
        raise BadParams("give an instance file or --corpus", {})

    ledgers = []
    passed = True
    for TS in instances:
        results = verify_theorems(TS, args.sample_cap)
        ok = ledger_passed(results)
        passed = passed and ok
        ledgers.append((TS.name, ok, results))

    if args.text:
        for name, ok, results in ledgers:
            print(f"{name}: {'PASS' if ok else 'FAIL'}")
            print(render_ledger(results))
    else:
        emit_json({
            "passed": passed,
            "instances": [
                {"name": name, "passed": ok, "results": [r.model_dump(mode="json") for r in results]}
                for name, ok, results in ledgers
            ],
        })
    logger.info(f"Theorem suite finished on {len(instances)} instance(s): {'pass' if passed else 'fail'}")
    return EXIT_TRUE if passed else EXIT_FALSE


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cryptogroup",
        description="Finite semigroups with topologies: classification, star sets, quotients and theorem checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Full analysis report")
    p.add_argument("file", help="Instance document, or - for standard input")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--text", action="store_true", help="Plain-text report")
    p.add_argument("--no-theorems", action="store_true", help="Skip the theorem suite")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("check", help="Exit 0 if the property holds, 1 if not")
    p.add_argument("property", choices=sorted(PROPERTIES))
    p.add_argument("file")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("subcryptogroups", help="Enumerate full subcryptogroups")
    p.add_argument("file")
    p.add_argument("--normal", action="store_true", help="Only normal ones")
    p.add_argument("--cap", type=int, default=None, help="Largest n to enumerate")
    p.set_defaults(handler=cmd_subcryptogroups)

    p = sub.add_parser("quotient", help="Emit S/N or S/H as an instance document")
    p.add_argument("file")
    by = p.add_mutually_exclusive_group(required=True)
    by.add_argument("--by-n", help="Named subset or comma-separated indices")
    by.add_argument("--by-h", action="store_true", help="Quotient by Green's H")
    p.set_defaults(handler=cmd_quotient)

    p = sub.add_parser("star", help="Evaluate a star set")
    p.add_argument("file")
    p.add_argument("--kind", choices=["xU", "Ux", "UV", "xUy"], required=True)
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--y", type=int, default=None)
    p.add_argument("--set", default=None, help="U: named subset or indices")
    p.add_argument("--set2", default=None, help="V for the UV kind")
    p.set_defaults(handler=cmd_star)

    p = sub.add_parser("build-topology", help="Topology from neighborhood families at the idempotents")
    p.add_argument("file")
    p.set_defaults(handler=cmd_build_topology)

    p = sub.add_parser("gen", help="Emit a generated instance")
    p.add_argument("kind", help="zn_mul, zn_add, left_zero, right_zero, null, rectangular_band, direct_product")
    p.add_argument("params", nargs="*", help="key=value, e.g. n=10")
    p.add_argument("--topology", default="discrete", help="discrete, indiscrete, h-block or subbase=0,1;2,3")
    p.add_argument("--name", default=None)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("verify-theorems", help="Run the theorem suite; exit 0 only if every applicable check passes")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--corpus", action="store_true", help="Run on the generated corpus instead")
    p.add_argument("--sample-cap", type=int, default=None, help="Subset samples per check")
    p.add_argument("--text", action="store_true")
    p.set_defaults(handler=cmd_verify_theorems)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        return args.handler(args)
    except AlgebraError as e:
        logger.error(f"{args.command}: {e.kind}: {e.message}")
        error = ErrorResponse(error=e.kind, message=e.message, detail=e.detail)
    except OSError as e:
        logger.error(f"{args.command}: {e}")
        error = ErrorResponse(error=type(e).__name__, message=str(e))
    print(error.model_dump_json(), file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
