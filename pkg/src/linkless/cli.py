"""Command-line front end.

Subcommands: query, filter, shard, census, family, complement-check.
Exit codes: 0 success, 1 usage, 2 I/O error, 3 incomplete source,
4 internal invariant violation (e.g. the two IL deciders disagree).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import __version__
from .errors import IncompleteSource, LinklessError
from .g6 import G6Error, decode_g6, encode_g6
from .graph import Graph
from .linking import is_maxnil, is_nil_linking
from .minors import (
    generate_petersen_family,
    has_k6_minor,
    is_il_minor,
    petersen_minor_witness,
)
from .pipeline import (
    RunManifest,
    census_file,
    filter_file,
    shard_file,
    write_survivors,
)
from .planarity import apex_report, is_maximal_planar, is_planar, is_two_apex
from .search import SieveSpec, complement_verdicts, default_sieve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INCOMPLETE = 3
EXIT_INVARIANT = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _sieve_from_args(n: Optional[int], args) -> Optional[SieveSpec]:
    if n is None:
        return None
    sieve = default_sieve(n)
    overrides = {}
    for name in ("min_edges", "max_edges", "min_degree", "max_degree"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if overrides:
        fields = sieve.as_dict()
        fields.update(overrides)
        sieve = SieveSpec(**fields)
    return sieve


QUERY_CHECKS = (
    "planar",
    "maximal-planar",
    "apex",
    "two-apex",
    "k6-minor",
    "petersen-minor",
    "il",
    "maxnil",
    "triangular",
    "connectivity",
    "degrees",
    "complement",
)


def cmd_query(args) -> int:
    try:
        g = decode_g6(args.graph.encode("ascii"))
    except (G6Error, UnicodeEncodeError) as exc:
        print(f"error: bad graph6 record: {exc}", file=sys.stderr)
        return EXIT_USAGE
    wanted = [c for c in QUERY_CHECKS if getattr(args, c.replace("-", "_"))]
    if args.all or not wanted:
        wanted = list(QUERY_CHECKS)
    report: dict = {"n": g.n, "m": g.m}
    rc = EXIT_OK
    for check in wanted:
        if check == "planar":
            report["planar"] = is_planar(g)
        elif check == "maximal-planar":
            report["maximal_planar"] = g.n >= 3 and is_maximal_planar(g)
        elif check == "apex":
            rep = apex_report(g)
            report["apex"] = rep.is_apex
            report["apex_witness"] = rep.witness
        elif check == "two-apex":
            report["two_apex"] = is_two_apex(g)
        elif check == "k6-minor":
            report["k6_minor"] = any(
                has_k6_minor(g.induced(c)[0])
                for c in g.components()
                if c.bit_count() >= 6
            )
        elif check == "petersen-minor":
            report["petersen_minor"] = petersen_minor_witness(g)
        elif check == "il":
            by_link = not is_nil_linking(g)
            by_minor = is_il_minor(g)
            report["il_linking"] = by_link
            report["il_minor"] = by_minor
            if by_link != by_minor:
                report["decider_disagreement"] = True
                rc = EXIT_INVARIANT
        elif check == "maxnil":
            report["maxnil"] = is_maxnil(g)
        elif check == "triangular":
            report["triangular"] = g.is_triangular()
            report["non_triangular_edges"] = [
                list(e) for e in g.non_triangular_edges()
            ]
        elif check == "connectivity":
            k = 0
            while k + 1 < g.n and g.vertex_connectivity_at_least(k + 1):
                k += 1
            report["connectivity"] = k
        elif check == "degrees":
            lo, hi, seq = g.degree_profile()
            report["degree_min"] = lo
            report["degree_max"] = hi
            report["degree_sequence"] = seq
        elif check == "complement":
            cg = g.complement()
            report["complement_g6"] = encode_g6(cg).decode("ascii")
            report["complement_il"] = not is_nil_linking(cg)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")
    return rc


def cmd_filter(args) -> int:
    sieve = _sieve_from_args(args.sieve_n, args)
    manifest = filter_file(
        args.input,
        args.output,
        args.predicate,
        sieve=sieve,
        jobs=args.jobs,
        timeout_per_graph=args.timeout_per_graph,
    )
    payload = manifest.__dict__
    print(json.dumps(payload, sort_keys=True) if args.json else
          f"kept {manifest.stage_counts['kept']} of "
          f"{manifest.stage_counts['input']} -> {args.output}")
    return EXIT_INCOMPLETE if manifest.timeouts else EXIT_OK


def cmd_shard(args) -> int:
    manifest = shard_file(args.input, args.shard_size, args.output)
    if args.json:
        print(json.dumps(manifest, sort_keys=True))
    else:
        print(f"{len(manifest['shards'])} shards -> {args.output}")
    return EXIT_OK


def cmd_census(args) -> int:
    t0 = time.time()
    sieve = _sieve_from_args(args.n, args)
    result, manifest = census_file(
        args.n,
        args.input,
        jobs=args.jobs,
        workdir=args.workdir,
        shard_size=args.shard_size,
        sieve=sieve,
        triangulation_path=args.triangulations,
        prev_maxnil_path=args.prev_maxnil,
        require_manifest=not args.trust_source,
        timeout_per_graph=args.timeout_per_graph,
        progress=(None if args.json else
                  lambda msg: print(msg, file=sys.stderr)),
    )
    row = result.row.as_dict()
    row["runtime_seconds"] = round(time.time() - t0, 3)
    row["input_digest"] = manifest.input_digest
    if args.output:
        digest = write_survivors(result, args.output)
        manifest.output_digest = digest
        manifest.save(args.output + ".manifest.json")
    print(json.dumps(row, sort_keys=True) if args.json else
          f"n={row['n']}: {row['total']} maxnIL ({row['apex']} apex); "
          f"edge histogram {row['edge_histogram']}")
    return EXIT_OK


def cmd_family(args) -> int:
    family = generate_petersen_family()
    for name, g in family.named():
        line = encode_g6(g).decode("ascii")
        print(f"{line} {name}" if args.names else line)
    return EXIT_OK


def cmd_complement_check(args) -> int:
    from .pipeline import read_g6_lines

    graphs = [decode_g6(line) for line in read_g6_lines(args.input)]
    rc = EXIT_OK
    for i, verdict in enumerate(complement_verdicts(graphs)):
        record = {
            "line": i + 1,
            "complement_il_linking": verdict.complement_il_linking,
            "complement_il_minor": verdict.complement_il_minor,
            "complement_k6_minor_free": verdict.complement_k6_minor_free,
        }
        if verdict.complement_il_linking != verdict.complement_il_minor:
            record["decider_disagreement"] = True
            rc = EXIT_INVARIANT
        print(json.dumps(record, sort_keys=True))
    return rc


def build_parser() -> _Parser:
    parser = _Parser(prog="linkless", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="per-graph checks on one graph6 record")
    q.add_argument("graph", help="graph6 record (short form)")
    for check in QUERY_CHECKS:
        q.add_argument(f"--{check}", action="store_true")
    q.add_argument("--all", action="store_true", help="run every check")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_query)

    f = sub.add_parser("filter", help="filter a graph6 stream by a predicate")
    f.add_argument("--input", required=True)
    f.add_argument("--output", required=True)
    f.add_argument(
        "--predicate",
        required=True,
        choices=["k6-minor-free", "nil", "maxnil", "non-apex"],
    )
    f.add_argument("--sieve-n", type=int)
    f.add_argument("--min-edges", type=int)
    f.add_argument("--max-edges", type=int)
    f.add_argument("--min-degree", type=int)
    f.add_argument("--max-degree", type=int)
    f.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    f.add_argument("--timeout-per-graph", type=float)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_filter)

    s = sub.add_parser("shard", help="split a graph6 file into shards")
    s.add_argument("--input", required=True)
    s.add_argument("--shard-size", type=int, required=True)
    s.add_argument("--output", required=True, help="output directory")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_shard)

    c = sub.add_parser("census", help="run the maxnIL census for one order")
    c.add_argument("-n", "--sieve-n", dest="n", type=int, required=True)
    c.add_argument("--input", action="append", required=True,
                   help="source graph6 file (repeatable)")
    c.add_argument("--triangulations",
                   help="graph6 file of order n-1 plane triangulations")
    c.add_argument("--prev-maxnil",
                   help="graph6 file of the order n-1 maxnIL graphs")
    c.add_argument("--output", help="survivor graph6 file")
    c.add_argument("--workdir", help="shard cache for crash resume")
    c.add_argument("--shard-size", type=int, default=200_000)
    c.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    c.add_argument("--timeout-per-graph", type=float)
    c.add_argument("--trust-source", action="store_true",
                   help="skip the coverage manifest requirement")
    c.add_argument("--min-edges", type=int)
    c.add_argument("--max-edges", type=int)
    c.add_argument("--min-degree", type=int)
    c.add_argument("--max-degree", type=int)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_census)

    fam = sub.add_parser("family", help="print the Petersen family as graph6")
    fam.add_argument("--names", action="store_true")
    fam.set_defaults(func=cmd_family)

    cc = sub.add_parser(
        "complement-check",
        help="IL verdicts for complements of a maxnIL graph6 stream",
    )
    cc.add_argument("--input", required=True)
    cc.set_defaults(func=cmd_complement_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except IncompleteSource as exc:
        print(f"error: incomplete source: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except LinklessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
