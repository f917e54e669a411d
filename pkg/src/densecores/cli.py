"""Command-line front end.

Every analysis subcommand reads one edge-list file and writes
line-delimited JSON records in a fixed order, so two runs with the same
arguments produce identical bytes whatever the thread count.

Exit codes: 0 success, 1 usage error, 2 data error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from . import applications as apps
from . import generators, multilayer, signed, temporal
from ._parallel import THREADS_ENV, resolve_threads
from .errors import (ContractViolation, ConvergenceError, NoSolutionError, ParseError,
                     ResourceLimitError, UnknownVertexError)
from .graphs import (read_multilayer, read_signed, read_temporal, parse_multilayer,
                     parse_signed, parse_temporal, write_multilayer, write_signed,
                     write_temporal)

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CAP = 0, 1, 2, 3

FORMATS = """\
input formats (UTF-8, '#' comments and blank lines ignored, tokens split on
spaces or tabs):
  multilayer  u v layer      e.g.  alice bob work
  temporal    u v t          e.g.  alice bob 3      (t a non-negative integer)
  signed      u v sign       e.g.  alice bob -1     (sign one of +1 -1 + -)

output: one JSON object per line, deterministic order.
default thread count comes from ${env} (1 if unset).
""".replace("${env}", THREADS_ENV)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _params(cls, *values):
    # parameter checks happen before any input is read and count as usage errors
    try:
        return cls(*values)
    except ContractViolation as exc:
        raise UsageError(str(exc)) from None


def _dump(fp, record):
    fp.write(json.dumps(record, ensure_ascii=False) + "\n")


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fp:
            yield fp


def _load(path, reader, parser):
    if path == "-":
        return parser(sys.stdin)
    return reader(path)


# -- record builders -------------------------------------------------------

def core_record(G, core, vertices=True):
    rec = {"vector": list(core.vector), "size": core.size}
    if vertices:
        rec["vertices"] = G.labels_of(core.vertices)
    return rec


def span_record(G, core, vertices=True):
    rec = {"k": core.k, "span": [core.ts, core.te], "size": core.size}
    if vertices:
        rec["vertices"] = G.labels_of(core.vertices)
    return rec


def polarity_record(G, part, lambda1, seed=None):
    return {
        "algorithm": part.algorithm,
        "polarity": part.polarity,
        "lambda1": lambda1,
        "community_pos": G.labels_of(part.positive),
        "community_neg": G.labels_of(part.negative),
        "neutral_count": part.neutral_count,
        "seed": seed,
    }


# -- subcommands -----------------------------------------------------------

def _ml_cores(G, args):
    if args.naive:
        return multilayer.decompose_naive(G, args.max_cores, args.threads)
    return multilayer.decompose_all(G, args.max_cores, args.threads)


def cmd_ml_cores(args, out):
    G = _load(args.input, read_multilayer, parse_multilayer)
    cores = _ml_cores(G, args)
    if args.distinct_sets:
        cores = multilayer.collapse_distinct_sets(cores)
    for c in cores:
        _dump(out, core_record(G, c, not args.no_vertices))


def cmd_ml_maximal(args, out):
    G = _load(args.input, read_multilayer, parse_multilayer)
    if args.naive:
        cores = multilayer.filter_maximal(_ml_cores(G, args))
    else:
        cores = multilayer.maximal_cores(G, args.max_cores)
    for c in cores:
        _dump(out, core_record(G, c, not args.no_vertices))


def cmd_ml_densest(args, out):
    params = _params(apps.DensestParams, args.beta)
    G = _load(args.input, read_multilayer, parse_multilayer)
    cores = _ml_cores(G, args) if args.naive else None
    res = apps.densest_subgraph(G, params, args.threads, args.max_cores, cores=cores)
    _dump(out, {"delta": res.delta, "beta": params.beta,
                "support_layers": list(res.support_layers),
                "vertices": G.labels_of(res.vertices), "guarantee": res.guarantee})


def cmd_ml_qc_prune(args, out):
    params = _params(apps.QuasiCliqueParams, args.gamma, args.min_size, args.min_sup)
    G = _load(args.input, read_multilayer, parse_multilayer)
    if args.naive:
        # union over every qualifying core of the full decomposition
        t, s = params.degree_threshold(params.min_size), params.support(G.num_layers)
        keep = set()
        for c in _ml_cores(G, args):
            if sum(k >= t for k in c.vector) >= s and c.size >= params.min_size:
                keep.update(c.vertices.tolist())
        pruned = sorted(keep)
    else:
        pruned = apps.quasi_clique_prune(G, params).tolist()
    _dump(out, {"gamma": params.gamma, "min_size": params.min_size, "min_sup": params.min_sup,
                "size": len(pruned), "vertices": G.labels_of(pruned)})
    if args.enumerate:
        for S in apps.quasi_clique_enumerate(G, params, pruned):
            _dump(out, {"quasi_clique": G.labels_of(S), "size": int(S.size)})


def cmd_ml_community(args, out):
    labels = [q for part in args.query for q in part.split(",") if q]
    if not labels:
        raise UsageError("--query needs at least one vertex")
    _params(apps.DensestParams, args.beta)
    G = _load(args.input, read_multilayer, parse_multilayer)
    query = apps.CommunityQuery(tuple(G.vertex_ids(labels).tolist()), args.beta)
    cores = _ml_cores(G, args) if args.naive else None
    res = apps.community_search(G, query, args.threads, args.max_cores, cores=cores)
    _dump(out, {"query": sorted(set(labels)), "mu": res.mu, "beta": query.beta,
                "support_layers": list(res.support_layers), "vector": list(res.vector),
                "size": int(res.vertices.size), "vertices": G.labels_of(res.vertices)})


def _spans(G, args):
    if args.naive:
        return temporal.span_cores_naive(G, args.max_records, args.threads)
    return temporal.span_cores_all(G, args.max_records, args.threads)


def _maximal_spans(G, args):
    if args.naive:
        return temporal.filter_maximal_spans(_spans(G, args))
    return temporal.maximal_span_cores(G)


def cmd_span_cores(args, out):
    G = _load(args.input, read_temporal, parse_temporal)
    for c in _spans(G, args):
        _dump(out, span_record(G, c, not args.no_vertices))


def cmd_span_maximal(args, out):
    G = _load(args.input, read_temporal, parse_temporal)
    for c in _maximal_spans(G, args):
        _dump(out, span_record(G, c, not args.no_vertices))


def cmd_span_stats(args, out):
    G = _load(args.input, read_temporal, parse_temporal)
    stats = temporal.span_statistics(_maximal_spans(G, args))
    _dump(out, {"histogram": {str(k): v for k, v in stats.histogram.items()},
                "max_span_by_k": {str(k): v for k, v in stats.max_span_by_k.items()},
                "total": stats.total})


def cmd_polarity(args, out):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    G = _load(args.input, read_signed, parse_signed)
    spec = signed.leading_eigenvector(G, args.tol, args.max_iter, fallback=not args.strict)
    seed = None
    if args.algo == "det":
        part = signed.round_deterministic(G, spec)
    elif args.algo == "rand":
        part = signed.round_randomized(G, spec, args.trials, args.seed)
        seed = args.seed
    else:
        part = signed.brute_force_polarity(G)
    _dump(out, polarity_record(G, part, spec.lambda1, seed))


def cmd_gen_planted(args, out):
    inst = signed.generate_planted(args.n, args.size1, args.size2, args.p_in, args.p_out,
                                   args.noise, args.seed)
    write_signed(inst.graph, out)
    if args.truth:
        with open(args.truth, "w", encoding="utf-8", newline="\n") as fp:
            for label, x in zip(inst.graph.labels, inst.truth.tolist()):
                fp.write(f"{label} {x:+d}\n" if x else f"{label} 0\n")


def cmd_gen_random(args, out):
    G = generators.gen_random(args.kind, args.n, args.size, args.p, args.seed)
    writer = {"multilayer": write_multilayer, "temporal": write_temporal,
              "signed": write_signed}[args.kind]
    writer(G, out)


# -- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="densecores", description="Dense structures in multilayer, "
                     "temporal and signed graphs.", epilog=FORMATS,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    common = _Parser(add_help=False)
    common.add_argument("--output", "-o", default="-", help="output path (default stdout)")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default ${THREADS_ENV} or 1)")
    analysis = _Parser(add_help=False, parents=[common])
    analysis.add_argument("--input", "-i", required=True, help="edge-list path, '-' for stdin")
    analysis.add_argument("--naive", action="store_true",
                          help="use the brute-force reference algorithm")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help, parents=(analysis,)):
        p = sub.add_parser(name, help=help, parents=list(parents), epilog=FORMATS,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=fn)
        return p

    def ml(p, vertices=True):
        p.add_argument("--max-cores", type=int, default=multilayer.DEFAULT_MAX_CORES,
                       help="fail with exit code 3 beyond this many cores")
        if vertices:
            p.add_argument("--no-vertices", action="store_true",
                           help="omit vertex lists from core records")
        return p

    p = ml(add("ml-cores", cmd_ml_cores, "all non-empty multilayer cores"))
    p.add_argument("--distinct-sets", action="store_true",
                   help="one record per vertex set, keeping its maximal vectors")
    ml(add("ml-maximal", cmd_ml_maximal, "maximal multilayer cores"))
    p = ml(add("ml-densest", cmd_ml_densest, "multilayer densest subgraph"), vertices=False)
    p.add_argument("--beta", type=float, default=1.0)
    p = ml(add("ml-qc-prune", cmd_ml_qc_prune, "quasi-clique search-space pruning"),
           vertices=False)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--min-size", "-m", type=int, required=True)
    p.add_argument("--min-sup", type=float, required=True)
    p.add_argument("--enumerate", action="store_true",
                   help=f"also list every quasi-clique in the pruned set "
                        f"(at most {apps.ENUMERATE_LIMIT} vertices)")
    p = ml(add("ml-community", cmd_ml_community, "community search around query vertices"),
           vertices=False)
    p.add_argument("--query", "-q", action="append", required=True,
                   help="query vertex labels, comma-separated or repeated")
    p.add_argument("--beta", type=float, default=1.0)

    for name, fn, help in (("span-cores", cmd_span_cores, "all span-cores"),
                           ("span-maximal", cmd_span_maximal, "maximal span-cores"),
                           ("span-stats", cmd_span_stats, "span-length statistics "
                                                          "of the maximal span-cores")):
        p = add(name, fn, help)
        p.add_argument("--max-records", type=int, default=temporal.DEFAULT_MAX_RECORDS,
                       help="fail with exit code 3 beyond this many span-cores")
        if name != "span-stats":
            p.add_argument("--no-vertices", action="store_true")

    p = add("polarity", cmd_polarity, "two opposed communities in a signed graph",
            parents=(common,))
    p.add_argument("--input", "-i", required=True, help="edge-list path, '-' for stdin")
    p.add_argument("--algo", choices=("det", "rand", "brute"), default="det")
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--strict", action="store_true",
                   help="fail instead of falling back to a direct eigensolver")

    p = add("gen-planted", cmd_gen_planted, "planted polarized signed graph",
            parents=(common,))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size1", type=int, required=True)
    p.add_argument("--size2", type=int, required=True)
    p.add_argument("--p-in", type=float, default=0.9)
    p.add_argument("--p-out", type=float, default=0.9)
    p.add_argument("--noise", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--truth", help="also write the planted assignment here")

    p = add("gen-random", cmd_gen_random, "Erdős–Rényi multilayer, temporal or signed graph",
            parents=(common,))
    p.add_argument("--kind", choices=generators.KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", "--layers", "--timestamps", dest="size", type=int, default=1,
                   help="number of layers or timestamps")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.threads = resolve_threads(args.threads)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        with _output(args.output) as out:
            args.func(args, out)
    except UsageError as exc:
        parser.error(str(exc))
    except ResourceLimitError as exc:
        print(f"densecores: resource limit: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, UnknownVertexError, NoSolutionError, ConvergenceError,
            ContractViolation, OSError) as exc:
        print(f"densecores: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def main():
    sys.exit(run())
