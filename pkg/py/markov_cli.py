#!/usr/bin/env python
"""
Compute Markov numbers from Christoffel snake graphs, draw the graphs, and run
the identity and ordering checks.

Exit codes: 0 success, 1 counterexample found, 2 usage error.
"""

import sys
import json
import argparse
import logging

import markov_config
import snake
import trees
import verify

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def setup_logging(verbose):
    """Sets up logging based on the verbosity flag."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(stream=sys.stderr, level=level, format='%(asctime)s - %(levelname)s - %(message)s')


def parse_index(text):
    try:
        return snake.RationalIndex.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def envelope(command, inputs, result):
    return json.dumps({"command": command, "inputs": inputs, "result": result}, sort_keys=True, indent=2) + "\n"


def write_csv(path, table):
    with open(path, 'w', encoding="utf-8") as outf:
        outf.write("p,q,markov\n")
        for (p, q) in sorted(table, key=lambda pq: (pq[1], pq[0])):
            outf.write(f"{p},{q},{table[(p, q)]}\n")
    logging.info(f"wrote {len(table)} rows to {path}")


def cmd_index(args, conf):
    idx = args.index
    g = snake.build_snake(idx)
    cf = snake.cf_from_snake(g)
    result = {
        "p": idx.p,
        "q": idx.q,
        "gcd": idx.g,
        "christoffel": str(snake.christoffel_word(idx)),
        "cf": list(cf.entries),
        "markov": str(snake.markov_number(idx)),
        "replaceable_count": len(snake.replaceable_entries(cf)),
    }
    return envelope("index", {"index": str(idx)}, result), EXIT_OK


def cmd_snake(args, conf):
    g = snake.build_snake(args.index)
    if args.format == "json":
        return envelope("snake", {"index": str(args.index), "format": "json"}, g.to_dict()), EXIT_OK
    return snake.render(g, args.format), EXIT_OK


def cmd_tree(args, conf):
    max_depth = conf["tree"]["max_depth"]
    if args.depth > max_depth:
        raise ValueError(f"depth {args.depth} exceeds the configured maximum of {max_depth}")
    root = trees.generate_tree(args.kind, args.depth)
    return envelope("tree", {"kind": args.kind, "depth": args.depth}, root.to_dict()), EXIT_OK


def cmd_verify(args, conf):
    seed = args.seed if args.seed is not None else conf["seed"]
    trials = args.trials if args.trials is not None else conf["trials"]
    jobs = args.jobs if args.jobs is not None else conf["sweep"]["jobs"]
    bounds = verify.GeneratorBounds.from_config(conf["generator"])
    inputs = {"check": args.check}
    table = None
    if args.csv and args.check not in ("ordering", "conjectures"):
        raise ValueError(f"--csv only applies to the ordering and conjectures sweeps, not {args.check}")

    if args.check == "identities":
        inputs.update(seed=seed, trials=trials)
        reports = [
            verify.check_basic_identities(trials, seed, bounds),
            verify.check_replacement_difference(trials, seed, bounds),
            verify.telescoping_suite(trials, seed, bounds),
            verify.positivity_suite(trials, seed, bounds),
            verify.mixed_replacements_suite(trials, seed, bounds),
        ]
    elif args.check == "ordering":
        max_q = args.max_q if args.max_q is not None else conf["sweep"]["max_q"]
        inputs.update(max_q=max_q, include_noncoprime=args.include_noncoprime, decompose=args.decompose)
        table = verify.markov_table(max_q + 1, jobs)
        reports = [verify.sweep_ordering(max_q, args.include_noncoprime, jobs, args.decompose, table=table)]
    elif args.check == "conjectures":
        max_q = args.max_q if args.max_q is not None else conf["sweep"]["max_q"]
        max_i = args.max_i if args.max_i is not None else conf["sweep"]["max_i"]
        inputs.update(max_q=max_q, max_i=max_i)
        table = verify.markov_table(max_q, jobs)
        reports = [verify.sweep_conjectures(max_q, max_i, jobs, table=table)]
    else:
        max_sum = args.max_sum if args.max_sum is not None else conf["sweep"]["max_sum"]
        limit = args.tile_limit if args.tile_limit is not None else conf["bruteforce"]["tile_limit"]
        inputs.update(max_sum=max_sum, tile_limit=limit)
        reports = [verify.cross_check_matchings(max_sum, limit)]

    if args.csv and table is not None:
        write_csv(args.csv, table)
    passed = all(r.passed for r in reports)
    for r in reports:
        level = logging.INFO if r.passed else logging.ERROR
        logging.log(level, f"{r.name}: {r.cases_run} cases, {len(r.failures)} failures")
    result = {"passed": passed, "reports": [r.to_dict() for r in reports]}
    return envelope("verify", inputs, result), EXIT_OK if passed else EXIT_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        description="Markov numbers from Christoffel snake graphs and their continued fractions")
    parser.add_argument("--config", type=str, default=None,
                        help=f"YAML config file (default: {markov_config.DEFAULT_CONFIG_PATH})")
    parser.add_argument("--verbose", action="store_true", help="Enable verbose logging")
    parser.add_argument("--out", type=argparse.FileType('w'), default="-",
                        help="Output file (default: stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="Markov number and continued fraction of p/q")
    p_index.add_argument("index", type=parse_index, metavar="P/Q")
    p_index.set_defaults(handler=cmd_index)

    p_snake = sub.add_parser("snake", help="Draw or dump the snake graph of p/q")
    p_snake.add_argument("index", type=parse_index, metavar="P/Q")
    p_snake.add_argument("--format", choices=["ascii", "svg", "json"], default="ascii")
    p_snake.set_defaults(handler=cmd_snake)

    p_tree = sub.add_parser("tree", help="Markov or Farey tree as nested JSON")
    p_tree.add_argument("--kind", choices=[k.value for k in trees.TreeKind], default="markov")
    p_tree.add_argument("--depth", type=int, default=2)
    p_tree.set_defaults(handler=cmd_tree)

    p_verify = sub.add_parser("verify", help="Run identity checks and ordering sweeps")
    p_verify.add_argument("check", choices=["identities", "ordering", "conjectures", "matchings"])
    p_verify.add_argument("--seed", type=int, default=None, help="Seed for randomized suites")
    p_verify.add_argument("--trials", type=int, default=None, help="Instances per randomized suite")
    p_verify.add_argument("--jobs", type=int, default=None, help="Worker processes (0: all cores)")
    p_verify.add_argument("--max-q", type=int, default=None, help="Largest denominator swept")
    p_verify.add_argument("--max-i", type=int, default=None, help="Largest step i for the conjecture sweep")
    p_verify.add_argument("--max-sum", type=int, default=None, help="Largest p+q for the matching oracle")
    p_verify.add_argument("--tile-limit", type=int, default=None, help="Brute-force tile limit")
    p_verify.add_argument("--include-noncoprime", action="store_true",
                          help="Also compare lattice-path values of non-coprime indices")
    p_verify.add_argument("--decompose", action="store_true",
                          help="Check each ordering pair through its aligned replacement decomposition")
    p_verify.add_argument("--csv", type=str, default=None, help="Write the swept values as CSV")
    p_verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    setup_logging(args.verbose)

    try:
        conf = markov_config.load_config(args.config)
        text, code = args.handler(args, conf)
    except (ValueError, TypeError, OSError) as e:
        logging.error(f"Error: {e}")
        return EXIT_USAGE

    args.out.write(text)
    if args.out is not sys.stdout:
        args.out.close()
    return code


if __name__ == '__main__':
    sys.exit(main())
