"""Command-line interface.

Every subcommand prints JSON on stdout unless ``--format text`` is given.
Exit codes: 0 success or pass, 1 failure or counterexample, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from knotproj import census, chords, harness, moves, reduce
from knotproj.cmap import CIRCLE_EMBEDDING, Embedding, face_census, realize_all
from knotproj.word import WordError, canonicalize, parity_filter, parse, serialize

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _embedding(text: str, index: int) -> Embedding:
    try:
        w = parse(text)
    except WordError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None
    if w.n == 0:
        return CIRCLE_EMBEDDING
    embs = realize_all(w)
    if not embs:
        raise UsageError(f"{serialize(w)!r} is not the Gauss word of a spherical curve")
    if not 0 <= index < len(embs):
        raise UsageError(f"embedding index {index} out of range; {serialize(w)!r} has {len(embs)}")
    return embs[index]


def _word_text(e: Embedding) -> str:
    return " ".join(map(str, e.letters))


def _emit(obj, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=False))
        return
    for key, value in obj.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        print(f"{key}: {value}")


# ----------------------------------------------------------------------
# subcommands


def cmd_parse(args) -> int:
    try:
        w = parse(args.word)
    except WordError as exc:
        raise UsageError(str(exc)) from None
    cf = canonicalize(w)
    embs = realize_all(w)
    _emit(
        {
            "word": serialize(w),
            "n": w.n,
            "canonical": serialize(cf.word),
            "certificate": cf.hex,
            "parity": parity_filter(w),
            "embeddings": len(embs),
        },
        args.format,
    )
    return EXIT_OK


def analysis(e: Embedding) -> dict:
    cd = chords.chord_diagram(e.word)
    rv = reduce.reductivity(e, census.REDUCTIVITY_DEPTH)
    pr, _ = reduce.reduce_to_pr(e)
    factors = chords.prime_factors(cd)
    return {
        "word": _word_text(e),
        "spins": list(e.spins),
        "n": e.n,
        "certificate": e.certificate,
        "faces": face_census(e).to_json(),
        "prime": chords.is_prime(cd),
        "factor_count": 0 if e.n == 0 else len(factors),
        "has_cross": chords.has_pattern(cd, chords.CROSS),
        "has_H": chords.has_pattern(cd, chords.H),
        "has_triple": chords.has_pattern(cd, chords.TRIPLE),
        "reducible_crossings": sorted(chords.reducible_chords(cd)),
        "bigons": [{"crossings": list(c), "type": t} for _, c, t in moves.bigons(e)],
        "triangles": [t.to_json() for t in chords.triangle_classes(e)],
        "two_point_cuts": [list(p) for p in chords.two_point_cuts(cd)] if e.n >= 2 else [],
        "reductivity": rv.value,
        "reductivity_detail": rv.to_json(),
        "pr": _word_text(pr),
        "pr_certificate": pr.certificate,
        "strong_trivializable": reduce.strong_build_check(e) is not None,
    }


def cmd_analyze(args) -> int:
    e = _embedding(args.word, args.embedding)
    out = analysis(e)
    out["embedding_index"] = args.embedding
    out["embedding_count"] = len(realize_all(e.word)) if e.n else 1
    _emit(out, args.format)
    return EXIT_OK


def cmd_moves(args) -> int:
    e = _embedding(args.word, args.embedding)
    try:
        kinds = moves.parse_kinds(args.kinds)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for s in moves.enumerate_moves(e, kinds):
        out = moves.apply(e, s)
        row = s.to_json()
        row["result"] = _word_text(out)
        row["result_certificate"] = out.certificate
        rows.append(row)
    _emit({"word": _word_text(e), "kinds": sorted(k.value for k in kinds), "sites": rows}, args.format)
    return EXIT_OK


def cmd_reduce(args) -> int:
    e = _embedding(args.word, args.embedding)
    pr, trace = reduce.reduce_to_pr(e)
    _emit(
        {
            "pr": _word_text(pr),
            "pr_certificate": pr.certificate,
            "unique": reduce.pr_uniqueness_check(e),
            "trace": [ev.to_json() for ev in trace.events],
        },
        args.format,
    )
    return EXIT_OK


def cmd_homotopy(args) -> int:
    a = _embedding(args.word, args.embedding)
    b = _embedding(args.target, args.embedding_b)
    try:
        kinds = moves.parse_kinds(args.kinds)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    max_n = args.max_n if args.max_n is not None else max(a.n, b.n) + 2
    try:
        res = reduce.homotopy_reachable(a, b, kinds, max_n)
    except reduce.BoundTooSmall as exc:
        raise UsageError(str(exc)) from None
    _emit(res.to_json(), args.format)
    return EXIT_OK if res.reachable else EXIT_FAIL


def cmd_reductivity(args) -> int:
    e = _embedding(args.word, args.embedding)
    rv = reduce.reductivity(e, args.max_depth)
    out = {"word": _word_text(e), "max_depth": args.max_depth, **rv.to_json()}
    _emit(out, args.format)
    return EXIT_OK if rv.value is not None else EXIT_FAIL


def cmd_decompose(args) -> int:
    try:
        w = parse(args.word)
    except WordError as exc:
        raise UsageError(str(exc)) from None
    cd = chords.chord_diagram(w)
    factors = chords.prime_factors(cd)
    _emit(
        {
            "word": serialize(w),
            "prime": chords.is_prime(cd),
            "factors": [" ".join(map(str, f.word())) for f in factors],
        },
        args.format,
    )
    return EXIT_OK


def cmd_enumerate(args) -> int:
    n_max = 4 if args.max_n is None else args.max_n
    records = list(census.enumerate_records(n_max, jobs=args.jobs))
    counts = census.class_counts(records)
    if args.catalog:
        try:
            census.catalog_write(records, args.catalog, n_max=n_max)
        except census.CatalogIOError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
    out = {
        "n_max": n_max,
        "counts": {str(k): v for k, v in counts.items()},
        "total": len(records),
        "catalog": args.catalog,
    }
    if args.cross_validate:
        rep = census.cross_validate(min(n_max, 6))
        out["cross_validate"] = {
            "n_max": rep["n_max"],
            "agree": rep["agree"],
            "move_counts": {str(k): v for k, v in rep["move_counts"].items()},
        }
        if not rep["ok"]:
            _emit(out, args.format)
            return EXIT_FAIL
    _emit(out, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        ids = harness.resolve_suites(args.suite)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    bounds = [
        args.max_n if args.max_n is not None else harness.SUITES[i].default_n
        for i in ids
        if harness.SUITES[i].uses_catalog
    ]
    needed = max(bounds, default=0)
    if args.catalog:
        try:
            cat = harness.load_catalog(args.catalog)
        except census.CatalogError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
    else:
        cat = harness.cached_catalog(needed, jobs=args.jobs)
    reports = []
    for i in ids:
        try:
            rep = harness.run_suite(i, args.max_n, cat, seed=args.seed, jobs=args.jobs)
        except harness.CatalogIncomplete as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        reports.append(rep)
    if args.format == "json":
        print(harness.reports_json(reports))
    else:
        for rep in reports:
            print(rep.summary())
            for c in rep.counterexamples:
                print(f"  {c['certificate']} [{' '.join(map(str, c['word']))}]: {c['reason']}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-n", type=int, default=None, help="crossing bound")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--catalog", default=None, help="catalog file (JSON lines)")
    common.add_argument("-v", "--verbose", action="store_true")

    one = argparse.ArgumentParser(add_help=False)
    one.add_argument("word", help='Gauss word, e.g. "1 2 3 1 2 3"; "" is the circle')
    one.add_argument("--embedding", type=int, default=0, help="which embedding of the word (sorted by certificate)")

    p = argparse.ArgumentParser(prog="knotproj", description="Spherical curve toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", parents=[common], help="normalize and canonicalize a word")
    sp.add_argument("word")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("analyze", parents=[common, one], help="faces, patterns, reductivity, P^r")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("moves", parents=[common, one], help="list applicable move sites")
    sp.add_argument("--kinds", default="R1a R1b S2a S2b W2a W2b R3")
    sp.set_defaults(func=cmd_moves)

    sp = sub.add_parser("reduce", parents=[common, one], help="reduce to the 1-/2-gon free form")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("homotopy", parents=[common, one], help="bounded search between two curves")
    sp.add_argument("target", help="second Gauss word")
    sp.add_argument("--embedding-b", type=int, default=0)
    sp.add_argument("--kinds", default="1 s2")
    sp.set_defaults(func=cmd_homotopy)

    sp = sub.add_parser("reductivity", parents=[common, one], help="least number of A^-1 moves to a reducible curve")
    sp.add_argument("--max-depth", type=int, default=census.REDUCTIVITY_DEPTH)
    sp.set_defaults(func=cmd_reductivity)

    sp = sub.add_parser("decompose", parents=[common], help="connected-sum factors")
    sp.add_argument("word")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("enumerate", parents=[common], help="enumerate curves and write a catalog")
    sp.add_argument("--cross-validate", action="store_true", help="also run the move-based generator (n <= 6)")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("--suite", default="all", help="suite id, comma list, or all")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.max_n is not None and args.max_n < 0:
        print("error: --max-n must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
