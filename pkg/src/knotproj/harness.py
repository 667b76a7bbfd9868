"""Exhaustive verification suites over the curve catalog.

Each suite evaluates one universally quantified statement over every
qualifying catalog record (or, for the oracle suites, over every chord diagram
or move site in range) and collects counterexamples. A report passes iff it
has none. Predicates go through the public module APIs only, so a failing
suite points at one module contract.
"""

from __future__ import annotations

import json
import os
import random
import time
from itertools import combinations
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from knotproj import census, chords, cmap, moves, reduce
from knotproj.cmap import Embedding, face_census
from knotproj.word import all_words, normalize_letters, parity_filter

REPORT_SCHEMA_VERSION = 1


class CatalogIncomplete(Exception):
    """The catalog does not cover the requested crossing range."""


@dataclass
class Catalog:
    n_max: int
    records: list

    def upto(self, n_max: int) -> list:
        return [r for r in self.records if r.n <= n_max]


@dataclass
class SuiteReport:
    suite: str
    title: str
    n_min: int
    n_max: int
    instances: int
    counterexamples: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def payload(self) -> dict:
        """Everything except timing; identical across runs on the same catalog."""
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "suite": self.suite,
            "title": self.title,
            "n_range": [self.n_min, self.n_max],
            "instances": self.instances,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
            "extra": self.extra,
        }

    def to_json(self) -> dict:
        out = self.payload()
        out["wall_time"] = round(self.wall_time, 3)
        return out

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict} {self.suite} n<={self.n_max} instances={self.instances} "
            f"counterexamples={len(self.counterexamples)} ({self.title})"
        )


def _cx(rec_or_e, reason: str) -> dict:
    e = rec_or_e.embedding if hasattr(rec_or_e, "embedding") else rec_or_e
    return {"certificate": e.certificate, "word": list(e.letters), "reason": reason}


def _no_small_gons(c: cmap.FaceCensus) -> bool:
    return c[1] == 0 and c[2] == 0


def _reduced(e: Embedding) -> bool:
    return e.n > 0 and not chords.reducible_chords(chords.chord_diagram(e.word))


# ----------------------------------------------------------------------
# suites; each returns (instances, counterexamples, extra)


def suite_t1(recs, ctx) -> tuple:
    cx, inst = [], 0
    memo: dict = {}
    for r in recs:
        e = r.embedding
        cd = chords.chord_diagram(e.word)
        if chords.has_pattern(cd, chords.TRIPLE):
            continue
        pr, _ = reduce.reduce_to_pr(e)
        if pr.n > 0 and not chords.is_prime(chords.chord_diagram(pr.word)):
            continue
        inst += 1
        trace = reduce.strong_build_check(e, memo)
        if trace is None:
            cx.append(_cx(e, "no decreasing R1b/S2b trace to the circle"))
            continue
        try:
            rebuilt = reduce.replay_build(trace)
        except ValueError as exc:
            cx.append(_cx(e, f"replay failed: {exc}"))
            continue
        if rebuilt.certificate != e.certificate:
            cx.append(_cx(e, "replayed build reaches a different curve"))
    return inst, cx, {}


def suite_t1b(recs, ctx) -> tuple:
    cx, inst = [], 0
    for r in recs:
        e = r.embedding
        cd = chords.chord_diagram(e.word)
        if not chords.is_prime(cd) or not _no_small_gons(face_census(e)):
            continue
        if chords.has_pattern(cd, chords.TRIPLE):
            continue
        inst += 1
        if e.n != 0:
            cx.append(_cx(e, "prime, no 1- or 2-gons, no triple chord, yet not the circle"))
    return inst, cx, {}


def suite_t2(recs, ctx) -> tuple:
    cx, inst = [], 0
    smallest = None
    for r in recs:
        e = r.embedding
        if e.n == 0 or not _no_small_gons(face_census(e)):
            continue
        cd = chords.chord_diagram(e.word)
        if not chords.is_prime(cd):
            continue
        inst += 1
        smallest = e.n if smallest is None else min(smallest, e.n)
        if not chords.has_pattern(cd, chords.TRIPLE):
            cx.append(_cx(e, "no triple chord"))
    return inst, cx, {"smallest_instance_n": smallest}


def suite_t3(recs, ctx) -> tuple:
    cx, inst = [], 0
    for r in recs:
        e = r.embedding
        c = face_census(e)
        if e.n == 0 or not _no_small_gons(c):
            continue
        inst += 1
        value = cmap.census_identity(c)
        if value != 8:
            cx.append(_cx(e, f"p3 + sum (4-k) p_k = {value}"))
        elif c[3] < 8:
            cx.append(_cx(e, f"p3 = {c[3]}"))
    return inst, cx, {}


def suite_t4(recs, ctx) -> tuple:
    """Exploratory: a triangle of type A, B or C forces a triple chord."""
    cx, inst = [], 0
    for r in recs:
        e = r.embedding
        if e.n == 0 or not _no_small_gons(face_census(e)):
            continue
        cd = chords.chord_diagram(e.word)
        if not chords.is_prime(cd):
            continue
        letters = {t.letter for t in chords.triangle_classes(e)}
        if not letters & {"A", "B", "C"}:
            continue
        inst += 1
        if not chords.has_pattern(cd, chords.TRIPLE):
            cx.append(_cx(e, f"triangle types {sorted(letters)} but no triple chord"))
    return inst, cx, {}


def suite_t5(recs, ctx) -> tuple:
    cx, inst = [], 0
    alt = {chords.NON_INTERLEAVED: 0, "both": 0}
    for r in recs:
        e = r.embedding
        if not _reduced(e):
            continue
        inst += 1
        rv = reduce.reductivity(e, census.REDUCTIVITY_DEPTH)
        if isinstance(rv, reduce.Unknown):
            cx.append(_cx(e, f"reductivity unknown beyond depth {rv.max_depth}"))
            continue
        cd = chords.chord_diagram(e.word)
        cuts = chords.two_point_cuts(cd)
        if (rv.value == 1) != bool(cuts):
            cx.append(_cx(e, f"r = {rv.value} but {len(cuts)} two-point cuts"))
        # how the rejected arrangements would have fared
        non = chords.two_point_cuts(cd, (chords.NON_INTERLEAVED,))
        if (rv.value == 1) != bool(non):
            alt[chords.NON_INTERLEAVED] += 1
        if (rv.value == 1) != bool(cuts or non):
            alt["both"] += 1
    return inst, cx, {
        "arrangements": list(chords.DEFAULT_CUT_ARRANGEMENTS),
        "mismatches_with_other_arrangements": alt,
    }


def suite_t5b(recs, ctx) -> tuple:
    cx, inst = [], 0
    for r in recs:
        e = r.embedding
        if not _reduced(e):
            continue
        rv = reduce.reductivity(e, census.REDUCTIVITY_DEPTH)
        if rv.value != 1:
            continue
        inst += 1
        if not chords.has_pattern(chords.chord_diagram(e.word), chords.TRIPLE):
            cx.append(_cx(e, "r = 1 without a triple chord"))
    return inst, cx, {}


def suite_t6(recs, ctx) -> tuple:
    cx, inst = [], 0
    for r in recs:
        e = r.embedding
        for s in moves.enumerate_moves(e, {moves.MoveKind.W2a}):
            inst += 1
            out = moves.apply(e, s)
            if not chords.has_pattern(chords.chord_diagram(out.word), chords.TRIPLE):
                c = _cx(e, f"W2a result {out} has no triple chord")
                c["site"] = s.to_json()
                cx.append(c)
    return inst, cx, {}


def suite_t7(recs, ctx) -> tuple:
    cx, inst = [], 0
    for r in recs:
        e = r.embedding
        cd = chords.chord_diagram(e.word)
        if not chords.is_prime(cd) or face_census(e)[1] != 0:
            continue
        inst += 1
        red = chords.reducible_chords(cd)
        if red:
            cx.append(_cx(e, f"reducible crossings {sorted(red)}"))
    return inst, cx, {}


def suite_t8(recs, ctx) -> tuple:
    cx, inst = [], 0
    for r in recs:
        e = r.embedding
        if not _reduced(e):
            continue
        inst += 1
        c = face_census(e)
        if c[1] != 0:
            cx.append(_cx(e, "reduced curve with a 1-gon"))
        elif c[2] == 0 and c[3] == 0:
            cx.append(_cx(e, "no 2-gon and no 3-gon"))
    return inst, cx, {}


def _brute_patterns(cd: chords.ChordDiagram, kind: str) -> list[tuple[int, ...]]:
    """Pattern hits straight from endpoint positions, one chord subset at a time."""
    ends = cd.endpoints

    def inter(a: int, b: int) -> bool:
        i, j = ends[a - 1]
        return sum(1 for p in ends[b - 1] if i < p < j) == 1

    labels = range(1, cd.n + 1)
    if kind == chords.CROSS:
        return [(a, b) for a, b in combinations(labels, 2) if inter(a, b)]
    out = []
    for a, b, c in combinations(labels, 3):
        k = inter(a, b) + inter(a, c) + inter(b, c)
        if (kind == chords.TRIPLE and k == 3) or (kind == chords.H and k == 2):
            out.append((a, b, c))
    return out


def suite_t9(recs, ctx) -> tuple:
    n_max = ctx["n_max"]
    real_max = min(n_max, ctx.get("realize_max_n", 7))
    rng = random.Random(ctx.get("seed", 0))
    cx, inst = [], 0
    checks = {"patterns": 0, "realizability": 0, "trip_round_trip": 0, "a_inverse": 0, "deletions": 0}

    def fail(word, reason):
        cx.append({"certificate": bytes(word).hex(), "word": list(word), "reason": reason})

    for n in range(n_max + 1):
        for w in all_words(n):
            cd = chords.chord_diagram(w)
            checks["patterns"] += 1
            for kind in chords.PATTERN_KINDS:
                fast = sorted(tuple(sorted(h.chords)) for h in chords.find_patterns(cd, kind))
                if fast != _brute_patterns(cd, kind):
                    fail(w.letters, f"{kind} detector disagrees with brute force")
                if chords.has_pattern(cd, kind) != bool(fast):
                    fail(w.letters, f"has_pattern({kind}) disagrees with find_patterns")
            if n <= real_max:
                checks["realizability"] += 1
                brute = cmap.realize_all_unfiltered(w)
                fast_r = cmap.realize_all(w)
                if [e.certificate for e in brute] != [e.certificate for e in fast_r]:
                    fail(w.letters, "parity-filtered realization differs from brute force")
                if brute and not parity_filter(w):
                    fail(w.letters, "realizable word fails the parity condition")
            if n >= 2:
                # deleting chords never creates a pattern
                drop = rng.randrange(1, n + 1)
                sub = chords.from_sequence([x for x in w.letters if x != drop])
                checks["deletions"] += 1
                for kind in chords.PATTERN_KINDS:
                    if chords.has_pattern(sub, kind) and not chords.has_pattern(cd, kind):
                        fail(w.letters, f"deleting chord {drop} created a {kind}")
    for r in recs:
        e = r.embedding
        checks["trip_round_trip"] += 1
        back = cmap.from_map(e.map)
        if back.certificate != e.certificate:
            fail(e.letters, "trip read-back of the map is a different curve")
        if e.n > ctx.get("map_oracle_max_n", 7):
            continue
        # rooted-map isomorphism is the slow oracle; keep it to the smaller curves
        if not cmap.is_equivalent(back, e):
            fail(e.letters, "trip read-back is not isomorphic to the map")
        for c in range(1, e.n + 1):
            checks["a_inverse"] += 1
            by_rule = moves.a_inverse(e, c)
            by_surgery = moves.a_inverse_surgery(e, c)
            if by_rule.certificate != by_surgery.certificate:
                fail(e.letters, f"A^-1 at {c}: word rule and surgery disagree")
            if normalize_letters(by_rule.letters) != moves.a_inverse_word(e, c):
                fail(e.letters, f"A^-1 at {c}: word differs from reverse(P) Q")
            if by_rule.n != e.n - 1:
                fail(e.letters, f"A^-1 at {c} changed n by {by_rule.n - e.n}")
            by_rule.map.validate()
    inst = sum(checks.values())
    return inst, cx, {
        "checks": checks,
        "realizability_max_n": real_max,
        "map_oracle_max_n": min(n_max, ctx.get("map_oracle_max_n", 7)),
    }


def suite_t10(recs, ctx) -> tuple:
    cx, inst = [], 0
    memo: dict = {}
    for r in recs:
        inst += 1
        e = r.embedding
        if not reduce.pr_uniqueness_check(e, memo):
            ends = sorted(reduce.pr_terminals(e, memo=memo))
            cx.append(_cx(e, f"{len(ends)} distinct terminal curves"))
    return inst, cx, {}


def suite_t11(recs, ctx) -> tuple:
    rep = census.cross_validate(ctx["n_max"])
    cx = []
    for c in rep["only_in_moves"]:
        cx.append({"certificate": c, "word": [], "reason": "move generator found a curve the word generator missed"})
    for c in rep["only_in_words"]:
        cx.append({"certificate": c, "word": [], "reason": "move generator never reached this curve"})
    extra = {
        "word_counts": {str(k): v for k, v in rep["word_counts"].items()},
        "move_counts": {str(k): v for k, v in rep["move_counts"].items()},
    }
    return sum(rep["word_counts"].values()), cx, extra


@dataclass(frozen=True)
class Suite:
    id: str
    title: str
    default_n: int
    run: Callable
    acceptance: bool = True
    uses_catalog: bool = True


SUITES: dict[str, Suite] = {
    s.id: s
    for s in [
        Suite("T1", "triple-free curves with prime P^r build from the circle by 1a and s2a", 7, suite_t1),
        Suite("T1b", "prime, 1- and 2-gon free, triple-free curves are the circle", 8, suite_t1b),
        Suite("T2", "prime nontrivial curves without 1- or 2-gons have a triple chord", 8, suite_t2),
        Suite("T3", "p3 + sum (4-k) p_k = 8 and p3 >= 8 without 1- or 2-gons", 8, suite_t3),
        Suite("T4", "A, B or C triangles force a triple chord (exploratory)", 8, suite_t4, acceptance=False),
        Suite("T5", "reductivity one iff a two-point cut exists (reduced curves)", 7, suite_t5),
        Suite("T5b", "reductivity one implies a triple chord", 7, suite_t5b),
        Suite("T6", "every W2a result has a triple chord", 6, suite_t6),
        Suite("T7", "prime curves without 1-gons are reduced", 8, suite_t7),
        Suite("T8", "reduced nontrivial curves have a 2-gon or 3-gon", 8, suite_t8),
        Suite("T9", "oracle agreement: patterns, realizability, trip read-back, A^-1", 8, suite_t9),
        Suite("T10", "every maximal R1b/S2b/W2b reduction ends at one curve", 7, suite_t10),
        Suite("T11", "word-based and move-based enumeration agree", 6, suite_t11, uses_catalog=False),
    ]
}
ACCEPTANCE_SUITES = tuple(s.id for s in SUITES.values() if s.acceptance)


def resolve_suites(spec: str) -> list[str]:
    if spec.lower() == "all":
        return list(ACCEPTANCE_SUITES)
    out = []
    for token in spec.replace(",", " ").split():
        key = {k.lower(): k for k in SUITES}.get(token.lower())
        if key is None:
            raise KeyError(f"unknown suite {token!r}; choose from {', '.join(SUITES)} or all")
        out.append(key)
    return out


def build_catalog(n_max: int, jobs: int = 1) -> Catalog:
    return Catalog(n_max, list(census.enumerate_records(n_max, jobs=jobs)))


def load_catalog(path) -> Catalog:
    header = census.catalog_header(path)
    records = census.catalog_read(path)
    n_max = header.get("n_max")
    if n_max is None:
        # without a declared bound, only claim what the records show
        n_max = max((r.n for r in records), default=-1)
    return Catalog(n_max, records)


def default_cache_dir() -> Path:
    root = os.environ.get("KNOTPROJ_CACHE")
    if root:
        return Path(root)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "knotproj"


def cached_catalog(n_max: int, jobs: int = 1, cache_dir=None) -> Catalog:
    """Reuse the smallest cached catalog covering ``n_max``, else enumerate and cache one."""
    cache = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    if cache.is_dir():
        candidates = []
        for p in cache.glob("catalog-n*.jsonl"):
            try:
                k = int(p.stem.split("-n", 1)[1])
            except ValueError:
                continue
            if k >= n_max:
                candidates.append((k, p))
        for _, p in sorted(candidates):
            try:
                return load_catalog(p)
            except census.CatalogError:
                continue
    cat = build_catalog(n_max, jobs)
    try:
        census.catalog_write(cat.records, cache / f"catalog-n{n_max}.jsonl", n_max=n_max)
    except census.CatalogIOError:
        pass
    return cat


def run_suite(
    suite_id: str,
    n_max: int | None = None,
    catalog: Catalog | Sequence | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> SuiteReport:
    """Evaluate one suite over every qualifying instance with ``n <= n_max``.

    ``catalog`` may be a :class:`Catalog`, a plain record list (taken to cover
    up to its largest n), or None to enumerate on the fly. Raises
    :class:`CatalogIncomplete` when the catalog stops short of ``n_max``.
    """
    suite = SUITES[resolve_suites(suite_id)[0]]
    n_max = suite.default_n if n_max is None else n_max
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    t0 = time.perf_counter()
    recs: list = []
    if suite.uses_catalog:
        if catalog is None:
            catalog = build_catalog(n_max, jobs)
        elif not isinstance(catalog, Catalog):
            catalog = list(catalog)
            catalog = Catalog(max((r.n for r in catalog), default=-1), catalog)
        if catalog.n_max < n_max:
            raise CatalogIncomplete(f"catalog covers n <= {catalog.n_max}, suite needs n <= {n_max}")
        recs = sorted(catalog.upto(n_max), key=lambda r: r.key)
    ctx = {"n_max": n_max, "seed": seed}
    instances, cx, extra = suite.run(recs, ctx)
    cx.sort(key=lambda c: (c["certificate"], c["reason"]))
    return SuiteReport(
        suite=suite.id,
        title=suite.title,
        n_min=0,
        n_max=n_max,
        instances=instances,
        counterexamples=cx,
        extra=extra,
        wall_time=time.perf_counter() - t0,
    )


def run_suites(ids: Iterable[str], n_max: int | None, catalog: Catalog | None, seed: int = 0, jobs: int = 1):
    return [run_suite(i, n_max, catalog, seed, jobs) for i in ids]


def reports_json(reports: Sequence[SuiteReport]) -> str:
    return json.dumps(
        {
            "schema_version": REPORT_SCHEMA_VERSION,
            "passed": all(r.passed for r in reports),
            "suites": [r.to_json() for r in reports],
        },
        indent=2,
    )
