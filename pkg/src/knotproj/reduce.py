"""Reduction to the 1-gon/2-gon free form, strong (1, 2) homotopy search, reductivity.

Every search memoizes on embedding certificates, which collapse the
rotation, reflection and relabelling symmetries of a curve.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from knotproj.cmap import CIRCLE_EMBEDDING, Embedding
from knotproj.moves import (
    DECREASING,
    STRONG_12,
    MoveEvent,
    MoveKind,
    a_inverse,
    apply,
    enumerate_moves,
    event,
    is_reducible,
    parse_kinds,
)

STRONG_DECREASING = frozenset({MoveKind.R1b, MoveKind.S2b})


class BoundTooSmall(ValueError):
    pass


@dataclass
class ReductionTrace:
    start: Embedding
    end: Embedding
    events: list[MoveEvent] = field(default_factory=list)

    @property
    def monotone(self) -> bool:
        deltas = [ev.kind.delta for ev in self.events]
        return all(d < 0 for d in deltas) or all(d > 0 for d in deltas)

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "end": self.end.to_json(),
            "monotone": self.monotone,
            "events": [ev.to_json() for ev in self.events],
        }

    def jsonl(self) -> str:
        """MoveEvent log, one JSON object per line."""
        return "".join(json.dumps(ev.to_json()) + "\n" for ev in self.events)


def _first_site(e: Embedding, kinds):
    sites = enumerate_moves(e, kinds)
    return sites[0] if sites else None


def reduce_to_pr(e: Embedding) -> tuple[Embedding, ReductionTrace]:
    """Greedily remove 1-gons and 2-gons (R1b, S2b, W2b) until none is left."""
    cur = e
    events = []
    while True:
        site = _first_site(cur, DECREASING)
        if site is None:
            break
        nxt = apply(cur, site, check=False)
        events.append(event(cur, site, nxt))
        cur = nxt
    return cur, ReductionTrace(e, cur, events)


def pr_terminals(e: Embedding, kinds=DECREASING, memo: dict | None = None) -> frozenset:
    """Certificates of every end point of maximal decreasing sequences from ``e``."""
    memo = {} if memo is None else memo

    def rec(x: Embedding) -> frozenset:
        key = x.certificate
        hit = memo.get(key)
        if hit is not None:
            return hit
        sites = enumerate_moves(x, kinds)
        if not sites:
            out = frozenset({key})
        else:
            acc: set = set()
            for s in sites:
                acc |= rec(apply(x, s, check=False))
            out = frozenset(acc)
        memo[key] = out
        return out

    return rec(e)


def pr_uniqueness_check(e: Embedding, memo: dict | None = None) -> bool:
    """True iff all maximal R1b/S2b/W2b sequences end at the same curve."""
    return len(pr_terminals(e, DECREASING, memo)) == 1


def strong_build_check(e: Embedding, memo: dict | None = None) -> ReductionTrace | None:
    """A decreasing R1b/S2b trace from ``e`` to the circle, or None.

    Read backwards it builds ``e`` from the circle with kinks and strong
    fingers only. Dead ends are memoized by certificate.
    """
    dead = set() if memo is None else memo.setdefault("dead", set())
    circle = CIRCLE_EMBEDDING.certificate

    def rec(x: Embedding) -> list | None:
        if x.n == 0:
            return []
        key = x.certificate
        if key in dead:
            return None
        # larger drops first, so traces come out short
        sites = sorted(enumerate_moves(x, STRONG_DECREASING), key=lambda s: (s.kind.delta, s))
        for s in sites:
            y = apply(x, s, check=False)
            rest = rec(y)
            if rest is not None:
                return [event(x, s, y)] + rest
        dead.add(key)
        return None

    events = rec(e)
    if events is None:
        return None
    assert not events or events[-1].after_cert == circle
    return ReductionTrace(e, CIRCLE_EMBEDDING, events)


def connect(x: Embedding, target_cert: str, kinds):
    """A site of ``x`` among ``kinds`` whose result has ``target_cert``."""
    for s in enumerate_moves(x, kinds):
        y = apply(x, s, check=False)
        if y.certificate == target_cert:
            return s, y
    return None


def replay_build(trace: ReductionTrace) -> Embedding:
    """Rebuild ``trace.start`` from the circle by inverting each event in reverse order.

    Raises ValueError when some step has no matching increasing site.
    """
    cur = CIRCLE_EMBEDDING if trace.end.n == 0 else trace.end
    for ev in reversed(trace.events):
        inv = ev.kind.inverse
        found = connect(cur, ev.before_cert, frozenset({inv}))
        if found is None:
            raise ValueError(f"no {inv} site reproduces {ev.before_cert}")
        cur = found[1]
    return cur


# ----------------------------------------------------------------------
# homotopy search


@dataclass
class HomotopyResult:
    status: str  # "yes" or "no_within_bound"
    max_n: int
    kinds: tuple[str, ...]
    events: list[MoveEvent] = field(default_factory=list)
    explored: int = 0

    @property
    def reachable(self) -> bool:
        return self.status == "yes"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "max_n": self.max_n,
            "kinds": list(self.kinds),
            "explored": self.explored,
            "trace": [ev.to_json() for ev in self.events],
        }


def _inverse_closed(kinds) -> bool:
    return all(k.inverse in kinds for k in kinds)


def homotopy_reachable(a: Embedding, b: Embedding, kinds=STRONG_12, max_n: int = 0) -> HomotopyResult:
    """Search the move graph on curves with at most ``max_n`` crossings.

    Bidirectional when ``kinds`` is closed under inverses. A negative answer
    only says that no path exists inside the bound.
    """
    kinds = parse_kinds(kinds) if not isinstance(kinds, frozenset) else kinds
    if max_n < max(a.n, b.n):
        raise BoundTooSmall(f"max_n={max_n} is below the crossing numbers {a.n}, {b.n}")
    names = tuple(sorted(k.value for k in kinds))
    ca, cb = a.certificate, b.certificate
    if ca == cb:
        return HomotopyResult("yes", max_n, names, [], 1)
    both_ways = _inverse_closed(kinds)
    # parent maps: cert -> (neighbour cert, embedding)
    side_a = {ca: (None, a)}
    side_b = {cb: (None, b)}
    front_a, front_b = [a], [b]

    def expand(front, seen, other):
        nxt = []
        for x in front:
            for s in enumerate_moves(x, kinds):
                if x.n + s.kind.delta > max_n:
                    continue
                y = apply(x, s, check=False)
                cy = y.certificate
                if cy in seen:
                    continue
                seen[cy] = (x.certificate, y)
                if cy in other:
                    return nxt, cy
                nxt.append(y)
        return nxt, None

    meet = None
    while front_a and (front_b or not both_ways):
        if both_ways and len(front_b) < len(front_a):
            front_b, meet = expand(front_b, side_b, side_a)
        else:
            front_a, meet = expand(front_a, side_a, side_b if both_ways else {cb: None})
        if meet is not None:
            break
    explored = len(side_a) + len(side_b)
    if meet is None:
        return HomotopyResult("no_within_bound", max_n, names, [], explored)

    path_a = []
    c = meet
    while c is not None:
        path_a.append(side_a[c][1])
        c = side_a[c][0]
    path_a.reverse()
    path = list(path_a)
    if both_ways:
        c = side_b[meet][0]
        while c is not None:
            path.append(side_b[c][1])
            c = side_b[c][0]
    events = []
    for x, y in zip(path, path[1:]):
        s, y2 = connect(x, y.certificate, kinds)
        events.append(event(x, s, y2))
    return HomotopyResult("yes", max_n, names, events, explored)


# ----------------------------------------------------------------------
# reductivity


@dataclass(frozen=True)
class Reductivity:
    value: int
    witness: tuple[int, ...] = ()
    degenerate: bool = False

    def to_json(self) -> dict:
        return {"value": self.value, "witness": list(self.witness), "degenerate": self.degenerate}


@dataclass(frozen=True)
class Unknown:
    max_depth: int

    value = None

    def to_json(self) -> dict:
        return {"value": None, "unknown_beyond_depth": self.max_depth}


def reductivity(e: Embedding, max_depth: int = 4) -> Reductivity | Unknown:
    """Least number of A^-1 moves reaching a reducible curve (breadth-first).

    The witness lists one crossing label per step, each relative to the curve
    produced by the previous step. The circle has value 0 and is flagged
    degenerate.
    """
    if e.n == 0:
        return Reductivity(0, (), True)
    if is_reducible(e):
        return Reductivity(0)
    seen = {e.certificate}
    layer = [(e, ())]
    for depth in range(1, max_depth + 1):
        nxt = []
        for x, path in layer:
            for c in range(1, x.n + 1):
                y = a_inverse(x, c)
                if is_reducible(y):
                    return Reductivity(depth, path + (c,))
                cy = y.certificate
                if y.n > 0 and cy not in seen:
                    seen.add(cy)
                    nxt.append((y, path + (c,)))
        layer = nxt
        if not layer:
            break
    return Unknown(max_depth)


def replay_reductivity(e: Embedding, witness) -> Embedding:
    cur = e
    for c in witness:
        cur = a_inverse(cur, c)
    return cur
