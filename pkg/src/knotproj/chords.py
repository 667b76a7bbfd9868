"""Chord diagrams of Gauss words and the sub-diagram patterns on them.

All operations here are pure chord combinatorics: a diagram need not come
from a realizable word. Only :func:`triangle_classes` looks at an embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from knotproj.word import GaussWord, canonical_letters, coerce, normalize_letters

CROSS = "Cross"
H = "H"
TRIPLE = "Triple"
PATTERN_KINDS = (CROSS, H, TRIPLE)


@dataclass(frozen=True)
class ChordDiagram:
    """``endpoints[c - 1] = (i, j)``, ``i < j``, positions of chord ``c`` on the 2n-cycle."""

    n: int
    endpoints: tuple[tuple[int, int], ...]

    def __post_init__(self):
        flat = sorted(p for ends in self.endpoints for p in ends)
        if len(self.endpoints) != self.n or flat != list(range(2 * self.n)):
            raise ValueError("chord endpoints must partition 0..2n-1")
        if any(i >= j for i, j in self.endpoints):
            raise ValueError("chord endpoints must be listed as i < j")

    def word(self) -> tuple[int, ...]:
        seq = [0] * (2 * self.n)
        for c, (i, j) in enumerate(self.endpoints, start=1):
            seq[i] = seq[j] = c
        return tuple(seq)

    def interleaved(self, a: int, b: int) -> bool:
        i, j = self.endpoints[a - 1]
        k, l = self.endpoints[b - 1]
        return (i < k < j) != (i < l < j)

    @property
    def chords(self) -> range:
        return range(1, self.n + 1)

    def to_json(self) -> list:
        return [list(e) for e in self.endpoints]


def chord_diagram(w) -> ChordDiagram:
    if isinstance(w, ChordDiagram):
        return w
    if hasattr(w, "word") and isinstance(getattr(w, "word"), GaussWord):
        w = w.word
    w = coerce(w)
    pos = w.positions()
    return ChordDiagram(w.n, tuple(pos[c] for c in range(1, w.n + 1)))


def from_sequence(seq: Iterable[int]) -> ChordDiagram:
    return chord_diagram(GaussWord(normalize_letters(seq)))


def interlacement(cd: ChordDiagram) -> list[int]:
    """Bitmask adjacency: bit ``b - 1`` of ``adj[a - 1]`` is set iff chords a and b interleave."""
    adj = [0] * cd.n
    ends = cd.endpoints
    for a in range(cd.n):
        i, j = ends[a]
        for b in range(a + 1, cd.n):
            k, l = ends[b]
            if (i < k < j) != (i < l < j):
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


@dataclass(frozen=True)
class InterlacementGraph:
    n: int
    adj: tuple[int, ...]

    def edges(self) -> list[tuple[int, int]]:
        return [
            (a, b)
            for a in range(1, self.n + 1)
            for b in range(a + 1, self.n + 1)
            if self.adj[a - 1] >> (b - 1) & 1
        ]

    def degree(self, a: int) -> int:
        return bin(self.adj[a - 1]).count("1")

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a - 1] >> (b - 1) & 1)


def interlacement_graph(cd) -> InterlacementGraph:
    cd = chord_diagram(cd)
    return InterlacementGraph(cd.n, tuple(interlacement(cd)))


@dataclass(frozen=True)
class PatternHit:
    kind: str
    chords: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "chords": list(self.chords)}


def find_patterns(cd, kind: str) -> list[PatternHit]:
    """All occurrences of a pattern, ordered lexicographically by chord labels.

    ``Cross`` is an interleaved pair, ``Triple`` three pairwise interleaved
    chords, ``H`` three chords with exactly one non-interleaved pair. For an H
    hit the chords are listed as (pair, pair, bridge).
    """
    g = interlacement_graph(cd)
    n = g.n
    edge = g.has_edge
    hits = []
    if kind == CROSS:
        hits = [PatternHit(CROSS, e) for e in g.edges()]
    elif kind == TRIPLE:
        for a, b, c in combinations(range(1, n + 1), 3):
            if edge(a, b) and edge(a, c) and edge(b, c):
                hits.append(PatternHit(TRIPLE, (a, b, c)))
    elif kind == H:
        for tri in combinations(range(1, n + 1), 3):
            pairs = [(x, y) for x, y in combinations(tri, 2) if not edge(x, y)]
            if len(pairs) == 1:
                x, y = pairs[0]
                (z,) = set(tri) - {x, y}
                hits.append(PatternHit(H, (x, y, z)))
        hits.sort(key=lambda h: tuple(sorted(h.chords)))
    else:
        raise ValueError(f"unknown pattern kind {kind!r}; expected one of {PATTERN_KINDS}")
    return hits


def has_pattern(cd, kind: str) -> bool:
    if kind == TRIPLE:
        adj = interlacement(chord_diagram(cd))
        for a, row in enumerate(adj):
            while row:
                low = row & -row
                if adj[a] & adj[low.bit_length() - 1]:
                    return True
                row ^= low
        return False
    return bool(find_patterns(cd, kind))


def reducible_chords(cd) -> set[int]:
    """Chords interleaving no other chord (nugatory crossings)."""
    g = interlacement_graph(cd)
    return {a for a in range(1, g.n + 1) if g.adj[a - 1] == 0}


# ----------------------------------------------------------------------
# connected sums


def factor_cuts(cd) -> list[tuple[int, int]]:
    """Pairing-closed proper cyclic intervals ``(start, length)`` with ``0 < length < 2n``."""
    cd = chord_diagram(cd)
    seq = cd.word()
    m = len(seq)
    cuts = []
    for start in range(m):
        counts: dict[int, int] = {}
        odd = 0
        for length in range(1, m):
            c = seq[(start + length - 1) % m]
            k = counts.get(c, 0) + 1
            counts[c] = k
            odd += 1 if k == 1 else -1
            if odd == 0:
                cuts.append((start, length))
    return cuts


def _split(seq: tuple[int, ...]) -> list[tuple[int, ...]]:
    m = len(seq)
    for start in range(m):
        counts: dict[int, int] = {}
        odd = 0
        for length in range(1, m):
            c = seq[(start + length - 1) % m]
            k = counts.get(c, 0) + 1
            counts[c] = k
            odd += 1 if k == 1 else -1
            if odd == 0:
                inside = tuple(seq[(start + t) % m] for t in range(length))
                outside = tuple(seq[(start + length + t) % m] for t in range(m - length))
                return _split(inside) + _split(outside)
    return [seq]


def prime_factors(cd) -> list[ChordDiagram]:
    """Full connected-sum factorization; ``[cd]`` when no factor-cut exists.

    Factors are returned as normalized diagrams in canonical word form,
    sorted, so the result does not depend on where the word is based.
    """
    cd = chord_diagram(cd)
    if cd.n == 0:
        return [cd]
    parts = _split(cd.word())
    if len(parts) == 1:
        return [cd]
    canon = sorted(canonical_letters(normalize_letters(p)) for p in parts)
    return [from_sequence(p) for p in canon]


def is_prime(cd) -> bool:
    """No factor-cut. The empty diagram and single chords count as prime."""
    cd = chord_diagram(cd)
    return cd.n <= 1 or len(prime_factors(cd)) == 1


def connected_sum(parts: Iterable, gaps: Iterable[int] | None = None) -> ChordDiagram:
    """Recompose factors by inserting each subsequent word into a gap of the running word."""
    parts = [chord_diagram(p).word() for p in parts]
    gaps = list(gaps) if gaps is not None else [0] * len(parts)
    seq: list[int] = []
    offset = 0
    for k, part in enumerate(parts):
        shifted = [x + offset for x in part]
        g = gaps[k] % (len(seq) + 1) if seq else 0
        seq = seq[:g] + shifted + seq[g:]
        offset += len(part) // 2
    return from_sequence(seq)


# ----------------------------------------------------------------------
# triangles and two-point cuts

# Letter names for 3-gon types, keyed by the number of interleaved pairs among
# the triangle's three chords. Only C (three pairs) is fixed by the theory; the
# others follow the convention documented in the README.
TRIANGLE_LETTERS = {3: "C", 2: "B", 1: "A", 0: "D"}


@dataclass(frozen=True)
class TriangleClass:
    face: int
    chords: tuple[int, int, int]
    kappa: int
    subdiagram_cert: str

    @property
    def letter(self) -> str:
        return TRIANGLE_LETTERS[self.kappa]

    def to_json(self) -> dict:
        return {
            "face": self.face,
            "chords": list(self.chords),
            "kappa": self.kappa,
            "letter": self.letter,
            "subdiagram_cert": self.subdiagram_cert,
        }


def subdiagram(cd, chords: Iterable[int]) -> tuple[int, ...]:
    """Canonical word of the sub-diagram spanned by ``chords``."""
    keep = set(chords)
    seq = [c for c in chord_diagram(cd).word() if c in keep]
    return canonical_letters(normalize_letters(seq))


def triangle_classes(e) -> list[TriangleClass]:
    """One record per 3-gon face with three distinct crossings."""
    cd = chord_diagram(e.word)
    g = interlacement_graph(cd)
    out = []
    for fid, face in enumerate(e.faces()):
        if len(face) != 3:
            continue
        tri = tuple(sorted({e.crossing_of(d) for d in face}))
        if len(tri) != 3:
            continue
        a, b, c = tri
        kappa = g.has_edge(a, b) + g.has_edge(a, c) + g.has_edge(b, c)
        cert = bytes(subdiagram(cd, tri)).hex()
        out.append(TriangleClass(fid, tri, kappa, cert))
    return out


INTERLEAVED = "interleaved"
NON_INTERLEAVED = "non_interleaved"
# arrangements of the cut pair that witness reductivity one
DEFAULT_CUT_ARRANGEMENTS = (INTERLEAVED,)


def two_point_cuts(cd, arrangements=DEFAULT_CUT_ARRANGEMENTS) -> list[tuple[int, int]]:
    """Pairs {a, b} whose four endpoints split every other chord to one side.

    The four occurrences of a and b cut the cycle into intervals I1..I4; the pair
    qualifies when each remaining chord has both endpoints in I1 u I3 or both in
    I2 u I4. ``arrangements`` selects whether a and b must interleave, must
    not, or either.
    """
    cd = chord_diagram(cd)
    seq = cd.word()
    m = len(seq)
    out = []
    for a, b in combinations(cd.chords, 2):
        inter = cd.interleaved(a, b)
        kind = INTERLEAVED if inter else NON_INTERLEAVED
        if kind not in arrangements:
            continue
        marks = sorted(cd.endpoints[a - 1] + cd.endpoints[b - 1])
        side = [0] * m
        for k in range(4):
            lo, hi = marks[k], marks[(k + 1) % 4]
            p = (lo + 1) % m
            while p != hi:
                side[p] = k % 2
                p = (p + 1) % m
        ok = True
        for c in cd.chords:
            if c in (a, b):
                continue
            i, j = cd.endpoints[c - 1]
            if side[i] != side[j]:
                ok = False
                break
        if ok:
            out.append((a, b))
    return out
