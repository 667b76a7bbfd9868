"""Local replacements on spherical curves.

Decreasing moves delete letters (the rest of the curve is untouched, so the
remaining spins carry over). Increasing moves insert letters into edges and
choose the new spins from the local picture: a kink or finger placed inside
the face named by the site. A site is always relative to the embedding it
was enumerated on; applying a stale site raises :class:`InvalidSite`.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

from knotproj.chords import chord_diagram
from knotproj.cmap import (
    CIRCLE_EMBEDDING,
    CombMap,
    Embedding,
    MapError,
    face_sides,
    from_map,
    gap_of,
    side_sign,
    transform_spins,
)


class MoveError(ValueError):
    pass


class InvalidSite(MoveError):
    """The site is not applicable to this embedding."""


class NoSuchCrossing(MoveError):
    pass


class InternalConsistencyError(AssertionError):
    """Two independent routes to the same fact disagreed."""


class MoveKind(str, enum.Enum):
    R1a = "R1a"
    R1b = "R1b"
    S2a = "S2a"
    S2b = "S2b"
    W2a = "W2a"
    W2b = "W2b"
    R3 = "R3"
    AInv = "AInv"

    def __str__(self) -> str:
        return self.value

    @property
    def delta(self) -> int:
        return _DELTA[self]

    @property
    def inverse(self) -> "MoveKind | None":
        return _INVERSE.get(self)


_DELTA = {
    MoveKind.R1a: 1,
    MoveKind.R1b: -1,
    MoveKind.S2a: 2,
    MoveKind.S2b: -2,
    MoveKind.W2a: 2,
    MoveKind.W2b: -2,
    MoveKind.R3: 0,
    MoveKind.AInv: -1,
}
_INVERSE = {
    MoveKind.R1a: MoveKind.R1b,
    MoveKind.R1b: MoveKind.R1a,
    MoveKind.S2a: MoveKind.S2b,
    MoveKind.S2b: MoveKind.S2a,
    MoveKind.W2a: MoveKind.W2b,
    MoveKind.W2b: MoveKind.W2a,
    MoveKind.R3: MoveKind.R3,
}

DECREASING = frozenset({MoveKind.R1b, MoveKind.S2b, MoveKind.W2b})
INCREASING = frozenset({MoveKind.R1a, MoveKind.S2a, MoveKind.W2a})
STRONG_12 = frozenset({MoveKind.R1a, MoveKind.R1b, MoveKind.S2a, MoveKind.S2b})
ALL_KINDS = frozenset(MoveKind) - {MoveKind.AInv}

_KIND_ALIASES = {
    "1": (MoveKind.R1a, MoveKind.R1b),
    "s2": (MoveKind.S2a, MoveKind.S2b),
    "w2": (MoveKind.W2a, MoveKind.W2b),
    "3": (MoveKind.R3,),
}


def parse_kinds(spec) -> frozenset:
    """Accept MoveKinds, their names, or the shorthands ``1``, ``s2``, ``w2``, ``3``."""
    if isinstance(spec, str):
        spec = [t for t in spec.replace(",", " ").split() if t]
    out = set()
    for item in spec:
        if isinstance(item, MoveKind):
            out.add(item)
        elif item in _KIND_ALIASES:
            out.update(_KIND_ALIASES[item])
        else:
            try:
                out.add(MoveKind(item))
            except ValueError:
                raise ValueError(f"unknown move kind {item!r}") from None
    return frozenset(out)


@dataclass(frozen=True, order=True)
class MoveSite:
    """Where a move applies.

    ``crossings`` names the labels removed (R1b, S2b, W2b) or the triangle (R3);
    ``face`` and ``sides`` (darts naming edge sides) locate insertions. For a
    same-edge pair the first side's segment comes first along the curve.
    """

    kind: MoveKind
    face: int = -1
    sides: tuple[int, ...] = ()
    crossings: tuple[int, ...] = ()

    def to_json(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d["sides"] = list(self.sides)
        d["crossings"] = list(self.crossings)
        return d


@dataclass(frozen=True)
class MoveEvent:
    kind: MoveKind
    site: MoveSite
    before_cert: str
    after_cert: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "site": self.site.to_json(),
            "before_cert": self.before_cert,
            "after_cert": self.after_cert,
        }


# ----------------------------------------------------------------------
# bigons


STRONG = "strong"
WEAK = "weak"


def bigon_type(e: Embedding, face: tuple[int, ...]) -> str:
    """Strong iff the bigon's chords do not interleave (word pattern a b ... b a).

    Cross-checked against orientation along the face boundary: the two arcs
    are antiparallel exactly when both sides run with (or both against) the
    curve.
    """
    a, b = (e.crossing_of(d) for d in face)
    if a == b:
        raise ValueError("degenerate 2-gon with a repeated crossing has no type")
    by_chords = WEAK if chord_diagram(e.word).interleaved(a, b) else STRONG
    d1, d2 = face
    by_orientation = STRONG if side_sign(d1) == side_sign(d2) else WEAK
    if by_chords != by_orientation:
        raise InternalConsistencyError(
            f"bigon {a},{b} of {e}: chords say {by_chords}, orientation says {by_orientation}"
        )
    return by_chords


def bigons(e: Embedding) -> list[tuple[int, tuple[int, int], str]]:
    """``(face id, crossings, type)`` for each 2-gon with two distinct crossings."""
    out = []
    for fid, face in enumerate(e.faces()):
        if len(face) == 2:
            a, b = (e.crossing_of(d) for d in face)
            if a != b:
                out.append((fid, tuple(sorted((a, b))), bigon_type(e, face)))
    return out


# ----------------------------------------------------------------------
# enumeration


def enumerate_moves(e: Embedding, kinds=ALL_KINDS) -> list[MoveSite]:
    """Every applicable site of the requested kinds, sorted."""
    kinds = parse_kinds(kinds) if not isinstance(kinds, frozenset) else kinds
    sites: list[MoveSite] = []
    fs = e.faces()
    if kinds & {MoveKind.R1b, MoveKind.S2b, MoveKind.W2b, MoveKind.R3}:
        for fid, face in enumerate(fs):
            k = len(face)
            if k == 1 and MoveKind.R1b in kinds:
                sites.append(MoveSite(MoveKind.R1b, fid, (), (e.crossing_of(face[0]),)))
            elif k == 2 and kinds & {MoveKind.S2b, MoveKind.W2b}:
                cs = tuple(sorted({e.crossing_of(d) for d in face}))
                if len(cs) == 2:
                    kind = MoveKind.S2b if bigon_type(e, face) == STRONG else MoveKind.W2b
                    if kind in kinds:
                        sites.append(MoveSite(kind, fid, (), cs))
            elif k == 3 and MoveKind.R3 in kinds:
                cs = tuple(sorted({e.crossing_of(d) for d in face}))
                if len(cs) == 3:
                    sites.append(MoveSite(MoveKind.R3, fid, tuple(face), cs))
    if kinds & INCREASING:
        for fid, sides in enumerate(face_sides(e)):
            if MoveKind.R1a in kinds:
                for s in sides:
                    sites.append(MoveSite(MoveKind.R1a, fid, (s,)))
            if kinds & {MoveKind.S2a, MoveKind.W2a}:
                for s1 in sides:
                    for s2 in sides:
                        g1, g2 = gap_of(e, s1), gap_of(e, s2)
                        # on distinct edges the finger may start on either; keep one order.
                        # On one edge, (s, s) is a single site and the two opposite
                        # sides give two sites (which segment comes first).
                        if g1 > g2:
                            continue
                        kind = MoveKind.S2a if side_sign(s1) == side_sign(s2) else MoveKind.W2a
                        if kind in kinds:
                            sites.append(MoveSite(kind, fid, (s1, s2)))
    sites.sort()
    return sites


# ----------------------------------------------------------------------
# application


def _spins_by_label(e: Embedding) -> dict[int, int]:
    return {c: s for c, s in enumerate(e.spins, start=1)}


def _delete(e: Embedding, labels) -> Embedding:
    drop = set(labels)
    seq = [x for x in e.letters if x not in drop]
    if not seq:
        return CIRCLE_EMBEDDING
    return Embedding.from_sequence(seq, _spins_by_label(e))


def _insert(e: Embedding, inserts: dict[int, list], spins: dict) -> Embedding:
    """Insert ``inserts[g]`` after position ``g``; ``spins`` covers old and new labels."""
    seq = []
    letters = e.letters
    if not letters:
        seq = list(inserts.get(0, []))
    else:
        for i, x in enumerate(letters):
            seq.append(x)
            seq.extend(inserts.get(i, ()))
    return Embedding.from_sequence(seq, spins)


def _apply_r1a(e: Embedding, side: int) -> Embedding:
    x = e.n + 1
    spins = _spins_by_label(e)
    # a kink on the right of the direction of travel has positive spin
    spins[x] = side_sign(side)
    return _insert(e, {gap_of(e, side): [x, x]}, spins)


def _apply_2a(e: Embedding, s1: int, s2: int) -> Embedding:
    a, b = e.n + 1, e.n + 2
    t1, t2 = side_sign(s1), side_sign(s2)
    g1, g2 = gap_of(e, s1), gap_of(e, s2)
    first = [a, b]
    second = [b, a] if t1 == t2 else [a, b]
    if g1 == g2:
        inserts = {g1: first + second}
        sigma = 1
    else:
        inserts = {g1: first, g2: second}
        sigma = 1 if g1 < g2 else -1
    spins = _spins_by_label(e)
    # finger from edge 1 crosses edge 2 going into the face at a, coming back at b
    spins[a] = -sigma * t2
    spins[b] = sigma * t2
    return _insert(e, inserts, spins)


def _apply_r3(e: Embedding, face: tuple[int, ...]) -> Embedding:
    m = len(e.letters)
    old_at = list(range(m))
    for d in face:
        g = gap_of(e, d)
        p, q = g, (g + 1) % m
        old_at[p], old_at[q] = old_at[q], old_at[p]
    new_at = [0] * m
    for p, o in enumerate(old_at):
        new_at[o] = p
    seq = [e.letters[o] for o in old_at]
    # strands keep their directions; a spin flips only if its visit order changed
    spins = {}
    for c, (i, j) in enumerate(e.positions, start=1):
        s = e.spins[c - 1]
        spins[c] = -s if new_at[i] > new_at[j] else s
    return Embedding.from_sequence(seq, spins)


def apply(e: Embedding, site: MoveSite, check: bool = True) -> Embedding:
    """Apply ``site`` to ``e`` and return the new embedding."""
    if check and site not in enumerate_moves(e, frozenset({site.kind})):
        raise InvalidSite(f"{site} is not a site of {e}")
    kind = site.kind
    if kind in DECREASING:
        out = _delete(e, site.crossings)
    elif kind == MoveKind.R1a:
        out = _apply_r1a(e, site.sides[0])
    elif kind in (MoveKind.S2a, MoveKind.W2a):
        out = _apply_2a(e, *site.sides)
    elif kind == MoveKind.R3:
        out = _apply_r3(e, site.sides)
    else:
        raise InvalidSite(f"use a_inverse for {kind}")
    if check:
        try:
            out.map.validate()
        except MapError as exc:
            raise InternalConsistencyError(f"{kind} at {site} on {e} broke the map: {exc}")
        if out.n - e.n != kind.delta:
            raise InternalConsistencyError(f"{kind} changed n by {out.n - e.n}")
    return out


def event(e: Embedding, site: MoveSite, out: Embedding) -> MoveEvent:
    return MoveEvent(site.kind, site, e.certificate, out.certificate)


def successors(e: Embedding, kinds) -> list[tuple[MoveSite, Embedding]]:
    return [(s, apply(e, s, check=False)) for s in enumerate_moves(e, kinds)]


# ----------------------------------------------------------------------
# A^-1


def a_inverse(e: Embedding, c: int) -> Embedding:
    """Non-coherent smoothing at crossing ``c`` that keeps one component.

    Word rule: ``c P c Q`` becomes ``reverse(P) Q``. Every crossing with a visit
    inside P has one or both strands reversed and its visit order swapped in
    a way that flips its spin; crossings only in Q keep theirs.
    """
    if not 1 <= c <= e.n:
        raise NoSuchCrossing(f"no crossing {c} in {e}")
    i, j = e.positions[c - 1]
    seq, s = transform_spins(e.letters, e.spins, i, False)
    m = len(seq)
    span = j - i
    p_part = seq[1:span]
    q_part = seq[span + 1 :]
    new = list(reversed(p_part)) + list(q_part)
    if not new:
        return CIRCLE_EMBEDDING
    in_p = set(p_part)
    spins = {x: (-s[x - 1] if x in in_p else s[x - 1]) for x in set(new)}
    return Embedding.from_sequence(new, spins)


def a_inverse_word(e: Embedding, c: int) -> tuple[int, ...]:
    """Just the word rule, normalized."""
    from knotproj.word import normalize_letters

    i, j = e.positions[c - 1]
    letters = e.letters
    seq = letters[i:] + letters[:i]
    span = j - i
    return normalize_letters(tuple(reversed(seq[1:span])) + seq[span + 1 :])


def a_inverse_surgery(e: Embedding, c: int) -> Embedding:
    """A^-1 as dart surgery on the map: delete vertex ``c`` and join in-in, out-out."""
    if not 1 <= c <= e.n:
        raise NoSuchCrossing(f"no crossing {c} in {e}")
    m = e.map
    i, j = e.positions[c - 1]
    at_c = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1}
    join = {2 * i: 2 * j, 2 * j: 2 * i, 2 * i + 1: 2 * j + 1, 2 * j + 1: 2 * i + 1}
    keep = [d for d in m.darts if d not in at_c]
    if not keep:
        return CIRCLE_EMBEDDING
    index = {d: k for k, d in enumerate(keep)}
    alpha = [0] * len(keep)
    sigma = [0] * len(keep)
    for d in keep:
        sigma[index[d]] = index[m.sigma[d]]
        w = m.alpha[d]
        hops = 0
        while w in at_c:
            w = m.alpha[join[w]]
            hops += 1
            if hops > 4:
                raise InternalConsistencyError("smoothing closed off a free loop")
        alpha[index[d]] = index[w]
    return from_map(CombMap(e.n - 1, tuple(sigma), tuple(alpha)))


def is_reducible(e: Embedding) -> bool:
    from knotproj.chords import reducible_chords

    return e.n > 0 and bool(reducible_chords(e.word))
