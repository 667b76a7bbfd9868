"""Spherical curves as 4-valent genus-0 combinatorial maps.

An :class:`Embedding` pairs a normalized Gauss word with one rotation bit
("spin") per crossing. The spin of crossing ``c`` visited at positions
``i < j`` is the sign of ``cross(u, v)`` where ``u`` and ``v`` are the
directions of travel at the first and second visit. Darts are numbered from
the word: ``2*i`` is the incoming dart-end at position ``i`` and ``2*i + 1``
the outgoing one, so

* ``alpha`` joins ``2*i + 1`` with ``2*(i + 1)`` (cyclically),
* ``sigma`` (counterclockwise rotation) at a crossing with spin ``+1`` is
  ``(out_i, out_j, in_i, in_j)`` and with spin ``-1`` is
  ``(out_i, in_j, in_i, out_j)``.

Faces are orbits of ``sigma o alpha``. The face holding dart ``d`` lies to the
right of the edge traversed from ``d`` to ``alpha(d)``; for an out-dart that is
the right-hand side of the curve, for an in-dart the left-hand side.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from knotproj.word import CIRCLE, GaussWord, coerce, normalize_letters, parity_filter

MAP_SCHEMA_VERSION = 1


class MapError(ValueError):
    """A combinatorial map violates a structural invariant."""


# ----------------------------------------------------------------------
# raw maps


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = perm[d]
        out.append(tuple(orbit))
    return out


@dataclass(frozen=True)
class CombMap:
    """Dart-based map: ``sigma`` rotates darts around crossings, ``alpha`` pairs edge ends.

    A map with ``n == 0`` is the crossing-free circle and carries no darts.
    """

    n: int
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    @property
    def darts(self) -> range:
        return range(4 * self.n)

    @cached_property
    def phi(self) -> tuple[int, ...]:
        """Face permutation ``sigma o alpha``."""
        s, a = self.sigma, self.alpha
        return tuple(s[a[d]] for d in self.darts)

    @cached_property
    def trip(self) -> tuple[int, ...]:
        """Go straight through the next crossing: ``sigma^2 o alpha``."""
        s, a = self.sigma, self.alpha
        return tuple(s[s[a[d]]] for d in self.darts)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        vid = [0] * (4 * self.n)
        for k, cyc in enumerate(sorted(_orbits(self.sigma))):
            for d in cyc:
                vid[d] = k
        return tuple(vid)

    def face_orbits(self) -> list[tuple[int, ...]]:
        if self.n == 0:
            return [(), ()]
        return _orbits(self.phi)

    def validate(self) -> None:
        """Raise :class:`MapError` unless this is one circle immersed in the sphere."""
        n4 = 4 * self.n
        if len(self.sigma) != n4 or len(self.alpha) != n4:
            raise MapError("sigma and alpha must act on 4n darts")
        if self.n == 0:
            return
        if sorted(self.sigma) != list(range(n4)) or sorted(self.alpha) != list(range(n4)):
            raise MapError("sigma and alpha must be permutations")
        vcycles = _orbits(self.sigma)
        if len(vcycles) != self.n or any(len(c) != 4 for c in vcycles):
            raise MapError("sigma must be a product of n disjoint 4-cycles")
        if any(self.alpha[d] == d or self.alpha[self.alpha[d]] != d for d in self.darts):
            raise MapError("alpha must be a fixed-point-free involution")
        trips = _orbits(self.trip)
        if len(trips) != 2 or any(len(t) != 2 * self.n for t in trips):
            raise MapError("trip closure is not a single immersed circle")
        # each direction of travel passes every crossing along opposite darts
        for t in trips:
            members = set(t)
            for d in t:
                if self.sigma[self.sigma[d]] in members:
                    raise MapError("strands do not cross transversally")
        faces = len(self.face_orbits())
        if self.n - 2 * self.n + faces != 2:
            raise MapError(f"Euler characteristic {faces - self.n} != 2")

    def to_json(self) -> dict:
        return {
            "schema_version": MAP_SCHEMA_VERSION,
            "n": self.n,
            "sigma": list(self.sigma),
            "alpha": list(self.alpha),
        }

    @classmethod
    def from_json(cls, obj) -> "CombMap":
        if isinstance(obj, str):
            obj = json.loads(obj)
        version = obj.get("schema_version", MAP_SCHEMA_VERSION)
        if version != MAP_SCHEMA_VERSION:
            raise MapError(f"unsupported map schema version {version}")
        m = cls(int(obj["n"]), tuple(obj["sigma"]), tuple(obj["alpha"]))
        m.validate()
        return m

    def reflect(self) -> "CombMap":
        inv = [0] * len(self.sigma)
        for d, e in enumerate(self.sigma):
            inv[e] = d
        return CombMap(self.n, tuple(inv), self.alpha)

    def relabel(self, perm: Sequence[int]) -> "CombMap":
        """Rename dart ``d`` to ``perm[d]``."""
        n4 = len(self.sigma)
        s = [0] * n4
        a = [0] * n4
        for d in range(n4):
            s[perm[d]] = perm[self.sigma[d]]
            a[perm[d]] = perm[self.alpha[d]]
        return CombMap(self.n, tuple(s), tuple(a))


def _rooted_code(sigma: Sequence[int], alpha: Sequence[int], root: int) -> tuple[int, ...]:
    order = [root]
    index = {root: 0}
    k = 0
    while k < len(order):
        d = order[k]
        for e in (sigma[d], alpha[d]):
            if e not in index:
                index[e] = len(order)
                order.append(e)
        k += 1
    code = []
    for d in order:
        code.append(index[sigma[d]])
        code.append(index[alpha[d]])
    return tuple(code)


def map_code(m: CombMap) -> tuple[int, ...]:
    """Isomorphism-invariant code of a map up to reflection (rooted BFS, minimized)."""
    if m.n == 0:
        return ()
    r = m.reflect()
    return min(
        min(_rooted_code(m.sigma, m.alpha, d) for d in m.darts),
        min(_rooted_code(r.sigma, r.alpha, d) for d in r.darts),
    )


def is_equivalent(a, b) -> bool:
    """Maps related by a dart relabelling, allowing a global reflection."""
    a = a.map if isinstance(a, Embedding) else a
    b = b.map if isinstance(b, Embedding) else b
    if a.n != b.n:
        return False
    return map_code(a) == map_code(b)


# ----------------------------------------------------------------------
# embeddings


def _positions(letters: Sequence[int]) -> list[tuple[int, int]]:
    """``pos[c - 1] = (i, j)`` with ``i < j`` for each label ``c``."""
    n = len(letters) // 2
    first = [-1] * (n + 1)
    pos = [(0, 0)] * n
    for i, x in enumerate(letters):
        if first[x] < 0:
            first[x] = i
        else:
            pos[x - 1] = (first[x], i)
    return pos


def _sigma_alpha(letters: Sequence[int], spins: Sequence[int]):
    m = len(letters)
    n4 = 2 * m
    sigma = [0] * n4
    alpha = [0] * n4
    for i in range(m):
        out_d = 2 * i + 1
        in_next = (2 * i + 2) % n4
        alpha[out_d] = in_next
        alpha[in_next] = out_d
    for c, (i, j) in enumerate(_positions(letters)):
        ii, oi, ij, oj = 2 * i, 2 * i + 1, 2 * j, 2 * j + 1
        cyc = (oi, oj, ii, ij) if spins[c] > 0 else (oi, ij, ii, oj)
        for k in range(4):
            sigma[cyc[k]] = cyc[(k + 1) % 4]
    return sigma, alpha


def _face_count(letters: Sequence[int], spins: Sequence[int]) -> int:
    sigma, alpha = _sigma_alpha(letters, spins)
    seen = [False] * len(sigma)
    count = 0
    for start in range(len(sigma)):
        if seen[start]:
            continue
        count += 1
        d = start
        while not seen[d]:
            seen[d] = True
            d = sigma[alpha[d]]
    return count


def transform_spins(letters: Sequence[int], spins: Sequence[int], k: int, reverse: bool):
    """Word and spins seen from another base point and direction.

    Returns ``(seq, new_spins)`` with ``seq`` unrelabelled: position ``p`` of
    ``seq`` is old position ``(k + p) % m`` (of the reversed word when
    ``reverse``) and ``new_spins[c - 1]`` refers to old label ``c``.
    """
    m = len(letters)
    pos = _positions(letters)
    if reverse:
        seq = tuple(reversed(letters))
        # reversal swaps visit order and negates both directions
        s = [-x for x in spins]
        pos = [(m - 1 - j, m - 1 - i) for (i, j) in pos]
    else:
        seq = tuple(letters)
        s = list(spins)
    if k:
        seq = seq[k:] + seq[:k]
        for c, (i, j) in enumerate(pos):
            if i < k <= j:
                s[c] = -s[c]
    return seq, s


def _relabelled_key(seq: Sequence[int], s: Sequence[int]):
    relabel: dict[int, int] = {}
    word = []
    for x in seq:
        y = relabel.get(x)
        if y is None:
            y = relabel[x] = len(relabel) + 1
        word.append(y)
    new_spins = [0] * len(relabel)
    for old, new in relabel.items():
        new_spins[new - 1] = s[old - 1]
    return tuple(word), tuple(new_spins)


def _least_rotations(letters: Sequence[int]) -> tuple[tuple[int, ...], list]:
    """Least relabelled word over base points and directions, and every (k, reverse) attaining it."""
    m = len(letters)
    seqs = (tuple(letters), tuple(reversed(letters)))
    best: list[int] | None = None
    winners: list = []
    for reverse in (False, True):
        seq = seqs[reverse]
        for k in range(m):
            relabel: dict[int, int] = {}
            cand = []
            state = 0  # 0 tie so far, -1 smaller, 1 larger
            for i in range(m):
                x = seq[(k + i) % m]
                y = relabel.get(x)
                if y is None:
                    y = relabel[x] = len(relabel) + 1
                cand.append(y)
                if state == 0 and best is not None:
                    ref = best[i]
                    if y > ref:
                        state = 1
                        break
                    if y < ref:
                        state = -1
            if state == 1:
                continue
            if best is None or state == -1:
                best = cand
                winners = [(k, reverse)]
            else:
                winners.append((k, reverse))
    return tuple(best or ()), winners


def canonical_pair(letters: Sequence[int], spins: Sequence[int]):
    """Least (word, spins) over base point, direction and mirror image."""
    if not letters:
        return (), ()
    word, winners = _least_rotations(letters)
    best_spins = None
    for k, reverse in winners:
        seq, s = transform_spins(letters, spins, k, reverse)
        for mirror in (1, -1):
            _, cand = _relabelled_key(seq, [mirror * x for x in s])
            if best_spins is None or cand < best_spins:
                best_spins = cand
    return word, best_spins


def canonical_pair_bruteforce(letters: Sequence[int], spins: Sequence[int]):
    """Reference version of :func:`canonical_pair` without pruning."""
    m = len(letters)
    if m == 0:
        return (), ()
    best = None
    for reverse in (False, True):
        for k in range(m):
            seq, s = transform_spins(letters, spins, k, reverse)
            for mirror in (1, -1):
                key = _relabelled_key(seq, [mirror * x for x in s])
                if best is None or key < best:
                    best = key
    return best


@dataclass(frozen=True)
class Embedding:
    """A spherical curve: its Gauss word together with the spin of each crossing."""

    word: GaussWord
    spins: tuple[int, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(self.spins) != self.word.n or any(s not in (1, -1) for s in self.spins):
            raise MapError(f"need one spin in {{+1, -1}} per crossing, got {self.spins}")

    @classmethod
    def from_sequence(cls, letters: Sequence, spins_by_label: dict) -> "Embedding":
        """Build from an unnormalized sequence; ``spins_by_label`` is keyed by the raw labels."""
        norm = normalize_letters(letters)
        spins = [0] * (len(norm) // 2)
        for raw, new in zip(letters, norm):
            spins[new - 1] = spins_by_label[raw]
        return cls(GaussWord(norm), tuple(spins))

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def letters(self) -> tuple[int, ...]:
        return self.word.letters

    @property
    def base_word(self) -> GaussWord:
        return self.word

    @property
    def reflection_normalized(self) -> bool:
        return self.n == 0 or self.spins[0] == 1

    @property
    def map(self) -> CombMap:
        m = self._cache.get("map")
        if m is None:
            sigma, alpha = _sigma_alpha(self.letters, self.spins)
            m = self._cache["map"] = CombMap(self.n, tuple(sigma), tuple(alpha))
        return m

    @property
    def positions(self) -> list[tuple[int, int]]:
        p = self._cache.get("pos")
        if p is None:
            p = self._cache["pos"] = _positions(self.letters)
        return p

    @property
    def canonical(self) -> "Embedding":
        c = self._cache.get("canon")
        if c is None:
            w, s = canonical_pair(self.letters, self.spins)
            c = Embedding(GaussWord(w), s)
            c._cache["canon"] = c
            self._cache["canon"] = c
        return c

    @property
    def certificate(self) -> str:
        """Lowercase hex; equal iff the curves agree up to sphere homeomorphism and mirror."""
        cert = self._cache.get("cert")
        if cert is None:
            c = self.canonical
            raw = bytes(c.letters) + bytes((s + 1) // 2 for s in c.spins)
            cert = self._cache["cert"] = raw.hex()
        return cert

    def faces(self) -> list[tuple[int, ...]]:
        f = self._cache.get("faces")
        if f is None:
            f = self._cache["faces"] = self.map.face_orbits()
        return f

    def crossing_of(self, dart: int) -> int:
        return self.letters[dart // 2]

    def mirror(self) -> "Embedding":
        return Embedding(self.word, tuple(-s for s in self.spins))

    def to_json(self) -> dict:
        return {"word": list(self.letters), "spins": list(self.spins)}

    @classmethod
    def from_json(cls, obj) -> "Embedding":
        return cls(GaussWord(tuple(obj["word"])), tuple(obj["spins"]))

    def __str__(self) -> str:
        signs = "".join("+" if s > 0 else "-" for s in self.spins)
        return f"[{' '.join(map(str, self.letters))}]{signs and ' ' + signs}"


CIRCLE_EMBEDDING = Embedding(CIRCLE, ())


def gap_of(e: Embedding, dart: int) -> int:
    """Edge index of the side named by ``dart``: edge ``g`` runs from position ``g`` to ``g + 1``."""
    if e.n == 0:
        return 0
    m = len(e.letters)
    return dart // 2 if dart % 2 else (dart // 2 - 1) % m


def side_sign(dart: int) -> int:
    """+1 if the side's face is right of the curve direction, -1 if left."""
    return 1 if dart % 2 else -1


def face_sides(e: Embedding) -> list[tuple[int, ...]]:
    """Edge sides (as darts) bounding each face; the circle's sides are 1 (right) and 0 (left)."""
    if e.n == 0:
        return [(1,), (0,)]
    return e.faces()


def from_map(m: CombMap) -> Embedding:
    """Read word and spins back off a map by following the trip from dart 0."""
    m.validate()
    if m.n == 0:
        return CIRCLE_EMBEDDING
    vertex = m.vertex_of
    outs = []
    d = 0
    for _ in range(2 * m.n):
        outs.append(d)
        d = m.trip[d]
    letters = [vertex[d] for d in outs]
    visits: dict[int, list[int]] = {}
    for k, v in enumerate(letters):
        visits.setdefault(v, []).append(k)
    spins = {}
    for v, (k1, k2) in visits.items():
        o1, o2 = outs[k1], outs[k2]
        in2 = m.alpha[outs[k2 - 1]]
        if m.sigma[o1] == o2:
            spins[v] = 1
        elif m.sigma[o1] == in2:
            spins[v] = -1
        else:
            raise MapError("rotation at a crossing does not alternate strands")
    return Embedding.from_sequence(letters, spins)


# ----------------------------------------------------------------------
# realization and faces


def realize_all(w) -> list[Embedding]:
    """All spherical embeddings of ``w`` up to sphere homeomorphism and mirror.

    Brute force over the spin states with the first crossing's spin fixed
    (which quotients the mirror), keeping states with ``F = n + 2``; states are
    then deduplicated by certificate. Returns an empty list for unrealizable
    words, sorted by certificate otherwise.
    """
    w = coerce(w)
    n = w.n
    if n == 0:
        return [CIRCLE_EMBEDDING]
    if not parity_filter(w):
        return []
    found: dict[str, Embedding] = {}
    for rest in itertools.product((1, -1), repeat=n - 1):
        spins = (1,) + rest
        if _face_count(w.letters, spins) == n + 2:
            e = Embedding(w, spins)
            found.setdefault(e.certificate, e)
    return [found[k] for k in sorted(found)]


def realize_all_unfiltered(w) -> list[Embedding]:
    """Same search as :func:`realize_all` without the parity shortcut."""
    w = coerce(w)
    if w.n == 0:
        return [CIRCLE_EMBEDDING]
    found: dict[str, Embedding] = {}
    for rest in itertools.product((1, -1), repeat=w.n - 1):
        spins = (1,) + rest
        if _face_count(w.letters, spins) == w.n + 2:
            e = Embedding(w, spins)
            found.setdefault(e.certificate, e)
    return [found[k] for k in sorted(found)]


def faces(m) -> list[tuple[int, ...]]:
    """Faces as tuples of corner darts; the circle has two faces with no corners."""
    if isinstance(m, Embedding):
        return m.faces()
    return m.face_orbits()


@dataclass(frozen=True)
class FaceCensus:
    p: dict
    V: int
    E: int
    F: int

    def __getitem__(self, k: int) -> int:
        return self.p.get(k, 0)

    def to_json(self) -> dict:
        return {f"p{k}": v for k, v in sorted(self.p.items())}


def face_census(m) -> FaceCensus:
    """Count k-gons; the circle's two faces are recorded as ``p[0] == 2``."""
    fs = faces(m)
    n = m.n
    p = Counter(len(f) for f in fs)
    return FaceCensus(dict(sorted(p.items())), n, 2 * n, len(fs))


def census_identity(c: FaceCensus) -> int:
    """``p3 + sum_{k>=4} (4 - k) p_k``; equals 8 when there are no 1- or 2-gons."""
    return c[3] + sum((4 - k) * v for k, v in c.p.items() if k >= 4)


def embeddings_of(words: Iterable) -> list[Embedding]:
    out = []
    for w in words:
        out.extend(realize_all(w))
    return out
