"""Gauss double-occurrence words.

A word lists the double points of a closed curve in traversal order; every
label occurs exactly twice. Words are cyclic and unbased. The stored sequence
is one rotation, relabelled 1..n by order of first appearance. The empty word
is the simple closed curve.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class WordError(ValueError):
    """Base class for malformed Gauss words."""


class NotDoubleOccurrence(WordError):
    """Some label does not occur exactly twice."""


class BadToken(WordError):
    """A token is not a non-negative decimal integer."""


class EmptyToken(BadToken):
    """Two separators with nothing between them."""


def normalize_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Relabel by order of first appearance, starting at 1."""
    relabel: dict[int, int] = {}
    out = []
    for x in letters:
        y = relabel.get(x)
        if y is None:
            y = relabel[x] = len(relabel) + 1
        out.append(y)
    return tuple(out)


@dataclass(frozen=True)
class GaussWord:
    """Normalized cyclic double-occurrence word.

    Any double-occurrence sequence is accepted and relabelled on construction,
    so ``GaussWord((7, 7)).letters == (1, 1)``.
    """

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        counts: dict[int, int] = {}
        for x in letters:
            counts[x] = counts.get(x, 0) + 1
        bad = sorted(x for x, c in counts.items() if c != 2)
        if bad:
            raise NotDoubleOccurrence(
                f"labels {bad} do not occur exactly twice in {list(letters)}"
            )
        object.__setattr__(self, "letters", normalize_letters(letters))

    @property
    def n(self) -> int:
        return len(self.letters) // 2

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __str__(self) -> str:
        return serialize(self)

    def positions(self) -> dict[int, tuple[int, int]]:
        """Map label -> (first position, second position)."""
        first: dict[int, int] = {}
        pos: dict[int, tuple[int, int]] = {}
        for i, x in enumerate(self.letters):
            if x in first:
                pos[x] = (first[x], i)
            else:
                first[x] = i
        return pos

    def rotate(self, k: int) -> "GaussWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return GaussWord(self.letters[k:] + self.letters[:k])

    def reverse(self) -> "GaussWord":
        return GaussWord(self.letters[::-1])

    def delete(self, labels: Iterable[int]) -> "GaussWord":
        drop = set(labels)
        return GaussWord(tuple(x for x in self.letters if x not in drop))


CIRCLE = GaussWord(())


def parse(text: str) -> GaussWord:
    """Parse whitespace- or comma-separated labels into a normalized word.

    >>> parse("1 2 3 1 2 3").letters
    (1, 2, 3, 1, 2, 3)
    >>> parse("").n
    0
    """
    stripped = text.strip()
    if not stripped:
        return CIRCLE
    # collapse whitespace runs around commas; a bare ",," is still an empty token
    tokens = [t.strip() for t in re.split(r"\s*,\s*|\s+", stripped)]
    letters = []
    for tok in tokens:
        if tok == "":
            raise EmptyToken(f"empty token in {text!r}")
        if not tok.isdigit():
            raise BadToken(f"bad token {tok!r} in {text!r}")
        letters.append(int(tok))
    return GaussWord(tuple(letters))


def serialize(w: GaussWord) -> str:
    """Decimal labels separated by single spaces; the circle is ``""``."""
    return " ".join(str(x) for x in w.letters)


def coerce(w) -> GaussWord:
    """Accept a GaussWord, a label sequence, or text."""
    if isinstance(w, GaussWord):
        return w
    if isinstance(w, str):
        return parse(w)
    return GaussWord(tuple(w))


# ----------------------------------------------------------------------
# symmetries and canonical form


def _symmetric_sequences(letters: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All 2n rotations of the word and of its reversal (unrelabelled)."""
    m = len(letters)
    rev = tuple(reversed(letters))
    for seq in (tuple(letters), rev):
        for k in range(m):
            yield seq[k:] + seq[:k]


def canonical_letters(letters: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least normalized word over rotations and reversal."""
    best: tuple[int, ...] | None = None
    for seq in _symmetric_sequences(letters):
        cand = normalize_letters(seq)
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def is_canonical(letters: Sequence[int]) -> bool:
    """True iff the normalized ``letters`` equal their canonical form.

    Compares each symmetric image against ``letters`` while relabelling, so
    most images are rejected after a few positions.
    """
    m = len(letters)
    if m == 0:
        return True
    rev = tuple(reversed(letters))
    for seq in (tuple(letters), rev):
        for k in range(m):
            relabel: dict[int, int] = {}
            for i in range(m):
                x = seq[(k + i) % m]
                y = relabel.get(x)
                if y is None:
                    y = relabel[x] = len(relabel) + 1
                ref = letters[i]
                if y < ref:
                    return False
                if y > ref:
                    break
    return True


@dataclass(frozen=True)
class CanonicalForm:
    word: GaussWord
    certificate: bytes

    @property
    def hex(self) -> str:
        return self.certificate.hex()


def canonicalize(w) -> CanonicalForm:
    """Canonical representative under rotation, reflection and relabelling.

    The certificate is the byte string of the canonical labels, so two words
    share it iff they lie in the same symmetry orbit.
    """
    w = coerce(w)
    letters = canonical_letters(w.letters)
    return CanonicalForm(GaussWord(letters), bytes(letters))


def symmetry_orbit(w) -> set[GaussWord]:
    """Every word (as a stored sequence) reachable by rotation, reversal and relabelling.

    ``GaussWord`` normalizes labels, so relabelled sequences are kept as raw
    tuples here and wrapped without renormalization. Size grows like n!; meant
    for small words.
    """
    w = coerce(w)
    out: set[GaussWord] = set()
    labels = range(1, w.n + 1)
    for seq in set(_symmetric_sequences(w.letters)):
        for perm in itertools.permutations(labels):
            g = object.__new__(GaussWord)
            object.__setattr__(g, "letters", tuple(perm[x - 1] for x in seq))
            out.add(g)
    if not out:
        out.add(CIRCLE)
    return out


# ----------------------------------------------------------------------
# realizability prefilter


def interleave_counts(w) -> dict[int, int]:
    """Number of chords interleaving each chord."""
    w = coerce(w)
    pos = w.positions()
    counts = {}
    for a, (i, j) in pos.items():
        c = 0
        for b, (k, l) in pos.items():
            if b != a and ((i < k < j) != (i < l < j)):
                c += 1
        counts[a] = c
    return counts


def parity_filter(w) -> bool:
    """Gauss's even-interlacement condition, necessary for realizability."""
    return all(c % 2 == 0 for c in interleave_counts(w).values())


def _words(n: int, parity: bool, canonical_only: bool) -> Iterator[GaussWord]:
    if n == 0:
        yield CIRCLE
        return
    m = 2 * n
    seq = [0] * m
    opened: dict[int, int] = {}

    def rec(i: int, next_label: int) -> Iterator[tuple[int, ...]]:
        if i == m:
            yield tuple(seq)
            return
        remaining = m - i
        # close an open label
        for lab, p in list(opened.items()):
            if not parity or (i - p) % 2 == 1:
                seq[i] = lab
                del opened[lab]
                yield from rec(i + 1, next_label)
                opened[lab] = p
        # open a new label if there is room to close everything
        if next_label <= n and remaining >= len(opened) + 2:
            seq[i] = next_label
            opened[next_label] = i
            yield from rec(i + 1, next_label + 1)
            del opened[next_label]

    for letters in rec(0, 1):
        if canonical_only and not is_canonical(letters):
            continue
        g = object.__new__(GaussWord)
        object.__setattr__(g, "letters", letters)
        yield g


def gauss_words(n: int, canonical_only: bool = True) -> Iterator[GaussWord]:
    """Normalized words on n letters satisfying the parity condition.

    Each label's two occurrences sit an odd distance apart (equivalent to the
    even-interlacement condition), which prunes the search as it is built.
    With ``canonical_only`` only orbit representatives are yielded.
    """
    return _words(n, True, canonical_only)


def all_words(n: int, canonical_only: bool = True) -> Iterator[GaussWord]:
    """Every normalized double-occurrence word on n letters, realizable or not."""
    return _words(n, False, canonical_only)
