"""Exhaustive catalog of spherical curves up to a crossing bound.

Records are generated from canonical Gauss words passing the parity
condition, realized as embeddings and deduplicated by certificate. Every
field of a record can be recomputed from its embedding; the catalog is only a
cache.
"""

from __future__ import annotations

import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from knotproj import chords
from knotproj.cmap import CIRCLE_EMBEDDING, Embedding, face_census, realize_all
from knotproj.moves import INCREASING, apply, bigons, enumerate_moves
from knotproj.reduce import Unknown, reduce_to_pr, reductivity, strong_build_check
from knotproj.word import gauss_words

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
REDUCTIVITY_DEPTH = 4


class CatalogError(Exception):
    pass


class SchemaVersionMismatch(CatalogError):
    pass


class CatalogIOError(CatalogError, OSError):
    pass


@dataclass
class CatalogRecord:
    certificate: str
    word: tuple[int, ...]
    n: int
    embedding: Embedding
    faces: dict
    prime: bool
    factor_count: int
    has_cross: bool
    has_H: bool
    has_triple: bool
    bigon_types: list
    triangle_kappas: list
    reductivity: int | None
    pr_certificate: str
    strong_trivializable: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "certificate": self.certificate,
            "word": list(self.word),
            "n": self.n,
            "embedding": self.embedding.to_json(),
            "faces": {str(k): v for k, v in self.faces.items()},
            "prime": self.prime,
            "factor_count": self.factor_count,
            "has_cross": self.has_cross,
            "has_H": self.has_H,
            "has_triple": self.has_triple,
            "bigon_types": list(self.bigon_types),
            "triangle_kappas": list(self.triangle_kappas),
            "reductivity": self.reductivity,
            "pr_certificate": self.pr_certificate,
            "strong_trivializable": self.strong_trivializable,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CatalogRecord":
        return cls(
            certificate=obj["certificate"],
            word=tuple(obj["word"]),
            n=obj["n"],
            embedding=Embedding.from_json(obj["embedding"]),
            faces={int(k): v for k, v in obj["faces"].items()},
            prime=obj["prime"],
            factor_count=obj["factor_count"],
            has_cross=obj["has_cross"],
            has_H=obj["has_H"],
            has_triple=obj["has_triple"],
            bigon_types=list(obj["bigon_types"]),
            triangle_kappas=list(obj["triangle_kappas"]),
            reductivity=obj["reductivity"],
            pr_certificate=obj["pr_certificate"],
            strong_trivializable=obj["strong_trivializable"],
        )

    @property
    def key(self) -> tuple:
        return (self.n, self.certificate)


def make_record(e: Embedding, memo: dict | None = None) -> CatalogRecord:
    """Compute every cached field of a record from the embedding alone."""
    cd = chords.chord_diagram(e.word)
    census = face_census(e)
    factors = chords.prime_factors(cd)
    r = reductivity(e, REDUCTIVITY_DEPTH)
    pr, _ = reduce_to_pr(e)
    return CatalogRecord(
        certificate=e.certificate,
        word=e.letters,
        n=e.n,
        embedding=e,
        faces=dict(census.p),
        prime=chords.is_prime(cd),
        factor_count=0 if e.n == 0 else len(factors),
        has_cross=chords.has_pattern(cd, chords.CROSS),
        has_H=chords.has_pattern(cd, chords.H),
        has_triple=chords.has_pattern(cd, chords.TRIPLE),
        bigon_types=sorted({t for _, _, t in bigons(e)}),
        triangle_kappas=sorted(t.kappa for t in chords.triangle_classes(e)),
        reductivity=None if isinstance(r, Unknown) else r.value,
        pr_certificate=pr.certificate,
        strong_trivializable=strong_build_check(e, memo) is not None,
    )


def embeddings(n_max: int, n_min: int = 0) -> Iterator[Embedding]:
    """One embedding per curve class with ``n_min <= n <= n_max``, ordered by (n, certificate)."""
    for n in range(n_min, n_max + 1):
        found: dict[str, Embedding] = {}
        for w in gauss_words(n):
            for e in realize_all(w):
                if e.certificate in found:
                    raise CatalogError(f"two words realize the same curve {e.certificate}")
                found[e.certificate] = e
        for cert in sorted(found):
            yield found[cert]


def _records_for_n(n: int) -> list[CatalogRecord]:
    memo: dict = {}
    return [make_record(e, memo) for e in embeddings(n, n)]


def _records_for_word(letters: tuple) -> list[CatalogRecord]:
    memo: dict = {}
    return [make_record(e, memo) for e in realize_all(letters)]


def enumerate_records(n_max: int, jobs: int = 1) -> Iterator[CatalogRecord]:
    """Exactly one record per spherical curve with at most ``n_max`` crossings."""
    if n_max < 0:
        return
    if jobs <= 1:
        memo: dict = {}
        for e in embeddings(n_max):
            yield make_record(e, memo)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for n in range(n_max + 1):
            words = [w.letters for w in gauss_words(n)]
            batch = []
            for recs in pool.map(_records_for_word, words, chunksize=8):
                batch.extend(recs)
            batch.sort(key=lambda r: r.key)
            seen = set()
            for rec in batch:
                if rec.certificate in seen:
                    raise CatalogError(f"duplicate certificate {rec.certificate}")
                seen.add(rec.certificate)
                yield rec


# short public name for enumerate_records
enumerate = enumerate_records  # noqa: A001


def class_counts(records: Iterable) -> dict[int, int]:
    return dict(sorted(Counter(r.n for r in records).items()))


def grow_by_moves(n_max: int, kinds=INCREASING) -> dict[str, Embedding]:
    """Independent generator: close the circle under increasing moves within ``n_max``."""
    seen = {CIRCLE_EMBEDDING.certificate: CIRCLE_EMBEDDING}
    frontier = [CIRCLE_EMBEDDING]
    while frontier:
        nxt = []
        for e in frontier:
            for s in enumerate_moves(e, kinds):
                if e.n + s.kind.delta > n_max:
                    continue
                r = apply(e, s, check=False)
                c = r.certificate
                if c not in seen:
                    seen[c] = r
                    nxt.append(r)
        frontier = nxt
    return seen


def cross_validate(n_max: int, kinds=INCREASING) -> dict:
    """Compare per-n class counts from the word generator and the move generator.

    ``ok`` is False only if the move generator produced a curve the word
    generator missed; ``agree`` additionally requires equal counts.
    """
    by_words = {e.certificate: e for e in embeddings(n_max)}
    by_moves = grow_by_moves(n_max, kinds)
    extra = sorted(set(by_moves) - set(by_words))
    missing = sorted(set(by_words) - set(by_moves))
    wc = class_counts(by_words.values())
    mc = class_counts(by_moves.values())
    return {
        "n_max": n_max,
        "word_counts": wc,
        "move_counts": {n: mc.get(n, 0) for n in wc},
        "ok": not extra,
        "agree": not extra and not missing,
        "only_in_moves": extra,
        "only_in_words": missing,
    }


# ----------------------------------------------------------------------
# persistence


def catalog_write(records: Iterable[CatalogRecord], path, n_max: int | None = None) -> int:
    """Write JSON lines: a header line, then records ordered by (n, certificate).

    ``n_max`` records the enumeration bound in the header so readers can tell
    a complete catalog from a partial one.
    """
    recs = sorted(records, key=lambda r: r.key)
    path = Path(path)
    try:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True)
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            header = {"schema_version": SCHEMA_VERSION}
            if n_max is not None:
                header["n_max"] = n_max
            fh.write(json.dumps(header) + "\n")
            for r in recs:
                fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
        os.replace(tmp, path)
    except OSError as exc:
        raise CatalogIOError(str(exc)) from exc
    return len(recs)


def _read_lines(path) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh if ln.strip()]
    except OSError as exc:
        raise CatalogIOError(str(exc)) from exc
    if not lines:
        raise CatalogError(f"{path}: missing header line")
    header = json.loads(lines[0])
    version = header.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(f"{path}: schema_version {version!r}, expected {SCHEMA_VERSION}")
    return lines


def catalog_header(path) -> dict:
    return json.loads(_read_lines(path)[0])


def catalog_read(path) -> list[CatalogRecord]:
    lines = _read_lines(path)
    return [CatalogRecord.from_json(json.loads(ln)) for ln in lines[1:]]
