import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from knotproj import chords
from knotproj.chords import (
    CROSS,
    H,
    TRIPLE,
    ChordDiagram,
    chord_diagram,
    connected_sum,
    find_patterns,
    from_sequence,
    has_pattern,
    interlacement_graph,
    is_prime,
    prime_factors,
    reducible_chords,
    triangle_classes,
    two_point_cuts,
)
from knotproj.cmap import CIRCLE_EMBEDDING, face_census
from knotproj.word import GaussWord, all_words, canonical_letters, normalize_letters

from conftest import emb


@st.composite
def diagrams(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    seq = draw(st.permutations([c for c in range(1, n + 1) for _ in range(2)]))
    return from_sequence(seq)


def brute_interleaved(cd, a, b):
    i, j = cd.endpoints[a - 1]
    return sum(i < p < j for p in cd.endpoints[b - 1]) == 1


def test_chord_diagram_examples():
    assert chord_diagram([]).n == 0
    assert chord_diagram([1, 2, 1, 2]).endpoints == ((0, 2), (1, 3))
    assert chord_diagram([1, 2, 2, 1]).endpoints == ((0, 3), (1, 2))


def test_pattern_examples():
    assert [h.chords for h in find_patterns([1, 2, 3, 1, 2, 3], TRIPLE)] == [(1, 2, 3)]
    assert find_patterns([1, 2, 2, 1], TRIPLE) == []
    assert find_patterns([1, 2, 3, 4, 1, 2, 3, 4], H) == []
    # 1 and 3 are parallel, 2 crosses both
    assert [h.chords for h in find_patterns([1, 2, 1, 3, 2, 3], H)] == [(1, 3, 2)]
    assert [h.chords for h in find_patterns([1, 2, 1, 2], CROSS)] == [(1, 2)]


@given(diagrams())
def test_interlacement_matches_brute_force(cd):
    g = interlacement_graph(cd)
    for a, b in itertools.permutations(cd.chords, 2):
        assert g.has_edge(a, b) == brute_interleaved(cd, a, b) == g.has_edge(b, a)
    assert all(not g.has_edge(a, a) for a in cd.chords)


@given(diagrams())
def test_patterns_match_brute_force(cd):
    for kind, size in [(CROSS, 2), (TRIPLE, 3), (H, 3)]:
        want = []
        for combo in itertools.combinations(cd.chords, size):
            flags = [brute_interleaved(cd, a, b) for a, b in itertools.combinations(combo, 2)]
            if (kind == CROSS and all(flags)) or (kind == TRIPLE and all(flags)) or (kind == H and sum(flags) == 2):
                want.append(combo)
        got = sorted(tuple(sorted(h.chords)) for h in find_patterns(cd, kind))
        assert got == want
        assert has_pattern(cd, kind) == bool(want)


def test_h_hits_list_the_bridge_last():
    for hit in find_patterns([1, 2, 1, 3, 2, 3, 4, 4], H):
        x, y, z = hit.chords
        cd = from_sequence([1, 2, 1, 3, 2, 3, 4, 4])
        assert not cd.interleaved(x, y) and cd.interleaved(x, z) and cd.interleaved(y, z)


@settings(max_examples=60)
@given(diagrams(), st.data())
def test_deleting_chords_never_creates_patterns(cd, data):
    if cd.n == 0:
        return
    drop = data.draw(st.sets(st.sampled_from(list(cd.chords))))
    sub = from_sequence([c for c in cd.word() if c not in drop])
    for kind in chords.PATTERN_KINDS:
        assert not has_pattern(sub, kind) or has_pattern(cd, kind)


def test_reducible_chords_examples():
    assert reducible_chords([1, 1]) == {1}
    assert reducible_chords([1, 2, 3, 1, 2, 3]) == set()
    assert reducible_chords([1, 1, 2, 2]) == {1, 2}


def test_reducible_crossing_touches_one_face_twice(curves5):
    for e in curves5:
        red = reducible_chords(e.word)
        for c in range(1, e.n + 1):
            touching = [f for f in e.faces() if any(e.crossing_of(d) == c for d in f)]
            # a nugatory crossing has two corners in one face
            assert (len(touching) < 4) == (c in red)


def test_prime_factors_examples():
    assert [f.word() for f in prime_factors([1, 1, 2, 2])] == [(1, 1), (1, 1)]
    cd = chord_diagram([1, 2, 3, 1, 2, 3])
    assert prime_factors(cd) == [cd]
    assert prime_factors([]) == [chord_diagram([])]
    assert is_prime([]) and is_prime([1, 1]) and not is_prime([1, 1, 2, 2])


@settings(max_examples=60)
@given(st.lists(diagrams(max_n=3), min_size=1, max_size=3), st.data())
def test_connected_sum_then_factor(parts, data):
    parts = [p for p in parts if p.n > 0]
    if not parts:
        return
    gaps = [data.draw(st.integers(0, 20)) for _ in parts]
    total = connected_sum(parts, gaps)
    want = sorted(
        canonical_letters(f.word()) for p in parts for f in prime_factors(p)
    )
    got = sorted(canonical_letters(f.word()) for f in prime_factors(total))
    assert got == want
    # recomposing the factors gives back the same diagram class
    again = connected_sum(prime_factors(total))
    assert len(prime_factors(again)) == len(prime_factors(total))


def test_factor_cuts_are_pairing_closed():
    rng = random.Random(1)
    for n in range(1, 6):
        for w in all_words(n):
            seq = w.letters
            for start, length in chords.factor_cuts(w):
                window = [seq[(start + t) % len(seq)] for t in range(length)]
                assert all(window.count(x) == 2 for x in window)


def test_triangle_examples(trefoil):
    tris = triangle_classes(trefoil)
    assert len(tris) == 2
    assert all(t.kappa == 3 and t.letter == "C" for t in tris)
    assert triangle_classes(CIRCLE_EMBEDDING) == []


def test_triangle_kappa_matches_subdiagram(curves5):
    for e in curves5:
        cd = chord_diagram(e.word)
        for t in triangle_classes(e):
            a, b, c = t.chords
            sub = from_sequence([x for x in cd.word() if x in t.chords])
            assert t.kappa == len(find_patterns(sub, CROSS))
            if t.kappa == 3:
                assert has_pattern(cd, TRIPLE)
            assert bytes.fromhex(t.subdiagram_cert) == bytes(canonical_letters(sub.word()))


def test_triangle_count_matches_census(curves5):
    # 3-gons through one crossing twice exist (opposite kinks on 1 1 2 2) and are skipped
    for e in curves5:
        proper = [f for f in e.faces() if len(f) == 3 and len({e.crossing_of(d) for d in f}) == 3]
        assert len(triangle_classes(e)) == len(proper) <= face_census(e)[3]
    degenerate = emb("1 1 2 2", 1)
    assert face_census(degenerate)[3] == 2 and triangle_classes(degenerate) == []


def test_two_point_cut_example():
    cd = chord_diagram([1, 2, 3, 1, 2, 3])
    assert (1, 2) in two_point_cuts(cd)
    assert set(two_point_cuts(cd)) == {(1, 2), (1, 3), (2, 3)}


def test_two_point_cut_arrangement_filter():
    cd = chord_diagram([1, 2, 3, 1, 2, 3])
    assert two_point_cuts(cd, (chords.NON_INTERLEAVED,)) == []
    both = two_point_cuts(cd, (chords.INTERLEAVED, chords.NON_INTERLEAVED))
    assert both == two_point_cuts(cd)


def test_chord_diagram_validation():
    import pytest

    with pytest.raises(ValueError):
        ChordDiagram(2, ((0, 1), (1, 2)))
    with pytest.raises(ValueError):
        ChordDiagram(1, ((1, 0),))
