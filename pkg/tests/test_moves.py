import pytest

from knotproj import moves
from knotproj.chords import TRIPLE, chord_diagram, has_pattern
from knotproj.cmap import CIRCLE_EMBEDDING, face_census, is_equivalent
from knotproj.moves import (
    DECREASING,
    INCREASING,
    InvalidSite,
    MoveKind,
    MoveSite,
    NoSuchCrossing,
    a_inverse,
    a_inverse_surgery,
    a_inverse_word,
    apply,
    bigon_type,
    bigons,
    enumerate_moves,
    parse_kinds,
)

from conftest import emb


def test_kind_metadata():
    assert [k.delta for k in (MoveKind.R1a, MoveKind.S2a, MoveKind.W2a)] == [1, 2, 2]
    assert [k.delta for k in (MoveKind.R1b, MoveKind.S2b, MoveKind.W2b)] == [-1, -2, -2]
    assert MoveKind.R3.delta == 0 and MoveKind.AInv.delta == -1
    assert MoveKind.S2a.inverse is MoveKind.S2b
    assert parse_kinds("1 s2") == moves.STRONG_12
    with pytest.raises(ValueError):
        parse_kinds("R9")


def test_circle_sites():
    sites = enumerate_moves(CIRCLE_EMBEDDING, {MoveKind.S2a, MoveKind.W2a})
    assert sites and all(s.kind is MoveKind.S2a for s in sites)
    results = {apply(CIRCLE_EMBEDDING, s).certificate for s in sites}
    assert results == {emb("1 2 2 1").certificate}


def test_trefoil_bigons(trefoil):
    sites = enumerate_moves(trefoil, {MoveKind.S2b, MoveKind.W2b})
    assert len(sites) == 3 and all(s.kind is MoveKind.W2b for s in sites)
    assert {t for _, _, t in bigons(trefoil)} == {moves.WEAK}


def test_strong_bigon_of_1221():
    e = emb("1 2 2 1")
    sites = enumerate_moves(e, {MoveKind.S2b})
    assert [s.crossings for s in sites] == [(1, 2)]
    assert apply(e, sites[0]) == CIRCLE_EMBEDDING


def test_r1b_on_kink():
    e = emb("1 1")
    sites = enumerate_moves(e, {MoveKind.R1b})
    assert len(sites) == 2
    assert all(apply(e, s) == CIRCLE_EMBEDDING for s in sites)


def test_r3_on_trefoil(trefoil):
    sites = enumerate_moves(trefoil, {MoveKind.R3})
    assert len(sites) == 2
    for s in sites:
        out = apply(trefoil, s)
        # the triangle flips inside out; the three bigons become kinks
        assert face_census(out).p == {1: 3, 3: 1, 6: 1}
        back = [apply(out, t) for t in enumerate_moves(out, {MoveKind.R3})]
        assert trefoil.certificate in {b.certificate for b in back}


def test_stale_site_rejected(trefoil):
    site = enumerate_moves(trefoil, {MoveKind.W2b})[0]
    smaller = apply(trefoil, site)
    with pytest.raises(InvalidSite):
        apply(smaller, site)
    with pytest.raises(InvalidSite):
        apply(trefoil, MoveSite(MoveKind.R1a, 0, (99,)))


def test_inverse_round_trips(curves5):
    """Every increasing site can be undone by a decreasing site of the inverse kind."""
    for e in curves5:
        if e.n > 3:
            continue
        for s in enumerate_moves(e, INCREASING):
            out = apply(e, s)
            back = {apply(out, t).certificate for t in enumerate_moves(out, {s.kind.inverse})}
            assert e.certificate in back, (e, s)


def test_decreasing_moves_invert(curves5):
    for e in curves5:
        for s in enumerate_moves(e, DECREASING):
            out = apply(e, s)
            up = {apply(out, t).certificate for t in enumerate_moves(out, {s.kind.inverse})}
            assert e.certificate in up, (e, s)


def test_insertions_create_bigons_of_their_type(curves5):
    """The bigon a finger creates is typed like the finger: the matching decreasing kind removes it."""
    for e in curves5:
        if e.n > 3:
            continue
        for s in enumerate_moves(e, {MoveKind.S2a, MoveKind.W2a}):
            out = apply(e, s)
            undo = {apply(out, t).certificate for t in enumerate_moves(out, {s.kind.inverse})}
            assert e.certificate in undo


def test_w2a_forces_triple(curves5):
    for e in curves5:
        if e.n > 4:
            continue
        for s in enumerate_moves(e, {MoveKind.W2a}):
            assert has_pattern(chord_diagram(apply(e, s).word), TRIPLE)


def test_bigon_type_cross_check(curves5):
    for e in curves5:
        for face in e.faces():
            if len(face) == 2 and len({e.crossing_of(d) for d in face}) == 2:
                bigon_type(e, face)  # raises on disagreement


def test_a_inverse_examples(trefoil):
    assert a_inverse_word(trefoil, 1) == (1, 2, 2, 1)
    out = a_inverse(trefoil, 1)
    assert out.n == 2 and moves.is_reducible(out)
    assert a_inverse(emb("1 1"), 1) == CIRCLE_EMBEDDING
    with pytest.raises(NoSuchCrossing):
        a_inverse(trefoil, 4)


def test_a_inverse_rule_matches_surgery(curves5):
    for e in curves5:
        for c in range(1, e.n + 1):
            a = a_inverse(e, c)
            b = a_inverse_surgery(e, c)
            assert a.n == e.n - 1
            a.map.validate()
            assert a.certificate == b.certificate
            assert is_equivalent(a, b)


def test_r3_is_an_involution_up_to_choice(curves5):
    for e in curves5:
        for s in enumerate_moves(e, {MoveKind.R3}):
            out = apply(e, s)
            assert out.n == e.n
            back = {apply(out, t).certificate for t in enumerate_moves(out, {MoveKind.R3})}
            assert e.certificate in back


def test_move_event_json(trefoil):
    site = enumerate_moves(trefoil, {MoveKind.W2b})[0]
    out = apply(trefoil, site)
    ev = moves.event(trefoil, site, out)
    d = ev.to_json()
    assert d["kind"] == "W2b" and d["before_cert"] == trefoil.certificate and d["after_cert"] == out.certificate
