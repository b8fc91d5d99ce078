from __future__ import annotations

import random

import pytest

from tangle_tqft.evaluator import default_theory, eval_diagram
from tangle_tqft.ring import RingMatrix
from tangle_tqft.sampling import random_closed_diagram, random_composable_pair, random_diagram, random_movable_diagram
from tangle_tqft.tangle import (
    INVARIANCE_MOVES,
    BoundaryMismatch,
    Cap,
    Cup,
    Id,
    Move,
    MoveError,
    Over,
    SlicedDiagram,
    Under,
    W,
    apply_move,
    braid_to_diagram,
    closure,
    compose,
    empty_diagram,
    identity_diagram,
    insert_kink,
    involute,
    move_sites,
    random_equivalent,
    reflect,
    tensor,
    validate,
    writhe,
)

TH = default_theory()


def ev(d: SlicedDiagram) -> RingMatrix:
    return eval_diagram(d, TH)


def test_generator_boundaries():
    assert Cup("+").inputs == () and Cup("+").outputs == ("+", "-")
    assert Cap("-").inputs == ("-", "+") and Cap("-").outputs == ()
    assert Over("+", "-").outputs == ("-", "+")
    assert Under("-", "-").inputs == ("-", "-")


def test_validate_examples():
    assert validate(empty_diagram()).ok
    assert validate(SlicedDiagram(W("+"), ((Id("+"),),))).ok
    rep = validate(SlicedDiagram(W("++"), ((Cap("+"),),)))
    assert not rep.ok and rep.slice_no == 1 and rep.position == 1
    assert "opposite signs" in rep.message
    rep = validate(SlicedDiagram(W("+-"), ((Id("+"),), )))
    assert not rep.ok and rep.slice_no == 1 and rep.position == 2


def test_compose_and_identity():
    rng = random.Random(2)
    for _ in range(30):
        t = random_diagram(rng)
        assert ev(compose(identity_diagram(t.target()), t)) == ev(t)
        assert ev(compose(t, identity_diagram(t.source()))) == ev(t)
    loop = compose(SlicedDiagram(W("+-"), ((Cap("+"),),)), SlicedDiagram(W(""), ((Cup("+"),),)))
    assert loop.is_closed() and validate(loop).ok
    with pytest.raises(BoundaryMismatch):
        compose(identity_diagram("+"), identity_diagram("-"))


def test_compose_associative_and_valid():
    rng = random.Random(4)
    for _ in range(30):
        t2, t1 = random_composable_pair(rng)
        t3 = random_diagram(rng, bottom=t2.target())
        assert validate(compose(t2, t1)).ok
        assert compose(t3, compose(t2, t1)) == compose(compose(t3, t2), t1)
        assert validate(tensor(t1, t3)).ok


def test_tensor_objects_and_unit():
    t = tensor(identity_diagram("+-"), identity_diagram("-+-"))
    assert t.source() == W("+--+-")
    rng = random.Random(6)
    for _ in range(20):
        d = random_diagram(rng)
        assert tensor(d, empty_diagram()) == d
        assert ev(tensor(empty_diagram(), d)) == ev(d)


def test_involute():
    assert involute(W("+-")) == W("-+")
    assert involute(W("")) == W("")
    w = W("+--+-")
    assert involute(involute(w)) == w


def test_reflect_swaps_boundary():
    rng = random.Random(8)
    for _ in range(30):
        d = random_diagram(rng)
        r = reflect(d)
        assert validate(r).ok
        assert r.source() == d.target() and r.target() == d.source()
        assert reflect(r) == d


def test_word_bookkeeping_for_five_to_three_points():
    # cap the middle (-,+) pair, then cross the right pair
    d = SlicedDiagram(W("--+-+"), (
        (Id("-"), Cap("-"), Id("-"), Id("+")),
        (Id("-"), Over("-", "+")),
    ))
    assert validate(d).ok
    assert d.source() == W("--+-+") and d.target() == W("-+-")


def test_writhe_examples():
    assert writhe(identity_diagram("+-+")) == 0
    assert writhe(closure(braid_to_diagram([1], 2), "trace")) == 1
    assert writhe(closure(braid_to_diagram([1, 1, 1], 2), "trace")) == 3
    assert writhe(SlicedDiagram(W("+-"), ((Over("+", "-"),),))) == -1
    assert writhe(SlicedDiagram(W("--"), ((Under("-", "-"),),))) == -1


def test_braid_to_diagram():
    d = braid_to_diagram([], 3)
    assert d.source() == d.target() == W("+++") and ev(d) == RingMatrix.identity(8, "A")
    d = braid_to_diagram([1], 2)
    assert d.slices == ((Over("+", "+"),),) and d.target() == W("++")
    assert braid_to_diagram([1], 2, "all-down").source() == W("--")
    rng = random.Random(1)
    for _ in range(20):
        word = [rng.choice((1, -1)) * rng.randint(1, 3) for _ in range(rng.randint(0, 8))]
        expect = sum(1 if x > 0 else -1 for x in word)
        assert writhe(braid_to_diagram(word, 4)) == expect
    with pytest.raises(ValueError):
        braid_to_diagram([2], 2)


def test_closures():
    unknot = closure(identity_diagram("+"), "trace")
    assert unknot.is_closed() and ev(unknot).scalar_value() == TH.loop_value
    plat = closure(SlicedDiagram(W(""), ((Cup("+"),),)), "plat")
    assert ev(plat).scalar_value() == TH.loop_value
    kinked = closure(braid_to_diagram([1], 2), "trace")
    assert ev(kinked).scalar_value() == TH.kink_factor * TH.loop_value
    with pytest.raises(ValueError):
        closure(identity_diagram("++"), "plat")
    with pytest.raises(ValueError):
        closure(SlicedDiagram(W(""), ((Cup("+"),),)), "trace")


def test_zigzag_round_trip():
    d = identity_diagram("+")
    for variant in (0, 1):
        z = apply_move(d, Move.ZIGZAG, (0, 0), "insert", variant)
        assert len(z.slices) == 3 and validate(z).ok
        assert apply_move(z, Move.ZIGZAG, (0, 0), "remove") == d
        assert ev(z) == ev(d)


def test_r2_insert_is_identity():
    d = identity_diagram("++")
    r = apply_move(d, Move.R2, (0, 0), "insert")
    assert [g.kind for sl in r.slices for g in sl][:2] == ["over", "under"]
    assert ev(r) == RingMatrix.identity(4, "A")
    assert apply_move(r, Move.R2, (0, 0), "remove") == d


def test_r3_and_slide():
    d = braid_to_diagram([1, 2, 1], 3)
    e = apply_move(d, Move.R3, (0, 0))
    assert e == braid_to_diagram([2, 1, 2], 3)
    assert ev(e) == ev(d)
    d = SlicedDiagram(W("++"), ((Over("+", "+"),), (Id("+"), Id("+"))))
    up = apply_move(d, Move.SLIDE, (0, 0), "insert")
    assert up.slices[0] == (Id("+"), Id("+")) and ev(up) == ev(d)
    with pytest.raises(MoveError):
        apply_move(identity_diagram("+"), Move.R3, (0, 0))


def test_moves_preserve_boundary_and_writhe():
    rng = random.Random(12)
    counts = {m: 0 for m in INVARIANCE_MOVES}
    for _ in range(80):
        d = random_movable_diagram(rng)
        sites = []
        for mv in INVARIANCE_MOVES:
            some = move_sites(d, [mv])
            rng.shuffle(some)
            sites += some[:4]
        for mv, loc, direction, variant in sites:
            try:
                e = apply_move(d, mv, loc, direction, variant)
            except MoveError:
                continue
            counts[mv] += 1
            assert validate(e).ok
            assert (e.source(), e.target(), writhe(e)) == (d.source(), d.target(), writhe(d))
            assert ev(e) == ev(d)
    assert all(counts.values()), counts


def test_random_equivalent_deterministic():
    rng = random.Random(13)
    d = random_movable_diagram(rng)
    assert random_equivalent(d, 0, seed=1) == d
    a = random_equivalent(d, 5, seed=42)
    assert a == random_equivalent(d, 5, seed=42)
    assert (a.source(), a.target()) == (d.source(), d.target())
    with pytest.raises(MoveError):
        random_equivalent(empty_diagram(), 1, seed=0)


def test_kink_is_r1():
    rng = random.Random(21)
    for _ in range(10):
        d = random_closed_diagram(rng)
        lv = rng.randrange(1, len(d.slices))
        if not len(d.levels()[lv]):
            continue
        k = insert_kink(d, lv, 0)
        assert writhe(k) == writhe(d) + 1
        n = insert_kink(d, lv, 0, positive=False)
        assert writhe(n) == writhe(d) - 1
        assert apply_move(k, Move.R1, (lv, 0), "remove") == d
