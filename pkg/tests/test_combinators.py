"""Constants, projections, pairing, sums, retentive lists, isomorphisms."""

import pytest

from effectbx import (
    FiniteDomain,
    Just,
    Left,
    NOTHING,
    NotTransparent,
    Right,
    UNINIT,
    analyze_transparency,
    assoc_bx,
    check_equivalence,
    check_init_laws,
    check_overwritable,
    check_seven_laws,
    compose,
    const_bx,
    fst_ibx,
    identity_bx,
    identity_family,
    inl_bx,
    inr_bx,
    list_ibx,
    pair_bx,
    snd_ibx,
    st_exec,
    sum_bx,
    swap_bx,
    unitl_bx,
    unitr_bx,
    writer_family,
    StateBijection,
)
from effectbx.corpus import _logging_component, _switch_reader

BIT = FiniteDomain("bit", (0, 1))


def test_const_bx():
    bx = const_bx(identity_family(), 0, BIT)
    assert bx.get_r.run(bx.init_l(())) == (0, 0)
    assert check_seven_laws(bx).ok
    _, s = bx.set_r(1).run(0)
    assert bx.get_r.run(s)[0] == 1


def test_fst_ibx():
    bx = fst_ibx(identity_family(), BIT, BIT, default_b=0)
    assert bx.get_r.run((1, 0)) == (1, (1, 0))
    assert st_exec(bx.set_r(0), (1, 1)) == (0, 1)
    assert bx.init_r(1) == (1, 0)
    assert check_seven_laws(bx).ok and check_init_laws(bx).ok


def test_projection_aliases():
    from effectbx import fst_bx, snd_bx

    assert fst_bx is fst_ibx and snd_bx is snd_ibx


def test_snd_ibx():
    bx = snd_ibx(identity_family(), BIT, BIT, default_a=1)
    assert bx.get_r.run((0, 1))[0] == 1
    assert bx.init_r(0) == (1, 0)
    assert check_seven_laws(bx).ok and check_init_laws(bx).ok


def test_pair_of_identities_equivalent_to_identity_on_pairs():
    fam = identity_family()
    paired = pair_bx(identity_bx(fam, BIT, name="a"), identity_bx(fam, BIT, name="b"))
    assert check_seven_laws(paired).ok
    flat = identity_bx(fam, FiniteDomain("p", tuple((x, y) for x in BIT for y in BIT)))
    h = StateBijection(forward=lambda s: s, backward=lambda s: s)
    assert check_equivalence(flat, paired, h).ok


def test_pair_set_ordering_left_then_right():
    fam = writer_family()
    c1 = identity_bx(fam, BIT, name="c1")
    c2 = identity_bx(fam, BIT, name="c2")

    from effectbx import signal_bx, tell

    loud1 = signal_bx(lambda a: tell((("L1", a),)), lambda b: tell((("R1", b),)), c1)
    loud2 = signal_bx(lambda a: tell((("L2", a),)), lambda b: tell((("R2", b),)), c2)
    paired = pair_bx(loud1, loud2)
    (_, _state), log = paired.set_l((1, 1)).run((0, 0))
    assert log == (("L1", 1), ("L2", 1))


def test_pair_requires_transparency():
    fam = _switch_reader().effect
    with pytest.raises(NotTransparent):
        pair_bx(_switch_reader(), identity_bx(fam, BIT))


def test_pair_does_not_preserve_overwritability():
    fam = writer_family(bound=1)
    c1 = _logging_component(fam)
    c2 = _logging_component(fam)
    assert check_overwritable(c1).ok
    paired = pair_bx(c1, c2)
    assert check_seven_laws(paired).ok
    report = check_overwritable(paired)
    assert "set_l-set_l" in report.failing_laws
    w = report.law("set_l-set_l").failures[0]
    # the failing shape: the second pair-set's right half is silent while a
    # fresh right-set logs
    assert w.env["a"][0] != w.env["a2"][0] or w.env["a"][1] == w.env["a2"][1]


def test_inl_bx():
    fam = identity_family()
    bx = inl_bx(fam, BIT, BIT, default_a=0)
    # setting the sum to a Left drops the stored opposite value
    s = st_exec(bx.set_r(Left(1)), (0, Just(1)))
    assert s == (1, NOTHING)
    # setting to a Right retains the old left value
    s = st_exec(bx.set_r(Right(0)), (1, NOTHING))
    assert s == (1, Just(0))
    assert bx.get_l.run(s)[0] == 1
    assert check_seven_laws(bx).ok and check_init_laws(bx).ok
    assert bx.init_r(Right(1)) == (0, Just(1))


def test_inr_bx():
    fam = identity_family()
    bx = inr_bx(fam, BIT, BIT, default_b=1)
    assert check_seven_laws(bx).ok and check_init_laws(bx).ok
    assert bx.get_r.run((0, NOTHING))[0] == Right(0)
    assert bx.get_r.run((0, Just(1)))[0] == Left(1)
    assert bx.init_r(Left(0)) == (1, Just(0))


def test_sum_bx_switching():
    fam = identity_family()
    bx = sum_bx(identity_bx(fam, BIT, name="x"), identity_bx(fam, BIT, name="y"))
    state = (True, 0, 1)
    # setting a Left updates only the first component and keeps the flag
    s1 = st_exec(bx.set_l(Left(1)), state)
    assert s1 == (True, 1, 1)
    # setting a Right flips the flag and retains the inactive state
    s2 = st_exec(bx.set_l(Right(0)), s1)
    assert s2 == (False, 1, 0)
    assert bx.get_l.run(s2)[0] == Right(0)
    # switching back restores the retained left view
    s3 = st_exec(bx.set_l(Left(1)), s2)
    assert bx.get_l.run(s3)[0] == Left(1)
    assert check_seven_laws(bx).ok


def test_sum_bx_round_trip_restores_prior_view():
    fam = identity_family()
    bx = sum_bx(identity_bx(fam, BIT, name="x"), identity_bx(fam, BIT, name="y"))
    for s in bx.state_domain:
        before = bx.get_l.run((True, s[1], s[2]))[0]
        there = st_exec(bx.set_l(Right(0)), (True, s[1], s[2]))
        back = st_exec(bx.set_l(before), there)
        assert bx.get_l.run(back)[0] == before


def test_sum_bx_init_marks_inactive_slot():
    fam = identity_family()
    bx = sum_bx(identity_bx(fam, BIT, name="x"), identity_bx(fam, BIT, name="y"))
    assert bx.init_l(Left(1)) == (True, 1, UNINIT)
    assert bx.init_r(Right(0)) == (False, UNINIT, 0)
    assert check_init_laws(bx).ok


def test_sum_bx_reading_uninitialized_slot_is_an_error():
    from effectbx import EffectbxError

    fam = identity_family()
    bx = sum_bx(identity_bx(fam, BIT, name="x"), identity_bx(fam, BIT, name="y"))
    with pytest.raises(EffectbxError):
        bx.get_l.run((True, UNINIT, 0))


def test_list_ibx_views_and_retention():
    fam = identity_family()
    bx = list_ibx(identity_bx(fam, BIT), max_len=2)
    # longer list: new element states created through the initializer
    s = st_exec(bx.set_l((1, 0)), (0, ()))
    assert s == (2, (1, 0))
    # shorter list: surplus states retained
    s2 = st_exec(bx.set_l((0,)), s)
    assert s2 == (1, (0, 0))
    assert bx.get_l.run(s2)[0] == (0,)
    # lengthening again restores the retained state
    s3 = st_exec(bx.set_l((0, 1)), s2)
    assert s3 == (2, (0, 1))


def test_list_ibx_laws():
    fam = identity_family()
    bx = list_ibx(identity_bx(fam, BIT), max_len=2)
    assert check_seven_laws(bx).ok
    assert check_init_laws(bx).ok


def test_list_ibx_length_invariant():
    fam = identity_family()
    bx = list_ibx(identity_bx(fam, BIT), max_len=2)
    for s in bx.state_domain:
        for view in bx.dom_a:
            n, cs = st_exec(bx.set_l(view), s)
            assert n == len(view) and len(cs) >= n


def test_list_ibx_rejects_negative_length():
    fam = identity_family()
    with pytest.raises(ValueError):
        list_ibx(identity_bx(fam, BIT), max_len=-1)


def test_swap_iso():
    fam = identity_family()
    bx = swap_bx(fam, BIT, BIT)
    assert bx.get_r.run((0, 1))[0] == (1, 0)
    assert check_seven_laws(bx).ok and check_overwritable(bx).ok
    # swap ; swap is the identity on pairs up to the canonical bijection
    composed = compose(bx, swap_bx(fam, BIT, BIT))
    flat = identity_bx(fam, FiniteDomain("p", tuple((x, y) for x in BIT for y in BIT)))
    h = StateBijection(
        forward=lambda s: (s, (s[1], s[0])), backward=lambda t: t[0]
    )
    assert check_equivalence(flat, composed, h).ok


def test_assoc_iso():
    fam = identity_family()
    bx = assoc_bx(fam, BIT, BIT, BIT)
    assert bx.get_r.run(((1, 0), 1))[0] == (1, (0, 1))
    assert check_seven_laws(bx).ok


def test_unit_isos():
    fam = identity_family()
    assert unitl_bx(fam, BIT).get_r.run(1)[0] == ((), 1)
    assert unitr_bx(fam, BIT).get_r.run(1)[0] == (1, ())
    assert check_seven_laws(unitl_bx(fam, BIT)).ok
    assert check_init_laws(unitr_bx(fam, BIT)).ok


def test_combinator_outputs_preserve_transparency():
    fam = identity_family()
    paired = pair_bx(identity_bx(fam, BIT, name="a"), identity_bx(fam, BIT, name="b"))
    summed = sum_bx(identity_bx(fam, BIT, name="a"), identity_bx(fam, BIT, name="b"))
    listed = list_ibx(identity_bx(fam, BIT), max_len=2)
    for bx in (paired, summed, listed):
        assert analyze_transparency(bx).transparent, bx.name


def test_combinators_preserve_laws_quantified_over_inputs():
    # every combinator output is lawful whenever its inputs are: quantified
    # over a small corpus of lawful transparent inputs
    fam = identity_family()
    inputs = [
        identity_bx(fam, BIT, name="id"),
        fst_ibx(fam, BIT, BIT, default_b=0),
        swap_bx(fam, BIT, BIT),
        const_bx(fam, 0, BIT),
    ]
    for bx in inputs:
        assert check_seven_laws(bx).ok and check_init_laws(bx).ok
    for bx1 in inputs:
        for bx2 in inputs:
            for combined in (pair_bx(bx1, bx2), sum_bx(bx1, bx2)):
                assert check_seven_laws(combined).ok, combined.name
                assert check_init_laws(combined).ok, combined.name
                assert analyze_transparency(combined).transparent, combined.name
    for bx in inputs:
        lifted = list_ibx(bx, max_len=2)
        assert check_seven_laws(lifted).ok, lifted.name
        assert check_init_laws(lifted).ok, lifted.name
        assert analyze_transparency(lifted).transparent, lifted.name
