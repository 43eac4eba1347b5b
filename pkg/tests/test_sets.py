import random

import pytest

from evslab import scalars as sc
from evslab import sets as S
from evslab._backend import Rat, rat
from evslab.instances import (FULL_SUBSPACE, ZERO_SUBSPACE, half_line, line,
                              make_instance)
from evslab.sets import (ALL_SUBSPACES, INF, AnchoredBoxUnion, Box, Interval,
                         IntervalUnion, box, box_union, brute_absorbing_verdict,
                         brute_balanced_violation, interval_union, iu,
                         iu_down, iu_intersect, iu_minkowski, iu_scale,
                         iu_subset, iu_translate, iu_union, iu_up, ival,
                         is_absorbing, is_balanced, lattice_down,
                         lattice_family, lattice_scale, lattice_up,
                         random_interval_union, set_member, set_with_point)


# ------------------------------------------------------- canonicalization

def test_adjacent_intervals_merge():
    u = iu((0, 1), (1, 2))  # [0,1) U [1,2) -> [0,2)
    assert u == iu((0, 2))
    assert u.render() == "[0,2)"


def test_open_touching_intervals_do_not_merge():
    u = iu((0, 1, True, False), (1, 2, False, False))  # [0,1) U (1,2)
    assert len(u.components) == 2
    assert not u.member(rat(1))


def test_overlap_and_closed_touch_merge():
    assert iu((0, 2), (1, 3)) == iu((0, 3))
    assert iu((0, 1, True, True), (1, 2, False, False)) == \
        iu((0, 2, True, False))


def test_empty_and_degenerate_components():
    assert iu((1, 1, True, False)).is_empty()
    u = iu((1, 1, True, True))  # the singleton {1}
    assert u.member(rat(1)) and not u.member(rat(2))


def test_negative_endpoint_rejected():
    with pytest.raises(ValueError):
        iu((-1, 2))


def test_unbounded_interval():
    u = iu((2, INF))
    assert u.member(rat(10**6))
    assert u.sup() == (INF, False)


# ---------------------------------------------------------------- algebra

def test_intersect_union_subset():
    a, b = iu((0, 3)), iu((1, 2, False, True), (5, 6))
    assert iu_intersect(a, b) == iu((1, 2, False, True))
    assert iu_union(a, b) == iu((0, 3), (5, 6))
    assert iu_subset(iu((1, 2)), a)
    assert not iu_subset(b, a)


def test_scale_translate_minkowski():
    a = iu((1, 2, True, True))
    assert iu_scale(rat(3), a) == iu((3, 6, True, True))
    assert iu_scale(rat(0), a) == iu((0, 0, True, True))
    assert iu_translate(rat(2), a) == iu((3, 4, True, True))
    assert iu_minkowski(iu((0, 1)), iu((0, 2))) == iu((0, 3))
    # closedness only survives when both ends are closed
    assert iu_minkowski(iu((0, 1, True, True)), iu((0, 2))) == iu((0, 3))


def test_up_down():
    a = iu((1, 2, False, True), (4, 5))
    assert iu_up(a) == iu((1, INF, False, False))
    assert iu_down(a) == iu((0, 5, True, False))
    assert iu_down(iu((1, 2, True, True))) == iu((0, 2, True, True))


# ------------------------------------------------------------ boxes/dict2

def test_box_union_keeps_only_maximal_boxes():
    u = box_union([box(1, 1), box(2, 3)])
    assert u.boxes == (box(2, 3),)
    # incomparable boxes form an antichain
    u2 = box_union([box(3, 1), box(1, 3)])
    assert len(u2.boxes) == 2


def test_box_membership_and_scale():
    u = box_union([box(2, 3)])
    assert u.member((rat(1), rat(2)))
    assert not u.member((rat(2), rat(0)))
    assert S.box_scale(rat(2), u) == box_union([box(4, 6)])
    assert S.box_scale(rat(0), u) == box_union(
        [Box(S.ZERO, True, S.ZERO, True)])


def test_box_down_includes_attained_edge_fiber():
    u = box_union([box(2, 3, a_closed=True)])
    d = S.box_down(u)
    # points (x, anything) with x < 2 are below, and (2, y) for y < 3
    assert d.member((rat(2), rat(2)))
    assert not d.member((rat(2), rat(100)))
    assert d.member((rat(1), rat(10**6)))
    assert not d.member((rat(2), rat(3)))
    assert not d.member((rat(3), rat(0)))


def test_box_up_is_whole_plane():
    d = S.box_up(box_union([box(1, 1)]))
    assert d.member((rat(10**6), rat(0)))


# ---------------------------------------------------------------- lattice

def test_lattice_family_scale_and_up_down():
    fam = lattice_family(S.FINITE, [line(1, 0), FULL_SUBSPACE])
    assert lattice_scale(sc.scalar(7), fam) == fam
    assert lattice_scale(sc.S_ZERO, fam) == \
        lattice_family(S.FINITE, [ZERO_SUBSPACE])
    up = lattice_up(fam)
    assert up.member(FULL_SUBSPACE) and up.member(line(1, 0))
    assert not up.member(line(0, 1))
    down = lattice_down(fam)
    assert down.is_all()  # full subspace pulls in everything below it


def test_cofinite_family():
    fam = lattice_family(S.COFINITE, [line(1, 1)])
    assert fam.member(ZERO_SUBSPACE) and not fam.member(line(1, 1))
    assert lattice_up(fam).is_all()  # zero subspace is a member


# --------------------------------------------------------------- deciders

def test_balanced_decider_examples():
    assert is_balanced(iu((0, 1))).proven
    assert is_balanced(iu((0, INF))).proven
    out = is_balanced(iu((1, 2)))  # misses 0
    assert out.refuted
    out = is_balanced(iu((0, 1), (2, 3)))  # gap
    assert out.refuted
    x, t = out.witness["_raw"]
    assert iu((0, 1), (2, 3)).member(x)
    assert not iu((0, 1), (2, 3)).member(t * x)


def test_absorbing_decider_examples():
    assert is_absorbing(iu((0, 1))).proven
    assert is_absorbing(iu((0, 1, True, True), (3, INF))).proven
    assert is_absorbing(iu((1, 2))).refuted
    # {0} alone: degenerate 0-component does not absorb x=1
    assert is_absorbing(iu((0, 0, True, True))).refuted


def test_deciders_reject_empty_balanced():
    with pytest.raises(ValueError):
        is_balanced(S.EMPTY_IU)


def test_box_deciders():
    assert is_balanced(box_union([box(1, 1)])).proven
    assert is_absorbing(box_union([box(1, 1)])).proven
    assert is_absorbing(box_union([Box(S.ZERO, True, rat(1), False)])).refuted


def test_lattice_deciders():
    with_zero = lattice_family(S.FINITE, [ZERO_SUBSPACE, line(1, 0)])
    assert is_balanced(with_zero).proven
    assert is_balanced(lattice_family(S.FINITE, [line(1, 0)])).refuted
    assert is_absorbing(ALL_SUBSPACES).proven
    assert is_absorbing(with_zero).refuted


def test_slice_deciders():
    good = S.product_slice((iu((0, 2)), S.ball(1)))
    assert is_balanced(good).proven
    assert is_absorbing(good).proven
    bad = S.product_slice((iu((1, 2)), S.finite_vectors((sc.scalar(1),))))
    assert is_balanced(bad).refuted


def test_predicate_set_sampling():
    H = half_line()
    # [0, 1] as an opaque predicate: balanced, so only Unfalsified
    A = S.PredicateSet(lambda r: r <= 1,
                       lambda s, n: [Rat(i, n) for i in range(n + 1)],
                       "unit-interval")
    out = is_balanced(A, H, 100, 42)
    assert not out.refuted and not out.proven
    # [1, 2] as a predicate: sampling finds the escape under shrink
    B = S.PredicateSet(lambda r: 1 <= r <= 2,
                       lambda s, n: [1 + Rat(i, n) for i in range(n + 1)],
                       "shifted")
    assert is_balanced(B, H, 100, 42).refuted
    assert is_absorbing(B, H, 200, 42).refuted


def test_set_with_point():
    u = set_with_point(iu((0, 1)), rat(5))
    assert u.member(rat(5)) and u.member(rat(0))
    s = set_with_point(S.product_slice((iu((0, 1)), S.ball(1))),
                       (rat(7), (sc.scalar(9),)))
    assert s.member((rat(7), (sc.scalar(9),)))


# ------------------------------------------------- brute oracle agreement

def test_brute_oracles_agree_with_deciders():
    rng = random.Random(314)
    for _ in range(300):
        A = random_interval_union(rng)
        bal = is_balanced(A)
        viol = brute_balanced_violation(A)
        assert bal.refuted == (viol is not None)
        if viol is not None:
            x, t = viol
            assert A.member(x) and 0 <= t <= 1 and not A.member(t * x)
        ab = is_absorbing(A)
        assert ab.refuted == (not brute_absorbing_verdict(A))


def test_generic_dispatch():
    u = iu((0, 1))
    assert set_member(u, Rat(1, 2))
    assert S.scale_set(sc.scalar(-2), u) == iu((0, 2))
    assert S.minkowski_sum(u, u) == iu((0, 2))
    assert S.up_set(u) == iu((0, INF))
    assert S.down_set(u) == iu((0, 1))
    with pytest.raises(TypeError):
        S.scale_set(sc.scalar(1), object())


def test_product_cylinder():
    P = make_instance("product:(halfline,halfline)")
    cyl = S.ProductCylinder((iu((0, 1)), None))
    assert cyl.member((Rat(1, 2), rat(100)))
    assert not cyl.member((rat(2), rat(0)))
    assert "ALL" in cyl.render()
