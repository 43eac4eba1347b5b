import random

import pytest

from evslab import scalars as sc
from evslab import sets as st
from evslab import topology as tp
from evslab._backend import Rat, rat
from evslab.instances import MORPHISMS, half_line
from evslab.sets import INF, iu
from evslab.topology import (BOUNDED_LAW_IDS, LOCAL_BASE_CONDITION_IDS,
                             audit_generator, balanced_absorbing_interval_form,
                             balanced_nbhd_inside, check_bounded_laws,
                             check_family_transport,
                             check_local_base_conditions, decomposition_nbhd,
                             definition_bounded_grid,
                             degenerate_interval_report, finest_topology_audit,
                             halving_nbhd, is_bounded_set, is_compact,
                             is_usual_open, open_balanced_absorbing_form,
                             open_decomposition, scalar_continuity_witness,
                             separation_witness, usual_base)


# ---------------------------------------------------- witness constructors

def test_is_usual_open():
    assert is_usual_open(iu((0, 1)))
    assert is_usual_open(iu((1, 2, False, False), (3, INF, False, False)))
    assert not is_usual_open(iu((1, 2)))          # left-closed away from 0
    assert not is_usual_open(iu((0, 1, True, True)))  # right-closed


def test_balanced_nbhd_inside():
    U = iu((0, 2), (3, 4, False, False))
    W = balanced_nbhd_inside(U)
    assert W == iu((0, 2))
    with pytest.raises(ValueError):
        balanced_nbhd_inside(iu((1, 2)))


def test_halving_nbhd():
    U = iu((0, 1))
    W = halving_nbhd(U)
    assert W == iu((0, Rat(1, 2)))
    assert st.iu_subset(st.iu_minkowski(W, W), U)
    assert halving_nbhd(iu((0, INF))) == iu((0, INF))


def test_decomposition_nbhd_and_open_decomposition():
    G = iu((0, 2), (3, 5, False, False))
    U = decomposition_nbhd(G, rat(1))
    assert st.iu_subset(st.iu_translate(rat(1), U), G)
    parts = open_decomposition(G, seed=3)
    assert parts
    for x, Ux in parts:
        assert G.member(x)
        assert st.iu_subset(st.iu_translate(x, Ux), G)
    with pytest.raises(ValueError):
        decomposition_nbhd(G, rat(2))


def test_separation_witness():
    U, V = separation_witness(rat(3), rat(1))
    assert U == iu((0, 1))
    up = st.iu_up(st.iu_translate(rat(3), U))
    down = st.iu_down(st.iu_translate(rat(1), V))
    assert st.iu_intersect(up, down).is_empty()
    with pytest.raises(ValueError):
        separation_witness(rat(1), rat(1))


def test_scalar_continuity_witness():
    G = iu((0, 4))
    eps, U = scalar_continuity_witness(G, rat(1), sc.scalar(2))
    assert eps > 0 and not U.is_empty()
    # re-verify the defining inclusion on a sample of the disc x interval
    m = rat(2)
    u_hi = U.components[0].hi
    for dl in (-eps / 2, 0, eps / 2):
        lam = m + dl
        for du in (0, u_hi / 2):
            val = lam * (rat(1) + du)
            assert st.iu_scale(m, G).member(val)
    with pytest.raises(ValueError):
        scalar_continuity_witness(G, rat(1), sc.S_ZERO)
    with pytest.raises(ValueError):
        scalar_continuity_witness(iu((1, 2)), Rat(3, 2), sc.scalar(1))


def test_scalar_continuity_interior_point_near_left_edge():
    # open component (1, 2): the lower-slack branch must engage
    G = iu((1, 2, False, False), (0, Rat(1, 2)))
    eps, U = scalar_continuity_witness(G, Rat(3, 2), sc.scalar(1))
    assert eps > 0 and U.components[0].hi > 0


# ------------------------------------------------------------- boundedness

def test_bounded_examples():
    assert is_bounded_set(iu((0, 5, True, True), (7, 9))).proven
    out = is_bounded_set(iu((1, INF)))
    assert out.refuted
    assert out.witness["lambda_n"] == "1/n"


def test_bounded_predicate_falsifier():
    H = half_line()
    A = st.PredicateSet(lambda r: True, lambda s, n: [rat(i) for i in range(n)],
                        "everything")
    assert is_bounded_set(A, H, 50, 42).refuted
    B = st.PredicateSet(lambda r: r < Rat(1, 2), lambda s, n: [],
                        "small")
    assert not is_bounded_set(B, H, 50, 42).refuted


def test_definition_grid_agrees():
    rng = random.Random(99)
    for _ in range(200):
        A = st.random_interval_union(rng)
        assert definition_bounded_grid(A) == is_bounded_set(A).proven


def test_compactness_helper():
    assert is_compact(iu((0, 1, True, True)))
    assert not is_compact(iu((0, 1)))
    assert not is_compact(iu((0, INF)))


def test_bounded_laws_all_proven():
    out = check_bounded_laws(half_line(), 300, 42)
    assert set(out) == set(BOUNDED_LAW_IDS)
    assert all(o.proven for o in out.values())


# ------------------------------------------------------------- local base

def test_local_base_conditions_on_usual_base():
    fam = usual_base(8)
    out = check_local_base_conditions(fam, 200, 42)
    assert set(out) == set(LOCAL_BASE_CONDITION_IDS)
    assert out["i"].proven
    assert out["ii"].proven
    assert out["iii"].proven
    assert not out["iv"].proven and not out["iv"].refuted
    assert out["v"].refuted


def test_condition_v_witness_is_seed_stable():
    fam = usual_base(6)
    a = check_local_base_conditions(fam, 200, 1)["v"]
    b = check_local_base_conditions(fam, 200, 999)["v"]
    wa = {k: v for k, v in a.witness.items() if not k.startswith("_")}
    wb = {k: v for k, v in b.witness.items() if not k.startswith("_")}
    assert wa == wb
    assert wa["W"] == "[0,1)" and wa["x"] == "1" and wa["alpha"] == "1"


def test_local_base_rejects_bad_family():
    with pytest.raises(ValueError):
        check_local_base_conditions([], 100, 42)
    with pytest.raises(ValueError):
        check_local_base_conditions([iu((1, 2))], 100, 42)


def test_family_transport_preserves_verdicts():
    phi = MORPHISMS["doubling"]()
    out = check_family_transport(phi, usual_base(6), 200, 42)
    assert out.proven


# --------------------------------------------------------- normal forms

def test_open_balanced_absorbing_form():
    assert open_balanced_absorbing_form(iu((0, 1))).proven
    assert open_balanced_absorbing_form(iu((0, INF))).proven
    out = open_balanced_absorbing_form(iu((1, 2)))
    assert out.proven and "both sides false" in out.detail


def test_interval_form_and_degenerate_report():
    assert balanced_absorbing_interval_form(iu((0, 1))).proven
    assert balanced_absorbing_interval_form(iu((0, 1, True, True))).proven
    rep = degenerate_interval_report()
    assert rep["set"] == "[0,0]"
    assert rep["balanced"] == "Proven"
    assert rep["absorbing"] == "Refuted"


def test_interval_form_fuzz():
    rng = random.Random(7)
    for _ in range(300):
        A = st.random_interval_union(rng)
        assert balanced_absorbing_interval_form(A).proven


# ----------------------------------------------------------------- audit

def test_audit_examples():
    out = audit_generator(iu((1, 2)))
    assert out.refuted
    assert out.witness["t"] == "1/2"
    assert out.witness["escape"] == "1/2"

    out = audit_generator(iu((0, 1, True, True)))
    assert out.refuted
    assert out.witness["t"] == "3/2"

    assert audit_generator(iu((0, 1))).proven
    assert audit_generator(iu((2, INF, False, False))).proven


def test_audit_degenerate_component():
    out = audit_generator(iu((0, 0, True, True)))
    assert out.refuted
    assert out.witness["reason"] == "isolated theta"


def test_audit_escape_scalars_leave_generator():
    rng = random.Random(21)
    for _ in range(300):
        G = st.random_interval_union(rng)
        out = audit_generator(G)
        assert out.refuted == (not is_usual_open(G))
        if out.refuted and "t" in out.witness:
            x, t = out.witness["_raw"]
            assert G.member(x) and not G.member(t * x)


def test_family_audit():
    out = finest_topology_audit([iu((0, 1)), iu((1, 2))])
    assert out.refuted
    assert out.witness["generator"] == "[1,2)"
    assert finest_topology_audit([iu((0, 1)), iu((0, INF))]).proven
