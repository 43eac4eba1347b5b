"""Closure laws for absorbing/balanced sets, radial separation, and
transport of set verdicts along order-isomorphisms.

The closure drivers generate random exact sets, filter them through the
exact deciders, apply each construction and re-decide.  The radial
checker replays the separating constructions of the source material
exactly on the half line, the dictionary plane and the cone, and refutes
radiality on the subspace lattice from the exact absorbing
characterisation.
"""

import random
from typing import Callable, Optional, Sequence

from . import scalars as sc
from . import sets as st
from ._backend import ONE, ZERO, Rat, rat, rat_str
from .core import EvsDescriptor
from .instances import OrderIso
from .outcome import (CheckOutcome, proven, refuted, subseed, unfalsified)

ABSORBING_LAW_IDS = ("absorbing.i", "absorbing.ii", "absorbing.iii",
                     "absorbing.iv", "absorbing.v")
BALANCED_LAW_IDS = ("balanced.i", "balanced.ii", "balanced.iii",
                    "balanced.iv", "balanced.v")

# partner-set cap for the pairwise laws: keeps the drivers linear in the
# corpus size while every generated set still appears on the outer side
_PAIR_CAP = 40


def _require_interval_support(E: EvsDescriptor):
    if "IntervalUnion" not in E.exact_sets:
        raise ValueError(
            f"closure-law driver needs IntervalUnion support, "
            f"{E.name} has {E.exact_sets}")


def _random_corpus(budget: int, seed: int, pred) -> list:
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < budget and attempts < 50 * budget:
        attempts += 1
        A = st.random_interval_union(rng)
        if pred(A):
            out.append(A)
    return out


def check_absorbing_closure_laws(E: EvsDescriptor, budget: int,
                                 seed: int) -> dict:
    """Laws (i)-(v) for absorbing sets on random interval unions."""
    _require_interval_support(E)
    n = max(4, budget // 10)
    absorbing = _random_corpus(n, subseed(seed, "abs:gen"),
                               lambda A: st.is_absorbing(A).proven)
    anything = _random_corpus(n, subseed(seed, "abs:any"), lambda A: True)
    partners = absorbing[:_PAIR_CAP]
    extras = anything[:_PAIR_CAP]
    out = {}
    tried = 0

    # (i) theta membership
    bad = next((A for A in absorbing if not A.contains_zero()), None)
    out["absorbing.i"] = _law_outcome(bad, len(absorbing), seed,
                                "absorbing set without theta",
                                lambda A: {"set": A.render()})

    # (ii) finite intersections
    bad = None
    for A in absorbing:
        for B in partners:
            tried += 1
            C = st.iu_intersect(A, B)
            if C.is_empty() or not st.is_absorbing(C).proven:
                bad = (A, B, C)
                break
        if bad:
            break
    out["absorbing.ii"] = _law_outcome(
        bad, tried, seed, "intersection of absorbing sets not absorbing",
        lambda w: {"A": w[0].render(), "B": w[1].render(),
                   "A&B": w[2].render()})

    # (iii) supersets / unions
    bad = None
    for A in absorbing:
        for B in extras:
            C = st.iu_union(A, B)
            if not st.is_absorbing(C).proven:
                bad = (A, B, C)
                break
        if bad:
            break
    out["absorbing.iii"] = _law_outcome(
        bad, len(absorbing) * len(extras), seed,
        "superset of an absorbing set not absorbing",
        lambda w: {"A": w[0].render(), "B": w[1].render(),
                   "AuB": w[2].render()})

    # (iv) up/down stability
    bad = None
    for A in absorbing:
        for img in (st.iu_up(A), st.iu_down(A)):
            if not st.is_absorbing(img).proven:
                bad = (A, img)
                break
        if bad:
            break
    out["absorbing.iv"] = _law_outcome(
        bad, 2 * len(absorbing), seed,
        "up/down image of an absorbing set not absorbing",
        lambda w: {"A": w[0].render(), "image": w[1].render()})

    # (v) nonzero scaling
    lams = [l for l in sc.sample_scalars(rat(3), 8, subseed(seed, "abs:lam"),
                                         sc.PYTHAGOREAN_ONLY)
            if not l.is_zero()]
    bad = None
    for A in absorbing:
        for lam in lams:
            C = st.scale_set(lam, A)
            if not st.is_absorbing(C).proven:
                bad = (A, lam, C)
                break
        if bad:
            break
    out["absorbing.v"] = _law_outcome(
        bad, len(absorbing) * len(lams), seed,
        "nonzero scaling of an absorbing set not absorbing",
        lambda w: {"A": w[0].render(), "lambda": sc.render_scalar(w[1]),
                   "lamA": w[2].render()})
    return out


def check_balanced_closure_laws(E: EvsDescriptor, budget: int,
                                seed: int) -> dict:
    """Laws (i)-(v) for balanced sets, with |lambda| arbitrary in (v)."""
    _require_interval_support(E)
    n = max(4, budget // 10)
    balanced = _random_corpus(n, subseed(seed, "bal:gen"),
                              lambda A: st.is_balanced(A).proven)
    partners = balanced[:_PAIR_CAP]
    out = {}

    bad = next((A for A in balanced if not A.contains_zero()), None)
    out["balanced.i"] = _law_outcome(bad, len(balanced), seed,
                                "balanced set without theta",
                                lambda A: {"set": A.render()})

    bad = None
    for A in balanced:
        for B in partners:
            C = st.iu_intersect(A, B)
            if not C.is_empty() and not st.is_balanced(C).proven:
                bad = (A, B, C)
                break
        if bad:
            break
    out["balanced.ii"] = _law_outcome(
        bad, len(balanced) * len(partners), seed,
        "intersection of balanced sets not balanced",
        lambda w: {"A": w[0].render(), "B": w[1].render(),
                   "A&B": w[2].render()})

    bad = None
    for A in balanced:
        for B in partners:
            C = st.iu_union(A, B)
            if not st.is_balanced(C).proven:
                bad = (A, B, C)
                break
        if bad:
            break
    out["balanced.iii"] = _law_outcome(
        bad, len(balanced) * len(partners), seed,
        "union of balanced sets not balanced",
        lambda w: {"A": w[0].render(), "B": w[1].render(),
                   "AuB": w[2].render()})

    bad = None
    for A in balanced:
        for img in (st.iu_up(A), st.iu_down(A)):
            if not st.is_balanced(img).proven:
                bad = (A, img)
                break
        if bad:
            break
    out["balanced.iv"] = _law_outcome(
        bad, 2 * len(balanced), seed,
        "up/down image of a balanced set not balanced",
        lambda w: {"A": w[0].render(), "image": w[1].render()})

    lams = sc.sample_scalars(rat(4), 8, subseed(seed, "bal:lam"),
                             sc.PYTHAGOREAN_ONLY)
    bad = None
    for A in balanced:
        for lam in lams:
            C = st.scale_set(lam, A)
            if C.is_empty() or not st.is_balanced(C).proven:
                bad = (A, lam, C)
                break
        if bad:
            break
    out["balanced.v"] = _law_outcome(
        bad, len(balanced) * len(lams), seed,
        "scaling of a balanced set not balanced",
        lambda w: {"A": w[0].render(), "lambda": sc.render_scalar(w[1]),
                   "lamA": w[2].render()})
    return out


def _law_outcome(bad, tried, seed, detail, witness_of) -> CheckOutcome:
    if bad is not None:
        return refuted(witness_of(bad), tried, seed, detail)
    return proven("exact deciders re-verified every constructed set",
                  tried, seed)


# ------------------------------------------------------------------ radial

def radial_separator(E: EvsDescriptor, x, y):
    """An exactly absorbing set containing exactly one of x != y.

    Implements the separating constructions for the half line, the
    dictionary plane, the cone product and product cylinders; raises
    ValueError for the subspace lattice, which is not radial.
    """
    if E.eq(x, y):
        raise ValueError("separation needs two distinct points")
    kind = E.element_kind
    if kind == "halfline":
        lo_pt, hi_pt = (x, y) if x < y else (y, x)
        r = (lo_pt + hi_pt) / 2
        return st.iu((0, r))
    if kind == "dict2":
        (x1, y1), (x2, y2) = x, y
        if x1 != x2:
            # keep the point with the smaller first coordinate
            keep = x if x1 < x2 else y
            r = (x1 + x2) / 2
            return st.box_union([st.box(r, keep[1] + 1)])
        # same first coordinate: cut between the y values
        keep = x if y1 < y2 else y
        cut = (y1 + y2) / 2
        return st.box_union([st.box(x1 + 1, cut)])
    if kind == "cone":
        return _cone_separator(E, x, y)
    if kind == "product":
        raise ValueError("use product_cylinder_separator for products")
    if kind == "lattice2":
        raise ValueError("the subspace lattice is not radial")
    raise ValueError(f"no exact separator construction for {E.name}")


def _cone_separator(E: EvsDescriptor, x, y):
    """Absorbing slice containing x but not y (or the other way around):
    a basic [0,s) x ball(t) avoiding one point, with the kept point
    adjoined if needed."""
    (r1, a1), (r2, a2) = x, y
    theta = E.zero

    def basic_avoiding(pt):
        r, a = pt
        if r > 0:
            return st.product_slice((st.iu((0, r)), st.ball(1)))
        # r = 0: pt = (0, a) with a != 0; shrink the ball below |a|
        m2 = max(sc.modulus_squared(v) for v in a)
        t = m2 / (m2 + 1)  # t^2 < m2, so the ball excludes a
        return st.product_slice((st.iu((0, 1)), st.ball(t)))

    if E.eq(y, theta):
        return basic_avoiding(x)  # contains theta = y, excludes x
    U = basic_avoiding(y)
    return U if U.member(x) else st.set_with_point(U, x)


def check_radial(E: EvsDescriptor, budget: int, seed: int) -> CheckOutcome:
    """Per-pair separation on sampled distinct pairs."""
    n = max(4, budget // 4)
    xs = E.sample(subseed(seed, "rad:x"), n)
    ys = E.sample(subseed(seed, "rad:y"), n)
    if E.element_kind == "lattice2":
        x, y = st.ZERO_SUBSPACE, st.FULL_SUBSPACE
        return refuted(
            {"x": E.render(x), "y": E.render(y), "_raw": (x, y)},
            len(xs), seed,
            "the only absorbing family is the whole lattice, which "
            "contains both points of every pair")
    tried = 0
    all_proven = True
    for x, y in zip(xs, ys):
        if E.eq(x, y):
            continue
        tried += 1
        try:
            A = radial_separator(E, x, y)
        except ValueError:
            all_proven = False
            continue
        inx, iny = st.set_member(A, x), st.set_member(A, y)
        if inx == iny:
            return refuted({"x": E.render(x), "y": E.render(y),
                            "set": st.render_set(A), "_raw": (x, y, A)},
                           tried, seed, "separator failed to separate")
        if not st.is_absorbing(A, E).proven:
            return refuted({"x": E.render(x), "y": E.render(y),
                            "set": st.render_set(A), "_raw": (x, y, A)},
                           tried, seed, "separator is not absorbing")
    if all_proven and tried:
        return proven(f"exact separators for all {tried} sampled pairs",
                      tried, seed)
    return unfalsified(tried, seed)


def product_cylinder_separator(parts: Sequence[EvsDescriptor], x, y):
    """The productive-proof construction: a cylinder that is the whole
    space in every coordinate except one, where a separator sits."""
    for i, (p, xi, yi) in enumerate(zip(parts, x, y)):
        if not p.eq(xi, yi):
            A_i = radial_separator(p, xi, yi)
            factors = [None] * len(parts)
            factors[i] = A_i
            return st.ProductCylinder(tuple(factors)), i
    raise ValueError("points are equal in every coordinate")


def check_radial_product_and_hereditary(
        parts: Sequence[EvsDescriptor],
        subevs_specs: Sequence[tuple],
        budget: int, seed: int) -> CheckOutcome:
    """Replay the productive and hereditary constructions exactly.

    ``subevs_specs`` is a list of (E, sample_y, trace) triples: ``sample_y``
    draws members of the subevs Y, ``trace`` maps a separator of E to its
    intersection with Y, and the check verifies membership and
    absorbency-within-Y on the sampled members.
    """
    from .core import product_evs

    tried = 0
    # productive part
    if parts:
        prod = product_evs(parts)
        xs = prod.sample(subseed(seed, "prod:x"), max(4, budget // 8))
        ys = prod.sample(subseed(seed, "prod:y"), max(4, budget // 8))
        for x, y in zip(xs, ys):
            if prod.eq(x, y):
                continue
            tried += 1
            cyl, i = product_cylinder_separator(parts, x, y)
            inx, iny = cyl.member(x), cyl.member(y)
            if inx == iny:
                return refuted(
                    {"x": prod.render(x), "y": prod.render(y),
                     "cylinder": cyl.render(), "_raw": (x, y, cyl)},
                    tried, seed, "cylinder failed to separate")
            if not st.is_absorbing(cyl.factors[i], parts[i]).proven:
                return refuted(
                    {"factor": i, "set": st.render_set(cyl.factors[i]),
                     "_raw": (cyl,)},
                    tried, seed, "cylinder factor is not absorbing")
    # hereditary part
    for E, sample_y, trace in subevs_specs:
        pool = sample_y(subseed(seed, "her:z"), max(8, budget // 4))
        for x, y in zip(pool, pool[1:]):
            if E.eq(x, y):
                continue
            tried += 1
            A = radial_separator(E, x, y)
            AY = trace(A)
            inx, iny = st.set_member(AY, x), st.set_member(AY, y)
            if inx == iny:
                return refuted(
                    {"x": E.render(x), "y": E.render(y),
                     "set": st.render_set(AY), "_raw": (x, y, AY)},
                    tried, seed, "trace on the subevs failed to separate")
            # absorbing within Y: mu-orbits of sampled members stay in AY
            for z in pool[: max(4, budget // 16)]:
                alpha = _absorb_bound(AY, E, z)
                if alpha is None:
                    return refuted(
                        {"z": E.render(z), "set": st.render_set(AY),
                         "_raw": (z, AY)},
                        tried, seed, "no absorbing bound found within Y")
    if tried == 0:
        return unfalsified(0, seed, "no distinct sampled pairs")
    return proven(f"constructions re-verified on {tried} pairs", tried, seed)


def _absorb_bound(A, E: EvsDescriptor, z) -> Optional[object]:
    """Search a bound alpha whose sampled mu-grid keeps mu.z inside A."""
    for k in (1, 2, 4, 16, 64, 256, 1024):
        a = Rat(1, k)
        mus = [sc.Scalar(a / j, ZERO) for j in (1, 2, 3, 7)] + [sc.S_ZERO]
        if all(st.set_member(A, E.scale(mu, z)) for mu in mus):
            return a
    return None


# --------------------------------------------------------------- transport

def transport_set(phi: OrderIso, A):
    """Exact image of an endpoint-defined set under a shipped
    order-isomorphism."""
    if phi.inverse is None:
        raise ValueError(f"morphism {phi.name} lacks an inverse")
    if phi.name == "doubling" and isinstance(A, st.IntervalUnion):
        return st.iu_scale(rat(2), A)
    if phi.name == "embed" and isinstance(A, st.IntervalUnion):
        return st.product_slice(
            *[(st.IntervalUnion((c,)), st.finite_vectors((sc.S_ZERO,)))
              for c in A.components])
    raise ValueError(
        f"no exact transport for {phi.name} on {type(A).__name__}")


def check_absorbing_transport(phi: OrderIso, budget: int,
                              seed: int) -> CheckOutcome:
    """A absorbing iff phi(A) absorbing, on random interval unions."""
    rng = random.Random(subseed(seed, "transport"))
    tried = 0
    for _ in range(max(4, budget)):
        tried += 1
        A = st.random_interval_union(rng)
        before = st.is_absorbing(A).verdict
        image = transport_set(phi, A)
        if phi.name == "embed":
            # absorbency within the zero-vector subevs <-> on the half line
            back = st.iu(*[(c.lo, c.hi, c.lo_closed, c.hi_closed)
                           if c.hi is not st.INF else
                           (c.lo, st.INF, c.lo_closed, False)
                           for piece in image.pieces
                           for c in piece[0].components])
            after = st.is_absorbing(back).verdict
        else:
            after = st.is_absorbing(image).verdict
        if before != after:
            return refuted({"A": A.render(), "image": st.render_set(image),
                            "before": before, "after": after,
                            "_raw": (A, image)},
                           tried, seed, "absorbing verdict not preserved")
    return proven("exact deciders agree on both sides for every sample",
                  tried, seed)


def check_radial_transport(phi: OrderIso, budget: int,
                           seed: int) -> CheckOutcome:
    """Radial verdict class is identical before and after transport."""
    E, F = phi.domain, phi.codomain
    n = max(4, budget // 4)
    xs = E.sample(subseed(seed, "rt:x"), n)
    ys = E.sample(subseed(seed, "rt:y"), n)
    tried = 0
    for x, y in zip(xs, ys):
        if E.eq(x, y):
            continue
        tried += 1
        A = radial_separator(E, x, y)
        fx, fy = phi.forward(x), phi.forward(y)
        B = radial_separator(F, fx, fy) if F.element_kind != "product" \
            else None
        okA = st.set_member(A, x) != st.set_member(A, y) and \
            st.is_absorbing(A, E).proven
        okB = B is not None and \
            st.set_member(B, fx) != st.set_member(B, fy) and \
            st.is_absorbing(B, F).proven
        if okA != okB:
            return refuted({"x": E.render(x), "y": E.render(y),
                            "_raw": (x, y)}, tried, seed,
                           "separability not preserved by transport")
    return proven(f"verdict class preserved on {tried} pairs", tried, seed)
