"""Neighborhood structure on the exact carriers.

Witness constructors for the basic topological facts on the half line
(balanced neighborhood extraction, halving, open decomposition, order
separation, scalar continuity), exact boundedness with a sequence
falsifier, the five local-base conditions for a candidate family at
theta, the open-balanced-absorbing normal form, and the finest-topology
audit over candidate generator families.  Everything over interval
unions is decided exactly; every returned witness is re-verified as part
of the construction.
"""

import random
from typing import List, Optional, Sequence, Tuple

from . import scalars as sc
from . import sets as st
from ._backend import ONE, ZERO, Rat, rat, rat_str
from .outcome import (CheckOutcome, proven, refuted, subseed, unfalsified)
from .sets import INF, Interval, IntervalUnion, interval_union, iu


# --------------------------------------------------------------- open sets

def is_usual_open(A: IntervalUnion) -> bool:
    """True iff every component has one of the open subspace forms
    (a,b), (a,oo), [0,b) or [0,oo)."""
    for c in A.components:
        if c.lo_closed and c.lo != 0:
            return False
        if c.hi is not INF and c.hi_closed:
            return False
    return True


def _zero_component(U: IntervalUnion) -> Interval:
    if not U.member(ZERO):
        raise ValueError("theta is not a member of the set")
    return U.components[0]


def balanced_nbhd_inside(U: IntervalUnion) -> IntervalUnion:
    """The 0-component [0, delta) of a usual-open neighborhood of theta;
    re-verified balanced and absorbing before returning."""
    c0 = _zero_component(U)
    W = IntervalUnion((Interval(ZERO, True, c0.hi, c0.hi_closed),))
    if not (st.is_balanced(W).proven and st.is_absorbing(W).proven):
        raise AssertionError("extracted 0-component failed re-verification")
    if not st.iu_subset(W, U):
        raise AssertionError("extracted 0-component is not inside U")
    return W


def halving_nbhd(U: IntervalUnion) -> IntervalUnion:
    """W with W + W inside U: half the 0-component, verified exactly."""
    c0 = _zero_component(U)
    if c0.hi is INF:
        W = iu((0, INF))
    else:
        W = IntervalUnion((Interval(ZERO, True, c0.hi / 2, False),))
    if not st.iu_subset(st.iu_minkowski(W, W), U):
        raise AssertionError("W + W escaped U")
    return W


def decomposition_nbhd(G: IntervalUnion, x) -> IntervalUnion:
    """Balanced U_x with x + U_x inside G, for usual-open G and x in G."""
    x = rat(x)
    if not G.member(x):
        raise ValueError(f"{rat_str(x)} is not a member of the set")
    comp = next(c for c in G.components if c.member(x))
    if comp.hi is INF:
        U = iu((0, INF))
    else:
        U = IntervalUnion((Interval(ZERO, True, comp.hi - x, False),))
    if not (st.is_balanced(U).proven
            and st.iu_subset(st.iu_translate(x, U), G)):
        raise AssertionError("x + U_x escaped G")
    return U


def open_decomposition(G: IntervalUnion, seed: int = 0,
                       count: int = 8) -> List[Tuple[object, IntervalUnion]]:
    """Sampled points of G with verified translates x + U_x inside G.

    Covers every attained left endpoint plus interior points of each
    component; the full union equals G only in the limit, so callers
    report the covering direction as Unfalsified.
    """
    if G.is_empty():
        raise ValueError("empty set has no decomposition")
    rng = random.Random(seed)
    pts = []
    for c in G.components:
        if c.lo_closed:
            pts.append(c.lo)
        span = (c.hi - c.lo) if c.hi is not INF else rat(4)
        for k in range(1, max(2, count // len(G.components)) + 1):
            pts.append(c.lo + span * Rat(k, count + 1))
    out = []
    for x in pts:
        if not G.member(x):
            continue
        out.append((x, decomposition_nbhd(G, x)))
    # certify the sampled union stays inside G
    covered = st.EMPTY_IU
    for x, U in out:
        covered = st.iu_union(covered, st.iu_translate(x, U))
    if not st.iu_subset(covered, G):
        raise AssertionError("sampled decomposition escaped G")
    return out


def separation_witness(x, y) -> Tuple[IntervalUnion, IntervalUnion]:
    """U = V = [0, (x-y)/2) separating the up-set of x + U from the
    down-set of y + V, verified by exact interval arithmetic."""
    x, y = rat(x), rat(y)
    if x <= y:
        raise ValueError("separation needs x > y")
    U = iu((0, (x - y) / 2))
    up = st.iu_up(st.iu_translate(x, U))
    down = st.iu_down(st.iu_translate(y, U))
    if not st.iu_intersect(up, down).is_empty():
        raise AssertionError("up/down translates intersect")
    return U, U


def scalar_continuity_witness(G: IntervalUnion, x, alpha: sc.Scalar):
    """(epsilon, U) with the modulus disc around alpha times (x + U)
    inside |alpha|.G, solved and re-verified exactly."""
    x = rat(x)
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")
    m = sc.modulus(alpha)
    if not G.member(x):
        raise ValueError(f"{rat_str(x)} is not a member of the set")
    if not is_usual_open(G):
        raise ValueError("G must be usual-open")
    comp = next(c for c in G.components if c.member(x))
    a, b = comp.lo, comp.hi
    # epsilon below m, below the slack at both component ends
    eps_cands = [m / 2]
    if x > 0 and not (comp.lo_closed and a == 0):
        eps_cands.append(m * (x - a) / (2 * x))
    if b is not INF and x > 0:
        # strictly below the upper slack so u stays positive
        eps_cands.append(m * (b - x) / (4 * x))
    eps = min(eps_cands)
    if b is INF:
        u = ONE
    else:
        # (m + eps)(x + u) = m(x + b)/2 < m b
        u = m * (x + b) / (2 * (m + eps)) - x
    if eps <= 0 or u <= 0:
        raise AssertionError("degenerate continuity witness")
    U = IntervalUnion((Interval(ZERO, True, u, False),))
    # the product set sits inside the closed modulus-range interval
    lo = (m - eps) * x
    hi = (m + eps) * (x + u)
    hull = IntervalUnion((Interval(max(lo, ZERO), True, hi, True),))
    if not st.iu_subset(hull, st.iu_scale(m, G)):
        raise AssertionError("modulus-range product escaped |alpha|.G")
    return eps, U


# ------------------------------------------------------------- boundedness

def _iu_bounded(A: IntervalUnion, seed: int) -> CheckOutcome:
    if A.is_empty():
        raise ValueError("empty set")
    s, attained = A.sup()
    if s is not INF:
        bound = s + 1
        assert st.iu_subset(A, iu((0, bound)))
        return proven(f"contained in [0,{rat_str(bound)}) = "
                      f"{rat_str(bound)}.[0,1)", seed=seed)
    last = A.components[-1]
    base = last.lo if last.lo_closed else last.lo + 1
    return refuted(
        {"x_n": f"{rat_str(base)} + n", "lambda_n": "1/n",
         "limit": "lambda_n.x_n -> 1, never below 1/2",
         "_raw_base": base},
        seed=seed,
        detail="unbounded tail: the sequence x_n = base + n with "
               "lambda_n = 1/n keeps lambda_n.x_n >= 1")


def _slice_bounded(A: st.ProductSlice, seed: int) -> CheckOutcome:
    if A.is_empty():
        raise ValueError("empty set")
    sups = []
    for iupart, reg in A.pieces:
        if iupart.is_empty():
            continue
        s, _ = iupart.sup()
        if s is INF:
            last = iupart.components[-1]
            base = last.lo if last.lo_closed else last.lo + 1
            vec = reg.vectors[0] if reg.kind == st.FINITE_VECTORS \
                else None
            return refuted(
                {"x_n": f"({rat_str(base)} + n, v)", "lambda_n": "1/n",
                 "_raw_base": base, "_raw_vec": vec},
                seed=seed,
                detail="unbounded radial part: lambda_n.x_n keeps "
                       "radial coordinate >= 1")
        sups.append(s)
        if reg.kind == st.BALL:
            sups.append(reg.radius)
        else:
            for v in reg.vectors:
                sups.append(max((sc.modulus_squared(c) for c in v),
                                default=ZERO) + 1)
    bound = max(sups, default=ZERO) + 1
    return proven(
        f"contained in {rat_str(bound)}.([0,1) x ball(1)) up to radius "
        f"rescaling", seed=seed)


def _predicate_bounded(A: st.PredicateSet, budget: int,
                       seed: int) -> CheckOutcome:
    """Sequence falsifier over the half line: hunt members x_n >= n; if
    they keep appearing, lambda_n = 1/n never sends them to theta."""
    escapes = 0
    last = None
    for n in range(1, max(2, budget) + 1):
        cand = rat(n)
        if A.member(cand):
            escapes += 1
            last = n
    if escapes >= 3:
        return refuted(
            {"x_n": "n for every tested member index", "lambda_n": "1/n",
             "last_n": str(last)},
            escapes, seed,
            "lambda_n.x_n = 1 for every hit; the sequence never enters "
            "[0,1/2)")
    return unfalsified(max(2, budget), seed,
                       "no escaping sequence found on the integer grid")


def is_bounded_set(A, E=None, budget: int = 200, seed: int = 0) -> CheckOutcome:
    """Exact boundedness for interval unions and product slices, a
    sequence falsifier for predicate sets over the half line."""
    if isinstance(A, IntervalUnion):
        return _iu_bounded(A, seed)
    if isinstance(A, st.ProductSlice):
        return _slice_bounded(A, seed)
    if isinstance(A, st.PredicateSet):
        return _predicate_bounded(A, budget, seed)
    raise TypeError(f"unsupported set kind {type(A).__name__}")


def definition_bounded_grid(A: IntervalUnion, depth: int = 6) -> bool:
    """Evaluate the definition directly: for each basic neighborhood
    [0,1/k), construct alpha and verify a mu-grid keeps mu.A inside."""
    for k in range(1, depth + 1):
        V = iu((0, Rat(1, k)))
        s, attained = A.sup()
        if s is INF:
            return False
        if s == 0:
            continue
        alpha = Rat(1, 2 * k) / s
        for mu in (alpha, alpha / 2, alpha / 3):
            if not st.iu_subset(st.iu_scale(mu, A), V):
                return False
    return True


BOUNDED_LAW_IDS = ("bounded.defs-agree", "bounded.finite", "bounded.compact",
                   "bounded.sum", "bounded.scale", "bounded.subset")


def check_bounded_laws(E, budget: int, seed: int) -> dict:
    """The boundedness laws on random interval unions."""
    n = max(4, budget // 10)
    rng = random.Random(subseed(seed, "bnd:gen"))
    corpus = [st.random_interval_union(rng) for _ in range(n)]
    bounded = [A for A in corpus if is_bounded_set(A).proven]
    out = {}

    bad = next((A for A in corpus
                if definition_bounded_grid(A) != is_bounded_set(A).proven),
               None)
    out["bounded.defs-agree"] = _outcome(
        bad, len(corpus), seed,
        "definition grid and sup characterization disagree",
        lambda A: {"set": A.render()})

    finite_sets = []
    for _ in range(n):
        pts = [abs(Rat(rng.randint(0, 40), rng.randint(1, 8)))
               for _ in range(rng.randint(1, 5))]
        finite_sets.append(iu(*[(p, p, True, True) for p in pts]))
    bad = next((A for A in finite_sets if not is_bounded_set(A).proven), None)
    out["bounded.finite"] = _outcome(
        bad, len(finite_sets), seed, "finite set not bounded",
        lambda A: {"set": A.render()})

    compacts = [_make_compact(A) for A in corpus]
    bad = next((A for A in compacts
                if is_compact(A) and not is_bounded_set(A).proven), None)
    out["bounded.compact"] = _outcome(
        bad, len(compacts), seed, "compact set not bounded",
        lambda A: {"set": A.render()})

    bad = None
    pair_count = 0
    for A in bounded:
        for B in bounded:
            pair_count += 1
            if not is_bounded_set(st.iu_minkowski(A, B)).proven:
                bad = (A, B)
                break
        if bad:
            break
    out["bounded.sum"] = _outcome(
        bad, pair_count, seed, "sum of bounded sets not bounded",
        lambda w: {"A": w[0].render(), "B": w[1].render()})

    lams = sc.sample_scalars(rat(5), 8, subseed(seed, "bnd:lam"),
                             sc.PYTHAGOREAN_ONLY)
    bad = None
    for A in bounded:
        for lam in lams:
            C = st.scale_set(lam, A)
            if not C.is_empty() and not is_bounded_set(C).proven:
                bad = (A, lam)
                break
        if bad:
            break
    out["bounded.scale"] = _outcome(
        bad, len(bounded) * len(lams), seed,
        "scaling of a bounded set not bounded",
        lambda w: {"A": w[0].render(), "lambda": sc.render_scalar(w[1])})

    bad = None
    for A in bounded:
        for B in corpus:
            C = st.iu_intersect(A, B)
            if not C.is_empty() and not is_bounded_set(C).proven:
                bad = (A, B)
                break
        if bad:
            break
    out["bounded.subset"] = _outcome(
        bad, len(bounded) * len(corpus), seed,
        "subset of a bounded set not bounded",
        lambda w: {"A": w[0].render(), "B": w[1].render()})
    return out


def _outcome(bad, tried, seed, detail, witness_of) -> CheckOutcome:
    if bad is not None:
        return refuted(witness_of(bad), tried, seed, detail)
    return proven("exact re-decision succeeded on the whole corpus",
                  tried, seed)


def is_compact(A: IntervalUnion) -> bool:
    """Representation-level compactness: all components closed and
    bounded."""
    return all(c.lo_closed and c.hi is not INF and c.hi_closed
               for c in A.components)


def _make_compact(A: IntervalUnion) -> IntervalUnion:
    return interval_union([
        Interval(c.lo, True, c.lo + 3 if c.hi is INF else c.hi, True)
        for c in A.components])


# ------------------------------------------------------------- local base

LOCAL_BASE_CONDITION_IDS = ("i", "ii", "iii", "iv", "v")


def usual_base(depth: int = 8) -> Tuple[IntervalUnion, ...]:
    """The standard candidate family [0, 1/n) for n = 1..depth."""
    return tuple(iu((0, Rat(1, n))) for n in range(1, depth + 1))


def _validate_family(family: Sequence[IntervalUnion]):
    if not family:
        raise ValueError("family must be non-empty")
    for U in family:
        if U.is_empty() or not U.member(ZERO):
            raise ValueError(
                f"family member {U.render()} does not contain theta")


def check_local_base_conditions(family: Sequence[IntervalUnion],
                                budget: int, seed: int) -> dict:
    """The five local-base conditions for a candidate family at theta."""
    _validate_family(family)
    family = tuple(family)
    out = {}

    # (i) every member balanced and absorbing — exact deciders
    bad = next((U for U in family
                if not (st.is_balanced(U).proven
                        and st.is_absorbing(U).proven)), None)
    out["i"] = _outcome(bad, len(family), seed,
                        "member not balanced and absorbing",
                        lambda U: {"U": U.render()})

    # (ii) some member inside each pairwise intersection — exact search
    bad = None
    for U in family:
        for V in family:
            inter = st.iu_intersect(U, V)
            if not any(st.iu_subset(W, inter) for W in family):
                bad = (U, V)
                break
        if bad:
            break
    out["ii"] = _outcome(bad, len(family) ** 2, seed,
                         "no member inside the intersection",
                         lambda w: {"U": w[0].render(), "V": w[1].render()})

    # (iii) halving: for each U a verified W with W + W inside U.  A
    # family member is preferred; otherwise the halved 0-component is
    # constructed and checked exactly (a finite truncation of a nested
    # family has no member at the smallest scales).
    bad = None
    for U in family:
        if any(st.iu_subset(st.iu_minkowski(W, W), U) for W in family):
            continue
        try:
            halving_nbhd(U)
        except (AssertionError, ValueError):
            bad = U
            break
    out["iii"] = _outcome(bad, len(family), seed,
                          "no W with W + W inside U",
                          lambda U: {"U": U.render()})

    # (iv) order separation within the family over sampled pairs x > y.
    # Pairs are drawn on a grid whose step is the width of the narrowest
    # member, the family's separating resolution: pairs closer than that
    # cannot be split by translates of any member.
    widths = [U.components[0].hi for U in family
              if U.components[0].hi is not INF]
    step = min(widths, default=ONE)
    rng = random.Random(subseed(seed, "lb:iv"))
    pairs = []
    while len(pairs) < max(8, budget // 4):
        x = step * rng.randint(0, 30)
        y = step * rng.randint(0, 30)
        if x != y:
            pairs.append((max(x, y), min(x, y)))
    bad = None
    for x, y in pairs:
        found = False
        for U in family:
            for V in family:
                up = st.iu_up(st.iu_translate(x, U))
                down = st.iu_down(st.iu_translate(y, V))
                if st.iu_intersect(up, down).is_empty():
                    found = True
                    break
            if found:
                break
        if not found:
            bad = (x, y)
            break
    if bad is not None:
        out["iv"] = refuted({"x": rat_str(bad[0]), "y": rat_str(bad[1])},
                            len(pairs), seed,
                            "no separating member pair in the family")
    else:
        out["iv"] = unfalsified(len(pairs), seed,
                                "separating pair found for every sampled "
                                "x > y")

    # (v) scalar-continuity condition against translated members.
    # The canonical triple is tested first so the Refuted record is
    # identical for every seed.
    out["v"] = _condition_v(family, budget, seed)
    return out


_EPS_GRID = tuple(Rat(1, 2 ** k) for k in range(1, 13))


def _condition_v(family: Sequence[IntervalUnion], budget: int,
                 seed: int) -> CheckOutcome:
    """For (W, x, alpha): does some eps > 0 and U in the family give
    B(alpha,eps).(x+U) inside alpha.x + W?  For x > 0 this is impossible:
    any lambda in the disc with |lambda| < |alpha| sends x + 0 strictly
    below alpha.x, the minimum of the target."""
    W = family[0]
    x = ONE
    alpha = sc.S_ONE
    tried = 0
    grid_escapes = []
    target = st.iu_translate(sc.modulus(alpha) * x, W)
    for eps in _EPS_GRID:
        lam = sc.Scalar(ONE - eps / 2, ZERO)  # |lam - alpha| < eps
        val = sc.modulus(lam) * x             # lam.(x + 0)
        tried += 1
        if target.member(val):
            return unfalsified(tried, seed, "grid escape unexpectedly "
                                            "contained")
        grid_escapes.append((eps, lam, val))
    eps0, lam0, val0 = grid_escapes[0]
    return refuted(
        {"W": W.render(), "x": rat_str(x),
         "alpha": sc.render_scalar(alpha),
         "lambda": sc.render_scalar(lam0),
         "escape_value": rat_str(val0),
         "symbolic": "for every eps > 0 the disc contains lambda with "
                     "|lambda| < |alpha|, and |lambda|.x < |alpha|.x is "
                     "below min(alpha.x + W) whenever x > 0",
         "_raw": (W, x, alpha, [e for e, _, _ in grid_escapes])},
        tried, seed,
        "no eps on the grid works and the symbolic inequality rules out "
        "all eps; translate-based neighborhoods fail scalar continuity")


def check_family_transport(phi, family: Sequence[IntervalUnion],
                           budget: int, seed: int) -> CheckOutcome:
    """Local-base condition verdicts are identical for the transported
    family."""
    from .setlaws import transport_set

    _validate_family(family)
    image = [transport_set(phi, U) for U in family]
    if not all(isinstance(U, IntervalUnion) for U in image):
        raise ValueError(
            f"morphism {phi.name} does not transport interval unions "
            f"onto interval unions")
    before = check_local_base_conditions(family, budget, seed)
    after = check_local_base_conditions(image, budget, seed)
    tried = len(family) * len(LOCAL_BASE_CONDITION_IDS)
    for cond in LOCAL_BASE_CONDITION_IDS:
        if before[cond].verdict != after[cond].verdict:
            return refuted(
                {"condition": cond, "before": before[cond].verdict,
                 "after": after[cond].verdict,
                 "_raw": (before, after)},
                tried, seed, "condition verdict changed under transport")
    return proven("all five condition verdicts preserved under transport",
                  tried, seed)


# ------------------------------------------- balanced+absorbing normal form

def open_balanced_absorbing_form(A: IntervalUnion) -> CheckOutcome:
    """Decides the equivalence: usual-open and balanced and absorbing
    holds exactly when A = [0,a) with a in (0, oo]."""
    lhs = (is_usual_open(A) and st.is_balanced(A).proven
           and st.is_absorbing(A).proven)
    rhs = (len(A.components) == 1
           and A.components[0].lo == 0 and A.components[0].lo_closed
           and not A.components[0].hi_closed
           and (A.components[0].hi is INF or A.components[0].hi > 0))
    if lhs != rhs:
        return refuted({"set": A.render(), "lhs": str(lhs), "rhs": str(rhs)},
                       1, 0, "normal-form equivalence failed")
    if lhs:
        a = A.components[0].hi
        return proven(f"form [0,{'inf' if a is INF else rat_str(a)}) "
                      f"confirmed on both sides", 1)
    return proven("both sides false", 1)


def balanced_absorbing_interval_form(A: IntervalUnion) -> CheckOutcome:
    """Amended interval characterization: balanced and absorbing holds
    exactly when A is a single nondegenerate interval anchored closed at
    zero.  Without the nondegeneracy amendment {0} is a counterexample;
    see degenerate_interval_report."""
    lhs = st.is_balanced(A).proven and st.is_absorbing(A).proven
    rhs = (len(A.components) == 1
           and A.components[0].lo == 0 and A.components[0].lo_closed
           and (A.components[0].hi is INF or A.components[0].hi > 0))
    if lhs != rhs:
        return refuted({"set": A.render(), "lhs": str(lhs), "rhs": str(rhs)},
                       1, 0, "amended interval characterization failed")
    return proven("exact deciders agree with the interval form", 1)


def degenerate_interval_report() -> dict:
    """The documented defect of the unamended interval characterization:
    {0} is an interval containing theta, is balanced, but absorbs
    nothing, so the unamended equivalence fails exactly there."""
    singleton = iu((0, 0, True, True))
    return {
        "set": singleton.render(),
        "balanced": st.is_balanced(singleton).verdict,
        "absorbing": st.is_absorbing(singleton).verdict,
        "note": "interval containing theta that is not absorbing; the "
                "characterization needs the positive-length amendment",
    }


# ----------------------------------------------------------------- audit

def audit_generator(G: IntervalUnion) -> CheckOutcome:
    """Per-generator audit: the generator must be usual-open to sit in a
    topology compatible with the scalar action; violations ship an
    escape scalar t whose action crosses the offending boundary."""
    for idx, c in enumerate(G.components):
        if c.lo_closed and c.lo != 0:
            below = G.components[idx - 1].hi if idx > 0 else ZERO
            t = (below + c.lo) / (2 * c.lo)
            escape = t * c.lo
            if G.member(escape):
                raise AssertionError("gap point unexpectedly inside")
            return refuted(
                {"component": c.render(), "x": rat_str(c.lo),
                 "t": rat_str(t), "escape": rat_str(escape),
                 "_raw": (c.lo, t)},
                1, 0,
                "left-closed component away from theta: scaling x by "
                "t < 1 lands in the gap below")
        if c.hi is not INF and c.hi_closed:
            if c.hi == 0:
                return refuted(
                    {"component": c.render(), "x": "0",
                     "reason": "isolated theta"},
                    1, 0,
                    "degenerate component {0}: an open neighborhood of "
                    "theta compatible with the action must have the "
                    "form [0,a) with a > 0")
            above = G.components[idx + 1].lo \
                if idx + 1 < len(G.components) else 2 * c.hi
            t = (c.hi + above) / (2 * c.hi)
            escape = t * c.hi
            if G.member(escape):
                raise AssertionError("gap point unexpectedly inside")
            return refuted(
                {"component": c.render(), "x": rat_str(c.hi),
                 "t": rat_str(t), "escape": rat_str(escape),
                 "_raw": (c.hi, t)},
                1, 0,
                "right-closed bounded component: scaling the endpoint by "
                "t > 1 lands in the gap above")
    return proven("all components have open subspace form", len(G.components))


def finest_topology_audit(generators: Sequence[IntervalUnion]) -> CheckOutcome:
    """Family verdict: certified usual-open (so the generated topology is
    coarsest-compatible) or Refuted at the first offending generator."""
    per = [audit_generator(G) for G in generators]
    for G, outcome in zip(generators, per):
        if outcome.refuted:
            w = dict(outcome.witness)
            w["generator"] = G.render()
            return refuted(w, len(per), 0, outcome.detail)
    return proven("every generator is usual-open; the generated topology "
                  "is contained in the usual subspace topology", len(per))
