"""Exact representable subsets and their deciders.

Four exact carriers (interval unions on the half line, anchored box
unions on the dictionary plane, finite/cofinite subspace families,
product slices on the cone) plus opaque predicate sets.  Balanced and
absorbing are decided exactly on the exact carriers and falsified by
sampling on predicate sets.
"""

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from . import scalars as sc
from ._backend import ONE, ZERO, Rat, rat, rat_str
from .instances import FULL_SUBSPACE, ZERO_SUBSPACE, line, subspace_leq
from .outcome import CheckOutcome, proven, refuted, subseed, unfalsified

INF = None  # right endpoint marker for unbounded intervals


def _fmt_hi(hi) -> str:
    return "inf" if hi is INF else rat_str(hi)


@dataclass(frozen=True)
class Interval:
    """One component [lo, hi] with open/closed flags; hi=None means +oo."""

    lo: object
    lo_closed: bool
    hi: object
    hi_closed: bool

    def is_empty(self) -> bool:
        if self.hi is INF:
            return False
        if self.lo > self.hi:
            return True
        if self.lo == self.hi:
            return not (self.lo_closed and self.hi_closed)
        return False

    def member(self, x) -> bool:
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if self.hi is INF:
            return True
        return x < self.hi or (x == self.hi and self.hi_closed)

    def rep_point(self):
        """Some element of the interval."""
        if self.is_empty():
            raise ValueError("empty interval")
        if self.lo_closed:
            return self.lo
        if self.hi is INF:
            return self.lo + 1
        return (self.lo + self.hi) / 2

    def render(self) -> str:
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{rat_str(self.lo)},{_fmt_hi(self.hi)}{rb}"


def ival(lo, hi, lo_closed=True, hi_closed=False) -> Interval:
    lo = rat(lo)
    hi = None if hi is INF else rat(hi)
    return Interval(lo, lo_closed, hi, hi_closed)


@dataclass(frozen=True)
class IntervalUnion:
    """Canonical finite union of disjoint non-mergeable intervals in [0,oo)."""

    components: Tuple[Interval, ...]

    def member(self, x) -> bool:
        return any(c.member(x) for c in self.components)

    def is_empty(self) -> bool:
        return not self.components

    def sup(self):
        """(value-or-INF, attained) of the supremum; raises if empty."""
        if self.is_empty():
            raise ValueError("empty set has no sup")
        last = self.components[-1]
        if last.hi is INF:
            return INF, False
        return last.hi, last.hi_closed

    def contains_zero(self) -> bool:
        return self.member(ZERO)

    def render(self) -> str:
        if not self.components:
            return "{}"
        return " U ".join(c.render() for c in self.components)


def interval_union(intervals: Sequence[Interval]) -> IntervalUnion:
    """Canonicalize: sort, drop empties, merge overlapping/adjacent."""
    pieces = [c for c in intervals if not c.is_empty()]
    for c in pieces:
        if c.lo < 0:
            raise ValueError(f"negative endpoint {rat_str(c.lo)}")
    pieces.sort(key=lambda c: (c.lo, not c.lo_closed))
    merged = []
    for c in pieces:
        if merged:
            p = merged[-1]
            touches = p.hi is INF or c.lo < p.hi or (
                c.lo == p.hi and (p.hi_closed or c.lo_closed))
            if touches:
                merged[-1] = Interval(p.lo, p.lo_closed, *_max_hi(p, c))
                continue
        merged.append(c)
    return IntervalUnion(tuple(merged))


def _max_hi(a: Interval, b: Interval):
    if a.hi is INF or b.hi is INF:
        return INF, False
    if a.hi > b.hi:
        return a.hi, a.hi_closed
    if b.hi > a.hi:
        return b.hi, b.hi_closed
    return a.hi, a.hi_closed or b.hi_closed


def iu(*pieces) -> IntervalUnion:
    """Convenience constructor from (lo, hi[, lo_closed, hi_closed]) tuples."""
    return interval_union([ival(*p) if isinstance(p, tuple) else p
                           for p in pieces])


EMPTY_IU = IntervalUnion(())


def iu_intersect(a: IntervalUnion, b: IntervalUnion) -> IntervalUnion:
    out = []
    for c in a.components:
        for d in b.components:
            lo, lc = max((c.lo, not c.lo_closed), (d.lo, not d.lo_closed))
            lc = not lc
            if c.hi is INF:
                hi, hc = d.hi, d.hi_closed
            elif d.hi is INF:
                hi, hc = c.hi, c.hi_closed
            else:
                hi, hc = min((c.hi, c.hi_closed), (d.hi, d.hi_closed),
                             key=lambda t: (t[0], t[1]))
            piece = Interval(lo, lc, hi, hc)
            if not piece.is_empty():
                out.append(piece)
    return interval_union(out)


def iu_union(a: IntervalUnion, b: IntervalUnion) -> IntervalUnion:
    return interval_union(list(a.components) + list(b.components))


def iu_subset(a: IntervalUnion, b: IntervalUnion) -> bool:
    return iu_intersect(a, b) == a


def iu_scale(t, a: IntervalUnion) -> IntervalUnion:
    """Exact image under x -> t.x for a rational factor t >= 0."""
    t = rat(t)
    if t < 0:
        raise ValueError("scale factor must be >= 0 (use the modulus)")
    if t == 0:
        return iu((0, 0, True, True)) if not a.is_empty() else EMPTY_IU
    return interval_union([
        Interval(c.lo * t, c.lo_closed,
                 INF if c.hi is INF else c.hi * t, c.hi_closed)
        for c in a.components])


def iu_translate(x, a: IntervalUnion) -> IntervalUnion:
    """Exact image under r -> x + r."""
    x = rat(x)
    return interval_union([
        Interval(c.lo + x, c.lo_closed,
                 INF if c.hi is INF else c.hi + x, c.hi_closed)
        for c in a.components])


def iu_minkowski(a: IntervalUnion, b: IntervalUnion) -> IntervalUnion:
    """Exact {x + y}: pairwise interval sums, closed only when both are."""
    out = []
    for c in a.components:
        for d in b.components:
            hi = INF if (c.hi is INF or d.hi is INF) else c.hi + d.hi
            out.append(Interval(c.lo + d.lo, c.lo_closed and d.lo_closed,
                                hi, c.hi_closed and d.hi_closed))
    return interval_union(out)


def iu_up(a: IntervalUnion) -> IntervalUnion:
    """Up-set in the half line: [inf A, oo) with the inherited flag."""
    if a.is_empty():
        return EMPTY_IU
    first = a.components[0]
    return interval_union([Interval(first.lo, first.lo_closed, INF, False)])


def iu_down(a: IntervalUnion) -> IntervalUnion:
    """Down-set in the half line: [0, sup A] with the inherited flag."""
    if a.is_empty():
        return EMPTY_IU
    hi, attained = a.sup()
    return interval_union([Interval(ZERO, True, hi, attained)])


# ------------------------------------------------------------ dict2 boxes

@dataclass(frozen=True)
class Box:
    """Anchored box [0, a) x [0, b) with optionally closed right edges.

    ``a``/``b`` may be INF.  A zero extent with a closed edge denotes the
    degenerate slice {0} in that coordinate.
    """

    a: object
    a_closed: bool
    b: object
    b_closed: bool

    def x_iv(self) -> Interval:
        return Interval(ZERO, True, self.a, self.a_closed)

    def y_iv(self) -> Interval:
        return Interval(ZERO, True, self.b, self.b_closed)

    def is_empty(self) -> bool:
        return self.x_iv().is_empty() or self.y_iv().is_empty()

    def member(self, p) -> bool:
        return self.x_iv().member(p[0]) and self.y_iv().member(p[1])

    def covers(self, other: "Box") -> bool:
        return _edge_leq(other.a, other.a_closed, self.a, self.a_closed) and \
            _edge_leq(other.b, other.b_closed, self.b, self.b_closed)

    def render(self) -> str:
        xa = "]" if self.a_closed else ")"
        xb = "]" if self.b_closed else ")"
        return f"[0,{_fmt_hi(self.a)}{xa}x[0,{_fmt_hi(self.b)}{xb}"


def _edge_leq(e1, c1, e2, c2) -> bool:
    if e2 is INF:
        return True
    if e1 is INF:
        return False
    return e1 < e2 or (e1 == e2 and (not c1 or c2))


def box(a, b, a_closed=False, b_closed=False) -> Box:
    a = INF if a is INF else rat(a)
    b = INF if b is INF else rat(b)
    return Box(a, a_closed, b, b_closed)


@dataclass(frozen=True)
class AnchoredBoxUnion:
    """Antichain of maximal anchored boxes over the dictionary plane."""

    boxes: Tuple[Box, ...]

    def member(self, p) -> bool:
        return any(bx.member(p) for bx in self.boxes)

    def is_empty(self) -> bool:
        return not self.boxes

    def render(self) -> str:
        if not self.boxes:
            return "{}"
        return " U ".join(bx.render() for bx in self.boxes)


def box_union(boxes: Sequence[Box]) -> AnchoredBoxUnion:
    live = [Box(b.a, b.a_closed and b.a is not INF,
                b.b, b.b_closed and b.b is not INF)
            for b in boxes if not b.is_empty()]
    maximal = []
    for b in live:
        if any(o.covers(b) and o != b for o in live if o is not b):
            continue
        if b not in maximal:
            maximal.append(b)
    maximal.sort(key=lambda b: (b.a is INF, b.a if b.a is not INF else ZERO,
                                b.b is INF, b.b if b.b is not INF else ZERO))
    return AnchoredBoxUnion(tuple(maximal))


def box_scale(t, u: AnchoredBoxUnion) -> AnchoredBoxUnion:
    t = rat(t)
    if t < 0:
        raise ValueError("scale factor must be >= 0 (use the modulus)")
    if t == 0:
        if u.is_empty():
            return AnchoredBoxUnion(())
        return box_union([Box(ZERO, True, ZERO, True)])
    return box_union([
        Box(INF if b.a is INF else b.a * t, b.a_closed,
            INF if b.b is INF else b.b * t, b.b_closed)
        for b in u.boxes])


@dataclass(frozen=True)
class DictRegion:
    """General finite union of x-interval x y-interval pieces over the
    dictionary plane; the carrier for up/down images of box unions."""

    pieces: Tuple[Tuple[Interval, Interval], ...]

    def member(self, p) -> bool:
        return any(px.member(p[0]) and py.member(p[1])
                   for px, py in self.pieces)

    def render(self) -> str:
        return " U ".join(f"{px.render()}x{py.render()}"
                          for px, py in self.pieces) or "{}"


WHOLE_PLANE = DictRegion(((Interval(ZERO, True, INF, False),
                           Interval(ZERO, True, INF, False)),))


def box_up(u: AnchoredBoxUnion) -> DictRegion:
    """Dictionary-order up-set; any nonempty anchored box contains the
    origin, so the up-set is the whole plane."""
    if u.is_empty():
        return DictRegion(())
    return WHOLE_PLANE


def box_down(u: AnchoredBoxUnion) -> DictRegion:
    """Dictionary-order down-set: a slab per box, plus a fiber at the
    attained x-edge."""
    pieces = []
    for b in u.boxes:
        if b.a is INF:
            pieces.append((Interval(ZERO, True, INF, False),
                           Interval(ZERO, True, INF, False)))
            continue
        if b.a > 0:
            pieces.append((Interval(ZERO, True, b.a, False),
                           Interval(ZERO, True, INF, False)))
        if b.a_closed:
            pieces.append((Interval(b.a, True, b.a, True), b.y_iv()))
    return DictRegion(tuple(pieces))


# --------------------------------------------------------- lattice family

FINITE = "Finite"
COFINITE = "Cofinite"


@dataclass(frozen=True)
class LatticeFamily:
    """Finite or cofinite family of subspaces of Q^2."""

    mode: str
    members: frozenset  # the family (Finite) or its complement (Cofinite)

    def member(self, y) -> bool:
        if self.mode == FINITE:
            return y in self.members
        return y not in self.members

    def is_empty(self) -> bool:
        return self.mode == FINITE and not self.members

    def is_all(self) -> bool:
        return self.mode == COFINITE and not self.members

    def render(self) -> str:
        from .instances import subspace_lattice
        rend = subspace_lattice().render
        names = sorted(rend(y) for y in self.members)
        inner = ",".join(names)
        if self.mode == FINITE:
            return "{" + inner + "}"
        return "ALL" if not names else "ALL\\{" + inner + "}"


def lattice_family(mode: str, members) -> LatticeFamily:
    return LatticeFamily(mode, frozenset(members))


ALL_SUBSPACES = LatticeFamily(COFINITE, frozenset())


def some_missing_subspace(fam: LatticeFamily):
    """A subspace outside the family, or None if the family is everything."""
    if fam.mode == COFINITE:
        for y in sorted(fam.members, key=str):
            return y
        return None
    for y in (ZERO_SUBSPACE, FULL_SUBSPACE):
        if not fam.member(y):
            return y
    k = 0
    while True:
        cand = line(1, k)
        if not fam.member(cand):
            return cand
        k += 1


def lattice_scale(lam: sc.Scalar, fam: LatticeFamily) -> LatticeFamily:
    """Exact image under Y -> lam.Y: identity for lam != 0, collapse to
    {zero} for lam = 0."""
    if lam.is_zero():
        if fam.is_empty():
            return fam
        return lattice_family(FINITE, [ZERO_SUBSPACE])
    return fam


def _all_lines_down(y):
    if y == ZERO_SUBSPACE:
        return {ZERO_SUBSPACE}
    if y == FULL_SUBSPACE:
        return None  # whole lattice
    return {ZERO_SUBSPACE, y}


def lattice_down(fam: LatticeFamily) -> LatticeFamily:
    if fam.mode == FINITE:
        out = set()
        for y in fam.members:
            d = _all_lines_down(y)
            if d is None:
                return ALL_SUBSPACES
            out |= d
        return lattice_family(FINITE, out)
    # cofinite: infinitely many lines are members
    if fam.member(FULL_SUBSPACE):
        return ALL_SUBSPACES
    # full excluded: down-set keeps every member line, zero, drops nothing
    # else; complement = {full} plus excluded lines
    comp = {FULL_SUBSPACE} | {y for y in fam.members
                              if y not in (ZERO_SUBSPACE, FULL_SUBSPACE)}
    return lattice_family(COFINITE, comp)


def lattice_up(fam: LatticeFamily) -> LatticeFamily:
    if fam.mode == FINITE:
        out = set()
        for y in fam.members:
            if y == ZERO_SUBSPACE:
                return ALL_SUBSPACES
            if y == FULL_SUBSPACE:
                out.add(FULL_SUBSPACE)
            else:
                out |= {y, FULL_SUBSPACE}
        return lattice_family(FINITE, out)
    if fam.member(ZERO_SUBSPACE):
        return ALL_SUBSPACES
    comp = {ZERO_SUBSPACE} | {y for y in fam.members
                              if y not in (ZERO_SUBSPACE, FULL_SUBSPACE)}
    return lattice_family(COFINITE, comp)


# ---------------------------------------------------------- product slice

BALL = "ball"
FINITE_VECTORS = "finite"


@dataclass(frozen=True)
class VectorRegion:
    """Finite vector set or a closed max-modulus ball of rational radius."""

    kind: str
    vectors: tuple = ()
    radius: object = None

    def member(self, a) -> bool:
        if self.kind == FINITE_VECTORS:
            return a in self.vectors
        r2 = self.radius * self.radius
        return all(sc.modulus_squared(v) <= r2 for v in a)

    def render(self) -> str:
        if self.kind == FINITE_VECTORS:
            return "{" + ";".join(
                "(" + ",".join(sc.render_scalar(v) for v in a) + ")"
                for a in self.vectors) + "}"
        return f"ball({rat_str(self.radius)})"


def finite_vectors(*vecs) -> VectorRegion:
    return VectorRegion(FINITE_VECTORS, tuple(vecs))


def ball(radius) -> VectorRegion:
    radius = rat(radius)
    if radius < 0:
        raise ValueError("ball radius must be >= 0")
    return VectorRegion(BALL, radius=radius)


@dataclass(frozen=True)
class ProductSlice:
    """Finite union of (IntervalUnion x VectorRegion) pieces on the cone."""

    pieces: Tuple[Tuple[IntervalUnion, VectorRegion], ...]

    def member(self, x) -> bool:
        r, a = x
        return any(iupart.member(r) and reg.member(a)
                   for iupart, reg in self.pieces)

    def is_empty(self) -> bool:
        return all(iupart.is_empty() for iupart, _ in self.pieces)

    def render(self) -> str:
        return " U ".join(f"{iupart.render()}x{reg.render()}"
                          for iupart, reg in self.pieces) or "{}"


def product_slice(*pieces) -> ProductSlice:
    return ProductSlice(tuple(pieces))


def slice_scale(lam: sc.Scalar, s: ProductSlice) -> ProductSlice:
    m = sc.modulus(lam)
    out = []
    for iupart, reg in s.pieces:
        new_iu = iu_scale(m, iupart)
        if reg.kind == FINITE_VECTORS:
            new_reg = finite_vectors(
                *[tuple(lam * v for v in a) for a in reg.vectors])
        else:
            new_reg = ball(m * reg.radius)
        out.append((new_iu, new_reg))
    return ProductSlice(tuple(out))


def slice_minkowski(a: ProductSlice, b: ProductSlice) -> ProductSlice:
    out = []
    for iu1, r1 in a.pieces:
        for iu2, r2 in b.pieces:
            if r1.kind != FINITE_VECTORS or r2.kind != FINITE_VECTORS:
                raise ValueError(
                    "Minkowski sum needs finite vector parts")
            vecs = [tuple(u + v for u, v in zip(x, y))
                    for x in r1.vectors for y in r2.vectors]
            out.append((iu_minkowski(iu1, iu2), finite_vectors(*vecs)))
    return ProductSlice(tuple(out))


# ----------------------------------------------------------- predicate set

@dataclass
class PredicateSet:
    """Opaque membership oracle with a sampler of claimed members."""

    oracle: Callable
    witness_sampler: Callable  # (seed, count) -> elements claimed inside
    label: str = "predicate"

    def member(self, x) -> bool:
        return self.oracle(x)

    def render(self) -> str:
        return f"<{self.label}>"


# ------------------------------------------------------------- cylinders

@dataclass(frozen=True)
class ProductCylinder:
    """Per-factor sets over a product evs; None marks the whole factor."""

    factors: tuple

    def member(self, x) -> bool:
        return all(f is None or set_member(f, xi)
                   for f, xi in zip(self.factors, x))

    def render(self) -> str:
        return " x ".join("ALL" if f is None else render_set(f)
                          for f in self.factors)


def set_member(A, x) -> bool:
    if isinstance(A, (IntervalUnion, AnchoredBoxUnion, DictRegion,
                      LatticeFamily, ProductSlice, PredicateSet,
                      ProductCylinder)):
        return A.member(x)
    raise TypeError(f"not a set representation: {A!r}")


def render_set(A) -> str:
    return A.render()


def set_with_point(A, x):
    """A with one extra point adjoined (superset construction)."""
    if isinstance(A, IntervalUnion):
        return iu_union(A, iu((x, x, True, True)))
    if isinstance(A, ProductSlice):
        r, a = x
        return ProductSlice(A.pieces + (
            (iu((r, r, True, True)), finite_vectors(a)),))
    if isinstance(A, PredicateSet):
        return PredicateSet(lambda z, _A=A, _x=x: _A.member(z) or z == _x,
                            A.witness_sampler, A.label + "+pt")
    raise TypeError(f"cannot adjoin a point to {type(A).__name__}")


# ------------------------------------------------------- generic dispatch

def scale_set(lam: sc.Scalar, A):
    """Exact image of A under x -> lam.x on the owning instance."""
    if isinstance(A, IntervalUnion):
        return iu_scale(sc.modulus(lam), A)
    if isinstance(A, AnchoredBoxUnion):
        return box_scale(sc.modulus(lam), A)
    if isinstance(A, LatticeFamily):
        return lattice_scale(lam, A)
    if isinstance(A, ProductSlice):
        return slice_scale(lam, A)
    if isinstance(A, PredicateSet):
        raise TypeError("cannot compute exact images of predicate sets")
    raise TypeError(f"unsupported set kind {type(A).__name__}")


def minkowski_sum(A, B):
    if isinstance(A, IntervalUnion) and isinstance(B, IntervalUnion):
        return iu_minkowski(A, B)
    if isinstance(A, ProductSlice) and isinstance(B, ProductSlice):
        return slice_minkowski(A, B)
    raise TypeError(
        f"unsupported kind combination {type(A).__name__}+{type(B).__name__}")


def up_set(A):
    if isinstance(A, IntervalUnion):
        return iu_up(A)
    if isinstance(A, AnchoredBoxUnion):
        return box_up(A)
    if isinstance(A, LatticeFamily):
        return lattice_up(A)
    raise TypeError(f"unsupported set kind {type(A).__name__}")


def down_set(A):
    if isinstance(A, IntervalUnion):
        return iu_down(A)
    if isinstance(A, AnchoredBoxUnion):
        return box_down(A)
    if isinstance(A, LatticeFamily):
        return lattice_down(A)
    raise TypeError(f"unsupported set kind {type(A).__name__}")


# ---------------------------------------------------------------- deciders

def is_balanced(A, E=None, budget: int = 200, seed: int = 0) -> CheckOutcome:
    """Exact balancedness where the representation allows, sampling
    falsification for predicate sets.  Rejects the empty set."""
    if isinstance(A, IntervalUnion):
        return _iu_balanced(A)
    if isinstance(A, AnchoredBoxUnion):
        if A.is_empty():
            raise ValueError("empty set")
        return proven("anchored box unions are closed under diagonal shrink")
    if isinstance(A, LatticeFamily):
        return _lattice_balanced(A)
    if isinstance(A, ProductSlice):
        return _slice_balanced(A)
    if isinstance(A, PredicateSet):
        return _sampled_balanced(A, E, budget, seed)
    raise TypeError(f"unsupported set kind {type(A).__name__}")


def _iu_balanced(A: IntervalUnion) -> CheckOutcome:
    if A.is_empty():
        raise ValueError("empty set")
    comps = A.components
    if len(comps) == 1 and comps[0].lo == 0 and comps[0].lo_closed:
        return proven("single interval anchored at 0 (star-shaped)")
    # a scaling that lands in a gap (or at 0 when 0 is missing)
    if not A.contains_zero():
        x = comps[0].rep_point()
        return refuted({"x": rat_str(x), "alpha": "0",
                        "escape": "0", "_raw": (x, ZERO)},
                       detail="0.x = theta is outside A")
    # 0 in A, so more than one component: scale a later point into the gap
    gap = _first_gap(A)
    x = comps[1].rep_point()
    t = gap / x
    return refuted({"x": rat_str(x), "alpha": rat_str(t),
                    "escape": rat_str(gap), "_raw": (x, t)},
                   detail="scaling by |alpha|<1 leaves A")


def _first_gap(A: IntervalUnion):
    """A rational point strictly between the first two components."""
    c0, c1 = A.components[0], A.components[1]
    if c0.hi == c1.lo:  # both open at the touching point
        return c0.hi
    return (c0.hi + c1.lo) / 2


def _lattice_balanced(fam: LatticeFamily) -> CheckOutcome:
    if fam.is_empty():
        raise ValueError("empty set")
    if fam.member(ZERO_SUBSPACE):
        return proven("alpha.Y = Y for alpha != 0 and 0.Y = zero is in A")
    y = _some_member(fam)
    return refuted({"x": _render_subspace(y), "alpha": "0",
                    "escape": "zero", "_raw": (y, ZERO)},
                   detail="0.Y = zero subspace is outside A")


def _some_member(fam: LatticeFamily):
    if fam.mode == FINITE:
        return sorted(fam.members, key=str)[0]
    for y in (ZERO_SUBSPACE, FULL_SUBSPACE):
        if fam.member(y):
            return y
    k = 0
    while True:
        cand = line(1, k)
        if fam.member(cand):
            return cand
        k += 1


def _render_subspace(y) -> str:
    from .instances import subspace_lattice
    return subspace_lattice().render(y)


def _slice_balanced(A: ProductSlice) -> CheckOutcome:
    if A.is_empty():
        raise ValueError("empty set")
    ok = True
    for iupart, reg in A.pieces:
        if iupart.is_empty():
            continue
        comps = iupart.components
        star = len(comps) == 1 and comps[0].lo == 0 and comps[0].lo_closed
        if not (star and reg.kind == BALL):
            ok = False
    if ok:
        return proven("every piece is [0,s)-style x ball")
    # fall back to a scan for an explicit violation over piece endpoints
    for iupart, reg in A.pieces:
        if iupart.is_empty() or iupart.contains_zero():
            continue
        r = iupart.components[0].rep_point()
        if reg.kind == FINITE_VECTORS and reg.vectors:
            a = reg.vectors[0]
            x = (r, a)
            # alpha = 0 sends x to theta; theta may be missing
            if not A.member(((ZERO), tuple(sc.S_ZERO for _ in a))):
                return refuted({"x": f"({rat_str(r)}, ...)", "alpha": "0",
                                "_raw": (x, ZERO)},
                               detail="0.x = theta is outside A")
    return unfalsified(len(A.pieces), 0,
                       "no exact criterion; no violation found on endpoints")


def _sampled_balanced(A: PredicateSet, E, budget: int,
                      seed: int) -> CheckOutcome:
    if E is None:
        return unfalsified(0, seed, "no descriptor supplied for sampling")
    xs = A.witness_sampler(subseed(seed, "bal:x"), budget)
    mode = E.scalar_mode
    alphas = sc.sample_scalars(ONE, max(4, budget // 8),
                               subseed(seed, "bal:a"), mode)
    tried = 0
    for x in xs:
        if not A.member(x):
            raise ValueError("witness sampler produced a non-member")
        for a in alphas:
            tried += 1
            ax = E.scale(a, x) if E is not None else None
            if ax is not None and not A.member(ax):
                return refuted({"x": E.render(x),
                                "alpha": sc.render_scalar(a),
                                "_raw": (x, a)},
                               tried, seed, "alpha.x left A")
    return unfalsified(tried, seed)


def is_absorbing(A, E=None, budget: int = 200, seed: int = 0) -> CheckOutcome:
    """Exact absorbency on the exact carriers, sampling otherwise."""
    if isinstance(A, IntervalUnion):
        return _iu_absorbing(A)
    if isinstance(A, AnchoredBoxUnion):
        return _box_absorbing(A)
    if isinstance(A, LatticeFamily):
        return _lattice_absorbing(A)
    if isinstance(A, ProductSlice):
        return _slice_absorbing(A, E, budget, seed)
    if isinstance(A, PredicateSet):
        return _sampled_absorbing(A, E, budget, seed)
    raise TypeError(f"unsupported set kind {type(A).__name__}")


def _iu_absorbing(A: IntervalUnion) -> CheckOutcome:
    if not A.is_empty() and A.contains_zero():
        c0 = A.components[0]
        if c0.hi is INF or c0.hi > 0:
            return proven(
                f"contains the nondegenerate 0-component {c0.render()}")
        # 0-component is the degenerate {0}
        g = A.components[1].lo if len(A.components) > 1 else ONE
        return refuted({"x": "1", "escape_below": rat_str(g),
                        "_raw": (ONE, g)},
                       detail="any mu in (0, escape_below) sends x=1 "
                              "outside A, so no alpha > 0 works")
    x = ONE
    return refuted({"x": "1", "alpha": "0", "_raw": (x, ZERO)},
                   detail="theta = 0.x is outside A")


def _box_absorbing(A: AnchoredBoxUnion) -> CheckOutcome:
    for b in A.boxes:
        a_pos = b.a is INF or b.a > 0
        b_pos = b.b is INF or b.b > 0
        if a_pos and b_pos:
            return proven(f"contains the origin box {b.render()}")
    if A.is_empty():
        return refuted({"x": "(1, 1)", "alpha": "0", "_raw": ((ONE, ONE),)},
                       detail="theta is outside the empty union")
    return refuted({"x": "(1, 1)", "_raw": ((ONE, ONE),)},
                   detail="every box has a degenerate extent: mu.(1,1) = "
                          "(|mu|,|mu|) escapes for every mu != 0")


def _lattice_absorbing(fam: LatticeFamily) -> CheckOutcome:
    if fam.is_all():
        return proven("the family is the whole lattice")
    y = some_missing_subspace(fam)
    return refuted({"x": _render_subspace(y), "_raw": (y,)},
                   detail="mu.Y = Y stays outside A for every mu != 0")


def _slice_absorbing(A: ProductSlice, E, budget: int,
                     seed: int) -> CheckOutcome:
    for iupart, reg in A.pieces:
        if iupart.is_empty():
            continue
        c0 = iupart.components[0]
        has_radial_nbhd = c0.lo == 0 and c0.lo_closed and (
            c0.hi is INF or c0.hi > 0)
        if has_radial_nbhd and reg.kind == BALL and reg.radius > 0:
            return proven(
                f"contains [0,s) x ball(t) with s,t > 0: "
                f"{iupart.render()} x {reg.render()}")
    if E is not None:
        return _sampled_absorbing(
            PredicateSet(A.member, lambda s, c: E.sample(s, c),
                         "slice"), E, budget, seed)
    return unfalsified(0, seed, "no [0,s) x ball(t) piece found")


def _sampled_absorbing(A: PredicateSet, E, budget: int,
                       seed: int) -> CheckOutcome:
    """For each sampled x, search a mu-grid for an escape at every alpha."""
    if E is None:
        return unfalsified(0, seed, "no descriptor supplied for sampling")
    xs = E.sample(subseed(seed, "abs:x"), max(4, budget // 16))
    alphas = [Rat(1, k) for k in (1, 2, 4, 8, 16, 64, 256)]
    tried = 0
    for x in xs:
        escaped_all = True
        escape_mu = None
        for a in alphas:
            found_escape = False
            for j in (1, 2, 3, 5, 8, 13):
                mu = sc.Scalar(a / j, ZERO)
                tried += 1
                pt = E.scale(mu, x) if E is not None else None
                if pt is not None and not A.member(pt):
                    found_escape = True
                    escape_mu = mu
                    break
            if not found_escape:
                escaped_all = False
                break
        if escaped_all and E is not None:
            return refuted({"x": E.render(x),
                            "mu": sc.render_scalar(escape_mu),
                            "_raw": (x, escape_mu)},
                           tried, seed,
                           "escapes found at every tested alpha")
    return unfalsified(tried, seed)


# ------------------------------------------------------- random generators

def random_interval_union(rng: random.Random, max_components: int = 3,
                          height: int = 8) -> IntervalUnion:
    """Small random interval unions with frequent boundary cases."""
    n = rng.randint(1, max_components)
    pieces = []
    for i in range(n):
        if i == 0 and rng.random() < 0.55:
            lo = ZERO
            lo_closed = rng.random() < 0.8
        else:
            lo = Rat(rng.randint(0, height), rng.randint(1, height))
            lo_closed = rng.random() < 0.5
        if rng.random() < 0.1:
            hi, hi_closed = INF, False
        else:
            width = Rat(rng.randint(0, height), rng.randint(1, height))
            hi = lo + width
            hi_closed = rng.random() < 0.5
        pieces.append(Interval(lo, lo_closed, hi, hi_closed))
    u = interval_union(pieces)
    if u.is_empty():
        return iu((0, 1))
    return u


def random_box_union(rng: random.Random, max_boxes: int = 3,
                     height: int = 6) -> AnchoredBoxUnion:
    boxes = []
    for _ in range(rng.randint(1, max_boxes)):
        a = Rat(rng.randint(0, height), rng.randint(1, height))
        b = Rat(rng.randint(0, height), rng.randint(1, height))
        boxes.append(Box(INF if rng.random() < 0.05 else a,
                         rng.random() < 0.4,
                         INF if rng.random() < 0.05 else b,
                         rng.random() < 0.4))
    u = box_union(boxes)
    if u.is_empty():
        return box_union([box(1, 1)])
    return u


# ------------------------------------------------------ brute-grid oracles

def brute_balanced_violation(A: IntervalUnion):
    """Independent definition-driven search for (x, t) with x in A,
    0 <= t <= 1 and t.x outside A.  Candidate scalars come from a coarse
    grid plus endpoint/gap ratios, which is complete for interval unions.
    """
    xs = [c.rep_point() for c in A.components]
    endpoints = [c.lo for c in A.components] + \
        [c.hi for c in A.components if c.hi is not INF]
    gaps = []
    for c, d in zip(A.components, A.components[1:]):
        gaps.append(_gap_point(c, d))
    for x in xs:
        cands = {Rat(j, 16) for j in range(17)}
        if x > 0:
            for e in endpoints + gaps:
                t = e / x
                if 0 <= t <= 1:
                    cands.add(t)
                for eps in (Rat(1, 64), Rat(1, 4096)):
                    for s in (t - eps, t + eps):
                        if 0 <= s <= 1:
                            cands.add(s)
        for t in sorted(cands):
            if not A.member(t * x):
                return x, t
    return None


def _gap_point(c: Interval, d: Interval):
    if c.hi == d.lo:
        return c.hi
    return (c.hi + d.lo) / 2


def brute_absorbing_verdict(A: IntervalUnion) -> bool:
    """Evaluate the absorbency definition over candidate grids: for each
    grid x, search a candidate alpha whose whole mu-grid stays inside."""
    xs = [ONE, rat(3), Rat(1, 2)] + [c.rep_point() for c in A.components]
    endpoints = [e for c in A.components
                 for e in (c.lo, c.hi) if e is not INF and e > 0]
    for x in xs:
        if x == 0:
            continue
        alpha_cands = {Rat(1, k) for k in (1, 2, 4, 8)}
        for e in endpoints:
            alpha_cands.add(e / (2 * x))
        ok_for_x = False
        for a in sorted(alpha_cands, reverse=True):
            if a <= 0:
                continue
            mus = {ZERO, a, a / 2, a / 3}
            for e in endpoints:
                for g in (e / 2, e):
                    if 0 < g / x <= a:
                        mus.add(g / x)
                    if 0 < (g / x) / 2 <= a:
                        mus.add((g / x) / 2)
            if all(A.member(mu * x) for mu in mus):
                ok_for_x = True
                break
        if not ok_for_x:
            return False
    return True
