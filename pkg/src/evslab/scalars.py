"""Exact scalar fields: rationals and Gaussian rationals.

These stand in for the real and complex fields.  Modulus is never taken
as a number; every ``|.|`` comparison is decided through the squared
modulus, which is always rational.  Scalars whose modulus happens to be
rational ("Pythagorean" scalars, e.g. (3+4i)/5) are the only ones
admitted by instances whose action multiplies a radial coordinate by
the modulus.
"""

import random
from dataclasses import dataclass

from ._backend import ONE, ZERO, Rat, rat, rat_parse, rat_sqrt, rat_str

ANY_SCALAR = "AnyScalar"
PYTHAGOREAN_ONLY = "PythagoreanOnly"


@dataclass(frozen=True)
class Scalar:
    """A Gaussian rational re + im*i (im = 0 in the real field)."""

    re: object
    im: object

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0


def scalar(re, im=0) -> Scalar:
    return Scalar(rat(re), rat(im))


S_ZERO = scalar(0)
S_ONE = scalar(1)
S_MINUS_ONE = scalar(-1)
S_I = scalar(0, 1)


def modulus_squared(lam: Scalar):
    """|lam|^2 = re^2 + im^2, exact."""
    return lam.re * lam.re + lam.im * lam.im


def modulus_leq(lam: Scalar, c) -> bool:
    """Decide |lam| <= c without taking roots.  Requires c >= 0."""
    if c < 0:
        raise ValueError("modulus bound must be >= 0")
    return modulus_squared(lam) <= c * c


def modulus_lt(lam: Scalar, c) -> bool:
    if c < 0:
        raise ValueError("modulus bound must be >= 0")
    return modulus_squared(lam) < c * c


def modulus(lam: Scalar):
    """Exact |lam| as a rational; raises for non-Pythagorean scalars."""
    m = rat_sqrt(modulus_squared(lam))
    if m is None:
        raise ValueError(f"scalar {render_scalar(lam)} has irrational modulus")
    return m


def is_pythagorean(lam: Scalar) -> bool:
    return rat_sqrt(modulus_squared(lam)) is not None


def render_scalar(lam: Scalar) -> str:
    """Literal syntax ``p/q`` or ``p/q+r/si`` (no spaces)."""
    if lam.im == 0:
        return rat_str(lam.re)
    im = rat_str(lam.im)
    sign = "+" if lam.im >= 0 else "-"
    if lam.im < 0:
        im = rat_str(-lam.im)
    return f"{rat_str(lam.re)}{sign}{im}i"


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar literal syntax, e.g. ``3/5+4/5i`` or ``-2/3``."""
    text = text.strip()
    if text.endswith("i"):
        body = text[:-1]
        # split at the sign of the imaginary part (not the leading sign)
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "+-/":
                re_part, im_part = body[:pos], body[pos] + body[pos + 1 :]
                break
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return Scalar(rat_parse(re_part), rat_parse(im_part))
    return Scalar(rat_parse(text), ZERO)


# Unit-modulus Pythagorean scalars used as building blocks for complex
# samples: rational multiples of these keep the modulus rational.
PYTHAGOREAN_UNITS = (
    S_ONE,
    S_MINUS_ONE,
    S_I,
    scalar(0, -1),
    Scalar(rat(3, 5), rat(4, 5)),
    Scalar(rat(3, 5), rat(-4, 5)),
    Scalar(rat(-3, 5), rat(4, 5)),
    Scalar(rat(5, 13), rat(12, 13)),
    Scalar(rat(8, 17), rat(15, 17)),
)


def _random_rat(rng: random.Random, height: int = 6):
    return Rat(rng.randint(-height, height), rng.randint(1, height))


def sample_scalars(radius_bound, count: int, seed: int, mode: str = ANY_SCALAR):
    """Deterministic list of scalars with |lam| <= radius_bound.

    In PythagoreanOnly mode every sample has rational modulus (rational
    multiples of unit-modulus Pythagorean scalars plus pure rationals).
    """
    radius_bound = rat(radius_bound)
    if radius_bound <= 0:
        raise ValueError("radiusBound must be > 0")
    rng = random.Random(seed)
    out = []
    fixed = [S_ZERO, scale_unit(S_ONE, radius_bound), scale_unit(S_MINUS_ONE, radius_bound)]
    if mode == PYTHAGOREAN_ONLY:
        fixed.append(scale_unit(Scalar(rat(3, 5), rat(4, 5)), radius_bound))
    for lam in fixed:
        if len(out) < count:
            out.append(lam)
    while len(out) < count:
        q = abs(_random_rat(rng))
        if q > radius_bound:
            q = radius_bound * q.denominator / (q.denominator + abs(q.numerator))
        if mode == PYTHAGOREAN_ONLY:
            u = rng.choice(PYTHAGOREAN_UNITS)
            lam = scale_unit(u, q)
        else:
            if rng.random() < 0.5:
                lam = Scalar(q if rng.random() < 0.5 else -q, ZERO)
            else:
                a, b = _random_rat(rng), _random_rat(rng)
                lam = Scalar(a, b)
                ms = modulus_squared(lam)
                if ms > radius_bound * radius_bound and ms > 0:
                    # shrink by a rational factor below 1/|lam|
                    shrink = radius_bound * radius_bound / (ms + 1)
                    lam = Scalar(lam.re * shrink, lam.im * shrink)
        if modulus_leq(lam, radius_bound):
            out.append(lam)
    return out[:count]


def scale_unit(u: Scalar, q) -> Scalar:
    return Scalar(u.re * q, u.im * q)


def sample_scalar_tuples(k: int, count: int, seed: int, mode: str = ANY_SCALAR,
                         height: int = 5):
    """Tuples of k scalars for law checking.

    In PythagoreanOnly mode every tuple lies on a single Pythagorean ray
    (rational multiples of one unit), so sums and products of tuple
    members stay Pythagorean and remain admissible for modulus-acting
    instances.
    """
    rng = random.Random(seed)
    specials = [S_ZERO, S_ONE, S_MINUS_ONE]
    if mode == ANY_SCALAR:
        specials.append(S_I)
    out = []
    # deterministic boundary tuples first
    for lam in specials:
        out.append(tuple([lam] * k))
        if len(out) >= count:
            return out[:count]
    out.append(tuple(specials[i % len(specials)] for i in range(k)))
    while len(out) < count:
        if mode == PYTHAGOREAN_ONLY:
            u = rng.choice(PYTHAGOREAN_UNITS)
            tup = tuple(scale_unit(u, _random_rat(rng, height)) for _ in range(k))
        else:
            tup = tuple(
                Scalar(_random_rat(rng, height), _random_rat(rng, height))
                if rng.random() < 0.4
                else Scalar(_random_rat(rng, height), ZERO)
                for _ in range(k)
            )
        out.append(tup)
    return out[:count]
