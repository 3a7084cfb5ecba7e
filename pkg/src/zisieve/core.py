"""Exact arithmetic in Z[i]: canonical associates, Euclidean division, gcd.

Every value is an immutable pair of Python ints with the norm capped at a
configurable ceiling (default 2**62) so that all norms stay within one
machine word; downstream modules rely on that for int64 vectorization.
"""

from __future__ import annotations

import re as _re

#: Largest norm accepted at construction.  Kept in one machine word.
NORM_CEILING = 2**62


class GaussianInt:
    """An element a+bi of Z[i], immutable after construction."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        if not isinstance(re, int) or not isinstance(im, int):
            raise TypeError("GaussianInt components must be ints")
        if re * re + im * im > NORM_CEILING:
            raise OverflowError(
                f"norm of {re}{im:+d}i exceeds the norm ceiling {NORM_CEILING}"
            )
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianInt is immutable")

    def __reduce__(self):
        # pickle via the constructor; __setattr__ is blocked
        return (GaussianInt, (self.re, self.im))

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __pow__(self, k: int) -> "GaussianInt":
        if k < 0:
            raise ValueError("negative powers leave Z[i]")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    # -- predicates and comparisons -------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.re * self.re + self.im * self.im == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaussianInt)
            and self.re == other.re
            and self.im == other.im
        )

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self) -> str:
        return format_gaussian(self)

    def key(self) -> tuple[int, int, int]:
        """Deterministic sort key (norm, re, im)."""
        return (self.re * self.re + self.im * self.im, self.re, self.im)


class IdealGen:
    """A principal ideal of Z[i], held by its canonical generator.

    Construction canonicalizes, so equality of IdealGen values is exactly
    equality of ideals; the ideal norm equals the generator norm.
    """

    __slots__ = ("gen",)

    def __init__(self, a: "GaussianInt"):
        object.__setattr__(self, "gen", canonicalize(a))

    def __setattr__(self, name, value):
        raise AttributeError("IdealGen is immutable")

    def norm(self) -> int:
        return norm(self.gen)

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealGen) and self.gen == other.gen

    def __hash__(self) -> int:
        return hash(("IdealGen", self.gen))

    def __repr__(self) -> str:
        return f"IdealGen({self.gen!r})"

    def __str__(self) -> str:
        return f"({format_gaussian(self.gen)})"


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)

#: The four units of Z[i] in a fixed order: 1, i, -1, -i.
UNITS = (ONE, I, GaussianInt(-1, 0), GaussianInt(0, -1))

#: Ramified prime above 2; the unique prime of norm 2.
RAMIFIED = GaussianInt(1, 1)


def norm(a: GaussianInt) -> int:
    """N(a) = re^2 + im^2, always exact."""
    return a.re * a.re + a.im * a.im


def canonicalize(a: GaussianInt) -> GaussianInt:
    """The unique associate of a in the half-open first quadrant.

    Returns u*a with re > 0 and im >= 0.  Idempotent; constant on the
    4-element associate orbits.  Zero has no canonical associate.
    """
    if a.is_zero():
        raise ValueError("zero has no canonical associate")
    re, im = a.re, a.im
    # Rotate by i until re > 0, im >= 0.  At most 3 rotations.
    for _ in range(4):
        if re > 0 and im >= 0:
            return GaussianInt(re, im)
        re, im = -im, re
    raise AssertionError("unreachable: associate orbit has a canonical member")


def is_canonical(a: GaussianInt) -> bool:
    return a.re > 0 and a.im >= 0


def _round_half_down(num: int, den: int) -> int:
    """Round num/den to the nearest integer, exact halves toward -inf.

    den must be positive.
    """
    # ceil((2*num - den) / (2*den)) computed with floor division.
    return -((den - 2 * num) // (2 * den))


def divrem(a: GaussianInt, d: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
    """Euclidean division a = q*d + r with norm(r) <= norm(d)/2.

    Quotient coordinates are the rational coordinates of a/d rounded to
    nearest, exact half-ties toward -inf; this fixes one representative
    remainder per residue class.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by zero in Z[i]")
    n = norm(d)
    # a/d = a * conj(d) / N(d); components taken as bare ints so the
    # scratch product is not subject to the norm ceiling.
    num_re = a.re * d.re + a.im * d.im
    num_im = a.im * d.re - a.re * d.im
    q = GaussianInt(_round_half_down(num_re, n), _round_half_down(num_im, n))
    r = a - q * d
    return q, r


def divides(d: GaussianInt, a: GaussianInt) -> bool:
    """True iff d | a exactly (d nonzero)."""
    return divrem(a, d)[1].is_zero()


def exact_div(a: GaussianInt, d: GaussianInt) -> GaussianInt:
    """a / d when d | a; raises otherwise."""
    q, r = divrem(a, d)
    if not r.is_zero():
        raise ValueError(f"{d} does not divide {a}")
    return q


def gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """Canonical greatest common divisor; gcd(a, 0) = canonicalize(a)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, divrem(a, b)[1]
    return canonicalize(a)


def congruent(a: GaussianInt, b: GaussianInt, d: GaussianInt) -> bool:
    """True iff a == b (mod d), i.e. d divides a-b exactly."""
    if d.is_zero():
        raise ZeroDivisionError("congruence modulo zero")
    return divrem(a - b, d)[1].is_zero()


# -- textual form -------------------------------------------------------------

_INT_RE = _re.compile(r"^[+-]?\d+$")


def parse_gaussian(text: str) -> GaussianInt:
    """Parse 'a+bi' / 'a-bi' / bare integers, tolerating whitespace.

    Accepts forms like '3-2i', '-5', 'i', '-i', '2i', '+7+i'.
    """
    if _re.search(r"\d\s+\d", text):
        raise ValueError(f"cannot parse Gaussian integer from {text!r}")
    s = "".join(text.split())
    if not s:
        raise ValueError(f"cannot parse Gaussian integer from {text!r}")
    if not s.endswith("i"):
        if not _INT_RE.match(s):
            raise ValueError(f"cannot parse Gaussian integer from {text!r}")
        return GaussianInt(int(s), 0)
    body = s[:-1].removesuffix("*")
    # The last interior sign separates the real part from the i-coefficient.
    cut = max(body.rfind("+", 1), body.rfind("-", 1))
    re_text, im_text = (body[:cut], body[cut:]) if cut != -1 else ("", body)
    if re_text and not _INT_RE.match(re_text):
        raise ValueError(f"cannot parse Gaussian integer from {text!r}")
    if im_text in ("", "+"):
        im_part = 1
    elif im_text == "-":
        im_part = -1
    elif _INT_RE.match(im_text):
        im_part = int(im_text)
    else:
        raise ValueError(f"cannot parse Gaussian integer from {text!r}")
    return GaussianInt(int(re_text) if re_text else 0, im_part)


def format_gaussian(a: GaussianInt) -> str:
    """Render in the 'a+bi' textual form used by the CLI."""
    if a.im == 0:
        return str(a.re)
    if a.re == 0:
        if a.im == 1:
            return "i"
        if a.im == -1:
            return "-i"
        return f"{a.im}i"
    sign = "+" if a.im > 0 else "-"
    mag = abs(a.im)
    imtxt = "i" if mag == 1 else f"{mag}i"
    return f"{a.re}{sign}{imtxt}"
