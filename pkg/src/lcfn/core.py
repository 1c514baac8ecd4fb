"""Coordinate arithmetic on the space generated by an asymmetric fuzzy number.

An element is a pair (r, q) standing for r + q*A.  Addition and scaling act
componentwise, the norm is |q| + |center|, and the interactive product is
the linearization of the real product at the 1-level points:

    B (*) C = center(C)*B + center(B)*C - center(B)*center(C)

which in coordinates reads

    (rB*rC - a_m^2*qB*qC,  rB*qC + rC*qB + 2*a_m*qB*qC).

Both routes are implemented; tests hold them against each other.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

from .errors import ExprSyntaxError, GeneratorMismatch
from .generator import Generator, same_generator

# Fused multiply-add tightens the order's tier-1 key by one rounding when
# the platform provides it (3.13+); the last ulp of center() is therefore
# platform-dependent.
_FMA = getattr(math, "fma", None)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class SignClass(enum.Enum):
    """Partition of the space by the sign of the center."""

    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"


@dataclass(frozen=True)
class LCFN:
    """r + q*A over a shared generator; immutable, operations are pure."""

    r: float
    q: float
    gen: Generator

    @classmethod
    def zero(cls, gen: Generator) -> "LCFN":
        return cls(0.0, 0.0, gen)

    @classmethod
    def from_scalar(cls, lam: float, gen: Generator) -> "LCFN":
        return cls(float(lam), 0.0, gen)

    def center(self) -> float:
        """Midpoint of the 1-level: r + q*a_m."""
        if _FMA is not None:
            return _FMA(self.q, self.gen.a_m, self.r)
        return self.r + self.q * self.gen.a_m

    def norm(self) -> float:
        return abs(self.q) + abs(self.center())

    def sign_class(self) -> SignClass:
        c = self.center()
        if c > 0.0:
            return SignClass.POSITIVE
        if c < 0.0:
            return SignClass.NEGATIVE
        return SignClass.ZERO

    def cross(self, other: "LCFN") -> "LCFN":
        _require_same_gen(self, other)
        am = self.gen.a_m
        qq = self.q * other.q
        return LCFN(
            self.r * other.r - (am * am) * qq,
            self.r * other.q + other.r * self.q + 2.0 * am * qq,
            self.gen,
        )

    def square(self) -> "LCFN":
        return self.cross(self)

    def alpha_level(self, alpha: float) -> tuple[float, float]:
        """Realized alpha-level [r + q*lo, r + q*hi], endpoints swapped
        when q < 0."""
        lo, hi = self.gen.alpha_level(alpha)
        if self.q >= 0.0:
            return (self.r + self.q * lo, self.r + self.q * hi)
        return (self.r + self.q * hi, self.r + self.q * lo)

    def scaled(self, lam: float) -> "LCFN":
        return LCFN(lam * self.r, lam * self.q, self.gen)

    # -- vector-space dunders ------------------------------------------------
    def __add__(self, other: "LCFN") -> "LCFN":
        _require_same_gen(self, other)
        return LCFN(self.r + other.r, self.q + other.q, self.gen)

    def __sub__(self, other: "LCFN") -> "LCFN":
        _require_same_gen(self, other)
        return LCFN(self.r - other.r, self.q - other.q, self.gen)

    def __neg__(self) -> "LCFN":
        return self.scaled(-1.0)

    def __mul__(self, lam) -> "LCFN":
        if isinstance(lam, (int, float)):
            return self.scaled(float(lam))
        return NotImplemented

    __rmul__ = __mul__

    # -- total order ---------------------------------------------------------
    def __lt__(self, other: "LCFN") -> bool:
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: "LCFN") -> bool:
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other: "LCFN") -> bool:
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other: "LCFN") -> bool:
        return compare(self, other) is not Ordering.LESS


def compare_with_tier(b: LCFN, c: LCFN) -> tuple[Ordering, int | None]:
    """Three-way comparison plus the deciding tier (1 = center,
    2 = noise width, 3 = signed noise); Equal carries no tier.

    Exact float comparisons throughout; ties are genuine ties, never
    tolerance artifacts, so the order is antisymmetric.
    """
    _require_same_gen(b, c)
    cb, cc = b.center(), c.center()
    if cb < cc:
        return (Ordering.LESS, 1)
    if cb > cc:
        return (Ordering.GREATER, 1)
    ab, ac = abs(b.q), abs(c.q)
    if ab < ac:
        return (Ordering.LESS, 2)
    if ab > ac:
        return (Ordering.GREATER, 2)
    if b.q < c.q:
        return (Ordering.LESS, 3)
    if b.q > c.q:
        return (Ordering.GREATER, 3)
    # Equal q and equal computed centers can still hide an r difference
    # below the sum's resolution; r then decides, which matches the
    # tier-1 comparison carried out in exact arithmetic.
    if b.r < c.r:
        return (Ordering.LESS, 1)
    if b.r > c.r:
        return (Ordering.GREATER, 1)
    return (Ordering.EQUAL, None)


def compare(b: LCFN, c: LCFN) -> Ordering:
    return compare_with_tier(b, c)[0]


def scalar_le(lam: float, b: LCFN) -> bool:
    """lam <= B, decided by lam <= center(B)."""
    return lam <= b.center()


def scalar_ge(lam: float, b: LCFN) -> bool:
    """B <= lam: true when lam exceeds the center or B is exactly the
    embedded scalar lam."""
    return lam > b.center() or (b.q == 0.0 and b.r == lam)


def approx_equal(b: LCFN, c: LCFN, tol: float = 1e-12) -> bool:
    """Coordinate closeness for assertions only.

    The order itself never uses a tolerance: Equal in compare() means
    identical coordinates, otherwise antisymmetry would fail.
    """
    _require_same_gen(b, c)
    return abs(b.r - c.r) <= tol and abs(b.q - c.q) <= tol


def cross_oracle(b: LCFN, c: LCFN) -> LCFN:
    """The product via its defining form center(C)*B + center(B)*C - b*c,
    built from scaling and addition only.  Kept separate from cross() so
    tests can hold the two routes against each other.
    """
    _require_same_gen(b, c)
    cb, cc = b.center(), c.center()
    return b.scaled(cc) + c.scaled(cb) - LCFN.from_scalar(cb * cc, b.gen)


def annihilator_witness(b: LCFN) -> LCFN:
    """A C outside the zero class with B (*) C != 0, for any B != 0.

    Mirrors the constructive choice: the embedded real r when r != 0;
    otherwise q*A when a_m != 0, else the embedded real q.
    """
    if b.r == 0.0 and b.q == 0.0:
        raise ValueError("the zero element annihilates everything")
    if b.r != 0.0:
        return LCFN.from_scalar(b.r, b.gen)
    if b.gen.a_m != 0.0:
        return LCFN(0.0, b.q, b.gen)
    return LCFN.from_scalar(b.q, b.gen)


# -- textual literals and report payloads ------------------------------------

_NUMBER = re.compile(r"[0-9]+(?:\.[0-9]*)?(?:[eE][+-]?[0-9]+)?|\.[0-9]+(?:[eE][+-]?[0-9]+)?")


def parse_element(src: str, gen: Generator) -> LCFN:
    """Parse an ``r+q*A`` literal such as ``3+2A``, ``-1.5A``, or ``4``."""
    pos = 0
    text = src

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def number_or_none():
        nonlocal pos
        m = _NUMBER.match(text, pos)
        if m is None:
            return None
        pos = m.end()
        return float(m.group())

    def term():
        # (number ['*'] 'A') | number | 'A'
        nonlocal pos
        value = number_or_none()
        skip_ws()
        if pos < len(text) and text[pos] == "*":
            if value is None:
                raise ExprSyntaxError("dangling '*'", pos)
            pos += 1
            skip_ws()
            if pos >= len(text) or text[pos] != "A":
                raise ExprSyntaxError("expected 'A' after '*'", pos)
        if pos < len(text) and text[pos] == "A":
            pos += 1
            return (0.0, 1.0 if value is None else value)
        if value is None:
            raise ExprSyntaxError("expected a number or 'A'", pos)
        return (value, 0.0)

    skip_ws()
    sign = 1.0
    if pos < len(text) and text[pos] in "+-":
        sign = -1.0 if text[pos] == "-" else 1.0
        pos += 1
        skip_ws()
    r, q = term()
    r, q = sign * r, sign * q
    skip_ws()
    if pos < len(text) and text[pos] in "+-":
        sign = -1.0 if text[pos] == "-" else 1.0
        pos += 1
        skip_ws()
        r2, q2 = term()
        r, q = r + sign * r2, q + sign * q2
        skip_ws()
    if pos != len(text):
        raise ExprSyntaxError(f"unexpected {text[pos]!r}", pos)
    return LCFN(r, q, gen)


def format_element(b: LCFN) -> str:
    if b.q == 0.0:
        return repr(b.r)
    if b.q == 1.0:
        qa = "A"
    elif b.q == -1.0:
        qa = "-A"
    else:
        qa = f"{b.q!r}A"
    if b.r == 0.0:
        return qa
    joiner = "" if qa.startswith("-") else "+"
    return f"{b.r!r}{joiner}{qa}"


def element_payload(b: LCFN) -> dict:
    return {
        "r": b.r,
        "q": b.q,
        "center": b.center(),
        "class": b.sign_class().value,
    }


def _require_same_gen(b: LCFN, c: LCFN) -> None:
    if not same_generator(b.gen, c.gen):
        raise GeneratorMismatch(
            "elements belong to spaces over different generators")
