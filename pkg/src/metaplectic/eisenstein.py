"""Exact arithmetic in the ring Z[w] of Eisenstein integers.

Elements are written a + b*w with w = exp(2*pi*i/3), so w^2 = -1 - w.
The norm form is N(a + b*w) = a^2 - a*b + b^2; the unit group is cyclic
of order six, generated by -w^2 = 1 + w.  The module also covers the
nine-element residue ring Z3[w] (coordinates mod 3), its unit orbits,
and exact divisibility by sqrt(-3) = 1 + 2*w.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


class EisensteinInt:
    """An Eisenstein integer a + b*w with arbitrary-precision coordinates."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = a
        self.b = b

    # ---- ring operations -------------------------------------------------

    def __add__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "EisensteinInt":
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other: "EisensteinInt") -> "EisensteinInt":
        # (a1 + b1 w)(a2 + b2 w) with w^2 = -1 - w
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return EisensteinInt(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)

    def __pow__(self, n: int) -> "EisensteinInt":
        if n < 0:
            raise ValueError("negative powers are not ring elements")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "EisensteinInt":
        """Complex conjugate: conj(a + b*w) = (a - b) - b*w."""
        return EisensteinInt(self.a - self.b, -self.b)

    def mul_omega(self) -> "EisensteinInt":
        """Multiply by w without integer multiplications."""
        return EisensteinInt(-self.b, self.a - self.b)

    def scale(self, k: int) -> "EisensteinInt":
        return EisensteinInt(self.a * k, self.b * k)

    # ---- predicates and helpers ------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return norm(self) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EisensteinInt):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}w"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}w"

    def to_complex(self) -> complex:
        # w = -1/2 + i*sqrt(3)/2; only safe for small coordinates
        return complex(self.a - self.b / 2, self.b * 0.8660254037844386)

    # ---- JSON wire format -------------------------------------------------

    def to_json(self) -> list:
        """Two-element array [a, b]; decimal strings for big-int safety."""
        return [str(self.a), str(self.b)]

    @staticmethod
    def from_json(obj) -> "EisensteinInt":
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise ValueError(f"expected two-element [a, b] array, got {obj!r}")
        return EisensteinInt(int(obj[0]), int(obj[1]))


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
# sqrt(-3) = i*sqrt(3) = 1 + 2w, the ramified prime above 3
SQRT_M3 = EisensteinInt(1, 2)

# Powers of the unit-group generator -w^2 = 1 + w, index 0..5.
_UNIT_POWERS = (
    EisensteinInt(1, 0),
    EisensteinInt(1, 1),
    EisensteinInt(0, 1),
    EisensteinInt(-1, 0),
    EisensteinInt(-1, -1),
    EisensteinInt(0, -1),
)


def norm(z: EisensteinInt):
    """Field norm a^2 - a*b + b^2; multiplicative and non-negative."""
    return z.a * z.a - z.a * z.b + z.b * z.b


def unit_pow(d: int) -> EisensteinInt:
    """(-w^2)^d, reduced mod the unit group order 6."""
    return _UNIT_POWERS[d % 6]


def unit_log(u: EisensteinInt) -> Optional[int]:
    """Return d in 0..5 with (-w^2)^d == u, or None if u is not a unit."""
    for d, v in enumerate(_UNIT_POWERS):
        if v == u:
            return d
    return None


def mul_unit(z: EisensteinInt, d: int) -> EisensteinInt:
    return z * _UNIT_POWERS[d % 6]


# ---- the residue ring Z3[w] ----------------------------------------------


@dataclass(frozen=True)
class Residue3:
    """One of the nine classes of Z[w]/3Z[w], stored as coordinates mod 3."""

    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % 3)
        object.__setattr__(self, "b", self.b % 3)

    def __add__(self, other: "Residue3") -> "Residue3":
        return Residue3(self.a + other.a, self.b + other.b)

    def __mul__(self, other: "Residue3") -> "Residue3":
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return Residue3(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)

    def __neg__(self) -> "Residue3":
        return Residue3(-self.a, -self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def reduced_norm(self) -> int:
        return (self.a * self.a - self.a * self.b + self.b * self.b) % 3


def residue(z: EisensteinInt) -> Residue3:
    """Coordinate-wise reduction mod 3 (the natural ring epimorphism)."""
    return Residue3(z.a, z.b)


_RESIDUE_UNITS = tuple(Residue3(u.a, u.b) for u in _UNIT_POWERS)

# Orbits of the unit group acting on Z3[w]: {0}, the six units, and the
# two-element orbit of 1+2w (the image of sqrt(-3)).
O0 = "O0"
O1 = "O1"
O2 = "O2"

_ORBIT1 = frozenset(_RESIDUE_UNITS)
_ORBIT2 = frozenset(u * Residue3(1, 2) for u in _RESIDUE_UNITS)


def orbit_of(r: Residue3) -> str:
    """Orbit label of a residue under the unit-group action."""
    if r.is_zero():
        return O0
    if r in _ORBIT1:
        return O1
    if r in _ORBIT2:
        return O2
    raise AssertionError(f"residue {r} outside the 1+6+2 orbit partition")


def unit_exponent_matching(x: Residue3, y: Residue3) -> Optional[int]:
    """Smallest d >= 0 with (-w^2)^d * y == x in Z3[w], or None.

    Searches d in 0..5 (same coset as the wider symmetric range)."""
    for d in range(6):
        if _RESIDUE_UNITS[d] * y == x:
            return d
    return None


# ---- divisibility and gcd --------------------------------------------------


def divide_by_sqrt_minus3(z: EisensteinInt) -> Optional[EisensteinInt]:
    """Exact quotient z / (1+2w), or None when 1+2w does not divide z."""
    # z/(1+2w) = z * conj(1+2w) / 3 = -z*(1+2w)/3
    w = z * SQRT_M3
    if w.a % 3 or w.b % 3:
        return None
    return EisensteinInt(-(w.a // 3), -(w.b // 3))


def exact_div(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    """Exact quotient x / y; raises if y does not divide x."""
    if y.is_zero():
        raise ZeroDivisionError("division by zero in Z[w]")
    n = norm(y)
    w = x * y.conj()
    if w.a % n or w.b % n:
        raise ValueError(f"{y} does not divide {x} in Z[w]")
    return EisensteinInt(w.a // n, w.b // n)


def _rounded_div(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    """Nearest-lattice-point quotient, coordinate-wise in the (1, w) basis.

    Ties round toward zero, which keeps the remainder norm <= (3/4) N(y)."""
    n = norm(y)
    w = x * y.conj()
    return EisensteinInt(_round_half_to_zero(w.a, n), _round_half_to_zero(w.b, n))


def _round_half_to_zero(num: int, den: int) -> int:
    # round(num/den) with den > 0; exact halves move toward zero
    q, r = divmod(num, den)
    if 2 * r > den:
        q += 1
    return q


def gcd(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    """Greatest common divisor in Z[w], canonicalized (see canonical_associate).

    Euclidean descent: each remainder has norm at most 3/4 of the divisor's,
    which is asserted in-loop and guarantees termination."""
    if x.is_zero() and y.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not y.is_zero():
        q = _rounded_div(x, y)
        r = x - q * y
        assert norm(r) < norm(y), "Euclidean step failed to shrink the norm"
        x, y = y, r
    return canonical_associate(x)


def canonical_associate(z: EisensteinInt) -> EisensteinInt:
    """The unique associate of z with b >= 0 and a > b (argument in [0, 60deg)).

    Zero maps to zero."""
    if z.is_zero():
        return ZERO
    for d in range(6):
        c = mul_unit(z, d)
        if c.b >= 0 and c.a > c.b:
            return c
    raise AssertionError(f"no canonical associate found for {z}")


def divides(x: EisensteinInt, y: EisensteinInt) -> bool:
    """True when x divides y in Z[w]."""
    if x.is_zero():
        return y.is_zero()
    n = norm(x)
    w = y * x.conj()
    return w.a % n == 0 and w.b % n == 0
