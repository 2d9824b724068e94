"""High-precision complex scalars for approximation targets and checks."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath


def working_precision(eps) -> int:
    """Bits needed to certify distances at tolerance eps with headroom.

    The delta = eps^2/5 reduction squares the tolerance, hence the factor 4."""
    eps = float(eps)
    if not 0 < eps < 1:
        return 128
    return max(128, int(mpmath.ceil(4 * mpmath.log(1 / eps, 2))) + 64)


@dataclass(frozen=True)
class BigComplex:
    """A complex number carried at an explicit binary precision."""

    re: mpmath.mpf
    im: mpmath.mpf
    precision_bits: int = 128

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        with mpmath.workprec(self.precision_bits):
            object.__setattr__(self, "re", mpmath.mpf(self.re))
            object.__setattr__(self, "im", mpmath.mpf(self.im))

    @staticmethod
    def from_value(z, precision_bits: int = 128) -> "BigComplex":
        with mpmath.workprec(precision_bits):
            zc = mpmath.mpc(z)
        return BigComplex(zc.real, zc.imag, precision_bits)

    def to_mpc(self) -> mpmath.mpc:
        return mpmath.mpc(self.re, self.im)

    def __abs__(self):
        with mpmath.workprec(self.precision_bits):
            return abs(self.to_mpc())

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


def as_mpc(z) -> mpmath.mpc:
    """Coerce BigComplex / python complex / mpf / strings to mpc."""
    if isinstance(z, BigComplex):
        return z.to_mpc()
    return mpmath.mpc(z)
