"""Units and validated scalar wrappers.

Everything inside the package works in Hartree atomic units
(hbar = 1, lengths in bohr, energies in hartree).  Energies enter and
leave in electron-volts; conversion happens only through
:data:`HARTREE_EV`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

#: CODATA 2018 hartree energy in eV.  The only place this number lives.
HARTREE_EV = 27.211386245988


def _finite(value, name):
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True, order=True)
class Energy:
    """An energy, stored in hartree."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", _finite(self.value, "energy"))

    @classmethod
    def from_ev(cls, e):
        return cls(_finite(e, "energy") / HARTREE_EV)

    @property
    def hartree(self):
        return self.value

    @property
    def ev(self):
        return self.value * HARTREE_EV

    def __float__(self):
        return self.value

    def __add__(self, other):
        return Energy(self.value + float(other))

    def __sub__(self, other):
        return Energy(self.value - float(other))

    def __neg__(self):
        return Energy(-self.value)

    def __mul__(self, factor):
        return Energy(self.value * float(factor))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Energy):
            return self.value / other.value
        return Energy(self.value / float(other))


@dataclass(frozen=True, order=True)
class Length:
    """A length in bohr; never negative."""

    value: float

    def __post_init__(self):
        value = _finite(self.value, "length")
        if value < 0:
            raise ValueError(f"length must be >= 0, got {value!r}")
        object.__setattr__(self, "value", value)

    @property
    def bohr(self):
        return self.value

    def __float__(self):
        return self.value


@dataclass(frozen=True, order=True)
class Polarizability:
    """Static polarizability volume in bohr^3 (Gaussian units)."""

    value: float

    def __post_init__(self):
        value = _finite(self.value, "polarizability")
        if value < 0:
            raise ValueError(f"polarizability must be >= 0, got {value!r}")
        object.__setattr__(self, "value", value)

    @property
    def bohr3(self):
        return self.value

    def __float__(self):
        return self.value


def ev_to_internal(e: float) -> Energy:
    """Convert an energy in eV to an :class:`Energy` (hartree)."""
    return Energy.from_ev(e)


def internal_to_ev(e) -> float:
    return float(e) * HARTREE_EV


def positive_length(x, name="length") -> float:
    """Return ``x`` in bohr as a float, requiring ``x > 0``."""
    value = float(x)
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")
    return value


def separation(x, name="rho") -> float:
    """Return ``x`` in bohr as a float, requiring ``x >= 0``."""
    value = float(x)
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
    return value
