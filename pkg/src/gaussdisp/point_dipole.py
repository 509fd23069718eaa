"""Two identical point dipoles with a single-oscillator polarizability.

The coupled normal modes have squared frequencies ``omega0**2 * factor``
with factors ``1 +- u`` (twice each) and ``1 +- 2u``, ``u = alpha0/rho**3``.
A mode whose factor turns negative has an imaginary frequency and is
dropped from the zero-point energy sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .quantities import Energy, Polarizability, positive_length


@dataclass(frozen=True)
class OscillatorModel:
    """``alpha(i w) = alpha0 / (1 + w**2 / omega0**2)``.

    Parameters
    ----------
    alpha0 : float
        static polarizability in bohr^3
    omega0 : Energy
        oscillator energy hbar*omega0
    """

    alpha0: float
    omega0: Energy

    def __post_init__(self):
        object.__setattr__(self, "alpha0", Polarizability(float(self.alpha0)).value)
        omega0 = self.omega0 if isinstance(self.omega0, Energy) else Energy(self.omega0)
        if omega0.value <= 0:
            raise ValueError(f"omega0 must be > 0, got {omega0.value!r}")
        object.__setattr__(self, "omega0", omega0)

    def polarizability(self, xi):
        """Polarizability at imaginary frequency ``i*xi`` (xi in hartree)."""
        return self.alpha0 / (1.0 + (xi / self.omega0.value) ** 2)


@dataclass(frozen=True)
class Mode:
    frequency_squared_factor: float
    multiplicity: int

    @property
    def is_real(self):
        return self.frequency_squared_factor >= 0.0


@dataclass(frozen=True)
class ModeSpectrum:
    modes: tuple

    @property
    def real_count(self):
        return sum(m.multiplicity for m in self.modes if m.is_real)

    @property
    def total_count(self):
        return sum(m.multiplicity for m in self.modes)

    def zero_point_sum(self):
        """Sum of ``multiplicity * sqrt(factor)`` over real modes."""
        return sum(m.multiplicity * math.sqrt(m.frequency_squared_factor)
                   for m in self.modes if m.is_real)


def coupling_ratio(model, rho):
    rho = positive_length(rho, "rho")
    return model.alpha0 / rho**3


def spectrum_from_ratio(u) -> ModeSpectrum:
    return ModeSpectrum((
        Mode(1.0 + u, 2),
        Mode(1.0 - u, 2),
        Mode(1.0 + 2.0 * u, 1),
        Mode(1.0 - 2.0 * u, 1),
    ))


def mode_spectrum(model: OscillatorModel, rho) -> ModeSpectrum:
    return spectrum_from_ratio(coupling_ratio(model, rho))


def interaction_energy(model: OscillatorModel, rho) -> Energy:
    """Zero-point energy of the real coupled modes relative to infinite separation."""
    spectrum = mode_spectrum(model, rho)
    return 0.5 * model.omega0 * (spectrum.zero_point_sum() - 6.0)


def london_asymptote(model: OscillatorModel, rho) -> Energy:
    u = coupling_ratio(model, rho)
    return -0.75 * model.omega0 * u**2


def repulsive_asymptote(model: OscillatorModel, rho) -> Energy:
    u = coupling_ratio(model, rho)
    return 0.5 * model.omega0 * ((2.0 + math.sqrt(2.0)) * math.sqrt(u) - 6.0)
