r"""Closed-form potentials of two identical Gaussian dipoles.

All results follow from the single-oscillator identity

.. math::

    \frac{1}{\pi}\int_0^\infty dx\,
        \ln\left|1 + \frac{A}{1 + x^2}\right|
    = \mathrm{Re}\left[\sqrt{1 + A}\right] - 1,

with ``A = alpha0 * T_jj``.  A negative radicand means the mode has
frozen out; its square root contributes zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .point_dipole import OscillatorModel
from .quantities import Energy, positive_length, separation
from .tensor import BRANCHES, Branch, CONTACT_FACTOR, tensor_element

_SQRT_PI = math.sqrt(math.pi)


def root_shift(A):
    """``Re sqrt(1 + A) - 1`` without cancellation for small ``A``."""
    if A < -1.0:
        return -1.0
    return A / (math.sqrt(1.0 + A) + 1.0)


def pair_shift(A):
    """``root_shift(A) + root_shift(-A)``; exact rearrangement when ``|A| <= 1``."""
    if abs(A) > 1.0:
        return root_shift(A) + root_shift(-A)
    p, m = math.sqrt(1.0 + A), math.sqrt(1.0 - A)
    return -2.0 * A * A / ((p + 1.0) * (m + 1.0) * (p + m))


@dataclass(frozen=True)
class DipoleSpecies:
    name: str
    model: OscillatorModel
    a: float

    def __post_init__(self):
        object.__setattr__(self, "a", positive_length(self.a, "a"))
        if not math.isfinite(self.coupling):
            raise ValueError(f"coupling of {self.name!r} is not finite")

    @classmethod
    def from_parameters(cls, name, alpha0, omega0, a):
        """Build from alpha0 (bohr^3), hbar*omega0 (:class:`Energy`) and a (bohr)."""
        return cls(name, OscillatorModel(alpha0, omega0), a)

    @classmethod
    def from_coupling(cls, name, omega0, g, a=1.0):
        """Build a species with coupling ``g``; ``a`` only sets the length scale."""
        a = positive_length(a, "a")
        return cls(name, OscillatorModel(g * _SQRT_PI * a**3, omega0), a)

    @property
    def alpha0(self):
        return self.model.alpha0

    @property
    def omega0(self) -> Energy:
        return self.model.omega0

    @property
    def coupling(self):
        """Dimensionless ``g = alpha0 / (sqrt(pi) a^3)``."""
        return self.model.alpha0 / (_SQRT_PI * self.a**3)

    @property
    def contact_argument(self):
        """``4g/3``, i.e. ``-alpha0 * T_jj`` at zero separation."""
        return self.model.alpha0 * CONTACT_FACTOR / self.a**3


@dataclass(frozen=True)
class BranchTerms:
    symmetric: float
    antisymmetric: float
    symmetric_dropped: bool
    antisymmetric_dropped: bool
    combined: float


@dataclass(frozen=True)
class BranchBreakdown:
    """Per-branch pieces of the ground-state potential.

    ``antisymmetric`` is ``Re sqrt(1 + alpha0 T_jj) - 1`` and ``symmetric``
    is ``Re sqrt(1 - alpha0 T_jj) - 1``; the ``*_dropped`` flags mark
    negative radicands.
    """

    omega0: Energy
    branches: dict

    def __getitem__(self, branch):
        return self.branches[Branch.parse(branch)]

    @property
    def total(self) -> Energy:
        s = sum(b.combined for b in self.branches.values())
        return 0.5 * self.omega0 * s

    @property
    def dropped_modes(self):
        return [(j.value, kind) for j, b in self.branches.items()
                for kind, flag in (("symmetric", b.symmetric_dropped),
                                   ("antisymmetric", b.antisymmetric_dropped)) if flag]


def _couplings(species, rho):
    rho = separation(rho)
    return {j: species.alpha0 * tensor_element(j, rho, species.a).value for j in BRANCHES}


def resonance_potential(species: DipoleSpecies, rho, branch) -> Energy:
    """Energy shift of the antisymmetric excited pair state in one branch."""
    branch = Branch.parse(branch)
    A = species.alpha0 * tensor_element(branch, separation(rho), species.a).value
    return species.omega0 * root_shift(A)


def resonance_perturbative(species: DipoleSpecies, rho, branch) -> Energy:
    """Leading-order resonance shift, ``hbar omega0 alpha0 T_jj / 2``."""
    branch = Branch.parse(branch)
    T = tensor_element(branch, separation(rho), species.a).value
    return 0.5 * species.omega0 * species.alpha0 * T


def cp_breakdown(species: DipoleSpecies, rho) -> BranchBreakdown:
    branches = {}
    for j, A in _couplings(species, rho).items():
        branches[j] = BranchTerms(
            symmetric=root_shift(-A),
            antisymmetric=root_shift(A),
            symmetric_dropped=1.0 - A < 0.0,
            antisymmetric_dropped=1.0 + A < 0.0,
            combined=pair_shift(A),
        )
    return BranchBreakdown(species.omega0, branches)


def cp_potential(species: DipoleSpecies, rho) -> Energy:
    """Non-perturbative non-retarded ground-state (Casimir-Polder) potential."""
    return cp_breakdown(species, rho).total


def cp_potential_truncated(species: DipoleSpecies, rho) -> Energy:
    """Single-scattering approximation, ``-(hbar omega0 alpha0^2 / 8) sum_j T_jj^2``."""
    s = sum(A * A for A in _couplings(species, rho).values())
    return -0.125 * species.omega0 * s


def cp_contact(species: DipoleSpecies) -> Energy:
    return 1.5 * species.omega0 * pair_shift(species.contact_argument)


def self_energy(species: DipoleSpecies) -> Energy:
    """Dispersion self-energy of one isolated Gaussian dipole."""
    return 1.5 * species.omega0 * root_shift(species.contact_argument)


def self_energy_truncated(species: DipoleSpecies) -> Energy:
    return species.omega0 * species.coupling
