"""Dispersion interactions between two identical finite-size Gaussian dipoles."""
from .point_dipole import (ModeSpectrum, OscillatorModel, interaction_energy, london_asymptote,
                           mode_spectrum, repulsive_asymptote)
from .potentials import (BranchBreakdown, DipoleSpecies, cp_breakdown, cp_contact, cp_potential,
                         cp_potential_truncated, resonance_perturbative, resonance_potential,
                         self_energy, self_energy_truncated)
from .quadrature import (QuadratureError, QuadratureResult, cp_by_quadrature, integrate_log,
                         log_integral, resonance_by_quadrature)
from .quantities import HARTREE_EV, Energy, Length, Polarizability, ev_to_internal
from .species import (BUILTIN_TABLE, InvertedParams, TableRow, invert_table_row, load_species,
                      reproduce_table)
from .tensor import Branch, TensorElement, erf, t_contact, t_xx, t_zz

__all__ = [name for name in dir() if not name.startswith("_")]
