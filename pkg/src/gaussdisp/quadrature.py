r"""Brute-force imaginary-frequency integrals.

These evaluate

.. math::

    L(A) = \int_0^\infty \ln\left|1 + \frac{A}{1 + x^2}\right| dx

numerically, independently of the closed forms in
:mod:`gaussdisp.potentials`, which only ever use ``pi (Re sqrt(1+A) - 1)``.
For ``A < -1`` the integrand has an integrable logarithmic singularity at
``x* = sqrt(-1 - A)``; the range is split there.  Beyond a cutoff ``X``
the integrand is replaced by the first two terms of its expansion in
``A / (1 + x^2)``, integrated analytically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .potentials import DipoleSpecies
from .quantities import Energy, separation
from .tensor import BRANCHES, Branch, tensor_element

DEFAULT_TOL = 1e-10
MAX_EVALUATIONS = 2_000_000
SUBINTERVAL_LIMIT = 500


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int

    def __float__(self):
        return self.value


class QuadratureError(RuntimeError):
    """Raised when an integral misses its tolerance; carries the partial estimate."""

    def __init__(self, message, partial: QuadratureResult):
        super().__init__(message)
        self.partial = partial


def _atan_inv(X):
    # arctan(1/X) = int_X^inf dx / (1 + x^2)
    return math.atan2(1.0, X)


def _inverse_square_tail(X):
    """int_X^inf dx / (1 + x^2)^2 for X >= 10, by its series in 1/X^2."""
    y = 1.0 / (X * X)
    total = 0.0
    power = 1.0 / X**3
    for k in range(40):
        term = (k + 1) * power / (2 * k + 3)
        total += -term if k % 2 else term
        if term < 1e-18 * total:
            break
        power *= y
    return total


def _cutoff(A, tol):
    # Third-order remainder of the tail expansion is below |A|^3 / (15 X^5)
    # once |A| / (1 + X^2) <= 1/2; ask for it to sit well under tol.
    aa = abs(A)
    X = max(20.0, 10.0 * math.sqrt(aa), (2.0 * aa**3 / (15.0 * 0.01 * tol)) ** 0.2)
    return X


def _breakpoints(A, X):
    pts = {0.0, 1.0}
    if A < -1.0:
        pts.add(math.sqrt(-1.0 - A))
    scale = math.sqrt(abs(1.0 + A))
    if scale > 1.0:
        pts.add(scale)
    x = 2.0
    while x < X:
        pts.add(x)
        x *= 4.0
    pts.add(X)
    return sorted(p for p in pts if p <= X)


def _integrate(integrand, A, scale, tol, max_evaluations):
    X = _cutoff(A, tol)
    points = _breakpoints(A, X)
    value = 0.0
    error = 0.0
    evaluations = 0
    per_segment = tol * scale / (4.0 * len(points))
    failures = []
    for lo, hi in zip(points[:-1], points[1:]):
        out = quad(integrand, lo * scale, hi * scale, epsabs=per_segment, epsrel=0.0,
                   limit=SUBINTERVAL_LIMIT, full_output=1)
        value += out[0]
        error += out[1]
        evaluations += out[2]["neval"]
        if len(out) > 3:
            failures.append(f"[{lo:g}, {hi:g}]: {out[3].splitlines()[0]}")
    tail = A * _atan_inv(X) - 0.5 * A * A * _inverse_square_tail(X)
    value += scale * tail
    error += scale * abs(A) ** 3 / (15.0 * X**5) * 2.0
    result = QuadratureResult(value, error, evaluations)
    if failures or error > tol * scale or evaluations > max_evaluations:
        if failures:
            detail = failures[0] + (f" (+{len(failures) - 1} more segments)" if len(failures) > 1 else "")
        else:
            detail = f"error estimate {error:.3g}, {evaluations} evaluations"
        raise QuadratureError(f"log integral for A={A!r} did not converge to {tol:g}: {detail}",
                              result)
    return result


def integrate_log(A, tol=DEFAULT_TOL, max_evaluations=MAX_EVALUATIONS) -> QuadratureResult:
    """Adaptive quadrature of ``int_0^inf ln|1 + A/(1+x^2)| dx``."""
    A = float(A)
    if not math.isfinite(A):
        raise ValueError(f"A must be finite, got {A!r}")
    if A == 0.0:
        return QuadratureResult(0.0, 0.0, 0)

    shift = 1.0 + A

    # (x^2 + 1 + A) / (1 + x^2), kept factored so the zero near A = -1 is resolved
    def integrand(x):
        x2 = x * x
        return math.log(abs(x2 + shift)) - math.log1p(x2)

    return _integrate(integrand, A, 1.0, tol, max_evaluations)


def log_integral(A, tol=DEFAULT_TOL) -> float:
    return integrate_log(A, tol).value


def log_integral_closed_form(A):
    """``pi (Re sqrt(1 + A) - 1)``; what :func:`log_integral` should reproduce."""
    return math.pi * ((math.sqrt(1.0 + A) if A >= -1.0 else 0.0) - 1.0)


def frequency_log_integral(species: DipoleSpecies, T, tol=DEFAULT_TOL) -> QuadratureResult:
    """``int_0^inf ln|1 + alpha(i xi) T| d xi`` integrated in xi (hartree units)."""
    model = species.model
    A = model.alpha0 * T
    if A == 0.0:
        return QuadratureResult(0.0, 0.0, 0)

    def integrand(xi):
        return math.log(abs(1.0 + model.polarizability(xi) * T))

    return _integrate(integrand, A, model.omega0.value, tol, MAX_EVALUATIONS)


def resonance_by_quadrature(species: DipoleSpecies, rho, branch, tol=DEFAULT_TOL,
                            variable="reduced") -> Energy:
    """``hbar int dxi/2pi ln|1 + alpha(i xi) T_jj|`` over the whole imaginary axis.

    ``variable`` chooses integration in the reduced ``x = xi/omega0``
    (``"reduced"``) or directly in ``xi`` (``"frequency"``).
    """
    T = tensor_element(Branch.parse(branch), separation(rho), species.a).value
    if variable == "reduced":
        return species.omega0 * (integrate_log(species.alpha0 * T, tol).value / math.pi)
    if variable == "frequency":
        return Energy(frequency_log_integral(species, T, tol).value / math.pi)
    raise ValueError(f"variable must be 'reduced' or 'frequency', got {variable!r}")


def cp_by_quadrature(species: DipoleSpecies, rho, tol=DEFAULT_TOL) -> Energy:
    """Ground-state potential from ``ln|1 - alpha^2 T^2| = ln|1 + alpha T| + ln|1 - alpha T|``."""
    rho = separation(rho)
    total = 0.0
    for j in BRANCHES:
        A = species.alpha0 * tensor_element(j, rho, species.a).value
        total += integrate_log(A, tol).value + integrate_log(-A, tol).value
    return species.omega0 * (total / (2.0 * math.pi))
