r"""Non-retarded susceptibility tensor of two Gaussian dipole clouds.

With :math:`t = \rho/a` the diagonal elements are

.. math::

    T_{xx} = T_{yy} = -\frac{1}{\sqrt\pi\,\rho^3}
        \left[\sqrt\pi\,\mathrm{erf}(t) - 2t e^{-t^2}\right]

    T_{zz} = -\frac{2}{\sqrt\pi\,\rho^3}
        \left[-\sqrt\pi\,\mathrm{erf}(t) + 2t(1+t^2) e^{-t^2}\right]

Both brackets vanish like :math:`t^3` while their terms are O(1), so
below :data:`T_SWITCH` they are replaced by Taylor series obtained by
integrating the bracket derivatives term by term.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .quantities import positive_length, separation

T_SWITCH = 0.5

_SQRT_PI = math.sqrt(math.pi)
CONTACT_FACTOR = 4.0 / (3.0 * _SQRT_PI)

_SERIES_MAX_TERMS = 80


class Branch(str, enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"

    @classmethod
    def parse(cls, tag):
        if isinstance(tag, cls):
            return tag
        try:
            return cls(str(tag).lower())
        except ValueError:
            raise ValueError(f"branch must be one of x, y, z; got {tag!r}") from None


BRANCHES = (Branch.X, Branch.Y, Branch.Z)


@dataclass(frozen=True)
class TensorElement:
    """A diagonal tensor value in bohr^-3 with its reduced separation."""

    branch: Branch
    value: float
    t: float

    def __float__(self):
        return self.value


def erf(t: float) -> float:
    """Error function for ``t >= 0``.

    Backed by the C library ``erf``, which is accurate to about one ulp.
    """
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"erf argument must be finite and >= 0, got {t!r}")
    return math.erf(t)


# f(t) = bracket / t^3, i.e. -sqrt(pi) * a^3 * T_jj (x) and
# -sqrt(pi) * a^3 * T_zz / 2 (z).

def _reduced_x_series(t):
    # bracket' = 4 t^2 exp(-t^2)
    t2 = t * t
    total = 0.0
    power = 1.0  # (-t^2)^n / n!
    for n in range(_SERIES_MAX_TERMS):
        term = 4.0 * power / (2 * n + 3)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        power *= -t2 / (n + 1)
    return total


def _reduced_z_series(t):
    # bracket' = (2 t^2 - 4 t^4) exp(-t^2)
    t2 = t * t
    total = 0.0
    power = 1.0
    for n in range(_SERIES_MAX_TERMS):
        term = power * (2.0 / (2 * n + 3) - 4.0 * t2 / (2 * n + 5))
        total += term
        if n > 1 and abs(term) <= 1e-17 * abs(total):
            break
        power *= -t2 / (n + 1)
    return total


def _reduced_x_direct(t):
    return (_SQRT_PI * math.erf(t) - 2.0 * t * math.exp(-t * t)) / t**3


def _reduced_z_direct(t):
    return (-_SQRT_PI * math.erf(t) + 2.0 * t * (1.0 + t * t) * math.exp(-t * t)) / t**3


def reduced_element(branch, t, method="auto"):
    r"""Return :math:`\sqrt\pi a^3 T_{jj}` as a function of ``t``.

    ``method`` selects ``"series"``, ``"direct"`` or ``"auto"`` (series
    below :data:`T_SWITCH`).
    """
    branch = Branch.parse(branch)
    if method == "auto":
        method = "series" if t < T_SWITCH else "direct"
    if method == "series":
        f = _reduced_z_series(t) if branch is Branch.Z else _reduced_x_series(t)
    elif method == "direct":
        if t == 0:
            raise ValueError("direct evaluation is singular at t = 0")
        f = _reduced_z_direct(t) if branch is Branch.Z else _reduced_x_direct(t)
    else:
        raise ValueError(f"unknown method {method!r}")
    return -2.0 * f if branch is Branch.Z else -f


def tensor_element(branch, rho, a, method="auto") -> TensorElement:
    branch = Branch.parse(branch)
    a = positive_length(a, "a")
    rho = separation(rho)
    t = rho / a
    value = reduced_element(branch, t, method) / (_SQRT_PI * a**3)
    return TensorElement(branch, value, t)


def t_xx(rho, a) -> TensorElement:
    return tensor_element(Branch.X, rho, a)


def t_zz(rho, a) -> TensorElement:
    return tensor_element(Branch.Z, rho, a)


def t_contact(a, branch=Branch.X) -> TensorElement:
    """Common value of every diagonal element at zero separation."""
    a = positive_length(a, "a")
    return TensorElement(Branch.parse(branch), -CONTACT_FACTOR / a**3, 0.0)
