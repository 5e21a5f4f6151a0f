"""The weighted norm identity, the twisted operators T and T*, and the
kernel characterization of T*.

For a C^2 weight phi and compactly supported smooth v,

    ||dbar v - v dbar(phi)||^2 - ||del v + v del(phi)||^2
        = 2 * integral |v|^2 laplacian_hat(phi) dA.

With T = dbar - M_{dbar phi} and T* = -del - M_{del phi} the left side is
||T v||^2 - ||T* v||^2, and T factors as M_{e^phi} dbar M_{e^{-phi}}, so
k lies in ker T* exactly when e^{phi} conj(k) is entire and square-integrable
against e^{-2 phi}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import diffops
from .errors import DynamicRangeError
from .grid import Field, Grid, sample, warn_boundary_mass, weighted_norm_sq
from .weights import Weight

REL_ERR_FLOOR = 1e-30


@dataclass(frozen=True)
class IdentityReport:
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    scheme: str
    passes: bool
    isometry_mode: bool = False

    def to_dict(self):
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "scheme": self.scheme,
            "passes": self.passes,
            "isometry_mode": self.isometry_mode,
        }


def apply_T(v: Field, w: Weight, scheme: str = "spectral") -> Field:
    """T v = dbar(v) - dbar(phi) * v."""
    return diffops.dbar(v, scheme) - w.sample_dbarphi(v.grid) * v


def apply_Tstar(v: Field, w: Weight, scheme: str = "spectral") -> Field:
    """T* v = -del(v) - del(phi) * v."""
    return -diffops.delz(v, scheme) - w.sample_dphi(v.grid) * v


def verify_norm_identity(v: Field, w: Weight, scheme: str = "spectral",
                         rel_tol: float = 1e-6) -> IdentityReport:
    """Check ||T v||^2 - ||T* v||^2 against 2*integral(|v|^2 lap_hat(phi)).

    For the trivial weight the right side vanishes identically and the check
    degenerates to the isometry |dbar v| vs |del v|: the report then compares
    the two norms directly and the relative error is taken against ||del v||^2.
    """
    warn_boundary_mass(v, context="norm-identity test field")
    one = np.ones((v.grid.n, v.grid.n))
    if w.is_trivial():
        a = weighted_norm_sq(diffops.dbar(v, scheme), one)
        b = weighted_norm_sq(diffops.delz(v, scheme), one)
        abs_err = abs(a - b)
        rel_err = abs_err / max(b, REL_ERR_FLOOR)
        return IdentityReport(a, b, abs_err, rel_err, scheme, rel_err < rel_tol, True)
    lhs = weighted_norm_sq(apply_T(v, w, scheme), one) - weighted_norm_sq(
        apply_Tstar(v, w, scheme), one
    )
    h = v.grid.spacing
    lap = w.sample_lap_hat(v.grid)
    rhs = float(2.0 * h * h * np.sum((v.values.real**2 + v.values.imag**2) * lap))
    abs_err = abs(lhs - rhs)
    rel_err = abs_err / max(abs(rhs), REL_ERR_FLOOR)
    return IdentityReport(lhs, rhs, abs_err, rel_err, scheme, rel_err < rel_tol)


def _guard_exp(expo: np.ndarray, context: str):
    if np.max(expo) > 700.0:
        bad = int(np.argmax(expo.reshape(-1)))
        raise DynamicRangeError(f"{context}: exponent overflow at flat node {bad}", node_index=bad)


def to_dual_picture(u: Field, w: Weight) -> Field:
    """v = e^{phi} u."""
    expo = np.real(np.asarray(w.phi(u.grid.nodes))) * np.ones((u.grid.n, u.grid.n))
    _guard_exp(expo, "to_dual_picture")
    return Field(u.grid, np.exp(expo) * u.values, u.zero_band)


def from_dual_picture(v: Field, w: Weight) -> Field:
    """u = e^{-phi} v; exact inverse of to_dual_picture."""
    expo = -np.real(np.asarray(w.phi(v.grid.nodes))) * np.ones((v.grid.n, v.grid.n))
    _guard_exp(expo, "from_dual_picture")
    return Field(v.grid, np.exp(expo) * v.values, v.zero_band)


def kernel_check(g, w: Weight, grid: Grid, scheme: str = "spectral") -> float:
    """Sup-norm residual of T* applied to e^{-phi} conj(g).

    A small residual certifies that k = e^{-phi} conj(g) lies in ker T*,
    which happens exactly when g is entire (with enough decay of g e^{-phi}).
    """
    expo = -np.real(np.asarray(w.phi(grid.nodes))) * np.ones((grid.n, grid.n))
    _guard_exp(expo, "kernel_check")
    k = Field(grid, np.exp(expo) * np.conj(np.asarray(g(grid.nodes), dtype=complex) * np.ones((grid.n, grid.n))))
    warn_boundary_mass(k, context="kernel_check input")
    r = apply_Tstar(k, w, scheme)
    return diffops.interior_max(r, extra_band=2)
