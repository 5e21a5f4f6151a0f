"""Cell-centered grids on a square, complex fields, and midpoint quadrature.

The computational domain is the square [-R, R]^2 truncating the plane.  Nodes
are cell centers z_{jk} = (-R + (j+1/2)h) + i(-R + (k+1/2)h) with h = 2R/n,
stored row-major over (j, k): flat index j*n + k.  All area integrals are
midpoint sums with weight h^2 per node, so the total quadrature weight is
exactly (2R)^2.
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BoundaryMassWarning,
    InvalidArgumentError,
    InvalidWeightError,
    SamplingError,
)

FLOAT_FMT = "%.17g"


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered discretization of [-radius, radius]^2."""

    radius: float
    n: int

    @property
    def spacing(self) -> float:
        return 2.0 * self.radius / self.n

    @property
    def axis(self) -> np.ndarray:
        """Cell-center coordinates along one axis."""
        h = self.spacing
        return -self.radius + (np.arange(self.n) + 0.5) * h

    @property
    def nodes(self) -> np.ndarray:
        """Complex node array of shape (n, n); axis 0 is x, axis 1 is y."""
        x = self.axis
        X, Y = np.meshgrid(x, x, indexing="ij")
        return X + 1j * Y

    @property
    def node_count(self) -> int:
        return self.n * self.n


@dataclass(frozen=True)
class Field:
    """Complex-valued function sampled on a Grid.

    ``zero_band`` records how many boundary rings were zeroed by a
    finite-difference operator (0 for data and spectral results).
    """

    grid: Grid
    values: np.ndarray
    zero_band: int = 0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n, self.grid.n):
            raise InvalidArgumentError(
                f"field shape {v.shape} does not match grid ({self.grid.n}, {self.grid.n})"
            )
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            bad = int(np.flatnonzero(~np.isfinite(v.reshape(-1)))[0])
            raise SamplingError(f"non-finite field value at flat node {bad}", node_index=bad)
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def flat(self) -> np.ndarray:
        """Row-major flat view, index j*n + k."""
        return self.values.reshape(-1)

    def __add__(self, other):
        return Field(self.grid, self.values + _vals(other), max(self.zero_band, _band(other)))

    def __sub__(self, other):
        return Field(self.grid, self.values - _vals(other), max(self.zero_band, _band(other)))

    def __mul__(self, other):
        return Field(self.grid, self.values * _vals(other), max(self.zero_band, _band(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Field(self.grid, -self.values, self.zero_band)

    def conj(self) -> "Field":
        return Field(self.grid, np.conj(self.values), self.zero_band)

    def abs2(self) -> "Field":
        return Field(self.grid, (self.values * np.conj(self.values)).real + 0j, self.zero_band)


def _vals(x):
    return x.values if isinstance(x, Field) else x


def _band(x):
    return x.zero_band if isinstance(x, Field) else 0


def build_grid(radius: float, n: int) -> Grid:
    if not radius > 0:
        raise InvalidArgumentError(f"radius must be positive, got {radius}")
    if n < 8:
        raise InvalidArgumentError(f"n must be at least 8, got {n}")
    return Grid(float(radius), int(n))


def sample(fn, grid: Grid) -> Field:
    """Evaluate a closed-form complex function at every node."""
    vals = np.asarray(fn(grid.nodes), dtype=complex)
    if vals.shape != (grid.n, grid.n):
        vals = np.broadcast_to(vals, (grid.n, grid.n)).copy()
    flatv = vals.reshape(-1)
    bad = np.flatnonzero(~(np.isfinite(flatv.real) & np.isfinite(flatv.imag)))
    if bad.size:
        raise SamplingError(f"non-finite sample at flat node {int(bad[0])}", node_index=int(bad[0]))
    return Field(grid, vals)


def integrate(v: Field) -> complex:
    """Midpoint-rule area integral: h^2 * sum of node values."""
    h = v.grid.spacing
    return complex(h * h * np.sum(v.values))


def weighted_norm_sq(v: Field, w) -> float:
    """Integral of |v|^2 * w; w is a Field (or array) of strictly positive reals."""
    wv = _vals(w)
    wr = np.real(wv)
    if np.any(wr <= 0) or (np.iscomplexobj(wv) and np.any(np.imag(wv) != 0)):
        raise InvalidWeightError("quadrature weight must be strictly positive real")
    h = v.grid.spacing
    return float(h * h * np.sum((v.values.real**2 + v.values.imag**2) * wr))


def boundary_mass(v: Field, frac: float = 0.05) -> float:
    """Relative sup of |v| on the outermost ``frac`` ring of the square."""
    n = v.grid.n
    band = max(1, int(np.ceil(frac * n)))
    mask = np.zeros((n, n), dtype=bool)
    mask[:band, :] = mask[-band:, :] = True
    mask[:, :band] = mask[:, -band:] = True
    peak = float(np.max(np.abs(v.values)))
    if peak == 0.0:
        return 0.0
    return float(np.max(np.abs(v.values[mask])) / peak)


def warn_boundary_mass(v: Field, threshold: float = 1e-14, context: str = "field"):
    m = boundary_mass(v)
    if m > threshold:
        warnings.warn(
            f"{context}: relative boundary mass {m:.3e} exceeds {threshold:.1e}",
            BoundaryMassWarning,
            stacklevel=3,
        )
    return m


def field_to_csv(v: Field) -> str:
    """CSV dump: header re,im,val_re,val_im, one row per node in row-major order."""
    z = v.grid.nodes.reshape(-1)
    vals = v.flat
    buf = io.StringIO()
    buf.write("re,im,val_re,val_im\n")
    fmt = ",".join([FLOAT_FMT] * 4) + "\n"
    for zz, vv in zip(z, vals):
        buf.write(fmt % (zz.real, zz.imag, vv.real, vv.imag))
    return buf.getvalue()
