"""Compactly supported smooth test functions with closed-form derivatives.

The suite consists of v = b * p where b is the radial bump

    b(z) = exp(1 / (|z-c|^2 / rho^2 - 1))   for |z-c| < rho, else 0,

and p(z, zbar) is a polynomial of degree <= 4 in z and zbar with seeded
random coefficients in the unit disk.  Both dbar(v) and del(v) are available
in closed form, so suite members serve as independent oracles for the
discrete operators and the solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Field, Grid


@dataclass(frozen=True)
class Poly2:
    """Polynomial sum c_{ab} z^a zbar^b, coefficients keyed by (a, b)."""

    coeffs: tuple

    @staticmethod
    def from_dict(d) -> "Poly2":
        return Poly2(tuple(sorted(d.items())))

    def __call__(self, z):
        out = np.zeros(np.shape(z), dtype=complex)
        zb = np.conj(z)
        for (a, b), c in self.coeffs:
            out = out + c * z**a * zb**b
        return out

    def dz(self) -> "Poly2":
        return Poly2.from_dict(
            {(a - 1, b): a * c for (a, b), c in self.coeffs if a > 0}
        )

    def dzbar(self) -> "Poly2":
        return Poly2.from_dict(
            {(a, b - 1): b * c for (a, b), c in self.coeffs if b > 0}
        )

    def degree(self) -> int:
        return max((a + b for (a, b), _ in self.coeffs), default=0)


@dataclass(frozen=True)
class BumpPoly:
    """v = bump(z; center, rho) * poly(z, zbar), with exact first derivatives."""

    center: complex
    rho: float
    poly: Poly2

    @property
    def support_radius(self) -> float:
        """Radius about the origin containing the support."""
        return abs(self.center) + self.rho

    def _s(self, z):
        d = z - self.center
        return (d.real**2 + d.imag**2) / self.rho**2

    def bump(self, z):
        s = self._s(np.asarray(z, dtype=complex))
        out = np.zeros_like(s)
        m = s < 1.0
        out[m] = np.exp(1.0 / (s[m] - 1.0))
        return out

    def _bump_factor(self, z):
        """bump and the common derivative factor -bump/(s-1)^2 / rho^2."""
        s = self._s(np.asarray(z, dtype=complex))
        b = np.zeros_like(s)
        fac = np.zeros_like(s)
        m = s < 1.0
        b[m] = np.exp(1.0 / (s[m] - 1.0))
        fac[m] = -b[m] / (s[m] - 1.0) ** 2 / self.rho**2
        return b, fac

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self.bump(z) * self.poly(z)

    def dbar(self, z):
        """Closed-form dbar(v): dbar(b) p + b dbar(p), dbar(b) = fac * (z - c)."""
        z = np.asarray(z, dtype=complex)
        b, fac = self._bump_factor(z)
        return fac * (z - self.center) * self.poly(z) + b * self.poly.dzbar()(z)

    def dz(self, z):
        z = np.asarray(z, dtype=complex)
        b, fac = self._bump_factor(z)
        return fac * np.conj(z - self.center) * self.poly(z) + b * self.poly.dz()(z)

    def sample(self, grid: Grid) -> Field:
        return Field(grid, self(grid.nodes))

    def sample_dbar(self, grid: Grid) -> Field:
        return Field(grid, self.dbar(grid.nodes))

    def sample_dz(self, grid: Grid) -> Field:
        return Field(grid, self.dz(grid.nodes))


def random_suite(count: int, seed: int, max_center: float = 0.9,
                 rho_range=(1.8, 2.6), degree: int = 4) -> list[BumpPoly]:
    """Seeded suite of bump-times-polynomial test functions.

    Centers stay within ``max_center`` of the origin and radii within
    ``rho_range`` so every member is supported well inside the default
    R = 6 square.
    """
    rng = np.random.default_rng(seed)
    suite = []
    for _ in range(count):
        c = max_center * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
        rho = rng.uniform(*rho_range)
        coeffs = {}
        for a in range(degree + 1):
            for b in range(degree + 1 - a):
                r = np.sqrt(rng.uniform())
                th = rng.uniform(0.0, 2.0 * np.pi)
                coeffs[(a, b)] = r * np.exp(1j * th)
        suite.append(BumpPoly(c, rho, Poly2.from_dict(coeffs)))
    return suite


def radial_window(r_plateau: float, r_support: float):
    """C-infinity cutoff: exactly 1 for |z| <= r_plateau, 0 for |z| >= r_support.

    Useful for plateau-style operator tests; no closed-form derivatives.
    """
    if not 0 < r_plateau < r_support:
        raise ValueError("need 0 < r_plateau < r_support")

    def g(t):
        out = np.zeros_like(t)
        m = t > 0
        out[m] = np.exp(-1.0 / t[m])
        return out

    def window(z):
        r = np.abs(np.asarray(z, dtype=complex))
        t = (r_support - r) / (r_support - r_plateau)
        gt = g(np.clip(t, 0.0, 1.0))
        g1t = g(np.clip(1.0 - t, 0.0, 1.0))
        return gt / (gt + g1t)

    return window
