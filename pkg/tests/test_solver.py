import numpy as np
import pytest

from dbarkit import build_grid, custom_weight, fock_weight, sample
from dbarkit.bumps import random_suite
from dbarkit.errors import InvalidArgumentError, WeightInvariantViolationError
from dbarkit.grid import Field
from dbarkit.solver import (
    cauchy_transform,
    check_hormander_bound,
    dbar_invert_spectral,
    fock_bergman_project,
    fock_bergman_project_dense,
    solve_dbar,
    support_radius,
    uniqueness_probe,
)


@pytest.fixture(scope="module")
def member():
    return random_suite(1, 42)[0]


@pytest.fixture(scope="module")
def compliant(grid_default, member):
    # the derivative of a compactly supported field has all moments zero
    return member.sample_dbar(grid_default)


@pytest.fixture(scope="module")
def fock():
    return fock_weight(1.0)


def gauss_norm(field):
    g = field.grid
    w = np.exp(-np.abs(g.nodes) ** 2)
    return float(np.sqrt(g.spacing**2 * np.sum(np.abs(field.values) ** 2 * w)))


def test_support_radius_examples(grid_default, member):
    zero = Field(grid_default, np.zeros((256, 256), dtype=complex))
    assert support_radius(zero) == 0.0
    r = support_radius(member.sample(grid_default))
    assert abs(r - member.support_radius) < 0.2


def test_cauchy_of_zero_is_zero(grid_small):
    zero = Field(grid_small, np.zeros((64, 64), dtype=complex))
    assert np.all(cauchy_transform(zero).values == 0)


def test_cauchy_dense_matches_fft(member):
    g = build_grid(6.0, 64)
    f = member.sample_dbar(g)
    ud = cauchy_transform(f, method="dense")
    uf = cauchy_transform(f, method="fft")
    assert np.max(np.abs((ud - uf).values)) < 1e-10


def test_cauchy_converges_to_exact_inverse(member):
    errs = []
    for n in [64, 128]:
        g = build_grid(6.0, n)
        u = cauchy_transform(member.sample_dbar(g))
        errs.append(np.max(np.abs((u - member.sample(g)).values)))
    assert np.log2(errs[0] / errs[1]) > 1.0  # at least first order
    assert errs[1] < 0.2


def test_cauchy_rejects_bad_method(grid_small):
    zero = Field(grid_small, np.zeros((64, 64), dtype=complex))
    with pytest.raises(InvalidArgumentError):
        cauchy_transform(zero, method="multipole")


def test_spectral_solve_compliant(grid_default, member, compliant, fock):
    rep = solve_dbar(compliant, fock)
    assert not rep.non_orthogonal_datum
    assert rep.moment_rel_max < 1e-6
    assert rep.residual_inf < 1e-6
    # the decaying solution vanishes outside the support disk
    assert rep.tail_mass < 1e-3
    # and agrees with the field whose derivative was taken
    err = np.max(np.abs((rep.u - member.sample(grid_default)).values))
    assert err < 1e-3


def test_spectral_solve_bound_holds(compliant, fock):
    rep = solve_dbar(compliant, fock)
    assert rep.h2_passes
    assert rep.h2_lhs <= rep.h2_rhs * 1.01


def test_spectral_solve_growing_weights(compliant):
    for spec in [{"name": "fock", "t": 0.5}, {"name": "cosh-x"}]:
        rep = solve_dbar(compliant, custom_weight(spec))
        assert rep.h2_passes


def test_gaussian_datum_is_flagged(grid_default, gaussian_field, fock):
    rep = solve_dbar(gaussian_field, fock)
    assert rep.non_orthogonal_datum
    assert rep.moment_rel_max > 0.1


def test_sharpness_of_constant_half(fock):
    # f = -z e^{-|z|^2} solves dbar u = f with u = e^{-|z|^2}; both sides of
    # the bound then equal pi, so the constant 1/2 cannot be improved
    g = build_grid(6.0, 256)
    f = sample(lambda z: -z * np.exp(-np.abs(z) ** 2), g)
    rep = solve_dbar(f, fock)
    assert abs(rep.h2_lhs - np.pi) < 1e-8
    assert abs(rep.h2_rhs - np.pi) < 1e-8
    assert abs(rep.h2_lhs / rep.h2_rhs - 1.0) < 1e-8


def test_solve_rejects_bad_method(compliant, fock):
    with pytest.raises(InvalidArgumentError):
        solve_dbar(compliant, fock, method="lu")


def test_spectral_inverse_left_inverse(grid_default, member):
    from dbarkit.diffops import dbar, interior_max

    u = dbar_invert_spectral(member.sample_dbar(grid_default))
    res = dbar(u, "spectral") - member.sample_dbar(grid_default)
    assert interior_max(res, extra_band=2) < 1e-6


def test_projection_fixes_constants(grid_default):
    one = Field(grid_default, np.ones((256, 256), dtype=complex))
    p1 = fock_bergman_project(one)
    assert gauss_norm(p1 - one) < 1e-9
    inner = np.abs(grid_default.nodes) < 4
    assert np.max(np.abs(p1.values - 1.0)[inner]) < 1e-6


def test_projection_kills_antianalytic(grid_default):
    zb = Field(grid_default, np.conj(grid_default.nodes))
    assert gauss_norm(fock_bergman_project(zb)) < 1e-9


def test_projection_idempotent(grid_default, member):
    u = member.sample(grid_default)
    pu = fock_bergman_project(u)
    assert gauss_norm(fock_bergman_project(pu) - pu) < 1e-7


def test_projection_self_adjoint(grid_default):
    g = grid_default
    gauss = np.exp(-np.abs(g.nodes) ** 2)
    mem = random_suite(2, seed=5)
    u = mem[0].sample(g)
    v = mem[1].sample(g)

    def ip(a, b):
        return g.spacing**2 * np.sum(a.values * np.conj(b.values) * gauss)

    lhs = ip(fock_bergman_project(u), v)
    rhs = ip(u, fock_bergman_project(v))
    assert abs(lhs - rhs) / abs(rhs) < 1e-10


def test_projection_series_matches_dense_kernel(member):
    g = build_grid(6.0, 48)
    u = member.sample(g)
    ps = fock_bergman_project(u)
    pd = fock_bergman_project_dense(u)
    assert gauss_norm(ps - pd) < 1e-10


def test_dense_projection_guards_size(grid_default):
    u = Field(grid_default, np.zeros((256, 256), dtype=complex))
    with pytest.raises(InvalidArgumentError):
        fock_bergman_project_dense(u)


def test_minimal_solution_bound(compliant, fock):
    rep = check_hormander_bound(compliant, fock)
    assert rep.passes
    assert rep.h1_lhs <= rep.h1_rhs * 1.01
    assert rep.projection_idempotence_err < 1e-6


def test_minimal_solution_bound_zero_datum(grid_default, fock):
    zero = Field(grid_default, np.zeros((256, 256), dtype=complex))
    rep = check_hormander_bound(zero, fock)
    assert rep.h1_lhs == 0.0
    assert rep.passes


def test_minimal_solution_bound_fock_only(compliant):
    with pytest.raises(InvalidArgumentError):
        check_hormander_bound(compliant, custom_weight({"name": "cosh-x"}))
    with pytest.raises(InvalidArgumentError):
        check_hormander_bound(compliant, fock_weight(2.0))


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_uniqueness_probe_energies_blow_up(compliant, fock, p):
    rep = solve_dbar(compliant, fock)
    d = uniqueness_probe(rep.u, fock, p)
    assert d["monotone"]
    assert d["growth_ratio"] > 1e3


def test_uniqueness_probe_zero_amplitude(compliant, fock):
    rep = solve_dbar(compliant, fock)
    d = uniqueness_probe(rep.u, fock, 1, amplitude=0.0)
    assert d["energies"][-1] == 0.0
    assert d["growth_ratio"] == 0.0


def test_uniqueness_probe_rejects_bad_inputs(compliant, fock):
    rep = solve_dbar(compliant, fock)
    with pytest.raises(InvalidArgumentError):
        uniqueness_probe(rep.u, fock, 4)
    with pytest.raises(WeightInvariantViolationError):
        uniqueness_probe(rep.u, custom_weight({"name": "quartic"}), 1)
