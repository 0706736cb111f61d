"""Solver correctness: exact cases, conservation, reversal, cross-checks."""

import numpy as np
import pytest

from fracwave.dynamics import (
    BlowupError,
    EvolutionSpec,
    PairField,
    Variant,
    conserved_quantities,
    evolve,
    linear_propagate,
    nonlinear_phase_step,
    pair_conserved,
    picard_iterate,
    szego_energy,
)
from fracwave.field import (
    from_modes,
    l2_norm,
    linf_norm,
    random_decaying_field,
    sobolev_norm,
    szego_project,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        EvolutionSpec(Variant.FRACTIONAL_NLS)  # alpha required
    with pytest.raises(ValueError):
        EvolutionSpec(Variant.FRACTIONAL_NLS, 2.5)
    with pytest.raises(ValueError):
        EvolutionSpec(Variant.HALF_WAVE, 1.5)
    with pytest.raises(ValueError):
        EvolutionSpec(Variant.SZEGO, 1.0)
    assert EvolutionSpec(Variant.HALF_WAVE).alpha == 1.0
    assert EvolutionSpec(Variant.QUADRATIC_PAIR).alpha == 1.0


def test_pair_field_requires_matching_bandwidth():
    with pytest.raises(ValueError):
        PairField(
            random_decaying_field(4, 1.0, seed=0),
            random_decaying_field(5, 1.0, seed=1),
        )


def test_linear_propagate_exact_phases():
    u = from_modes(3, {-2: 1.0, 1: 1.0j})
    v = linear_propagate(u, 0.7, 1.5)
    assert v.coeff(-2) == pytest.approx(np.exp(-1j * 0.7 * 2.0**1.5))
    assert v.coeff(1) == pytest.approx(1j * np.exp(-1j * 0.7))
    assert sobolev_norm(v, 2.3) == pytest.approx(sobolev_norm(u, 2.3))


def test_nonlinear_phase_step_dense_grid_oracle():
    # exact flow e^{-i|u|^2 tau} u sampled on an independent oversize grid,
    # then projected; must agree with the implementation to rounding
    from fracwave.field import field_from_grid, grid_values

    u = random_decaying_field(8, 2.0, seed=0)
    v = nonlinear_phase_step(u, 0.3)
    g = 1024
    w = grid_values(u, g)
    oracle = field_from_grid(w * np.exp(-1j * 0.3 * np.abs(w) ** 2), 8)
    # both are projections of the same non-band-limited function; they differ
    # only through aliasing of modes above each grid's threshold
    assert l2_norm(v - oracle) < 1e-6
    # the projection sheds only a tiny high-mode tail
    assert l2_norm(v) == pytest.approx(l2_norm(u), rel=1e-4)
    with pytest.raises(ValueError):
        nonlinear_phase_step(u, 0.3, grid_size=16)


def test_plane_wave_closed_form():
    # u0 = a e^{ikx} evolves as a e^{i(kx - (|k|^alpha + |a|^2) t)}
    for alpha in (0.8, 1.0, 1.5, 2.0):
        a, k = 0.7 - 0.2j, 3
        u0 = from_modes(5, {k: a})
        traj = evolve(u0, EvolutionSpec(Variant.FRACTIONAL_NLS, alpha), 1.0, 1e-3)
        expected = a * np.exp(-1j * (3.0**alpha + abs(a) ** 2) * 1.0)
        got = traj.states[-1].coeff(k)
        assert abs(got - expected) < 1e-10
        others = [traj.states[-1].coeff(m) for m in range(-5, 6) if m != k]
        assert max(abs(c) for c in others) < 1e-13


def test_evolve_validates_arguments():
    u = random_decaying_field(4, 1.0, seed=0)
    spec = EvolutionSpec(Variant.FRACTIONAL_NLS, 1.5)
    with pytest.raises(ValueError):
        evolve(u, spec, 1.0, -0.1)
    with pytest.raises(ValueError):
        evolve(u, spec, 0.0, 0.1)
    with pytest.raises(ValueError):
        evolve(u, spec, 1.05, 0.1)  # not an integer multiple
    with pytest.raises(ValueError):
        evolve(u, spec, 1.0, 0.1, sample_every=0)


def test_trajectory_sampling_layout():
    u = random_decaying_field(4, 1.0, seed=0)
    spec = EvolutionSpec(Variant.FRACTIONAL_NLS, 1.5)
    traj = evolve(u, spec, 1.0, 0.1, sample_every=3)
    # t = 0, then every 3rd step, then the final step regardless
    assert np.allclose(traj.times, [0.0, 0.3, 0.6, 0.9, 1.0])


def test_conservation_short_run_all_scalar_variants():
    u0 = random_decaying_field(32, 3.0, seed=0)
    for variant, alpha in (
        (Variant.FRACTIONAL_NLS, 1.5),
        (Variant.HALF_WAVE, None),
    ):
        spec = EvolutionSpec(variant, alpha)
        traj = evolve(u0, spec, 1.0, 1e-3, sample_every=1000)
        a = spec.alpha
        r0, r1 = conserved_quantities(u0, a), conserved_quantities(
            traj.states[-1], a
        )
        assert abs(r1.Q - r0.Q) / r0.Q < 1e-12
        assert abs(r1.M - r0.M) / max(abs(r0.M), 1.0) < 1e-9
        assert abs(r1.H - r0.H) / abs(r0.H) < 1e-7


def test_szego_flow_stays_in_positive_range():
    u0 = szego_project(random_decaying_field(16, 2.0, seed=1))
    traj = evolve(u0, EvolutionSpec(Variant.SZEGO), 0.5, 1e-3, sample_every=100)
    for state in traj.states:
        assert np.all(state.coeffs[: state.max_mode] == 0)
    assert szego_energy(traj.states[-1]) == pytest.approx(
        szego_energy(u0), rel=1e-10
    )


def test_pair_conservation_short_run():
    p0 = PairField(
        random_decaying_field(16, 3.0, seed=2),
        random_decaying_field(16, 3.0, seed=3),
    )
    traj = evolve(p0, EvolutionSpec(Variant.QUADRATIC_PAIR), 1.0, 1e-3, 1000)
    r0, r1 = pair_conserved(p0), pair_conserved(traj.states[-1])
    assert abs(r1.Qtilde - r0.Qtilde) / r0.Qtilde < 1e-12
    assert abs(r1.Htilde - r0.Htilde) / abs(r0.Htilde) < 1e-7


def test_time_reversal_round_trip():
    u0 = random_decaying_field(12, 3.0, seed=4)
    spec = EvolutionSpec(Variant.FRACTIONAL_NLS, 1.3)
    fwd = evolve(u0, spec, 0.5, 1e-3).states[-1]
    back = evolve(fwd, spec, -0.5, 1e-3).states[-1]
    # the discrete backward flow inverts the forward one up to the aliasing
    # tail the Galerkin projection sheds in each nonlinear substep
    assert l2_norm(back - u0) < 1e-7
    assert evolve(u0, spec, -0.5, 1e-3).times[-1] == pytest.approx(-0.5)


def test_szego_time_reversal_round_trip():
    u0 = szego_project(random_decaying_field(12, 2.0, seed=5))
    spec = EvolutionSpec(Variant.SZEGO)
    fwd = evolve(u0, spec, 0.25, 5e-4).states[-1]
    back = evolve(fwd, spec, -0.25, 5e-4).states[-1]
    assert l2_norm(back - u0) < 1e-9


def test_pair_time_reversal_round_trip():
    p0 = PairField(
        random_decaying_field(8, 2.0, seed=6),
        random_decaying_field(8, 2.0, seed=7),
    )
    spec = EvolutionSpec(Variant.QUADRATIC_PAIR)
    fwd = evolve(p0, spec, 0.25, 5e-4).states[-1]
    back = evolve(fwd, spec, -0.25, 5e-4).states[-1]
    assert l2_norm(back.u1 - p0.u1) + l2_norm(back.u2 - p0.u2) < 1e-9


def test_strang_second_order_convergence():
    u0 = random_decaying_field(16, 3.0, seed=8)
    spec = EvolutionSpec(Variant.FRACTIONAL_NLS, 1.5)
    ref = evolve(u0, spec, 0.5, 1.25e-4).states[-1]
    e1 = l2_norm(evolve(u0, spec, 0.5, 4e-3).states[-1] - ref)
    e2 = l2_norm(evolve(u0, spec, 0.5, 2e-3).states[-1] - ref)
    assert e1 / e2 == pytest.approx(4.0, rel=0.15)


def test_picard_matches_evolve_short_time():
    u0 = random_decaying_field(16, 2.0, seed=9)
    for alpha in (1.0, 1.5):
        uP = picard_iterate(u0, alpha, 0.01)
        uE = evolve(
            u0, EvolutionSpec(Variant.FRACTIONAL_NLS, alpha), 0.01, 1e-5
        ).states[-1]
        assert sobolev_norm(uP - uE, alpha / 2.0) < 1e-7


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_blowup_reported_with_partial_trajectory():
    # Szego RK4 with a hugely violated step-size restriction overflows fast.
    u0 = szego_project(random_decaying_field(8, 0.5, seed=10)) * 50.0
    with pytest.raises(BlowupError) as err:
        evolve(u0, EvolutionSpec(Variant.SZEGO), 10.0, 0.5, sample_every=1)
    assert err.value.last_valid_time >= 0.0
    assert hasattr(err.value, "trajectory")
    assert len(err.value.trajectory.times) >= 1


def test_conserved_report_values_single_mode():
    u = from_modes(3, {2: 2.0})
    r = conserved_quantities(u, 1.5)
    assert r.Q == pytest.approx(2.0)  # |c|^2 / 2
    assert r.M == pytest.approx(8.0)  # k |c|^2
    # H = (1/2) 2^1.5 * 4 + (1/4) * 16
    assert r.H == pytest.approx(0.5 * 2.0**1.5 * 4.0 + 4.0)
    assert szego_energy(u) == pytest.approx(4.0)
