"""Tests for the alpha-stable samplers, heat kernel and empirical CF.

Monte Carlo assertions use the 3-standard-error convention throughout;
closed forms (Cauchy kernel, scaling identities, radial tail integrals)
serve as independent oracles.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stable_sde import stable_noise as sn
from stable_sde.errors import DomainError, ParameterError


def test_stable_params_validation():
    with pytest.raises(ParameterError):
        sn.StableParams(0.0, 1)
    with pytest.raises(ParameterError):
        sn.StableParams(2.0, 1)
    with pytest.raises(ParameterError):
        sn.StableParams(1.0, 0)


def test_degenerate_grid_single_point():
    p = sn.StableParams(1.5, 1)
    path = sn.sample_increments(p, 0.1, 0, seed=1)
    assert path.times.shape == (1,)
    assert path.values.shape == (1, 1)
    assert path.values[0, 0] == 0.0


def test_increments_shrink_as_dt_to_zero():
    p = sn.StableParams(1.2, 1)
    spread = []
    for dt in (1.0, 1e-2, 1e-4):
        ens = sn.sample_ensemble(p, dt, 1, 4000, seed=5)
        spread.append(np.median(np.abs(ens.values[:, 1, 0])))
    assert spread[0] > spread[1] > spread[2]
    assert spread[2] < 1e-2


def test_deterministic_given_seed():
    p = sn.StableParams(0.7, 2)
    a = sn.sample_increments(p, 0.5, 20, seed=42)
    b = sn.sample_increments(p, 0.5, 20, seed=42)
    np.testing.assert_array_equal(a.values, b.values)
    c = sn.sample_ensemble(p, 0.5, 6, 700, seed=9, threads=1)
    d = sn.sample_ensemble(p, 0.5, 6, 700, seed=9, threads=4)
    np.testing.assert_array_equal(c.values, d.values)


def test_empirical_cf_matches_analytic_cauchy():
    # alpha=1, d=1, t=1, xi=1: CF should be e^{-1}
    p = sn.StableParams(1.0, 1)
    ens = sn.sample_ensemble(p, 0.25, 4, 100_000, seed=77)
    est = sn.empirical_char_function(ens, 1.0, 1.0)
    assert est.agrees_with(np.exp(-1.0))


def test_empirical_cf_alpha_15():
    p = sn.StableParams(1.5, 1)
    ens = sn.sample_ensemble(p, 0.5, 2, 60_000, seed=3)
    est = sn.empirical_char_function(ens, 1.0, 1.0)
    assert est.agrees_with(np.exp(-1.0))


def test_increment_median_is_zero():
    # symmetry of the law: median of each increment coordinate ~ 0
    p = sn.StableParams(0.6, 2)
    ens = sn.sample_ensemble(p, 1.0, 1, 20_000, seed=13)
    x = ens.values[:, 1, :]
    # SE of the sample median is 1/(2 f(0) sqrt(n)); bound f(0) below by the
    # empirical density of a +-h window around 0
    for coord in range(2):
        v = x[:, coord]
        h = np.quantile(np.abs(v), 0.2)
        f0 = np.mean(np.abs(v) < h) / (2 * h)
        se = 1.0 / (2 * f0 * np.sqrt(v.size))
        assert abs(np.median(v)) < 3 * se


def test_cf_at_zero_frequency_is_exactly_one():
    p = sn.StableParams(1.1, 1)
    ens = sn.sample_ensemble(p, 0.5, 4, 500, seed=1)
    est = sn.empirical_char_function(ens, 2.0, 0.0)
    assert est.value == 1.0 + 0.0j
    assert est.se == 0.0


def test_cf_requires_grid_time_and_nonempty_ensemble():
    p = sn.StableParams(1.0, 1)
    ens = sn.sample_ensemble(p, 0.5, 4, 10, seed=1)
    with pytest.raises(ParameterError):
        sn.empirical_char_function(ens, 0.3, 1.0)
    with pytest.raises(ParameterError):
        sn.empirical_char_function([], 0.5, 1.0)


def test_scaling_property():
    # Law(L_t) = kappa^{1/alpha} Law(L_{t/kappa}) checked through CFs
    kappa, t = 4.0, 1.0
    for alpha in (0.8, 1.5):
        p = sn.StableParams(alpha, 1)
        ens_a = sn.sample_ensemble(p, t / 8, 8, 40_000, seed=101)
        ens_b = sn.sample_ensemble(p, t / (8 * kappa), 8, 40_000, seed=202)
        for xi in (0.5, 1.0, 2.0):
            ea = sn.empirical_char_function(ens_a, t, xi)
            eb = sn.empirical_char_function(ens_b, t / kappa, kappa ** (1 / alpha) * xi)
            assert ea.agrees_with(eb), (alpha, xi)


def test_levy_ito_poisson_jump_count():
    # eps=1: expected number of jumps on [0,1] is nu({|z|>=1}) (closed-form
    # radial integral of c(1,alpha)|z|^{-1-alpha})
    p = sn.StableParams(0.5, 1)
    lam = sn.levy_tail_mass(p, 1.0)
    c = sn.levy_measure_constant(1, 0.5)
    assert lam == pytest.approx(2 * c / 0.5, rel=1e-12)
    counts = np.array(
        [len(sn.sample_via_levy_ito(p, 0.1, 10, 1.0, seed=s).jumps) for s in range(500)]
    )
    se = counts.std(ddof=1) / np.sqrt(counts.size)
    assert abs(counts.mean() - lam) < 3 * se


def test_levy_ito_cf_small_cutoff():
    # as eps -> 0 the law approaches exp(-t); alpha=1 here
    p = sn.StableParams(1.0, 1)
    ens = sn.levy_ito_ensemble(p, 0.25, 4, 30_000, 1e-3, seed=31)
    est = sn.empirical_char_function(ens, 1.0, 1.0)
    assert est.agrees_with(np.exp(-1.0))


def test_levy_ito_zero_duration_records_no_jumps():
    p = sn.StableParams(0.9, 1)
    path = sn.sample_via_levy_ito(p, 0.5, 0, 0.5, seed=4)
    assert path.jumps == []
    assert path.values.shape == (1, 1)


def test_levy_ito_rejects_bad_cutoff():
    p = sn.StableParams(0.9, 1)
    with pytest.raises(ParameterError):
        sn.sample_via_levy_ito(p, 0.5, 4, 0.0, seed=4)
    with pytest.raises(ParameterError):
        sn.sample_via_levy_ito(p, 0.5, 4, -1.0, seed=4)


def test_sampler_equivalence_direct_vs_levy_ito():
    p = sn.StableParams(0.8, 1)
    direct = sn.sample_ensemble(p, 0.25, 4, 30_000, seed=51)
    li = sn.levy_ito_ensemble(p, 0.25, 4, 30_000, 1e-3, seed=52)
    for xi in (0.5, 1.0, 2.0):
        ea = sn.empirical_char_function(direct, 1.0, xi)
        eb = sn.empirical_char_function(li, 1.0, xi)
        assert ea.agrees_with(eb), xi


def test_jump_records_respect_cutoff():
    p = sn.StableParams(0.7, 1)
    path = sn.sample_via_levy_ito(p, 0.2, 20, 0.3, seed=8)
    assert path.jump_cutoff == 0.3
    for t, z in path.jumps:
        assert np.linalg.norm(z) >= 0.3
        assert 0.0 < t <= path.times[-1]


# ---------------------------------------------------------------------------
# Heat kernel
# ---------------------------------------------------------------------------

def cauchy_kernel(t, x):
    return t / (np.pi * (t * t + x * x))


def test_heat_kernel_matches_cauchy_closed_form():
    p = sn.StableParams(1.0, 1)
    for x in np.linspace(-4.0, 4.0, 9):
        assert sn.heat_kernel(p, 1.0, x) == pytest.approx(cauchy_kernel(1.0, x), abs=1e-9)
    assert sn.heat_kernel(p, 1.0, 0.0) == pytest.approx(1 / np.pi, abs=1e-12)


def test_heat_kernel_rejects_nonpositive_time():
    p = sn.StableParams(1.0, 1)
    with pytest.raises(DomainError):
        sn.heat_kernel(p, 0.0, 0.0)
    with pytest.raises(DomainError):
        sn.heat_kernel(p, -1.0, 0.0)


def test_heat_kernel_nonnegative_and_even():
    p = sn.StableParams(1.6, 1)
    for x in (0.0, 0.3, 1.7, 5.0):
        k = sn.heat_kernel(p, 0.7, x)
        assert k >= 0.0
        assert k == pytest.approx(sn.heat_kernel(p, 0.7, -x), rel=1e-10)


def test_heat_kernel_normalisation():
    for alpha in (0.5, 1.0, 1.5):
        mass = sn.heat_kernel_mass(sn.StableParams(alpha, 1), 1.0)
        assert mass == pytest.approx(1.0, abs=1e-6), alpha


def test_heat_kernel_self_similarity():
    # K(t,x) = t^{-d/alpha} K(1, t^{-1/alpha} x)
    for alpha in (0.6, 1.0, 1.5):
        p = sn.StableParams(alpha, 1)
        for t, x in ((4.0, 0.0), (4.0, 0.7), (0.5, 1.3)):
            lhs = sn.heat_kernel(p, t, x)
            rhs = t ** (-1 / alpha) * sn.heat_kernel(p, 1.0, t ** (-1 / alpha) * x)
            assert lhs == pytest.approx(rhs, rel=1e-7)
    p1 = sn.StableParams(1.0, 1)
    assert sn.heat_kernel(p1, 4.0, 0.0) == pytest.approx(sn.heat_kernel(p1, 1.0, 0.0) / 4, rel=1e-10)


def test_heat_kernel_upper_bound_fit_is_stable():
    # K(t,x) <= C t (t^{1/alpha}+|x|)^{-d-alpha}: the fitted C (max ratio)
    # must be finite and move by less than a factor 2 under grid refinement
    p = sn.StableParams(1.3, 1)

    def fit_c(nx, nt):
        ts = np.linspace(0.2, 2.0, nt)
        xs = np.linspace(0.0, 8.0, nx)
        ratios = []
        for t in ts:
            for x in xs:
                bound = t * (t ** (1 / p.alpha) + abs(x)) ** (-1 - p.alpha)
                ratios.append(sn.heat_kernel(p, t, x) / bound)
        return max(ratios)

    c1 = fit_c(11, 4)
    c2 = fit_c(21, 7)
    assert np.isfinite(c1) and np.isfinite(c2)
    assert 0.5 < c1 / c2 < 2.0


def test_heat_kernel_dim2_mass_and_radial_symmetry():
    p = sn.StableParams(1.3, 2)
    k1 = sn.heat_kernel(p, 1.0, [0.5, 0.0])
    k2 = sn.heat_kernel(p, 1.0, [0.0, 0.5])
    k3 = sn.heat_kernel(p, 1.0, [0.3, 0.4])
    assert k1 == pytest.approx(k2, rel=1e-9)
    assert k1 == pytest.approx(k3, rel=1e-9)
    tab = sn.heat_kernel_table(p, [1.0], np.linspace(0, 40, 401))
    # grid mass plus the first-order tail t * nu({|z| > R}) should reach 1
    tail = sn.levy_tail_mass(p, 40.0)
    assert tab.radial_mass()[0] + tail == pytest.approx(1.0, abs=1e-3)


def test_heat_kernel_table_validates():
    p = sn.StableParams(1.0, 1)
    tab = sn.heat_kernel_table(p, [0.5, 1.0], np.linspace(0, 80, 1201))
    tab.validate(mass_tol=1e-2)
    with pytest.raises(DomainError):
        sn.heat_kernel_table(p, [0.0, 1.0], [0.0, 1.0])


def test_cadlag_path_invariants():
    with pytest.raises(ParameterError):
        sn.CadlagPath([0.0, 0.0], [[0.0], [1.0]])
    with pytest.raises(ParameterError):
        sn.CadlagPath([0.0, 1.0], [[0.0], [1.0]], jumps=[(0.5, np.array([0.1]))], jump_cutoff=0.5)


@settings(max_examples=20, deadline=None)
@given(
    alpha=st.floats(0.3, 1.9),
    dt=st.floats(1e-3, 2.0),
    seed=st.integers(0, 2**31),
)
def test_path_shape_properties(alpha, dt, seed):
    p = sn.StableParams(alpha, 1)
    path = sn.sample_increments(p, dt, 5, seed=seed)
    assert path.values[0, 0] == 0.0
    assert np.all(np.diff(path.times) > 0)
    assert np.all(np.isfinite(path.values))
