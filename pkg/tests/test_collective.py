import math

import numpy as np
import pytest

from bellscope.collective import (
    SymmetricState,
    bell_operator,
    bell_operator_bands,
    collective_operator,
    dicke_state,
    dicke_violation,
    lmg_energies,
    max_violation,
    measurement_pair,
    ratio_scan,
    symmetrized_correlators,
    theta_sweep,
    to_full_space,
)
from bellscope.numerics import RandomSource, lowest_eigen_banded
from bellscope.symmetric import PIBellExpression, dicke_expression, murcia

from helpers import (
    SX,
    SY,
    SZ,
    dicke_dense,
    dicke_embedding,
    embed,
    full_space_bell,
)


def random_symmetric_state(n, rng):
    amp = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    amp /= np.linalg.norm(amp)
    return SymmetricState(n, amp)


class TestCollectiveOperators:
    def test_single_spin_is_half_pauli(self):
        assert np.allclose(collective_operator(1, "jz").matrix, SZ / 2)
        assert np.allclose(collective_operator(1, "jx").matrix, SX / 2)
        assert np.allclose(collective_operator(1, "jy").matrix, SY / 2)

    def test_two_spin_jz(self):
        assert np.allclose(
            collective_operator(2, "jz").matrix, np.diag([1.0, 0.0, -1.0])
        )

    def test_ladder_and_commutators(self):
        for n in (1, 2, 5, 40, 200):
            jx = collective_operator(n, "jx").matrix
            jy = collective_operator(n, "jy").matrix
            jz = collective_operator(n, "jz").matrix
            jp = collective_operator(n, "j+").matrix
            assert np.allclose(jp, jx + 1j * jy)
            assert np.allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-10)
            casimir = jx @ jx + jy @ jy + jz @ jz
            j = n / 2.0
            assert np.allclose(casimir, j * (j + 1) * np.eye(n + 1), atol=1e-9)

    def test_matches_full_space_restriction(self):
        paulis = {"jz": SZ, "jx": SX, "jy": SY}
        for n in (2, 3, 5):
            v = dicke_embedding(n)
            for label, pauli in paulis.items():
                full = sum(embed(pauli, i, n) for i in range(n)) / 2.0
                restricted = v.conj().T @ full @ v
                assert np.allclose(
                    restricted, collective_operator(n, label).matrix, atol=1e-12
                )

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            collective_operator(0, "jz")
        with pytest.raises(ValueError):
            collective_operator(3, "jq")


class TestDickeStates:
    def test_one_hot_amplitudes(self):
        st = dicke_state(4, 2)
        assert st.amplitudes[2] == 1.0 and np.sum(np.abs(st.amplitudes)) == 1.0

    def test_range_check(self):
        with pytest.raises(ValueError):
            dicke_state(3, 4)
        with pytest.raises(ValueError):
            dicke_state(3, -1)

    def test_embedding_matches_explicit_symmetrization(self):
        for n, k in ((2, 1), (4, 2), (5, 3)):
            full = to_full_space(dicke_state(n, k))
            assert np.allclose(full.amplitudes, dicke_dense(n, k))

    def test_embedding_preserves_norm_and_overlaps(self):
        rng = RandomSource(31).generator
        for n in (2, 4, 6):
            s1 = random_symmetric_state(n, rng)
            s2 = random_symmetric_state(n, rng)
            f1, f2 = to_full_space(s1), to_full_space(s2)
            assert abs(np.linalg.norm(f1.amplitudes) - 1.0) < 1e-12
            want = np.vdot(s1.amplitudes, s2.amplitudes)
            got = np.vdot(f1.amplitudes, f2.amplitudes)
            assert abs(want - got) < 1e-12

    def test_unnormalised_rejected(self):
        with pytest.raises(ValueError):
            SymmetricState(2, np.array([1.0, 1.0, 0.0]))


class TestLmg:
    def test_sector_spectrum_inside_full_spectrum(self):
        for n in (2, 3, 4, 6):
            for lam in (0.5, 1.0):
                for h in (0.0, 0.5, 1.0):
                    hx = sum(
                        embed(SX, i, n) @ embed(SX, j, n)
                        + embed(SY, i, n) @ embed(SY, j, n)
                        for i in range(n)
                        for j in range(i + 1, n)
                    )
                    hz = sum(embed(SZ, i, n) for i in range(n))
                    full = np.linalg.eigvalsh(-(lam / n) * hx - h * hz)
                    sector, _ = lmg_energies(n, lam, h)
                    for e in sector:
                        assert np.min(np.abs(full - e)) < 1e-9

    def test_ground_is_half_filled_dicke_at_zero_field(self):
        for n in (2, 4, 10, 21):
            _, ground = lmg_energies(n, 1.0, 0.0)
            if n % 2 == 0:
                assert ground == (n // 2,)
            else:
                assert ground == ((n - 1) // 2, (n + 1) // 2)

    def test_strong_field_polarises(self):
        energies, ground = lmg_energies(6, 0.5, 50.0)
        assert ground == (0,)
        j = m = 3.0
        want = -(2 * 0.5 / 6) * (j * (j + 1) - m * m) + 0.5 - 2 * 50.0 * m
        assert energies[0] == pytest.approx(want, rel=1e-12)


class TestSymmetrizedCorrelators:
    def test_matches_full_space_oracle(self):
        rng = RandomSource(7).generator
        for n in (2, 3, 5):
            state = random_symmetric_state(n, rng)
            psi = to_full_space(state).amplitudes
            for theta in np.linspace(0.0, 2 * math.pi, 9):
                m0 = SZ
                m1 = math.cos(theta) * SZ + math.sin(theta) * SX
                def ev(op):
                    return float(np.vdot(psi, op @ psi).real)
                s0 = sum(ev(embed(m0, i, n)) for i in range(n))
                s1 = sum(ev(embed(m1, i, n)) for i in range(n))
                s00 = s01 = s11 = 0.0
                for i in range(n):
                    for j in range(n):
                        if i == j:
                            continue
                        s00 += ev(embed(m0, i, n) @ embed(m0, j, n))
                        s01 += ev(embed(m0, i, n) @ embed(m1, j, n))
                        s11 += ev(embed(m1, i, n) @ embed(m1, j, n))
                got = symmetrized_correlators(state, theta)
                want = (s0, s1, s00, s01, s11)
                assert np.allclose(got.as_tuple(), want, atol=1e-9), (n, theta)

    def test_polarised_state_values(self):
        # all spins up: every correlator is its classical all-plus value
        n = 5
        got = symmetrized_correlators(dicke_state(n, 0), 0.0)
        assert np.allclose(got.as_tuple(), (n, n, n * n - n, n * n - n, n * n - n))

    def test_theta_zero_collapses_settings(self):
        rng = RandomSource(11).generator
        state = random_symmetric_state(4, rng)
        c = symmetrized_correlators(state, 0.0)
        assert c.s0 == pytest.approx(c.s1, abs=1e-12)
        assert c.s00 == pytest.approx(c.s01, abs=1e-12)
        assert c.s00 == pytest.approx(c.s11, abs=1e-12)


class TestBellOperator:
    def test_zero_expression(self):
        expr = PIBellExpression(n=4, alpha=0, beta=0, gamma=0, delta=0, epsilon=0)
        assert np.allclose(bell_operator(expr, 1.1), 0.0)

    def test_dense_matches_measurement_pair_build(self):
        rng = RandomSource(17)
        for trial in range(10):
            n = int(rng.integers(2, 9))
            coeffs = [int(v) for v in rng.integers(-3, 4, size=5)]
            expr = PIBellExpression(
                n=n, alpha=coeffs[0], beta=coeffs[1], gamma=coeffs[2],
                delta=coeffs[3], epsilon=coeffs[4],
            )
            theta = float(rng.generator.uniform(0, 2 * math.pi))
            a, b = measurement_pair(n, theta)
            eye = np.eye(n + 1)
            want = (
                coeffs[0] * a + coeffs[1] * b
                + coeffs[2] / 2 * (a @ a - n * eye)
                + coeffs[3] * ((a @ b + b @ a) / 2 - n * math.cos(theta) * eye)
                + coeffs[4] / 2 * (b @ b - n * eye)
            )
            assert np.allclose(bell_operator(expr, theta), want, atol=1e-9)

    def test_expectation_consistent_with_correlators(self):
        rng = RandomSource(19).generator
        for n in (3, 6):
            expr = dicke_expression(n)
            state = random_symmetric_state(n, rng)
            for theta in (0.4, 1.9):
                op = bell_operator(expr, theta)
                direct = float(
                    np.vdot(state.amplitudes, op @ state.amplitudes).real
                )
                via_corr = expr.value_float(symmetrized_correlators(state, theta))
                assert direct == pytest.approx(via_corr, abs=1e-9)

    def test_sector_minimum_equals_full_space_minimum(self):
        for n in (2, 3, 4, 6):
            expr = murcia(n)
            for theta in (0.7, 2.0, 2.9):
                full = np.linalg.eigvalsh(full_space_bell(expr, theta))[0]
                sector = np.linalg.eigvalsh(bell_operator(expr, theta))[0]
                assert sector == pytest.approx(full, abs=1e-9)

    def test_restriction_of_full_operator(self):
        for n in (2, 4):
            expr = dicke_expression(n)
            v = dicke_embedding(n)
            for theta in (0.9, 2.4):
                full = full_space_bell(expr, theta)
                assert np.allclose(
                    v.conj().T @ full @ v, bell_operator(expr, theta), atol=1e-10
                )

    def test_band_storage_agrees_with_dense(self):
        expr = murcia(30)
        for theta in (0.3, 1.6, 3.0):
            bands = bell_operator_bands(expr, theta)
            w_band, _ = lowest_eigen_banded(bands, want_vector=False)
            w_dense = np.linalg.eigvalsh(bell_operator(expr, theta))[0]
            assert w_band == pytest.approx(w_dense, abs=1e-9)

    def test_mirror_angle_preserves_spectrum(self):
        expr = dicke_expression(7)
        for theta in (0.5, 1.2, 2.8):
            w1 = np.linalg.eigvalsh(bell_operator(expr, theta))
            w2 = np.linalg.eigvalsh(bell_operator(expr, 2 * math.pi - theta))
            assert np.allclose(w1, w2, atol=1e-10)


class TestMaxViolation:
    def test_murcia_small_sizes_do_not_violate(self):
        # lambda_min = -2n exactly here, so any reported excess is solver noise
        for n in (2, 3, 4):
            mv = max_violation(murcia(n))
            assert mv.violation <= 1e-10
            assert mv.quantum_value >= -2 * n - 1e-10

    def test_murcia_first_violation_and_growth(self):
        values = {}
        for n in (5, 6, 7, 8):
            mv = max_violation(murcia(n))
            assert mv.violation > 0.0
            values[n] = mv.violation
        assert values[5] == pytest.approx(0.151463723, abs=1e-6)
        assert values[6] > values[5]

    def test_matches_dense_diagonalisation(self):
        expr = murcia(10)
        mv = max_violation(expr)
        w = np.linalg.eigvalsh(bell_operator(expr, mv.theta))
        assert mv.quantum_value == pytest.approx(w[0], abs=1e-9)
        assert mv.violation == pytest.approx(1.105534, abs=1e-5)

    def test_reported_state_is_the_ground_state(self):
        expr = murcia(12)
        mv = max_violation(expr)
        op = bell_operator(expr, mv.theta)
        val = float(np.vdot(mv.state.amplitudes, op @ mv.state.amplitudes).real)
        assert val == pytest.approx(mv.quantum_value, abs=1e-8)

    def test_product_states_never_violate(self):
        # polarised (product) states must respect every classical bound
        for n in (4, 7):
            expr = murcia(n)
            for k in (0, n):
                state = dicke_state(n, k)
                for theta in np.linspace(0, math.pi, 40):
                    v = expr.value_float(symmetrized_correlators(state, theta))
                    assert v >= -2 * n - 1e-9

    def test_missing_bound_rejected(self):
        expr = PIBellExpression(n=4, alpha=0, beta=0, gamma=1, delta=0, epsilon=1)
        with pytest.raises(ValueError, match="bound"):
            max_violation(expr)

    def test_large_n_banded_path(self):
        mv = max_violation(murcia(800), grid_points=64)
        assert mv.violation > 0.0
        assert 0.0 <= mv.theta <= math.pi


class TestDickeViolation:
    def test_even_sizes_violate(self):
        for n in (4, 6, 12):
            dv = dicke_violation(n)
            assert dv.violated
            assert dv.quantum_value < -dv.bound

    def test_violation_magnitude_closed_form(self):
        # best violation of the half-filled Dicke state is n/(n+2)
        for n in (4, 6, 10, 20):
            dv = dicke_violation(n)
            assert -dv.quantum_value - dv.bound == pytest.approx(
                n / (n + 2), abs=1e-6
            )

    def test_aligned_measurements_only_saturate(self):
        for n in (4, 8):
            expr = dicke_expression(n)
            state = dicke_state(n, n // 2)
            v = expr.value_float(symmetrized_correlators(state, 0.0))
            assert v == pytest.approx(-float(expr.bound), abs=1e-9)

    def test_agrees_with_full_space(self):
        n = 4
        dv = dicke_violation(n)
        expr = dicke_expression(n)
        psi = dicke_dense(n, n // 2)
        full = full_space_bell(expr, dv.theta)
        want = float(np.vdot(psi, full @ psi).real)
        assert dv.quantum_value == pytest.approx(want, abs=1e-9)


class TestScans:
    def test_ratio_scan_consistent_with_pointwise(self):
        rows = ratio_scan(murcia, [6, 10, 8])
        assert [r.n for r in rows] == [6, 8, 10]
        for row in rows:
            mv = max_violation(murcia(row.n))
            assert row.qv == pytest.approx(mv.violation, abs=1e-8)
            assert row.ratio == pytest.approx(mv.violation / (2 * row.n), abs=1e-9)
            assert row.beta_c == 2 * row.n

    def test_theta_sweep_values_and_continuity(self):
        expr = murcia(20)
        thetas = np.arange(0.0, math.pi, 1e-2)
        rows = theta_sweep(expr, thetas)
        assert len(rows) == len(thetas)
        vals = np.array([r.value for r in rows])
        # lowest eigenvalue is continuous in theta; crude Lipschitz check
        assert np.max(np.abs(np.diff(vals))) < 0.05 * 2 * 20
        best = vals.min()
        mv = max_violation(expr)
        assert best >= mv.quantum_value - 1e-6
        flagged = [r.violated for r in rows]
        assert any(flagged) and not all(flagged)

    def test_sweep_rows_match_dense_eigenvalues(self):
        expr = dicke_expression(5)
        rows = theta_sweep(expr, [0.5, 1.5, 2.5])
        for row in rows:
            w = np.linalg.eigvalsh(bell_operator(expr, row.theta))[0]
            assert row.value == pytest.approx(w, abs=1e-9)
