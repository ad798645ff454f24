import numpy as np
import pytest

from conftest import haar_unitary
from rsfield.errors import (
    InvalidMomentsError,
    NotClassicalClosedError,
    PhysicalityLostError,
    SingularMatrixError,
)
from rsfield.kinetics import (
    GeneratorTrajectory,
    KineticGenerators,
    extract_closed_generator,
    extract_open_generators,
    integrate_kinetics,
    kinetic_rhs,
    validity_report,
)
from rsfield.numerics import central_difference, max_abs
from rsfield.rsf import ReducedField, vacuum

E2_MINUS_1 = 6.389056098930650  # e^2 - 1


def scalar_gens(h=0.0, g_up=0.0, g_dn=0.0, zeta=0.0):
    return KineticGenerators(
        h=np.array([[h]], dtype=complex),
        zeta=np.array([zeta], dtype=complex),
        gamma_up=np.array([[g_up]], dtype=complex),
        gamma_down=np.array([[g_dn]], dtype=complex),
    )


class TestGeneratorValidation:
    def test_zeros_factory(self):
        g = KineticGenerators.zeros(3)
        assert g.n_modes == 3
        assert max_abs(g.h) == 0.0

    def test_rejects_non_hermitian_h(self):
        with pytest.raises(Exception):
            KineticGenerators(
                h=np.array([[0.0, 1.0], [0.0, 0.0]]),
                zeta=np.zeros(2),
                gamma_up=np.zeros((2, 2)),
                gamma_down=np.zeros((2, 2)),
            )

    def test_rejects_non_unitary_scatterer(self):
        with pytest.raises(InvalidMomentsError):
            KineticGenerators(
                h=np.zeros((2, 2)),
                zeta=np.zeros(2),
                gamma_up=np.zeros((2, 2)),
                gamma_down=np.zeros((2, 2)),
                scatterers=((1.0, 2.0 * np.eye(2)),),
            )

    def test_rejects_bad_eta_sum(self, rng):
        u = haar_unitary(2, rng)
        with pytest.raises(InvalidMomentsError):
            KineticGenerators(
                h=np.zeros((2, 2)),
                zeta=np.zeros(2),
                gamma_up=np.zeros((2, 2)),
                gamma_down=np.zeros((2, 2)),
                scatterers=((0.4, u), (0.4, np.eye(2))),
            )

    def test_psd_witnesses_expose_indefinite_rates(self):
        g = scalar_gens(g_up=-0.5)
        w_up, w_dn = g.psd_witnesses()
        assert w_up == pytest.approx(-0.5)
        assert w_dn == 0.0


class TestKineticRhs:
    def test_all_zero(self):
        rf, _ = vacuum(2)
        dr, dalpha = kinetic_rhs(rf, KineticGenerators.zeros(2))
        assert max_abs(dr) == 0.0 and max_abs(dalpha) == 0.0

    def test_commuting_hamiltonian_freezes_r(self):
        rf = ReducedField(np.diag([0.3, 0.7]).astype(complex), np.zeros(2))
        gens = KineticGenerators(
            h=np.diag([1.0, 2.0]).astype(complex),
            zeta=np.zeros(2),
            gamma_up=np.zeros((2, 2)),
            gamma_down=np.zeros((2, 2)),
        )
        dr, _ = kinetic_rhs(rf, gens)
        assert max_abs(dr) < 1e-15

    def test_scalar_amplifier_rate(self):
        kappa, m, r0 = 1.3, 0.4, 0.6
        rf = ReducedField(np.array([[r0]], dtype=complex), np.zeros(1))
        gens = scalar_gens(g_up=2 * kappa * (1 + m), g_dn=2 * kappa * m)
        dr, _ = kinetic_rhs(rf, gens)
        assert dr[0, 0].real == pytest.approx(2 * kappa * r0 + 2 * kappa * (1 + m))

    def test_rhs_is_hermitian(self, rng):
        z = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        h = 0.5 * (z + z.conj().T)
        g = rng.standard_normal((3, 3))
        gens = KineticGenerators(
            h=h,
            zeta=rng.standard_normal(3) + 1j * rng.standard_normal(3),
            gamma_up=(g @ g.T).astype(complex),
            gamma_down=0.1 * np.eye(3, dtype=complex),
            scatterers=((0.5, haar_unitary(3, rng)), (0.5, haar_unitary(3, rng))),
        )
        rf = ReducedField(np.diag([0.2, 0.5, 1.0]).astype(complex),
                          0.1 * np.ones(3, dtype=complex))
        dr, _ = kinetic_rhs(rf, gens)
        assert max_abs(dr - dr.conj().T) < 1e-12

    def test_scattering_preserves_trace(self, rng):
        us = [haar_unitary(3, rng) for _ in range(3)]
        gens = KineticGenerators(
            h=np.zeros((3, 3)),
            zeta=np.zeros(3),
            gamma_up=np.zeros((3, 3)),
            gamma_down=np.zeros((3, 3)),
            scatterers=tuple((1.0 / 3.0, u) for u in us),
        )
        rf = ReducedField(np.diag([0.1, 0.4, 0.9]).astype(complex), np.zeros(3))
        dr, _ = kinetic_rhs(rf, gens)
        assert abs(np.trace(dr)) < 1e-12


class TestIntegrateKinetics:
    def test_zero_generators_constant(self):
        rf = ReducedField(np.array([[0.5]], dtype=complex), np.array([0.2 + 0.1j]))
        snaps = integrate_kinetics(rf, KineticGenerators.zeros(1), (0.0, 2.0), [0.0, 1.0, 2.0])
        for s in snaps:
            assert max_abs(s.r - rf.r) < 1e-12
            assert max_abs(s.alpha - rf.alpha) < 1e-12

    def test_vacuum_amplification_reaches_e2_minus_1(self):
        rf, _ = vacuum(1)
        gens = scalar_gens(g_up=2.0, g_dn=0.0)  # kappa=1, m=0
        snaps = integrate_kinetics(rf, gens, (0.0, 1.0), [1.0])
        assert snaps[0].r[0, 0].real == pytest.approx(E2_MINUS_1, rel=1e-9)

    def test_trace_nondecreasing_with_pure_creation(self):
        rf, _ = vacuum(2)
        gens = KineticGenerators(
            h=np.zeros((2, 2)),
            zeta=np.zeros(2),
            gamma_up=np.array([[0.5, 0.2], [0.2, 0.3]], dtype=complex),
            gamma_down=np.zeros((2, 2)),
        )
        snaps = integrate_kinetics(rf, gens, (0.0, 2.0), np.linspace(0.0, 2.0, 9))
        traces = [np.trace(s.r).real for s in snaps]
        assert np.all(np.diff(traces) > -1e-12)

    def test_scattering_only_preserves_trace(self, rng):
        rf = ReducedField(np.diag([0.3, 0.9]).astype(complex), np.zeros(2))
        gens = KineticGenerators(
            h=np.zeros((2, 2)),
            zeta=np.zeros(2),
            gamma_up=np.zeros((2, 2)),
            gamma_down=np.zeros((2, 2)),
            scatterers=((1.0, haar_unitary(2, rng)),),
        )
        snaps = integrate_kinetics(rf, gens, (0.0, 3.0), [3.0])
        assert np.trace(snaps[0].r).real == pytest.approx(1.2, abs=1e-10)

    def test_positivity_loss_is_reported(self):
        rf, _ = vacuum(1)
        bad = scalar_gens(g_up=-1.0)  # indefinite creation rate
        with pytest.raises(PhysicalityLostError):
            integrate_kinetics(rf, bad, (0.0, 1.0), [0.5, 1.0])


class TestExtractClosed:
    def test_global_phase(self):
        omega = 1.7
        fam = lambda t: np.exp(-1j * omega * t) * np.eye(2)
        h = extract_closed_generator(fam, 0.8)
        assert max_abs(h - omega * np.eye(2)) < 1e-6

    def test_two_frequencies(self):
        w1, w2 = 0.9, 2.3
        fam = lambda t: np.diag([np.exp(-1j * w1 * t), np.exp(-1j * w2 * t)])
        h = extract_closed_generator(fam, 1.1)
        assert max_abs(h - np.diag([w1, w2])) < 1e-6

    def test_accelerating_rotation_matches_fd_oracle(self):
        def fam(t):
            th = 0.1 * t * t
            return np.array(
                [[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]], dtype=complex
            )

        t = 1.3
        h = extract_closed_generator(fam, t)
        assert max_abs(h - h.conj().T) < 1e-12
        # independent reconstruction: dX/dt from central differences
        dx = central_difference(fam, t, 1e-5)
        y = dx @ np.linalg.inv(fam(t))
        h_fd = 0.5j * (y - y.conj().T)
        assert max_abs(h - h_fd) < 1e-6
        # analytic value: theta'(t) * sigma_y
        sy = np.array([[0.0, -1j], [1j, 0.0]])
        assert max_abs(h - 0.2 * t * sy) < 1e-6

    def test_rejects_non_unitary_family(self):
        fam = lambda t: np.cosh(t) * np.eye(2)
        with pytest.raises(NotClassicalClosedError):
            extract_closed_generator(fam, 0.5)

    def test_closed_round_trip(self):
        # integrating with the extracted h reproduces r(t) = X r0 X^dag
        def fam(t):
            th = 0.1 * t * t + 0.3 * t
            return np.array(
                [[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]], dtype=complex
            )

        r0 = np.array([[0.8, 0.1 + 0.2j], [0.1 - 0.2j, 0.4]])
        rf0 = ReducedField(r0, np.array([0.3, -0.1j]))

        def gens(t):
            h = extract_closed_generator(fam, t, fd_step=1e-6)
            z = np.zeros((2, 2), dtype=complex)
            return KineticGenerators(h, np.zeros(2, dtype=complex), z, z)

        snaps = integrate_kinetics(rf0, gens, (0.0, 1.0), [0.5, 1.0], rtol=1e-10)
        for t, s in zip((0.5, 1.0), snaps):
            x = fam(t)
            assert max_abs(s.r - x @ r0 @ x.conj().T) < 1e-7
            assert max_abs(s.alpha - x @ rf0.alpha) < 1e-7


class TestExtractOpen:
    def test_scalar_amplifier_family(self):
        kappa = 0.7
        xs = lambda t: np.array([[np.cosh(kappa * t)]], dtype=complex)
        xc = lambda t: np.array([[np.sinh(kappa * t)]], dtype=complex)
        t = 0.9
        gens = extract_open_generators(xs, xc, t, fd_step=1e-6)
        expected = 2.0 * kappa * np.tanh(kappa * t)
        assert gens.gamma_up[0, 0].real == pytest.approx(expected, abs=1e-7)
        assert abs(gens.gamma_down[0, 0]) < 1e-7
        assert abs(gens.h[0, 0]) < 1e-7

    def test_passive_phase_family(self):
        omega = 1.4
        xs = lambda t: np.array([[np.exp(-1j * omega * t)]], dtype=complex)
        xc = lambda t: np.zeros((1, 1), dtype=complex)
        gens = extract_open_generators(xs, xc, 0.6, fd_step=1e-6)
        assert gens.h[0, 0].real == pytest.approx(omega, abs=1e-6)
        assert abs(gens.gamma_up[0, 0]) < 1e-8
        assert abs(gens.gamma_down[0, 0]) < 1e-8

    def test_rate_difference_identity(self):
        # gamma_up - gamma_down = Y + Y^dag, exactly by construction
        def xs(t):
            return np.array(
                [[np.cosh(0.2 * t) * np.exp(-0.5j * t), 0.1 * np.sin(t)],
                 [0.0, np.cosh(0.3 * t) * np.exp(-0.8j * t)]],
                dtype=complex,
            )

        def xc(t):
            return np.array(
                [[np.sinh(0.2 * t), 0.0],
                 [0.05 * (1 - np.cos(t)), np.sinh(0.3 * t)]],
                dtype=complex,
            )

        for t in (0.3, 0.8, 1.5):
            gens = extract_open_generators(xs, xc, t, fd_step=1e-6)
            dx = central_difference(xs, t, 1e-6)
            y = dx @ np.linalg.inv(xs(t))
            y_r = y + y.conj().T
            assert max_abs((gens.gamma_up - gens.gamma_down) - y_r) < 1e-10

    def test_open_round_trip_arbitrary_smooth_family(self):
        # dr/dt = Y r + r Y^dag + W holds for any smooth family, so the
        # extracted generators must reproduce r(t) = X r0 X^dag + D(t).
        def xs(t):
            return np.array(
                [[np.cosh(0.2 * t) * np.exp(-0.5j * t), 0.1 * np.sin(t)],
                 [0.0, np.cosh(0.3 * t) * np.exp(-0.8j * t)]],
                dtype=complex,
            )

        def dxs(t):
            return np.array(
                [[(0.2 * np.sinh(0.2 * t) - 0.5j * np.cosh(0.2 * t)) * np.exp(-0.5j * t),
                  0.1 * np.cos(t)],
                 [0.0,
                  (0.3 * np.sinh(0.3 * t) - 0.8j * np.cosh(0.3 * t)) * np.exp(-0.8j * t)]],
                dtype=complex,
            )

        def xc(t):
            return np.array(
                [[np.sinh(0.2 * t), 0.0],
                 [0.05 * (1 - np.cos(t)), np.sinh(0.3 * t)]],
                dtype=complex,
            )

        def dxc(t):
            return np.array(
                [[0.2 * np.cosh(0.2 * t), 0.0],
                 [0.05 * np.sin(t), 0.3 * np.cosh(0.3 * t)]],
                dtype=complex,
            )

        r0 = np.array([[0.5, 0.2 - 0.1j], [0.2 + 0.1j, 0.8]])
        alpha0 = np.array([0.2, -0.3j])
        rf0 = ReducedField(r0, alpha0)

        def gens(t):
            return extract_open_generators(xs, xc, t, dx_up_s=dxs, dx_down_c=dxc)

        times = [0.4, 1.0, 1.6]
        snaps = integrate_kinetics(rf0, gens, (0.0, 1.6), times, rtol=1e-11, atol=1e-13)
        for t, s in zip(times, snaps):
            x, c = xs(t), xc(t)
            expected_r = x @ r0 @ x.conj().T + c @ c.conj().T
            assert max_abs(s.r - expected_r) < 1e-6
            assert max_abs(s.alpha - x @ alpha0) < 1e-6

    def test_singular_family_rejected(self):
        xs = lambda t: np.array([[t]], dtype=complex)  # singular at t=0
        xc = lambda t: np.zeros((1, 1), dtype=complex)
        with pytest.raises(SingularMatrixError):
            extract_open_generators(xs, xc, 0.0, fd_step=1e-6)


class TestValidityReport:
    def test_all_zero_trajectory_is_valid(self):
        times = np.array([0.0, 1.0, 2.0])
        traj = GeneratorTrajectory(times, tuple(KineticGenerators.zeros(1) for _ in times))
        rep = validity_report(traj)
        assert rep.all_valid

    def test_amplifier_trajectory_valid(self):
        times = np.linspace(0.0, 1.0, 5)
        gens = tuple(scalar_gens(g_up=2.0, g_dn=0.6) for _ in times)
        rep = validity_report(GeneratorTrajectory(times, gens))
        assert rep.all_valid
        assert np.all(rep.gamma_up_min_eig == 2.0)

    def test_worst_time_reported(self):
        times = np.array([0.0, 1.0, 2.0])
        gens = (
            scalar_gens(g_up=1.0),
            scalar_gens(g_up=-0.3),
            scalar_gens(g_up=0.5),
        )
        rep = validity_report(GeneratorTrajectory(times, gens))
        assert not rep.all_valid
        assert rep.worst_time == 1.0
        assert rep.worst_witness == pytest.approx(-0.3)
