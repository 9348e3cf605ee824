import math
from itertools import combinations

import numpy as np
import pytest

from ghzbell.bell import (
    BellConfig,
    MeasurementDirection,
    bell_operator,
    chsh_value,
    equatorial,
    four_qubit_reference_config,
    ghz_state,
    polar,
)
from ghzbell.degeneracy import (
    TSIRELSON,
    BasisConstruction,
    InconsistentConfigError,
    NotSaturatingError,
    Orientation,
    ParityError,
    PhaseSumError,
    SaturationFamily,
    canonical_axis_config,
    canonical_config,
    canonical_planar_config,
    classify_saturating_config,
    complement_exclusion_holds,
    degenerate_basis_axis,
    degenerate_basis_planar,
    four_qubit_example,
    ghz_symmetry_overlap,
    planar_subsets,
    robustness_experiment,
    symmetry_family_check,
    symmetry_triple,
)
from ghzbell.qops import IDENTITY2, PAULI_X, PAULI_Z, expectation, kron_all

RT2 = math.sqrt(2.0)
PIH = math.pi / 2


class TestClassify:
    def test_canonical_axis_plus(self):
        cls = classify_saturating_config(canonical_axis_config(4))
        assert cls.family is SaturationFamily.POLAR_EQUATORIAL
        assert cls.orientation is Orientation.PLUS

    def test_axis_minus_orientation(self):
        # an odd number of down-pointing z directions flips the reduced vector
        cfg = BellConfig(
            a0_dirs=(polar(False), polar(), polar()),
            a1_dirs=(equatorial(0.0),) * 3,
            b0_dir=MeasurementDirection(3 * math.pi / 4, 0.0),
            b1_dir=MeasurementDirection(3 * math.pi / 4, math.pi),
        )
        assert chsh_value(cfg) == pytest.approx(TSIRELSON, abs=1e-12)
        cls = classify_saturating_config(cfg)
        assert cls.family is SaturationFamily.POLAR_EQUATORIAL
        assert cls.orientation is Orientation.MINUS

    def test_swapped_families(self):
        cfg = BellConfig(
            a0_dirs=(equatorial(0.0),) * 3,
            a1_dirs=(polar(),) * 3,
            b0_dir=MeasurementDirection(math.pi / 4, 0.0),
            b1_dir=MeasurementDirection(3 * math.pi / 4, 0.0),
        )
        # i = E(A0 B0) + E(A0 B1) + E(A1 B0) - E(A1 B1) with A0=x, A1=z
        assert chsh_value(cfg) == pytest.approx(TSIRELSON, abs=1e-12)
        cls = classify_saturating_config(cfg)
        assert cls.family is SaturationFamily.EQUATORIAL_POLAR
        assert cls.orientation is Orientation.PLUS

    def test_reference_config_is_fully_equatorial(self):
        cls = classify_saturating_config(four_qubit_reference_config())
        assert cls.family is SaturationFamily.FULLY_EQUATORIAL

    def test_planar_configs_all_n(self):
        for n in (3, 4, 5, 6):
            cls = classify_saturating_config(canonical_planar_config(n))
            assert cls.family is SaturationFamily.FULLY_EQUATORIAL
            assert cls.orientation is Orientation.PLUS

    def test_not_saturating(self):
        d = equatorial(0.0)
        cfg = BellConfig(a0_dirs=(d,), a1_dirs=(d,), b0_dir=d, b1_dir=d)
        with pytest.raises(NotSaturatingError):
            classify_saturating_config(cfg)

    def test_tolerance_breach_reports_inconsistent(self):
        cfg = canonical_axis_config(4)
        tilted = BellConfig(
            a0_dirs=(MeasurementDirection(1e-5, 0.0),) + cfg.a0_dirs[1:],
            a1_dirs=cfg.a1_dirs,
            b0_dir=cfg.b0_dir,
            b1_dir=cfg.b1_dir,
        )
        # still saturates loosely, but the tilt exceeds a strict direction tol
        with pytest.raises(InconsistentConfigError):
            classify_saturating_config(tilted, tol=1e-2, direction_tol=1e-9)


class TestCanonicalConfigs:
    @pytest.mark.parametrize("n", (2, 4, 6, 8))
    def test_axis_saturates(self, n):
        cfg = canonical_axis_config(n)
        assert chsh_value(cfg) == pytest.approx(TSIRELSON, abs=1e-12)
        assert expectation(ghz_state(n), bell_operator(cfg)) == pytest.approx(
            TSIRELSON, abs=1e-10
        )

    @pytest.mark.parametrize("n", (2, 3, 4, 5, 6))
    def test_planar_saturates(self, n):
        cfg = canonical_planar_config(n)
        assert chsh_value(cfg) == pytest.approx(TSIRELSON, abs=1e-12)

    def test_planar_mirrored_orientation_saturates(self):
        cfg = canonical_planar_config(4, [PIH, PIH, PIH])
        assert chsh_value(cfg) == pytest.approx(TSIRELSON, abs=1e-12)

    def test_axis_parity_error(self):
        with pytest.raises(ParityError):
            canonical_axis_config(3)

    def test_planar_phase_sum_error(self):
        with pytest.raises(PhaseSumError):
            canonical_planar_config(4, [0.0, 0.0, 0.3])

    def test_dispatch(self):
        assert canonical_config(1, 4) == canonical_axis_config(4)
        assert canonical_config(5, 4) == canonical_planar_config(4)
        with pytest.raises(ValueError):
            canonical_config(2, 4)
        with pytest.raises(ValueError):
            canonical_config(1, 4, phi_primes=[0.0, 0.0, PIH])


class TestAxisBasis:
    def test_n4_subsets(self):
        report = degenerate_basis_axis(4)
        assert report.multiplicity == 4
        assert report.subsets == ((), (1, 2), (1, 3), (2, 3))
        assert report.construction is BasisConstruction.PAIR_FLIPS
        assert report.max_eigenvalue == pytest.approx(TSIRELSON, abs=1e-9)

    def test_n6_count(self):
        report = degenerate_basis_axis(6)
        assert report.multiplicity == 16 == 2 ** (6 - 2)

    def test_basis_orthonormal(self):
        report = degenerate_basis_axis(6)
        stacked = np.stack([s.amplitudes for s in report.basis], axis=1)
        gram = stacked.conj().T @ stacked
        np.testing.assert_allclose(gram, np.eye(report.multiplicity), atol=1e-12)

    def test_basis_contains_ghz(self):
        report = degenerate_basis_axis(4)
        np.testing.assert_allclose(
            report.basis[0].amplitudes, ghz_state(4).amplitudes, atol=1e-15
        )

    def test_parity_and_range(self):
        with pytest.raises(ParityError):
            degenerate_basis_axis(5)
        with pytest.raises(ValueError):
            degenerate_basis_axis(2)


class TestPlanarBasis:
    def test_simple_construction_reaches_bound(self):
        report = degenerate_basis_planar(4)
        assert report.multiplicity == 4
        assert report.subsets == ((), (1,), (1, 2), (2,))
        assert report.construction is BasisConstruction.PHASE_SUBSETS

    def test_rotated_reference_azimuths(self):
        report = degenerate_basis_planar(4, [PIH, PIH, PIH])
        assert report.subsets == ((), (1, 2), (1, 3), (2, 3))
        assert report.multiplicity == 4

    def test_generic_incommensurate(self):
        report = degenerate_basis_planar(4, [0.3, 0.7, PIH - 1.0])
        assert report.subsets == ((),)
        assert report.multiplicity == 1

    def test_odd_n(self):
        report = degenerate_basis_planar(5)
        assert report.multiplicity == 8 == 2 ** (5 - 2)

    def test_phase_sum_error(self):
        with pytest.raises(PhaseSumError):
            degenerate_basis_planar(4, [0.1, 0.2, 0.3])

    def test_multiplicity_never_exceeds_bound(self):
        rng = np.random.default_rng(31)
        for n in (3, 4, 5):
            for _ in range(5):
                phi = rng.uniform(0, math.pi, size=n - 1)
                phi[-1] = (PIH - phi[:-1].sum()) % (2 * math.pi)
                report = degenerate_basis_planar(n, list(phi))
                assert report.multiplicity <= 2 ** (n - 2)


class TestComplementExclusion:
    def test_various_phase_lists(self):
        rng = np.random.default_rng(37)
        lists = [[0.0, 0.0, PIH], [PIH, PIH, PIH], [0.3, 0.7, PIH - 1.0]]
        for _ in range(20):
            phi = rng.uniform(0, math.pi, size=4)
            phi[-1] = (PIH - phi[:-1].sum()) % (2 * math.pi)
            lists.append(list(phi))
        for phi in lists:
            assert complement_exclusion_holds(phi)

    def test_subset_rule_against_brute_force(self):
        phi = [0.25, PIH - 0.5, 0.25]
        got = set(planar_subsets(phi))
        expected = set()
        for size in range(4):
            for combo in combinations((1, 2, 3), size):
                total = math.fsum(phi[k - 1] for k in combo) % math.pi
                if min(total, math.pi - total) <= 1e-9:
                    expected.add(combo)
        assert got == expected


class TestEvenSigmaZAbsorption:
    def test_even_z_flips_leave_ghz_fixed(self):
        g = ghz_state(5).amplitudes
        for subset in ((1, 2), (2, 4), (1, 2, 3, 4)):
            mats = [PAULI_Z if j in subset else IDENTITY2 for j in range(1, 6)]
            np.testing.assert_allclose(kron_all(mats) @ g, g, atol=1e-15)


class TestSymmetryTriples:
    def test_axis_label1(self):
        t = symmetry_triple(1, 1, 4)
        np.testing.assert_allclose(t.u.entries, IDENTITY2)
        np.testing.assert_allclose(t.v.entries, IDENTITY2)
        np.testing.assert_allclose(t.w.entries, PAULI_X)

    def test_planar_label6_w_is_identity(self):
        t = symmetry_triple(5, 6)
        np.testing.assert_allclose(t.u.entries, PAULI_X)
        np.testing.assert_allclose(t.w.entries, IDENTITY2, atol=1e-15)

    def test_axis_label5_depends_on_half_parity(self):
        # the assignment must keep the family states inside the top eigenspace
        t4 = symmetry_triple(1, 5, 4)
        t6 = symmetry_triple(1, 5, 6)
        u5 = symmetry_triple(1, 5, 6).u.entries  # u is n-independent
        np.testing.assert_allclose(t4.v.entries, PAULI_X @ u5, atol=1e-15)
        np.testing.assert_allclose(t6.v.entries, u5, atol=1e-15)

    def test_invalid_labels(self):
        with pytest.raises(ValueError):
            symmetry_triple(1, 7, 4)
        with pytest.raises(ValueError):
            symmetry_triple(5, 1)
        with pytest.raises(ValueError):
            symmetry_triple(1, 5)  # n required
        with pytest.raises(ValueError):
            symmetry_triple(3, 1, 4)


class TestGhzSymmetryOverlap:
    def test_bell_state_case_all_unitaries(self):
        # for two qubits (u x conj(u)) fixes the Bell state for every label
        for case, label in [(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]:
            check = ghz_symmetry_overlap(case, label, 2)
            assert check.modulus == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n", (4, 6, 8))
    def test_axis_monomial_labels_pass(self, n):
        for label in (1, 2):
            check = ghz_symmetry_overlap(1, label, n)
            assert check.passed
            assert check.modulus == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n", (4, 6, 8))
    @pytest.mark.parametrize("label", (3, 4, 5, 6))
    def test_axis_hadamard_type_labels_fall_short(self, n, label):
        # non-monomial factors cannot fix a GHZ state for n > 2: the overlap
        # modulus is exactly 2^(1 - n/2), not 1
        check = ghz_symmetry_overlap(1, label, n)
        assert not check.passed
        assert check.modulus == pytest.approx(2.0 ** (1 - n / 2), abs=1e-12)

    @pytest.mark.parametrize("n", (3, 4, 5, 6, 7))
    @pytest.mark.parametrize("label", (5, 6))
    def test_planar_labels_pass_all_n(self, n, label):
        check = ghz_symmetry_overlap(5, label, n)
        assert check.passed
        assert check.modulus == pytest.approx(1.0, abs=1e-12)


class TestSymmetryFamily:
    def test_identity_family_returns_ghz(self):
        fc = symmetry_family_check(1, 1, 4, [0.0, 0.0, 0.0], [])
        assert fc.expectation_preserved
        assert fc.is_eigenstate
        assert fc.matches_flip_state
        assert fc.flip_subset == ()

    def test_flip_pair_with_phases(self):
        fc = symmetry_family_check(1, 1, 4, [0.3, 0.5, -0.8], [1, 2])
        assert fc.matches_flip_state
        assert fc.flip_fidelity == pytest.approx(1.0, abs=1e-10)

    def test_label2_reaches_same_flip_state(self):
        fc = symmetry_family_check(1, 2, 6, [0.1, 0.2, 0.3, 0.4, 0.5], [2, 5])
        assert fc.matches_flip_state
        assert fc.flip_subset == (2, 5)

    @pytest.mark.parametrize("label", (3, 4, 5, 6))
    def test_rotated_labels_stay_in_eigenspace(self, label):
        fc = symmetry_family_check(1, label, 4, [0.2, -0.4, 0.9], [1, 3])
        assert fc.expectation_preserved
        assert fc.is_eigenstate
        # the transformed state is a superposition inside the degenerate
        # subspace, not the bare flip state
        assert not fc.matches_flip_state

    def test_odd_w_count_refused(self):
        with pytest.raises(ValueError):
            symmetry_family_check(1, 1, 4, [0.0, 0.0, 0.0], [1])

    def test_planar_family(self):
        fc = symmetry_family_check(5, 5, 4, [0.0, 0.1, -0.1], [1, 2], [PIH, PIH, PIH])
        assert fc.is_eigenstate
        assert fc.matches_flip_state
        fc6 = symmetry_family_check(5, 6, 4, [0.7, 0.1, -0.1], [1, 2], [PIH, PIH, PIH])
        assert fc6.is_eigenstate
        assert fc6.matches_flip_state

    def test_planar_bad_w_positions(self):
        with pytest.raises(PhaseSumError):
            symmetry_family_check(5, 5, 4, [0.0, 0.0, 0.0], [1], [PIH, PIH, PIH])


class TestFourQubitExample:
    def test_reproduces_reference_states(self):
        ex = four_qubit_example()
        assert ex.i_value == pytest.approx(TSIRELSON, abs=1e-10)
        assert ex.report.multiplicity == 4
        assert len(ex.report.basis) == 4
        for f in ex.fidelities:
            assert f >= 1.0 - 1e-10
        assert ex.report.subsets == ((), (1, 2), (1, 3), (2, 3))

    def test_phase_structure_of_third_state(self):
        ex = four_qubit_example()
        amp = ex.report.basis[2].amplitudes
        # support on |1010> and |0101> with a quarter-turn relative phase
        assert abs(amp[0b1010]) == pytest.approx(1 / RT2, abs=1e-12)
        assert abs(amp[0b0101]) == pytest.approx(1 / RT2, abs=1e-12)
        rel = amp[0b0101] / amp[0b1010]
        assert rel == pytest.approx(np.exp(1j * PIH), abs=1e-12)

    def test_states_are_eigenstates_of_unrotated_operator(self):
        ex = four_qubit_example()
        op = bell_operator(four_qubit_reference_config()).entries
        for s in ex.report.basis:
            resid = np.linalg.norm(op @ s.amplitudes - TSIRELSON * s.amplitudes)
            assert resid < 1e-8


class TestRobustness:
    def test_uniform_mixture_axis_n4(self):
        report = degenerate_basis_axis(4)
        value = robustness_experiment(report, [0.25] * 4)
        assert value == pytest.approx(TSIRELSON, abs=1e-10)

    def test_pure_ghz_weights(self):
        report = degenerate_basis_axis(4)
        value = robustness_experiment(report, [1.0, 0.0, 0.0, 0.0])
        assert value == pytest.approx(TSIRELSON, abs=1e-10)

    def test_random_superposition_seeded(self):
        report = degenerate_basis_planar(4, [PIH, PIH, PIH])
        value = robustness_experiment(report, [0.4, 0.3, 0.2, 0.1], superpose=True, seed=11)
        assert value == pytest.approx(TSIRELSON, abs=1e-10)

    def test_weight_validation(self):
        report = degenerate_basis_axis(4)
        with pytest.raises(ValueError):
            robustness_experiment(report, [0.5, 0.5])
        with pytest.raises(ValueError):
            robustness_experiment(report, [0.5, 0.6, -0.1, 0.0])
        with pytest.raises(ValueError):
            robustness_experiment(report, [0.5, 0.2, 0.2, 0.2])
