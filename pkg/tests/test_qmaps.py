import numpy as np
import pytest

from conftest import random_density, random_m00_one, random_tp_mueller, random_unitary
from polarmap.cloude import cloude_decompose
from polarmap.exceptions import NonHermitianError, UnphysicalError, ZeroIntensityError
from polarmap.mueller import (
    diattenuator,
    isotropic_depolarizer,
    mueller_from_jones,
    real_from_std,
)
from polarmap.qmaps import (
    IDENTITY_KRAUS,
    SINGLET,
    apply_bilocal,
    apply_bilocal_unnormalized,
    apply_kraus_bilocal,
    apply_one_qubit,
    apply_to_singlet,
    apply_two_qubit_mueller,
    bell_states,
    build_two_qubit_mueller,
    from_combo,
    output_trace,
    partial_trace,
    purity,
    purity_from_mueller,
    reshuffle_state,
    separable_residual,
    singlet_output_components,
    traced_output,
    validate_density,
)


def test_singlet_is_psi_minus():
    assert np.allclose(SINGLET, bell_states()["psi-"], atol=1e-15)
    assert purity(SINGLET) == pytest.approx(1.0)
    assert np.allclose(partial_trace(SINGLET, "A"), np.eye(2) / 2)
    assert np.allclose(partial_trace(SINGLET, "B"), np.eye(2) / 2)


def test_validate_density():
    validate_density(np.eye(4) / 4, dim=4)
    with pytest.raises(ValueError):
        validate_density(np.eye(4), dim=4)
    with pytest.raises(NonHermitianError):
        validate_density([[0.5, 0.5], [0, 0.5]])
    with pytest.raises(UnphysicalError):
        validate_density([[1.5, 0], [0, -0.5]])
    validate_density(np.eye(4), normalized=False)


def test_one_qubit_examples():
    rho = np.eye(2) / 2
    out, tr = apply_one_qubit(np.eye(4), rho)
    assert np.allclose(out, rho) and tr == pytest.approx(1.0)
    pol = mueller_from_jones(diattenuator(1, 0, 0))
    out, tr = apply_one_qubit(pol[0], rho)
    assert np.allclose(out, [[1, 0], [0, 0]]) and tr == pytest.approx(0.5)
    assert output_trace(pol[1], rho) == pytest.approx(0.5)
    with pytest.raises(ZeroIntensityError):
        apply_one_qubit(pol[0], [[0, 0], [0, 1]])


def test_output_trace_closed_form(rng):
    for _ in range(20):
        m = random_m00_one(rng)
        rho = random_density(rng, 2)
        tr = np.trace((m @ rho.reshape(4)).reshape(2, 2)).real
        assert output_trace(real_from_std(m), rho) == pytest.approx(tr, abs=1e-12)


def test_bilocal_identity_and_unitary(rng):
    for name, rho in bell_states().items():
        out, tr = apply_bilocal(np.eye(4), np.eye(4), rho)
        assert np.allclose(out, rho) and tr == pytest.approx(1.0)
    u, w = random_unitary(rng), random_unitary(rng)
    rho = random_density(rng)
    out, _ = apply_bilocal(mueller_from_jones(u)[0], mueller_from_jones(w)[0], rho)
    k = np.kron(u, w)
    assert np.allclose(out, k @ rho @ k.conj().T, atol=1e-13)


def test_bilocal_matches_kraus_route(rng):
    for _ in range(20):
        ma, mb = random_m00_one(rng), random_m00_one(rng)
        rho = random_density(rng)
        direct = apply_bilocal_unnormalized(ma, mb, rho)
        kraus = apply_kraus_bilocal(cloude_decompose(ma), cloude_decompose(mb), rho)
        assert np.allclose(direct, kraus, atol=1e-12)


def test_local_map_cannot_change_other_marginal(rng):
    for _ in range(20):
        m = random_tp_mueller(rng)
        rho = random_density(rng)
        out = apply_bilocal_unnormalized(m, np.eye(4), rho)
        assert np.allclose(partial_trace(out, "B"), partial_trace(rho, "B"), atol=1e-13)
        out = apply_bilocal_unnormalized(np.eye(4), m, rho)
        assert np.allclose(partial_trace(out, "A"), partial_trace(rho, "A"), atol=1e-13)


def test_apply_to_singlet(rng):
    m = random_m00_one(rng)
    out = apply_to_singlet(m)
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
    ref = apply_kraus_bilocal(cloude_decompose(m), IDENTITY_KRAUS, SINGLET)
    assert np.allclose(out, ref, atol=1e-12)
    with pytest.raises(ValueError):
        apply_to_singlet(2 * m)


def test_purity_from_mueller(rng):
    for p in (0.0, 0.4, 1.0):
        m = real_from_std(isotropic_depolarizer(p))
        assert purity_from_mueller(m) == pytest.approx((1 + 3 * p**2) / 4)
    for _ in range(10):
        m = random_m00_one(rng)
        assert purity_from_mueller(real_from_std(m)) == pytest.approx(purity(apply_to_singlet(m)), abs=1e-12)


def test_partial_trace(rng):
    a, b = random_density(rng, 2), random_density(rng, 2)
    rho = np.kron(a, b)
    assert np.allclose(partial_trace(rho, "A"), a)
    assert np.allclose(partial_trace(rho, "B"), b)
    with pytest.raises(ValueError):
        partial_trace(rho, "C")


def test_traced_output(rng):
    for _ in range(10):
        m = random_m00_one(rng)
        rho = random_density(rng)
        out = apply_bilocal_unnormalized(m, np.eye(4), rho)
        assert np.allclose(traced_output(real_from_std(m), rho), partial_trace(out, "B"), atol=1e-12)


def test_two_qubit_mueller(rng):
    ma, mb = random_m00_one(rng), random_m00_one(rng)
    rho = random_density(rng)
    m16 = build_two_qubit_mueller(ma, mb)
    assert np.allclose(apply_two_qubit_mueller(m16, rho), apply_bilocal_unnormalized(ma, mb, rho), atol=1e-13)
    assert separable_residual(m16) < 1e-12
    combo = from_combo([(0.5, ma, mb), (0.5, mb, ma)])
    assert separable_residual(combo) > 1e-3
    with pytest.raises(ValueError):
        from_combo([])
    with pytest.raises(ValueError):
        from_combo([(-1, ma, mb)])


def test_reshuffle_state_involution(rng):
    rho = random_density(rng)
    assert np.array_equal(reshuffle_state(reshuffle_state(rho)), rho)


def test_singlet_output_components(rng):
    out = singlet_output_components(np.zeros(3), np.zeros(3), np.eye(3), np.eye(3))
    assert np.allclose(out, SINGLET, atol=1e-15)
    for _ in range(20):
        ma, mb = random_tp_mueller(rng), random_tp_mueller(rng)
        ra, rb = real_from_std(ma), real_from_std(mb)
        got = singlet_output_components(ra[1:, 0], rb[1:, 0], ra[1:, 1:], rb[1:, 1:])
        assert np.allclose(got, apply_bilocal_unnormalized(ma, mb, SINGLET), atol=1e-13)
