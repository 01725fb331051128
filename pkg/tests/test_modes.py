import pytest

from bilocal.fock import COMPLEX, REAL, FockContext
from bilocal.modes import (
    FourierLabel,
    ModeError,
    conformal_spectrum_check,
    enumerate_modes,
    harmonic_count,
    mode_ccr_coefficient,
    oscillator_normalization,
    residue,
    spectrum_table,
)


def test_harmonic_count_examples():
    assert harmonic_count(4, 0) == 1
    assert harmonic_count(4, 2) == 9
    assert harmonic_count(6, 1) == 6


def test_harmonic_count_d4_squares():
    for ell in range(11):
        assert harmonic_count(4, ell) == (ell + 1) ** 2


def test_harmonic_count_positive_integers():
    for D in (4, 6, 8, 10):
        for ell in range(21):
            assert harmonic_count(D, ell) >= 1


def test_dimension_validation():
    for D in (2, 3, 5):
        with pytest.raises(ModeError):
            harmonic_count(D, 0)


def test_enumerate_modes_d4():
    modes = enumerate_modes(4, 5)
    assert [e for _, e in modes] == [1, 2, 2, 2, 2]
    assert [m.ell for m, _ in modes] == [0, 1, 1, 1, 1]
    assert [m.mu for m, _ in modes] == [1, 1, 2, 3, 4]


def test_enumerate_modes_single_and_d6():
    (label, energy), = enumerate_modes(4, 1)
    assert energy == 1 == label.d0
    modes = enumerate_modes(6, 2)
    assert [e for _, e in modes] == [2, 3]


def test_enumerate_modes_deterministic():
    assert enumerate_modes(4, 14) == enumerate_modes(4, 14)


def test_residue():
    assert residue(FourierLabel(-2, 0, 1), 4) == 1
    assert residue(FourierLabel(0, 0, 1), 4) == 0
    assert residue(FourierLabel(-2, 1, 1), 4) == 0


def test_residue_vanishes_for_positive_ell():
    for D in (4, 6):
        for n in range(-5, 3):
            for ell in range(1, 5):
                for mu in range(1, harmonic_count(D, ell) + 1):
                    assert residue(FourierLabel(n, ell, mu), D) == 0


def test_oscillator_normalization():
    assert oscillator_normalization(0, 4) == 1
    assert oscillator_normalization(1, 4) == 2
    assert oscillator_normalization(3, 8) == 2
    for D in (4, 6, 8):
        for ell in range(11):
            assert oscillator_normalization(ell, D) * mode_ccr_coefficient(ell, D) == 1


def test_conformal_spectrum_check_complex():
    ctx = FockContext(COMPLEX, 1, 5, 2).validate()
    report = conformal_spectrum_check(ctx, 4, 5)
    assert report["ok"]
    by_ell = {lvl["ell"]: lvl for lvl in report["levels"]}
    assert by_ell[0]["per_species"] == [1, 1]  # one a and one b at energy 1
    assert by_ell[1]["per_species"] == [4, 4]


def test_conformal_spectrum_check_flavor_doubling():
    ctx = FockContext(COMPLEX, 2, 5, 2).validate()
    report = conformal_spectrum_check(ctx, 4, 5)
    assert report["ok"]
    assert report["levels"][0]["per_species"] == [2, 2]


def test_conformal_spectrum_check_real_single_species():
    ctx = FockContext(REAL, 1, 5, 2).validate()
    report = conformal_spectrum_check(ctx, 4, 5)
    assert report["ok"]
    assert report["levels"][0]["per_species"] == [1]


def test_spectrum_table():
    rows = spectrum_table(4, 14)
    assert [(r["ell"], r["h"], r["cumulative"]) for r in rows] == [
        (0, 1, 1),
        (1, 4, 5),
        (2, 9, 14),
    ]
    assert [r["energy"] for r in rows] == [1, 2, 3]
