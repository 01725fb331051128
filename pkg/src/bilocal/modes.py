"""Conformal one-particle spectrum on the compactified space: spherical
harmonic counting, the residue functional on Fourier labels, and the
oscillator normalization dictionary.

Harmonics are abstract orthonormal labels; only the degeneracy count

    h_ell = (D-2+2*ell)/(D-2+ell) * binomial(D-2+ell, D-2)

and the energy assignment eps = ell + d0, d0 = (D-2)/2, enter the rest
of the construction.  The enumeration order (by ell, then mu) is a
convention; any fixed order works.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import NamedTuple

from .algebra import HamiltonianSpec, apply_hamiltonian, monomial_energy
from .fock import COMPLEX, FockContext, basis_monomials, unit, vacuum


class ModeError(ValueError):
    pass


class ModeLabel(NamedTuple):
    D: int
    ell: int
    mu: int

    @property
    def d0(self) -> Fraction:
        return Fraction(self.D - 2, 2)

    @property
    def energy(self) -> Fraction:
        return self.ell + self.d0


class FourierLabel(NamedTuple):
    """Label of the basis function (z^2)^n h_{ell,mu}(z)."""

    n: int
    ell: int
    mu: int


def _check_dimension(D: int):
    if D % 2 or D < 4:
        raise ModeError(f"spacetime dimension must be even and >= 4, got {D}")


def harmonic_count(D: int, ell: int) -> int:
    """Number of degree-ell spherical harmonics on S^{D-1}."""
    _check_dimension(D)
    if ell < 0:
        raise ModeError("ell must be >= 0")
    num = (D - 2 + 2 * ell) * comb(D - 2 + ell, D - 2)
    count, rem = divmod(num, D - 2 + ell)
    if rem:
        raise ArithmeticError("harmonic count did not divide evenly")
    return count


def enumerate_modes(D: int, count: int) -> list:
    """First ``count`` modes sorted by energy then (ell, mu), with their
    energies; deterministic."""
    _check_dimension(D)
    if count < 1:
        raise ModeError("count must be >= 1")
    out = []
    ell = 0
    while len(out) < count:
        for mu in range(1, harmonic_count(D, ell) + 1):
            label = ModeLabel(D, ell, mu)
            out.append((label, label.energy))
            if len(out) == count:
                return out
        ell += 1
    return out


def residue(label: FourierLabel, D: int) -> int:
    """1 iff the basis function has nonzero residue: n = -D/2 and ell = 0."""
    _check_dimension(D)
    if label.ell < 0 or label.mu < 1 or (label.ell >= 0 and label.mu > harmonic_count(D, label.ell)):
        raise ModeError(f"label {label} outside the harmonic degeneracy")
    return 1 if (label.n == -D // 2 and label.ell == 0) else 0


def oscillator_normalization(ell: int, D: int) -> Fraction:
    """Squared rescaling (ell+d0)/d0 turning field modes into canonical
    oscillators; its product with the mode commutator coefficient
    d0/(ell+d0) is exactly 1."""
    _check_dimension(D)
    if ell < 0:
        raise ModeError("ell must be >= 0")
    d0 = Fraction(D - 2, 2)
    return (ell + d0) / d0


def mode_ccr_coefficient(ell: int, D: int) -> Fraction:
    """d0/(ell+d0), the coefficient in the raw mode commutator."""
    _check_dimension(D)
    d0 = Fraction(D - 2, 2)
    return d0 / (ell + d0)


def appendix_spectrum(ctx: FockContext, D: int) -> HamiltonianSpec:
    """Canonical Hamiltonian with the conformal energies eps = ell + d0."""
    energies = tuple(e for _, e in enumerate_modes(D, ctx.M))
    g = Fraction(ctx.N) if ctx.field_kind == COMPLEX else Fraction(ctx.N, 2)
    return HamiltonianSpec(energies, (g,) * ctx.M)


def conformal_spectrum_check(ctx: FockContext, D: int, count: int,
                             max_particles: int = 2) -> dict:
    """Verify the mode-form Hamiltonian is diagonal with eigenvalue equal to
    the sum of slot energies, and that one-particle degeneracies match
    N * h_ell per species (complete ell-levels only)."""
    if ctx.M != count:
        raise ModeError(f"context mode cutoff {ctx.M} must equal count {count}")
    spec = appendix_spectrum(ctx, D)
    failures = []
    checked = 0
    for m in basis_monomials(ctx, max_particles):
        v = unit(ctx, m)
        got = apply_hamiltonian(ctx, spec, v)
        want = v * monomial_energy(m, spec)
        checked += 1
        if got != want:
            failures.append({"monomial": str(m), "expected": repr(want), "got": repr(got)})
    # one-particle level degeneracies, per complete harmonic level
    species_count = len(ctx.species)
    degeneracies = []
    cumulative = 0
    ell = 0
    while True:
        h = harmonic_count(D, ell)
        if cumulative + h > count:
            break
        cumulative += h
        energy = ell + Fraction(D - 2, 2)
        per_species = [
            sum(
                1
                for m in basis_monomials(ctx, 1)
                if len(m) == 1 and m[0].species == sp and monomial_energy(m, spec) == energy
            )
            for sp in ctx.species
        ]
        expected = ctx.N * h
        degeneracies.append({"ell": ell, "h": h, "energy": energy,
                             "per_species": per_species, "expected": expected})
        if any(x != expected for x in per_species):
            failures.append({"ell": ell, "per_species": per_species, "expected": expected})
        ell += 1
    vac_energy = apply_hamiltonian(ctx, spec, vacuum(ctx))
    if not vac_energy.is_zero():
        failures.append({"vacuum_energy": repr(vac_energy), "expected": "0"})
    return {
        "ok": not failures,
        "diagonal_checked": checked,
        "levels": degeneracies,
        "species": species_count,
        "failures": failures,
    }


def spectrum_table(D: int, count: int) -> list:
    """Rows (ell, h_ell, energy, cumulative modes) covering ``count`` modes."""
    _check_dimension(D)
    rows = []
    cumulative = 0
    ell = 0
    while cumulative < count:
        h = harmonic_count(D, ell)
        cumulative = min(cumulative + h, count)
        rows.append({"ell": ell, "h": h, "energy": ell + Fraction(D - 2, 2),
                     "cumulative": cumulative})
        ell += 1
    return rows
