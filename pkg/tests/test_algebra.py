from fractions import Fraction

import pytest

from bilocal.algebra import (
    E,
    Eminus,
    Eplus,
    HamiltonianSpec,
    OperatorExpr,
    X,
    Xstar,
    abstract_commutator,
    apply_charge,
    apply_generator,
    apply_generator_unshifted,
    apply_hamiltonian,
    canonical_hamiltonian,
    dagger_label,
    generators,
    verify_structure_constants,
)
from bilocal.fock import (
    COMPLEX,
    REAL,
    ContextViolation,
    FockContext,
    a_slot,
    b_slot,
    basis_monomials,
    inner_product,
    unit,
    vacuum,
)


def test_eplus_diagonal_on_vacuum():
    for N in (0, 1, 2, 3):
        ctx = FockContext(COMPLEX, N, 2, 4).validate()
        vac = vacuum(ctx)
        for i in range(1, 3):
            for j in range(1, 3):
                for gen in (Eplus(i, j), Eminus(i, j)):
                    want = vac * Fraction(N, 2) if i == j else 0 * vac
                    assert apply_generator(ctx, gen, vac) == want


def test_x_annihilates_vacuum():
    ctx = FockContext(COMPLEX, 2, 2, 4).validate()
    assert apply_generator(ctx, X(1, 2), vacuum(ctx)).is_zero()


def test_xstar_on_vacuum_flavor_sum():
    ctx = FockContext(COMPLEX, 2, 2, 4).validate()
    v = apply_generator(ctx, Xstar(1, 1), vacuum(ctx))
    want = unit(ctx, (a_slot(1, 1), b_slot(1, 1))) + unit(ctx, (a_slot(1, 2), b_slot(1, 2)))
    assert v == want


def test_real_x_symmetric_spellings_act_identically():
    ctx = FockContext(REAL, 2, 2, 6).validate()
    for m in basis_monomials(ctx, 4):
        v = unit(ctx, m)
        assert apply_generator(ctx, X(1, 2), v) == apply_generator(ctx, X(2, 1), v)
        assert apply_generator(ctx, Xstar(1, 2), v) == apply_generator(ctx, Xstar(2, 1), v)


def test_generator_kind_context_check():
    ctx = FockContext(REAL, 1, 2, 4).validate()
    with pytest.raises(ContextViolation):
        apply_generator(ctx, Eplus(1, 1), vacuum(ctx))


def test_commutator_x_xstar_complex():
    got = abstract_commutator(X(1, 2), Xstar(1, 2), COMPLEX)
    want = OperatorExpr.of(Eplus(2, 2)) + OperatorExpr.of(Eminus(1, 1))
    assert got == want


def test_commutator_eplus_eminus_vanishes():
    assert abstract_commutator(Eplus(1, 2), Eminus(3, 4), COMPLEX).is_zero()


def test_commutator_real_coincident():
    assert abstract_commutator(X(1, 1), Xstar(1, 1), REAL) == 4 * OperatorExpr.of(E(1, 1))


def test_commutator_antisymmetry():
    for kind, gens in (
        (COMPLEX, [X(1, 2), Xstar(2, 1), Eplus(1, 1), Eminus(2, 1)]),
        (REAL, [X(1, 2), Xstar(1, 1), E(2, 1)]),
    ):
        for g1 in gens:
            for g2 in gens:
                assert abstract_commutator(g1, g2, kind) == -1 * abstract_commutator(g2, g1, kind)


@pytest.mark.parametrize("kind,N", [(COMPLEX, 1), (REAL, 2)])
def test_verify_structure_constants_small(kind, N):
    ctx = FockContext(kind, N, 2, 4).validate()
    report = verify_structure_constants(ctx, margin=2)
    assert report["ok"], report["failures"][:1]


def test_corrupted_realization_fails_on_x_xstar():
    ctx = FockContext(COMPLEX, 1, 2, 4).validate()
    report = verify_structure_constants(ctx, margin=2, realization=apply_generator_unshifted)
    assert not report["ok"]
    kinds = {tuple(sorted(p.split("(")[0] for p in f["pair"])) for f in report["failures"]}
    assert ("X", "Xstar") in kinds


def test_margin_precondition():
    ctx = FockContext(COMPLEX, 1, 2, 4).validate()
    with pytest.raises(ValueError):
        verify_structure_constants(ctx, margin=1)


def test_hamiltonian_canonical_on_vacuum():
    for kind in (COMPLEX, REAL):
        ctx = FockContext(kind, 2, 2, 4).validate()
        spec = canonical_hamiltonian(ctx)
        assert apply_hamiltonian(ctx, spec, vacuum(ctx)).is_zero()


def test_hamiltonian_single_slot():
    ctx = FockContext(COMPLEX, 2, 2, 4).validate()
    spec = canonical_hamiltonian(ctx)
    v = unit(ctx, (a_slot(1, 1),))
    assert apply_hamiltonian(ctx, spec, v) == v


def test_hamiltonian_finite_renormalization():
    # g_1 = N + 1 with the rest canonical shifts the vacuum energy by -eps_1
    ctx = FockContext(COMPLEX, 2, 2, 4).validate()
    energies = (Fraction(1), Fraction(2))
    spec = HamiltonianSpec(energies, (Fraction(ctx.N + 1), Fraction(ctx.N)))
    vac = vacuum(ctx)
    assert apply_hamiltonian(ctx, spec, vac) == -1 * vac


def test_hamiltonian_validation():
    ctx = FockContext(COMPLEX, 1, 2, 4).validate()
    with pytest.raises(ContextViolation):
        HamiltonianSpec((Fraction(1),), (Fraction(1),)).validate(ctx)
    with pytest.raises(ContextViolation):
        HamiltonianSpec((Fraction(2), Fraction(1)), (Fraction(0), Fraction(0))).validate(ctx)


def test_charge_values():
    ctx = FockContext(COMPLEX, 2, 2, 4).validate()
    assert apply_charge(ctx, vacuum(ctx)).is_zero()
    one_a = unit(ctx, (a_slot(1, 1),))
    assert apply_charge(ctx, one_a) == one_a
    two_b = unit(ctx, (b_slot(1, 1), b_slot(2, 1)))
    assert apply_charge(ctx, two_b) == -2 * two_b


def test_charge_unsupported_in_real_case():
    ctx = FockContext(REAL, 1, 2, 4).validate()
    with pytest.raises(ContextViolation):
        apply_charge(ctx, vacuum(ctx))


def test_charge_commutes_with_generators():
    ctx = FockContext(COMPLEX, 2, 2, 4).validate()
    for g in generators(ctx):
        for m in basis_monomials(ctx, 2):
            v = unit(ctx, m)
            assert apply_charge(ctx, apply_generator(ctx, g, v)) == apply_generator(
                ctx, g, apply_charge(ctx, v)
            )


@pytest.mark.parametrize("kind", [COMPLEX, REAL])
def test_grading_of_x_generators(kind):
    # [H_c, X(i,j)] = -(eps_i + eps_j) X(i,j) on the margin subspace
    ctx = FockContext(kind, 2, 2, 4).validate()
    spec = canonical_hamiltonian(ctx)
    eps = spec.energies
    for i in range(1, 3):
        for j in range(1, 3):
            for m in basis_monomials(ctx, 2):
                v = unit(ctx, m)
                xv = apply_generator(ctx, X(i, j), v)
                lhs = apply_hamiltonian(ctx, spec, xv) - apply_generator(
                    ctx, X(i, j), apply_hamiltonian(ctx, spec, v)
                )
                assert lhs == -(eps[i - 1] + eps[j - 1]) * xv


def test_generator_adjointness():
    ctx = FockContext(COMPLEX, 2, 2, 3).validate()
    vs = [unit(ctx, m) for m in basis_monomials(ctx)]
    for g in generators(ctx):
        gd = dagger_label(g)
        for v in vs:
            gv = apply_generator(ctx, g, v)
            for w in vs:
                assert inner_product(gv, w) == inner_product(v, apply_generator(ctx, gd, w))


def test_operator_expr_apply_and_dagger():
    ctx = FockContext(COMPLEX, 1, 2, 4).validate()
    expr = OperatorExpr.of(X(1, 1)) * OperatorExpr.of(Xstar(1, 1))
    vac = vacuum(ctx)
    # X X* |0> = [X, X*] |0> = (E+ + E-) |0> = N |0>
    assert expr.apply(ctx, vac) == vac * ctx.N
    assert expr.dagger() == OperatorExpr.of(X(1, 1)) * OperatorExpr.of(Xstar(1, 1))
    assert OperatorExpr.of(Eplus(1, 2)).dagger() == OperatorExpr.of(Eplus(2, 1))
    mixed = OperatorExpr.of(X(1, 2)) * OperatorExpr.of(Eplus(1, 2))
    assert mixed.dagger() == OperatorExpr.of(Eplus(2, 1)) * OperatorExpr.of(Xstar(1, 2))


def test_scalar_word_in_expr():
    ctx = FockContext(COMPLEX, 1, 1, 2).validate()
    expr = OperatorExpr.scalar(Fraction(3, 2))
    assert expr.apply(ctx, vacuum(ctx)) == Fraction(3, 2) * vacuum(ctx)
