from fractions import Fraction

import pytest

from bilocal.algebra import GeneratorLabel, X, Xstar, apply_generator
from bilocal.fock import (
    COMPLEX,
    REAL,
    FockContext,
    TruncationError,
    a_slot,
    apply_creation,
    b_slot,
    inner_product,
    norm_sq,
    unit,
    vacuum,
)
from bilocal.sectors import (
    Weight,
    build_ground_state,
    classify_spectrum,
    determinant_operator,
    determinant_recursion_check,
    norm_recursion_oracle,
    null_vector_order,
    p_polynomial_check,
    verify_hw_conditions,
    weight_from_sector,
)
from bilocal.young import (
    EMPTY,
    BoundViolation,
    complex_sector,
    diagram,
    enumerate_sectors,
    real_sector,
    sector_to_irrep_U,
    vacuum_sector,
    weyl_dimension_U,
)


def _ground_context(s, extra_particles=0, min_modes=0):
    rows = max(s.y_plus.num_rows, s.y_minus.num_rows if s.y_minus else 0)
    M = max(rows + 1, 2, min_modes)
    P = s.total_boxes() + extra_particles
    return FockContext(s.field_kind, s.N, M, P).validate()


# ---------------------------------------------------------------------------
# weights


def test_weight_from_sector_examples():
    w = weight_from_sector(complex_sector(EMPTY, EMPTY, 2))
    assert w.head_plus == () and w.tail == 1

    w = weight_from_sector(complex_sector(diagram(1), EMPTY, 2))
    assert w.head_plus == (Fraction(2),) and w.tail == 1

    w = weight_from_sector(real_sector(diagram(2, 1), 3))
    assert w.head_plus == (Fraction(7, 2), Fraction(5, 2)) and w.tail == Fraction(3, 2)


def test_weight_from_sector_bound_rejection():
    with pytest.raises(BoundViolation):
        weight_from_sector(complex_sector(diagram(1, 1), diagram(1), 2))


def test_weight_validation():
    with pytest.raises(ValueError):
        Weight(COMPLEX, (Fraction(1), Fraction(2)), (), Fraction(0))
    with pytest.raises(ValueError):
        Weight(REAL, (Fraction(1, 3),), None, Fraction(0))


# ---------------------------------------------------------------------------
# ground states


def test_ground_state_trivial_sector_is_vacuum():
    for kind, N in ((COMPLEX, 2), (REAL, 1)):
        s = vacuum_sector(kind, N)
        ctx = _ground_context(s)
        assert build_ground_state(ctx, s) == vacuum(ctx)


def test_ground_state_single_box():
    s = complex_sector(diagram(1), EMPTY, 2)
    ctx = _ground_context(s)
    assert build_ground_state(ctx, s) == unit(ctx, (a_slot(1, 1),))


def test_ground_state_column_of_two():
    s = complex_sector(diagram(1, 1), EMPTY, 2)
    ctx = _ground_context(s)
    got = build_ground_state(ctx, s)
    want = unit(ctx, (a_slot(1, 1), a_slot(2, 2))) - unit(ctx, (a_slot(1, 2), a_slot(2, 1)))
    assert got == want


def test_ground_state_b_determinant_flavors():
    # b columns occupy the top flavors N+1-r .. N
    s = complex_sector(EMPTY, diagram(1), 3)
    ctx = _ground_context(s)
    assert build_ground_state(ctx, s) == unit(ctx, (b_slot(1, 3),))


def test_real_ground_state_traceless_projection():
    # one row of two boxes at N=2: the traceless symmetric component
    s = real_sector(diagram(2), 2)
    ctx = _ground_context(s)
    got = build_ground_state(ctx, s)
    want = unit(ctx, (a_slot(1, 1), a_slot(1, 1))) - unit(ctx, (a_slot(1, 2), a_slot(1, 2)))
    assert got == want


def test_ground_state_truncation_errors():
    s = complex_sector(diagram(1, 1, 1), EMPTY, 3)
    with pytest.raises(TruncationError):
        build_ground_state(FockContext(COMPLEX, 3, 2, 8), s)
    with pytest.raises(TruncationError):
        build_ground_state(FockContext(COMPLEX, 3, 3, 2), s)


@pytest.mark.parametrize("kind", [COMPLEX, REAL])
def test_all_small_ground_states_are_highest_weight(kind):
    for N in (1, 2, 3):
        for s in enumerate_sectors(kind, N, 3):
            if s.total_boxes() > 3:
                continue
            ctx = _ground_context(s)
            ground = build_ground_state(ctx, s)
            report = verify_hw_conditions(ctx, ground, weight_from_sector(s))
            assert report["ok"], (str(s), report["failures"][:1])


def test_traceful_pair_fails_hw():
    ctx = FockContext(COMPLEX, 1, 2, 4).validate()
    v = apply_creation(ctx, b_slot(1, 1), apply_creation(ctx, a_slot(1, 1), vacuum(ctx)))
    w = Weight(COMPLEX, (Fraction(3, 2),), (Fraction(3, 2),), Fraction(1, 2))
    report = verify_hw_conditions(ctx, v, w)
    assert not report["ok"]
    assert any("X(1,1)" in f["condition"] for f in report["failures"])


# ---------------------------------------------------------------------------
# norm oracles against brute force


def test_norm_oracle_values():
    w = weight_from_sector(complex_sector(EMPTY, EMPTY, 2))
    assert norm_recursion_oracle(w, "recX", 1, 1) == 2  # N

    w = Weight(COMPLEX, (Fraction(2),), (), Fraction(1))
    assert norm_recursion_oracle(w, "recE", 1, 2, n=1, side="plus") == 1
    assert norm_recursion_oracle(w, "recE", 1, 2, n=2, side="plus") == 0


def test_null_vector_order():
    w = Weight(COMPLEX, (Fraction(2),), (), Fraction(1))
    assert null_vector_order(w, 1, 2, "plus") == 2
    assert null_vector_order(w, 1, 2, "minus") == 1


def _raise_e(ctx, side, j, i, n, v):
    kind = {"plus": "Eplus", "minus": "Eminus", "real": "E"}[side]
    for _ in range(n):
        v = apply_generator(ctx, GeneratorLabel(kind, j, i), v)
    return v


def _lower_e(ctx, side, i, j, n, v):
    kind = {"plus": "Eplus", "minus": "Eminus", "real": "E"}[side]
    for _ in range(n):
        v = apply_generator(ctx, GeneratorLabel(kind, i, j), v)
    return v


@pytest.mark.parametrize("kind", [COMPLEX, REAL])
def test_norms_match_brute_force(kind):
    for N in (1, 2):
        for s in enumerate_sectors(kind, N, 2):
            if s.total_boxes() > 2:
                continue
            ctx = _ground_context(s, extra_particles=2)
            ground = build_ground_state(ctx, s)
            w = weight_from_sector(s)
            g2 = norm_sq(ground)
            for i in range(1, ctx.M + 1):
                for j in range(1, ctx.M + 1):
                    raised = apply_generator(ctx, Xstar(i, j), ground)
                    assert norm_sq(raised) == norm_recursion_oracle(w, "recX", i, j) * g2
            sides = ("plus", "minus") if kind == COMPLEX else ("real",)
            for side in sides:
                oracle_side = side if side != "real" else "plus"
                for i in range(1, ctx.M + 1):
                    for j in range(i + 1, ctx.M + 1):
                        order = null_vector_order(w, i, j, oracle_side)
                        for n in range(1, order + 1):
                            lowered = _raise_e(ctx, side, j, i, n, ground)
                            val = inner_product(
                                ground, _lower_e(ctx, side, i, j, n, lowered)
                            )
                            assert val == norm_recursion_oracle(
                                w, "recE", i, j, n=n, side=oracle_side
                            ) * g2
                        # the null vector itself vanishes identically
                        assert _raise_e(ctx, side, j, i, order, ground).is_zero()


# ---------------------------------------------------------------------------
# determinants


def test_determinant_operator_small():
    d1 = determinant_operator(1)
    assert d1.terms == {(X(1, 1),): Fraction(1)}
    d2 = determinant_operator(2)
    assert d2.terms == {
        (X(1, 1), X(2, 2)): Fraction(1),
        (X(1, 2), X(2, 1)): Fraction(-1),
    }
    with pytest.raises(Exception):
        determinant_operator(3, max_mode=2)


def test_determinant_recursion_examples():
    ctx = FockContext(COMPLEX, 2, 3, 6).validate()
    assert determinant_recursion_check(ctx, vacuum_sector(ctx), 2)["coefficient"] == 2
    assert determinant_recursion_check(ctx, vacuum_sector(ctx), 2)["ok"]
    r3 = determinant_recursion_check(ctx, vacuum_sector(ctx), 3)
    assert r3["coefficient"] == 0 and r3["ok"]
    rctx = FockContext(REAL, 1, 2, 4).validate()
    rr = determinant_recursion_check(rctx, vacuum_sector(rctx), 2)
    assert rr["coefficient"] == 0 and rr["ok"]


def test_determinant_recursion_nontrivial_sectors():
    ctx = FockContext(COMPLEX, 2, 3, 8).validate()
    r = determinant_recursion_check(ctx, complex_sector(diagram(1), EMPTY, 2), 2)
    assert r["ok"] and r["coefficient"] == 3
    r = determinant_recursion_check(ctx, complex_sector(diagram(1), diagram(1), 2), 2)
    assert r["ok"] and r["coefficient"] == 4
    rctx = FockContext(REAL, 2, 3, 8).validate()
    r = determinant_recursion_check(rctx, real_sector(diagram(1), 2), 2)
    assert r["ok"] and r["coefficient"] == 16


def test_p_polynomial_small():
    r1 = p_polynomial_check(1)
    assert r1["ok"] and r1["norms"] == [0, 1, 2, 3]
    r2 = p_polynomial_check(2)
    assert r2["ok"] and r2["norms"][:2] == [0, 0] and r2["norms"][2] > 0


def test_p_polynomial_offset_matches():
    # the window of modes is immaterial: same polynomial at offset 1
    assert p_polynomial_check(2, r=1)["norms"] == p_polynomial_check(2, r=0)["norms"]


# ---------------------------------------------------------------------------
# classification


def test_classify_complex_n1_in_bound_only():
    ctx = FockContext(COMPLEX, 1, 3, 6).validate()
    results = classify_spectrum(ctx, 2)
    sectors = {str(e["sector"]) for e in results}
    assert sectors == {
        "([],[],N=1)",
        "([1],[],N=1)",
        "([],[1],N=1)",
        "([2],[],N=1)",
        "([],[2],N=1)",
    }
    assert all(e["multiplicity"] == 1 for e in results)
    # the mixed one-box pair violates r+ + r- <= N at N=1 and must not appear
    assert "([1],[1],N=1)" not in sectors


def test_classify_complex_n2_cutoff1():
    ctx = FockContext(COMPLEX, 2, 2, 4).validate()
    results = classify_spectrum(ctx, 1)
    got = {(str(e["sector"]), e["multiplicity"]) for e in results}
    assert got == {
        ("([],[],N=2)", 1),
        ("([1],[],N=2)", 2),
        ("([],[1],N=2)", 2),
    }


def test_classify_matches_independent_enumeration():
    # oracle: in-bound sectors with energy sum m_i * eps_i below cutoff
    ctx = FockContext(COMPLEX, 2, 3, 6).validate()
    cutoff = 2
    expected = set()
    for s in enumerate_sectors(COMPLEX, 2, cutoff):
        energy = sum(i * r for i, r in enumerate(s.y_plus.rows, 1)) + sum(
            i * r for i, r in enumerate(s.y_minus.rows, 1)
        )
        if energy <= cutoff:
            expected.add(str(s))
    got = {str(e["sector"]) for e in classify_spectrum(ctx, cutoff)}
    assert got == expected


def test_classify_multiplicity_equals_gauge_dimension():
    ctx = FockContext(COMPLEX, 2, 3, 6).validate()
    for e in classify_spectrum(ctx, 2):
        dim = weyl_dimension_U(sector_to_irrep_U(e["sector"]), 2)
        assert e["multiplicity"] == dim, str(e["sector"])


def test_classify_real_bound_never_violated():
    ctx = FockContext(REAL, 2, 3, 6).validate()
    results = classify_spectrum(ctx, 3)
    for e in results:
        s = e["sector"]
        assert s is not None
        assert s.y_plus.column(1) + s.y_plus.column(2) <= 2
    assert {str(e["sector"]) for e in results} == {
        "([],N=2)",
        "([1],N=2)",
        "([2],N=2)",
        "([1,1],N=2)",
        "([3],N=2)",
    }


def test_classify_real_excludes_bound_violators_reachable_by_energy():
    # at N=1 the two-box row has energy 2 but r+s = 2 > 1
    ctx = FockContext(REAL, 1, 2, 4).validate()
    got = {str(e["sector"]) for e in classify_spectrum(ctx, 2)}
    assert got == {"([],N=1)", "([1],N=1)"}


def test_classify_vacuum_unique_at_energy_zero():
    for kind, N in ((COMPLEX, 2), (REAL, 2), (COMPLEX, 0)):
        ctx = FockContext(kind, N, 2, 4).validate()
        results = classify_spectrum(ctx, 0)
        assert len(results) == 1
        assert results[0]["multiplicity"] == 1
        assert results[0]["sector"] == vacuum_sector(ctx)


def test_classify_infeasible_cutoff():
    ctx = FockContext(COMPLEX, 1, 2, 2).validate()
    with pytest.raises(TruncationError):
        classify_spectrum(ctx, 5)


def test_classify_never_reports_bound_violations():
    for kind in (COMPLEX, REAL):
        for N in (0, 1, 2, 3):
            ctx = FockContext(kind, N, 3, 4).validate()
            for e in classify_spectrum(ctx, 3):
                s = e["sector"]
                assert s is not None and s.bound_violation() is None, (kind, N, e["weight"])


def test_classify_with_degenerate_spectrum():
    # conformal energies at D=4: modes (1, 2, 2, 2, 2); the one-box sector
    # then sits below a cutoff of 1 while two-box sectors need energy >= 2
    from bilocal.modes import appendix_spectrum

    ctx = FockContext(REAL, 2, 5, 4).validate()
    spec = appendix_spectrum(ctx, 4)
    results = classify_spectrum(ctx, 1, spec)
    assert {str(e["sector"]) for e in results} == {"([],N=2)", "([1],N=2)"}
