import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tracecodes.charsums import (
    artin_schreier_criterion,
    artin_schreier_solvable,
    chi,
    chi_many,
    jacobi2,
    lemma5_printed_value,
    linearized_map,
    predict_sum,
    predict_sums_all_b,
    s11_closed_form,
    solve_linearized,
    walsh_hadamard,
    weil_sum_brute,
    weil_sums_all_b,
    KIND_TWO,
)
from tracecodes.errors import DomainError, ParameterError
from tracecodes.gf2m import build_field

from naive import NaiveField, naive_weil_sum


def proper_divisors(m):
    return [h for h in range(1, m) if m % h == 0]


ALL_MH = [(m, h) for m in range(2, 13) for h in proper_divisors(m)]


# -- characters ---------------------------------------------------------------

def test_chi_examples():
    assert chi(build_field(5), 0) == 1
    assert chi(build_field(2), 1) == 1


@pytest.mark.parametrize("m", range(2, 11))
def test_character_orthogonality(m):
    F = build_field(m)
    xs = F.elements()
    for c in range(1, F.q):
        assert chi_many(F, F.mul_many(xs, c)).sum() == 0


@pytest.mark.parametrize("m", [3, 6, 9])
def test_chi_is_additive(m):
    F = build_field(m)
    xs = F.elements()
    for y in range(F.q):
        assert np.array_equal(chi_many(F, xs ^ y), chi_many(F, xs) * chi(F, y))


@pytest.mark.parametrize("n,value", [(1, 1), (3, -1), (5, -1), (7, 1), (9, 1), (11, -1)])
def test_jacobi2(n, value):
    assert jacobi2(n) == value == (-1) ** ((n * n - 1) // 8)


@pytest.mark.parametrize("n", [0, 2, -3, 8])
def test_jacobi2_rejects(n):
    with pytest.raises(ParameterError):
        jacobi2(n)


# -- brute-force sums ---------------------------------------------------------

@pytest.mark.parametrize("m,h,a,b,value", [
    (3, 1, 1, 0, 0),
    (3, 1, 1, 1, -4),   # naive oracle; equals (2/3) 2^2
    (4, 2, 1, 1, 0),
    (4, 1, 1, 1, 8),    # naive oracle; equals -(-1)^(m/4) 2^(e+h)
    (12, 2, 1, 0, 256),  # computed; see predict example below
])
def test_weil_sum_examples(m, h, a, b, value):
    assert weil_sum_brute(build_field(m), h, a, b) == value


@pytest.mark.parametrize("m,h", [(3, 1), (4, 1), (4, 2), (6, 2), (6, 3)])
def test_brute_sum_matches_naive_oracle(m, h):
    F = build_field(m)
    N = NaiveField(m, F.modulus)
    step = 1 if m <= 4 else 7
    for a in range(0, F.q, step):
        for b in range(0, F.q, step):
            assert weil_sum_brute(F, h, a, b) == naive_weil_sum(N, h, a, b)


def test_weil_sum_rejects_bad_h():
    with pytest.raises(ParameterError):
        weil_sum_brute(build_field(5), 2, 1, 1)
    with pytest.raises(ParameterError):
        weil_sum_brute(build_field(4), 4, 1, 1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ALL_MH), st.data())
def test_sum_value_bounds_and_parity(mh, data):
    m, h = mh
    F = build_field(m)
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    s = weil_sum_brute(F, h, a, b)
    assert abs(s) <= F.q
    assert s % 2 == 0


def test_walsh_hadamard_small():
    assert walsh_hadamard([1, 0, 0, 0]).tolist() == [1, 1, 1, 1]
    assert walsh_hadamard([0, 1, 0, 0]).tolist() == [1, -1, 1, -1]
    v = np.arange(8)
    assert np.array_equal(walsh_hadamard(walsh_hadamard(v)), 8 * v)
    with pytest.raises(ParameterError):
        walsh_hadamard([1, 2, 3])


@pytest.mark.parametrize("m,h", [(m, h) for m, h in ALL_MH if m <= 9])
def test_all_b_transform_matches_brute(m, h):
    F = build_field(m)
    for a in range(1, F.q, 1 if m <= 6 else 13):
        S = weil_sums_all_b(F, h, a)
        for b in range(0, F.q, 1 if m <= 6 else 11):
            assert S[b] == weil_sum_brute(F, h, a, b)


# -- odd m/h identities -------------------------------------------------------

@pytest.mark.parametrize("m,h", [(m, h) for m, h in ALL_MH if (m // h) % 2])
def test_zero_at_b0_for_odd_ratio(m, h):
    F = build_field(m)
    for a in range(1, F.q):
        assert weil_sums_all_b(F, h, a)[0] == 0


@pytest.mark.parametrize("m,h", [(m, h) for m, h in ALL_MH if (m // h) % 2 and m <= 9])
def test_reduction_to_unit_coefficient(m, h):
    F = build_field(m)
    ones = weil_sums_all_b(F, h, 1)
    for c in range(1, F.q):
        a = F.pow(c, 2 ** h + 1)
        S = weil_sums_all_b(F, h, a)
        cinv = F.inv(c)
        bs = F.elements()
        assert np.array_equal(S, ones[F.mul_many(bs, cinv)])


# -- linearized equations -----------------------------------------------------

def test_linearized_homogeneous():
    F = build_field(6)
    sol = solve_linearized(F, 5, 1, 0)
    assert sol.solvable and 0 in sol.solutions
    assert len(sol.solutions) == 2 ** sol.kernel_dimension


def test_linearized_noncube_is_bijective():
    F = build_field(4)
    noncubes = [a for a in range(1, 16) if not F.is_d_power(a, 1)]
    assert len(noncubes) == 10
    for a in noncubes:
        for rhs in range(16):
            sol = solve_linearized(F, a, 1, rhs)
            assert sol.kernel_dimension == 0 and len(sol.solutions) == 1


def test_linearized_unsolvable_gives_zero_sum():
    F = build_field(4)
    # image of x^4 + x over F_16 with x^4+x+1 is {0, 1, 6, 7} (naive oracle)
    image = {linearized_map(F, 1, 1, x) for x in range(16)}
    assert image == {0, 1, 6, 7}
    for b in range(1, 16):
        sol = solve_linearized(F, 1, 1, F.frobenius(b, 1))
        assert sol.solvable == (F.frobenius(b, 1) in image)
        if not sol.solvable:
            assert weil_sum_brute(F, 1, 1, b) == 0


@pytest.mark.parametrize("m,h", [(m, h) for m, h in ALL_MH if (m // h) % 2 == 0 and m <= 10])
def test_linearized_solutions_check_out(m, h):
    F = build_field(m)
    for a in range(1, F.q, 3):
        image = {}
        for x in range(F.q):
            image.setdefault(linearized_map(F, a, h, x), []).append(x)
        for rhs in range(0, F.q, 5):
            sol = solve_linearized(F, a, h, rhs)
            assert list(sol.solutions) == sorted(image.get(rhs, []))
            if sol.solvable:
                assert len(sol.solutions) == 2 ** sol.kernel_dimension
            assert sol.kernel_dimension == (0 if not F.is_d_power(a, h) else 2 * h)


def test_linearized_preconditions():
    F = build_field(4)
    with pytest.raises(DomainError):
        solve_linearized(F, 0, 1, 1)
    with pytest.raises(ParameterError):
        solve_linearized(build_field(6), 1, 2, 1)  # m/h odd


# -- x^(2^(2h)) + x = 1 -------------------------------------------------------

@pytest.mark.parametrize("m,h,expected", [(4, 1, True), (6, 1, False), (12, 3, True)])
def test_artin_schreier_examples(m, h, expected):
    assert artin_schreier_solvable(build_field(m), h) is expected


# -- closed forms -------------------------------------------------------------

@pytest.mark.parametrize("m,h,a,b,kind,values,case", [
    (9, 3, 1, 1, "exact", (-64,), "3.1"),
    (3, 1, 1, 0, "zero", (0,), "2"),
    # the brute sum at (12,2,1,0) is +256: e/h = 3 is odd so -(-1)^3 2^8 = +256
    (12, 2, 1, 0, "exact", (256,), "4"),
    (4, 1, 1, 1, "exact", (8,), "9"),
    (6, 1, 1, 1, "zero", (0,), "9"),
])
def test_predict_examples(m, h, a, b, kind, values, case):
    p = predict_sum(build_field(m), h, a, b)
    assert (p.kind, p.values, p.case) == (kind, values, case)


def test_predict_zero_when_relative_trace_not_one():
    F = build_field(9)
    bs = [b for b in range(1, F.q) if F.rel_trace(b, 3) != 1]
    assert bs
    for b in bs[:50]:
        p = predict_sum(F, 3, 1, b)
        assert p.values == (0,) and p.case == "3"
    two = [b for b in range(2, F.q) if F.rel_trace(b, 3) == 1]
    p = predict_sum(F, 3, 1, two[0])
    assert p.kind == "two-valued" and set(p.values) == {64, -64}


def test_predict_a_zero_is_orthogonality():
    F = build_field(5)
    assert predict_sum(F, 1, 0, 0).values == (32,)
    assert predict_sum(F, 1, 0, 3).values == (0,)


@pytest.mark.parametrize("m,h", [(m, h) for m, h in ALL_MH if m <= 10])
def test_closed_forms_admit_brute_values(m, h):
    F = build_field(m)
    for a in range(1, F.q):
        S = weil_sums_all_b(F, h, a)
        kind, value, case = predict_sums_all_b(F, h, a)
        ok = np.where(kind == KIND_TWO, np.abs(S) == value, S == value)
        assert ok.all(), (a, np.flatnonzero(~ok)[:5])


@pytest.mark.parametrize("m,h", [(m, h) for m, h in ALL_MH if m <= 7])
def test_scalar_and_vector_predictors_agree(m, h):
    F = build_field(m)
    for a in range(1, F.q):
        kind, value, case = predict_sums_all_b(F, h, a)
        for b in range(F.q):
            p = predict_sum(F, h, a, b)
            assert p.case == case[b]
            if kind[b] == KIND_TWO:
                assert p.kind == "two-valued" and set(p.values) == {value[b], -value[b]}
            else:
                assert p.values == (value[b],)


@pytest.mark.parametrize("m,h", ALL_MH)
def test_unit_sum_closed_form(m, h):
    assert weil_sum_brute(build_field(m), h, 1, 1) == s11_closed_form(m, h)


def test_printed_power_trace_split_is_refuted():
    # F_16 with x^4+x+1, h = 1: a = 8 is a cube with Tr_1^4(8) = 1 and
    # x^4 a^2 + a x = b^2 is solvable for b = 2; the naive oracle gives S = 8
    F = build_field(4)
    assert F.is_d_power(8, 1) and F.rel_trace(8, 1) == 1
    assert naive_weil_sum(NaiveField(4, 0b10011), 1, 8, 2) == 8
    assert weil_sum_brute(F, 1, 8, 2) == 8
    assert abs(lemma5_printed_value(F, 1, 8, 2)) == 4
    assert predict_sum(F, 1, 8, 2).values == (8,)


@pytest.mark.parametrize("m,h", [(m, h) for m, h in ALL_MH if (m // h) % 2 == 0 and m <= 8])
def test_printed_split_agrees_outside_power_trace_branch(m, h):
    F = build_field(m)
    for a in range(1, F.q):
        if F.is_d_power(a, h) and F.rel_trace(a, h) != 0:
            continue
        for b in range(1, F.q, 3):
            assert lemma5_printed_value(F, h, a, b) == weil_sum_brute(F, h, a, b)


@pytest.mark.parametrize("m,h", [(m, h) for m in range(2, 17) for h in proper_divisors(m)])
def test_artin_schreier_matches_criterion(m, h):
    assert artin_schreier_solvable(build_field(m), h) == artin_schreier_criterion(m, h)
