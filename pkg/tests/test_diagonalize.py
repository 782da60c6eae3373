import pytest

from varchenko import fixtures
from varchenko.diagonalize import (
    pivot_step,
    diagonalize,
    encompassed_flats,
    expected_diagonal,
    ordering,
    snf_q,
)
from varchenko.errors import (
    NotSemigeneral,
    OrderingStuck,
    PivotDivisionFailure,
)
from varchenko.geometry import Arrangement
from varchenko.matinvariants import gcd_minors
from varchenko.polyring import Polynomial, parse_polynomial
from varchenko.varmatrix import (
    LabeledMatrix,
    build_varchenko,
    det_bruteforce,
    det_formula,
)


def matmul(a, b):
    n = len(a)
    return [
        [
            sum((a[i][k] * b[k][j] for k in range(n)), Polynomial.zero())
            for j in range(n)
        ]
        for i in range(n)
    ]


def test_encompassed_empty_and_singleton():
    arr = fixtures.three_generic_lines()
    assert encompassed_flats(arr, []) == set()
    for region in range(7):
        assert encompassed_flats(arr, [region]) == {0}  # just the ambient flat


def test_encompassed_single_hyperplane_both_regions():
    arr = fixtures.single_line()
    assert encompassed_flats(arr, [0, 1]) == {0, 1}


def test_encompassed_monotone():
    arr = fixtures.three_generic_lines()
    colored = []
    previous = set()
    for region in ordering(arr).order:
        colored.append(region)
        now = encompassed_flats(arr, colored)
        assert previous <= now
        assert len(now) == len(colored)
        previous = now


def test_ordering_single_hyperplane():
    arr = fixtures.single_line()
    result = ordering(arr)
    assert result.order == (0, 1)
    poset = arr.poset()
    assert [len(poset.flats[f].defining_set) for f in result.step_flats] == [0, 1]


def test_ordering_triangle_dims():
    arr = fixtures.three_generic_lines()
    result = ordering(arr)
    poset = arr.poset()
    dims = [poset.flats[f].dim for f in result.step_flats]
    assert dims[0] == 2
    assert sorted(dims) == [0, 0, 0, 1, 1, 1, 2]
    assert sorted(result.step_flats) == list(range(7))
    assert result.order[0] == 0


def test_ordering_gate():
    with pytest.raises(NotSemigeneral):
        ordering(fixtures.three_concurrent_lines())
    with pytest.raises(NotSemigeneral):
        diagonalize(fixtures.pencil_four_planes())


def test_ordering_stuck_when_flats_fewer_than_regions():
    # symmetric covector families carry fewer flats than regions
    with pytest.raises(OrderingStuck):
        ordering(fixtures.suspension_three_generic_lines())


def test_apply_t_two_by_two():
    x = Polynomial.variable(0)
    one = Polynomial.one()
    out = pivot_step(LabeledMatrix([0, 1], [[one, x], [x, one]]), 0)
    assert out.rows == [
        [one, Polynomial.zero()],
        [Polynomial.zero(), one - x * x],
    ]


def test_apply_t_reference_entry():
    from test_varmatrix import triangle_reference_matrix

    out = pivot_step(triangle_reference_matrix(), 0)
    assert out.rows[1][2] == parse_polynomial("x2 - x1^2*x2")
    assert out.rows[1][2] == parse_polynomial("x2") * parse_polynomial("1 - x1^2")
    for m in range(1, 7):
        assert out.rows[0][m].is_zero() and out.rows[m][0].is_zero()


def test_apply_t_divisibility_failure():
    x = Polynomial.variable(0)
    one = Polynomial.one()
    with pytest.raises(PivotDivisionFailure):
        pivot_step(LabeledMatrix([0, 1], [[x, one], [one, x]]), 0)


def test_diagonalize_triangle():
    cert = diagonalize(fixtures.three_generic_lines())
    assert sorted(str(d) for d in cert.diagonal) == sorted(
        [
            "1",
            "(1-x1^2)",
            "(1-x2^2)",
            "(1-x3^2)",
            "(1-x1^2)(1-x2^2)",
            "(1-x1^2)(1-x3^2)",
            "(1-x2^2)(1-x3^2)",
        ]
    )
    assert cert.checks == {"pvq_equals_d": True, "det_p": "1", "det_q": "1"}


def test_diagonalize_single_hyperplane():
    cert = diagonalize(fixtures.single_line())
    assert [str(d) for d in cert.diagonal] == ["1", "(1-x1^2)"]


def test_diagonalize_empty_arrangement():
    cert = diagonalize(Arrangement("affine", 2, []))
    assert [str(d) for d in cert.diagonal] == ["1"]


def test_certificate_product_verified_independently():
    arr = fixtures.three_generic_lines()
    cert = diagonalize(arr)
    v = build_varchenko(arr)
    product = matmul(matmul(cert.P, v.rows), cert.Q)
    d = cert.diagonal_matrix()
    assert product == d.rows
    det_p = det_bruteforce(LabeledMatrix(list(range(7)), cert.P))
    det_q = det_bruteforce(LabeledMatrix(list(range(7)), cert.Q))
    assert det_p.is_constant() and det_p.as_int() in (1, -1)
    assert det_q.is_constant() and det_q.as_int() in (1, -1)


def test_diagonal_matches_expected_multiset():
    for arr in (
        fixtures.three_generic_lines(),
        fixtures.three_parallel_lines(),
        fixtures.two_parallel_one_crossing(),
        fixtures.two_central_circles(),
        fixtures.three_central_spheres(),
    ):
        cert = diagonalize(arr)
        assert sorted(str(d) for d in cert.diagonal) == sorted(
            str(d) for d in expected_diagonal(arr)
        )


def test_expected_diagonal_examples():
    assert sorted(str(d) for d in expected_diagonal(fixtures.three_parallel_lines())) == [
        "(1-x1^2)",
        "(1-x2^2)",
        "(1-x3^2)",
        "1",
    ]
    assert [str(d) for d in expected_diagonal(Arrangement("affine", 2, []))] == ["1"]
    with pytest.raises(NotSemigeneral):
        expected_diagonal(fixtures.three_concurrent_lines())


def test_snf_q_examples():
    assert snf_q(fixtures.three_generic_lines()) == [(0, 1), (1, 3), (2, 3)]
    assert snf_q(fixtures.single_line()) == [(0, 1), (1, 1)]
    assert snf_q(fixtures.five_generic_lines()) == [(0, 1), (1, 5), (2, 10)]
    with pytest.raises(NotSemigeneral):
        snf_q(fixtures.three_concurrent_lines())


def test_certificate_json_schema():
    cert = diagonalize(fixtures.single_line())
    data = cert.to_json_dict()
    assert set(data) == {"ordering", "steps", "P", "Q", "checks"}
    assert data["ordering"] == [0, 1]
    assert data["steps"][0] == {"k": 0, "flat": 0, "entry": "1"}
    assert data["steps"][1]["entry"] == "(1-x1^2)"
    assert data["checks"]["pvq_equals_d"] is True
    assert data["checks"]["det_p"] in ("1", "-1")
    parsed = [[parse_polynomial(s) for s in row] for row in data["P"]]
    assert parsed == cert.P


def test_substitution_commutes_with_reduction():
    """Specializing before or after diagonalizing gives equivalent matrices:
    their univariate minor gcds agree."""
    q = 5  # variable id for the single indeterminate
    for arr in (fixtures.three_generic_lines(), fixtures.three_parallel_lines()):
        cert = diagonalize(arr)
        v = build_varchenko(arr)
        sigma = {i: Polynomial.variable(q) for i in range(arr.n)}
        v_q = v.substitute(sigma)
        d_q = cert.diagonal_matrix().substitute(sigma)
        for k in range(1, min(5, v.size + 1)):
            assert gcd_minors(v_q, k) == gcd_minors(d_q, k)


def test_substitution_commutes_integer_specialization():
    arr = fixtures.three_generic_lines()
    cert = diagonalize(arr)
    v = build_varchenko(arr)
    sigma = {i: 3 for i in range(arr.n)}
    v3 = v.substitute(sigma).to_int_grid()
    d3 = cert.diagonal_matrix().substitute(sigma).to_int_grid()
    for k in range(1, 5):
        assert gcd_minors(v3, k) == gcd_minors(d3, k)


def test_ordering_prefix_validity_across_fixtures():
    """Every prefix of the produced order encompasses exactly k flats,
    recomputed through the public encompassing operation."""
    for name, arr in fixtures.semigeneral_suite():
        if len(arr.regions()) > 16:
            continue
        result = ordering(arr)
        colored = []
        for k, region in enumerate(result.order, start=1):
            colored.append(region)
            now = encompassed_flats(arr, colored)
            assert len(now) == k, (name, k)
            assert set(result.step_flats[:k]) == now, (name, k)


def test_diagonalize_randomized_fixture():
    arr = fixtures.random_generic_lines(5, seed=321)
    cert = diagonalize(arr)
    assert sorted(str(d) for d in cert.diagonal) == sorted(
        str(d) for d in expected_diagonal(arr)
    )
    exponents = {}
    for d in cert.diagonal:
        for base, e in d.exponent_map().items():
            exponents[base] = exponents.get(base, 0) + e
    assert exponents == det_formula(arr).exponent_map()
