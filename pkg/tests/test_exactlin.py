from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricfrob.exactlin import (
    LinearProgram,
    det,
    identity,
    kernel_lattice,
    lp_optimize,
    mat_mul,
    mat_vec,
    rational_kernel,
    rational_solve,
    smith_normal_form,
    solve_integer,
)


def check_snf(A):
    snf = smith_normal_form(A)
    assert mat_mul(mat_mul(snf.u, A), snf.v) == snf.s
    assert abs(det(snf.u)) == 1
    assert abs(det(snf.v)) == 1
    diag = snf.diagonal
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    for i, row in enumerate(snf.s):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    return snf


def test_snf_identity():
    snf = check_snf(identity(2))
    assert snf.s == identity(2)


def test_snf_p2_ray_matrix():
    # transpose of the ray matrix of the standard 3-ray surface fan
    A = [[1, 0], [0, 1], [-1, -1]]
    snf = check_snf(A)
    assert snf.diagonal == [1, 1]
    # cokernel of the 3x2 map has rank 3 - 2 = 1 and no torsion


def test_snf_divisibility_normalization():
    snf = check_snf([[2, 0], [0, 3]])
    assert snf.diagonal == [1, 6]


def test_kernel_lattice_symmetry():
    assert kernel_lattice([[1, 1]]) in ([(1, -1)], [(-1, 1)])


def test_kernel_lattice_p2_projection():
    ker = kernel_lattice([[1, 1, 1]])
    assert len(ker) == 2
    for v in ker:
        assert sum(v) == 0
    # (1,-1,0) and (0,1,-1) lie in the spanned lattice
    for target in [(1, -1, 0), (0, 1, -1)]:
        sol = rational_solve([[ker[0][i], ker[1][i]] for i in range(3)], target)
        assert sol is not None
        assert all(s.denominator == 1 for s in sol)


def test_kernel_lattice_trivial():
    assert kernel_lattice([[1, 0], [0, 1]]) == []


def test_kernel_is_saturated():
    ker = kernel_lattice([[2, 4], [1, 2]])
    assert len(ker) == 1
    snf = smith_normal_form([list(v) for v in ker])
    assert all(d in (0, 1) for d in snf.diagonal)


def test_solve_integer():
    assert solve_integer([[2]], [4]) == [2]
    assert solve_integer([[2]], [3]) is None
    # ray matrix transpose of the 3-ray surface against Div of (1,0)
    A = [[1, 0, -1], [0, 1, -1]]
    x = solve_integer(A, [1, 0])
    assert x is not None and mat_vec(A, x) == [1, 0]


def test_rational_solve_and_kernel():
    assert rational_solve([[2, 0], [0, 2]], [1, 3]) == [Fraction(1, 2), Fraction(3, 2)]
    assert rational_solve([[1, 1], [1, 1]], [0, 1]) is None
    ker = rational_kernel([[1, 2, 3]])
    assert len(ker) == 2
    for v in ker:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


def test_lp_trivial():
    lp = LinearProgram([1], [[1]], [1], [0], [1])
    res = lp_optimize(lp, "min")
    assert res.status == "optimal" and res.value == 1


def test_lp_simplex_min():
    lp = LinearProgram([1, 0, 0], [[1, 1, 1]], [1], [0, 0, 0], [1, 1, 1])
    res = lp_optimize(lp, "min")
    assert res.status == "optimal" and res.value == 0


def test_lp_class_slice():
    # min c3 over {c1+c2+c3 = 1, 0 <= c <= 1}
    lp = LinearProgram([0, 0, 1], [[1, 1, 1]], [1], [0, 0, 0], [1, 1, 1])
    res = lp_optimize(lp, "min")
    assert res.status == "optimal" and res.value == 0
    assert sum(res.x) == 1 and res.x[2] == 0


def test_lp_infeasible_and_unbounded():
    lp = LinearProgram([1], [[1]], [2], [0], [1])
    assert lp_optimize(lp).status == "infeasible"
    lp = LinearProgram([1], [], [], [None], [0])
    assert lp_optimize(lp, "min").status == "unbounded"
    assert lp_optimize(lp, "max").value == 0


def test_lp_free_variables():
    lp = LinearProgram([1, 1], [[1, -1]], [2], [None, None], [None, None])
    res = lp_optimize(lp, "min")
    assert res.status == "unbounded"


small_int = st.integers(min_value=-6, max_value=6)


@st.composite
def int_matrices(draw):
    m = draw(st.integers(min_value=1, max_value=4))
    n = draw(st.integers(min_value=1, max_value=4))
    return [[draw(small_int) for _ in range(n)] for _ in range(m)]


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_snf_property(A):
    check_snf(A)


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_kernel_property(A):
    ker = kernel_lattice(A)
    for v in ker:
        assert mat_vec(A, v) == [0] * len(A)
    if ker:
        snf = smith_normal_form([list(v) for v in ker])
        assert all(d in (0, 1) for d in snf.diagonal)


def brute_force_lp(lp, sense):
    """Oracle: enumerate candidate vertices by fixing variables at bounds."""
    n = len(lp.objective)
    m = len(lp.a_eq)
    best = None
    feasible = False
    for k in range(n + 1):
        for fixed in combinations(range(n), n - k):
            free = [j for j in range(n) if j not in fixed]
            for choice in product(*[(lp.lower[j], lp.upper[j]) for j in fixed]):
                if any(c is None for c in choice):
                    continue
                rhs = [
                    Fraction(b) - sum(Fraction(lp.a_eq[i][j]) * c for j, c in zip(fixed, choice))
                    for i, b in enumerate(lp.b_eq)
                ]
                A = [[Fraction(lp.a_eq[i][j]) for j in free] for i in range(m)]
                sol = rational_solve(A, rhs)
                if sol is None:
                    continue
                # solution is a point only when the free system is determined
                if rational_kernel(A):
                    continue
                x = [None] * n
                for j, c in zip(fixed, choice):
                    x[j] = Fraction(c)
                for j, s in zip(free, sol):
                    x[j] = s
                ok = all(
                    (lp.lower[j] is None or x[j] >= lp.lower[j])
                    and (lp.upper[j] is None or x[j] <= lp.upper[j])
                    for j in range(n)
                )
                if not ok:
                    continue
                feasible = True
                val = sum(Fraction(o) * xx for o, xx in zip(lp.objective, x))
                if best is None or (val < best if sense == "min" else val > best):
                    best = val
    return feasible, best


@st.composite
def bounded_lps(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    m = draw(st.integers(min_value=1, max_value=2))
    objective = [draw(small_int) for _ in range(n)]
    a_eq = [[draw(small_int) for _ in range(n)] for _ in range(m)]
    b_eq = [draw(small_int) for _ in range(m)]
    lower = [draw(st.integers(min_value=-3, max_value=0)) for _ in range(n)]
    upper = [draw(st.integers(min_value=0, max_value=3)) for _ in range(n)]
    return LinearProgram(objective, a_eq, b_eq, lower, upper)


@settings(max_examples=40, deadline=None)
@given(bounded_lps(), st.sampled_from(["min", "max"]))
def test_lp_matches_vertex_enumeration(lp, sense):
    res = lp_optimize(lp, sense)
    feasible, best = brute_force_lp(lp, sense)
    if not feasible:
        assert res.status == "infeasible"
    else:
        assert res.status == "optimal"
        assert res.value == best
        val = sum(Fraction(o) * x for o, x in zip(lp.objective, res.x))
        assert val == res.value
