"""Exact integer and rational linear algebra.

Smith normal form, saturated integer kernels, integer and rational system
solving, and a two-phase rational simplex. Everything runs on Python ints
and fractions.Fraction; no floats appear in any decision path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)] if A else []


def mat_vec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitivize(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = vec_gcd(v)
    if g <= 1:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector, preserving direction."""
    fracs = [Fraction(x) for x in v]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    return primitivize(ints)


def det(A: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination over Fraction."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    M = [[Fraction(x) for x in row] for row in A]
    sign = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            sign = -sign
        for i in range(col + 1, n):
            if M[i][col] != 0:
                f = M[i][col] / M[col][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    out = Fraction(sign)
    for i in range(n):
        out *= M[i][i]
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V = S with S diagonal, d_1 | d_2 | ..., U and V unimodular."""

    u: list[list[int]]
    s: list[list[int]]
    v: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        return [self.s[i][i] for i in range(min(len(self.s), len(self.s[0]) if self.s else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, dst, src, factor):
    M[dst] = [a + factor * b for a, b in zip(M[dst], M[src])]


def _add_col(M, dst, src, factor):
    for row in M:
        row[dst] += factor * row[src]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    S = [[int(x) for x in row] for row in A]
    m = len(S)
    n = len(S[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def pick_pivot(t):
        # smallest absolute value keeps coefficient growth in check
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0 and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(m, n):
        pos = pick_pivot(t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            _swap_rows(S, t, i)
            _swap_rows(U, t, i)
        if j != t:
            _swap_cols(S, t, j)
            _swap_cols(V, t, j)
        while True:
            moved = False
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    _add_row(S, i, t, -q)
                    _add_row(U, i, t, -q)
                    if S[i][t] != 0:
                        _swap_rows(S, t, i)
                        _swap_rows(U, t, i)
                        moved = True
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    _add_col(S, j, t, -q)
                    _add_col(V, j, t, -q)
                    if S[t][j] != 0:
                        _swap_cols(S, t, j)
                        _swap_cols(V, t, j)
                        moved = True
            if not moved:
                break
        # pivot must divide the rest of the submatrix for the chain to hold
        fixed = False
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % S[t][t] != 0:
                    _add_row(S, t, i, 1)
                    _add_row(U, t, i, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    return SmithDecomposition(u=U, s=S, v=V)


def kernel_lattice(A: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Z-basis of the saturated kernel {x in Z^n : A x = 0}.

    The trailing columns of V in U A V = S span it, and they are
    automatically saturated because V is unimodular.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [tuple(row) for row in identity(n)]
    snf = smith_normal_form(A)
    rank = snf.rank
    return [tuple(snf.v[i][j] for i in range(n)) for j in range(rank, n)]


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list[int]]:
    """A particular integer solution of A x = b, or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [0] * n
    snf = smith_normal_form(A)
    ub = mat_vec(snf.u, list(b))
    y = [0] * n
    diag = snf.diagonal
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d != 0:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
        elif ub[i] != 0:
            return None
    return mat_vec(snf.v, y)


def _rref(A: Sequence[Sequence], b: Optional[Sequence] = None):
    """Reduced row echelon form over Fraction; returns (M, rhs, pivot_cols)."""
    M = [[Fraction(x) for x in row] for row in A]
    rhs = [Fraction(x) for x in b] if b is not None else None
    m = len(M)
    n = len(M[0]) if m else 0
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        if rhs is not None:
            rhs[row], rhs[piv] = rhs[piv], rhs[row]
        inv = M[row][col]
        M[row] = [x / inv for x in M[row]]
        if rhs is not None:
            rhs[row] /= inv
        for i in range(m):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * c for a, c in zip(M[i], M[row])]
                if rhs is not None:
                    rhs[i] -= f * rhs[row]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return M, rhs, pivots


def rational_solve(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """A particular rational solution of A x = b, or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    M, rhs, pivots = _rref(A, b)
    rank = len(pivots)
    for i in range(rank, m):
        if rhs[i] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = rhs[i]
    return x


def rational_kernel(A: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of the rational nullspace of A."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [tuple(Fraction(x) for x in row) for row in identity(n)]
    M, _, pivots = _rref(A)
    rank = len(pivots)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -M[i][f]
        basis.append(tuple(v))
    return basis


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    _, _, pivots = _rref(A)
    return len(pivots)


@dataclass
class LinearProgram:
    """min/max objective . x subject to A_eq x = b_eq and lower <= x <= upper.

    Bounds are per-variable Fractions or None for unbounded sides.
    """

    objective: list
    a_eq: list
    b_eq: list
    lower: list
    upper: list


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction] = None
    x: Optional[tuple] = None


def _pivot(T, basis, r, c):
    piv = T[r][c]
    T[r] = [x / piv for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]
    basis[r] = c


def _simplex(T, basis, ncols):
    """Bland's rule simplex on tableau T (last row = reduced costs, last col = rhs)."""
    m = len(T) - 1
    while True:
        col = next((j for j in range(ncols) if T[-1][j] < 0), None)
        if col is None:
            return "optimal"
        row = None
        best = None
        for i in range(m):
            if T[i][col] > 0:
                ratio = T[i][-1] / T[i][col]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row is None:
            return "unbounded"
        _pivot(T, basis, row, col)


def _solve_standard(A, b, c):
    """min c.y s.t. A y = b, y >= 0, exact two-phase simplex.

    Returns (status, value, y).
    """
    m = len(A)
    n = len(c)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # phase 1: artificial basis
    T = []
    for i in range(m):
        T.append(A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]])
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= A[i][j]
        obj[-1] -= b[i]
    T.append(obj)
    basis = [n + i for i in range(m)]
    _simplex(T, basis, n + m)
    if -T[-1][-1] != 0:
        return "infeasible", None, None
    # drive remaining artificials out of the basis
    drop_rows = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                drop_rows.append(i)
            else:
                _pivot(T, basis, i, col)
    if drop_rows:
        T = [row for i, row in enumerate(T) if i not in drop_rows]
        basis = [bi for i, bi in enumerate(basis) if i not in drop_rows]
    # phase 2
    rows = len(T) - 1
    T = [row[:n] + [row[-1]] for row in T]
    obj = [Fraction(x) for x in c] + [Fraction(0)]
    for i in range(rows):
        cb = c[basis[i]]
        if cb != 0:
            obj = [a - cb * t for a, t in zip(obj, T[i])]
    T[-1] = obj
    status = _simplex(T, basis, n)
    if status == "unbounded":
        return "unbounded", None, None
    y = [Fraction(0)] * n
    for i in range(rows):
        y[basis[i]] = T[i][-1]
    value = -T[-1][-1]
    return "optimal", value, y


def lp_optimize(lp: LinearProgram, sense: str = "min") -> LPResult:
    """Exact rational LP over equality constraints with box bounds."""
    n = len(lp.objective)
    obj = [Fraction(x) for x in lp.objective]
    if sense == "max":
        obj = [-x for x in obj]
    elif sense != "min":
        raise ValueError("sense must be 'min' or 'max'")
    lower = [None if l is None else Fraction(l) for l in lp.lower]
    upper = [None if u is None else Fraction(u) for u in lp.upper]
    for l, u in zip(lower, upper):
        if l is not None and u is not None and l > u:
            return LPResult("infeasible")

    # standard-form variables y >= 0 with x_j = shift_j + sum coef * y
    terms: list[list[tuple[int, Fraction]]] = []  # per original variable
    shifts: list[Fraction] = []
    ny = 0
    extra_rows: list[tuple[int, Fraction]] = []  # (y index, cap) for u-l caps
    for j in range(n):
        l, u = lower[j], upper[j]
        if l is not None:
            terms.append([(ny, Fraction(1))])
            shifts.append(l)
            if u is not None:
                extra_rows.append((ny, u - l))
            ny += 1
        elif u is not None:
            terms.append([(ny, Fraction(-1))])
            shifts.append(u)
            ny += 1
        else:
            terms.append([(ny, Fraction(1)), (ny + 1, Fraction(-1))])
            shifts.append(Fraction(0))
            ny += 2
    nslack = len(extra_rows)
    total = ny + nslack

    A = []
    b = []
    for row, rhs in zip(lp.a_eq, lp.b_eq):
        arow = [Fraction(0)] * total
        acc = Fraction(rhs)
        for j in range(n):
            coef = Fraction(row[j])
            if coef == 0:
                continue
            acc -= coef * shifts[j]
            for yi, c in terms[j]:
                arow[yi] += coef * c
        A.append(arow)
        b.append(acc)
    for si, (yi, cap) in enumerate(extra_rows):
        arow = [Fraction(0)] * total
        arow[yi] = Fraction(1)
        arow[ny + si] = Fraction(1)
        A.append(arow)
        b.append(cap)

    cvec = [Fraction(0)] * total
    const = Fraction(0)
    for j in range(n):
        coef = obj[j]
        if coef == 0:
            continue
        const += coef * shifts[j]
        for yi, c in terms[j]:
            cvec[yi] += coef * c

    status, value, y = _solve_standard(A, b, cvec)
    if status != "optimal":
        return LPResult(status)
    x = []
    for j in range(n):
        val = shifts[j]
        for yi, c in terms[j]:
            val += c * y[yi]
        x.append(val)
    opt = value + const
    if sense == "max":
        opt = -opt
    return LPResult("optimal", opt, tuple(x))
