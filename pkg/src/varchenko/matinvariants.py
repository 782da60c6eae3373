"""Equivalence invariants of matrices over the integers or a univariate
polynomial ring: gcd of k-minors, rank, integer Smith normal form, the
one-hyperplane deletion reduction, and the obstruction diagnostics for
arrangements that are not semigeneral."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Sequence, Union

from .errors import InvalidInput, SemigeneralInput, TooLarge
from .geometry import Arrangement
from .polyring import Monomial, Polynomial
from .varmatrix import LabeledMatrix, build_varchenko, det_bruteforce, det_formula

MAX_SNF_SIZE = 64
MAX_MINOR_PAIRS = 10**6

IntGrid = list[list[int]]


def _check_int_grid(grid: Sequence[Sequence[int]]) -> IntGrid:
    rows = [list(r) for r in grid]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise InvalidInput("ragged integer matrix")
    return rows


def int_det(grid: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    rows = _check_int_grid(grid)
    n = len(rows)
    if n and len(rows[0]) != n:
        raise InvalidInput("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            pivot_row = next(
                (i for i in range(k + 1, n) if rows[i][k] != 0), None
            )
            if pivot_row is None:
                return 0
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * (rows[n - 1][n - 1] if n else 1)


def int_rank(grid: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by exact Gaussian elimination."""
    rows = [[Fraction(v) for v in r] for r in _check_int_grid(grid)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# ----------------------------------------------------------------------
# univariate polynomial gcd (content * primitive part)


def _as_coeffs(p: Polynomial) -> list[int]:
    """Coefficient list of a polynomial in at most one variable."""
    variables = p.variables()
    if len(variables) > 1:
        raise InvalidInput(f"{p} is not univariate")
    coeffs = [0] * (p.degree() + 1 if not p.is_zero() else 1)
    for m, c in p.terms.items():
        coeffs[m.degree()] = c
    return coeffs


def _from_coeffs(coeffs: Sequence[int], var: int) -> Polynomial:
    terms = {}
    for deg, c in enumerate(coeffs):
        if c:
            terms[Monomial.variable(var, deg) if deg else Monomial.one()] = c
    return Polynomial(terms)


def _content(coeffs: Sequence[int]) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    return g


def _primitive(coeffs: list[int]) -> list[int]:
    g = _content(coeffs)
    if g > 1:
        coeffs = [c // g for c in coeffs]
    return _sign_norm(coeffs)


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _sign_norm(coeffs: list[int]) -> list[int]:
    """Make the lowest-degree nonzero coefficient positive (so the unit
    ambiguity resolves to the 1 - q^2 convention)."""
    lead = next((c for c in coeffs if c), 0)
    if lead < 0:
        return [-c for c in coeffs]
    return coeffs


def _coeff_gcd(a: list[int], b: list[int]) -> list[int]:
    """Gcd of integer coefficient lists, via rational Euclid on the
    primitive parts with the integer content restored."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a:
        return _sign_norm(b)
    if not b:
        return _sign_norm(a)
    content = gcd(_content(a), _content(b))
    fa = [Fraction(c) for c in _primitive(a)]
    fb = [Fraction(c) for c in _primitive(b)]
    while fb:
        fa, fb = fb, _frac_poly_mod(fa, fb)
    # fa is the gcd over Q; rescale to a primitive integer list
    denom = 1
    for c in fa:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = _primitive([int(c * denom) for c in fa])
    return [content * c for c in ints] if content > 1 else ints


def _frac_poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] / lead
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    variables = p.variables() | q.variables()
    if len(variables) > 1:
        raise InvalidInput("gcd of minors supports one variable at most")
    var = next(iter(variables), 0)
    coeffs = _coeff_gcd(_as_coeffs(p), _as_coeffs(q))
    return _from_coeffs(coeffs, var)


# ----------------------------------------------------------------------


Entry = Union[int, Polynomial]


def _entry_grid(matrix) -> list[list[Polynomial]]:
    if isinstance(matrix, LabeledMatrix):
        return [list(r) for r in matrix.rows]
    rows = []
    for r in matrix:
        row = []
        for e in r:
            row.append(Polynomial.constant(e) if isinstance(e, int) else e)
        rows.append(row)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise InvalidInput("ragged matrix")
    return rows


def gcd_minors(matrix, k: int):
    """Gcd (up to sign / unit) of all k x k minor determinants.

    Accepts integer grids, polynomial grids and LabeledMatrix; polynomial
    entries must involve at most one variable.  Returns an int for integer
    input, a Polynomial otherwise; 0 when every minor vanishes.
    """
    rows = _entry_grid(matrix)
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if k < 0 or k > min(nrows, ncols):
        raise InvalidInput(f"minor size {k} out of range")
    integer_input = all(e.is_constant() for r in rows for e in r)
    if k == 0:
        return 1 if integer_input else Polynomial.one()
    if comb(nrows, k) * comb(ncols, k) > MAX_MINOR_PAIRS:
        raise TooLarge(f"too many {k}x{k} minors")

    if integer_input:
        grid = [[e.as_int() for e in r] for r in rows]
        g = 0
        for rsel in combinations(range(nrows), k):
            for csel in combinations(range(ncols), k):
                minor = int_det([[grid[i][j] for j in csel] for i in rsel])
                g = gcd(g, abs(minor))
                if g == 1:
                    return 1
        return g

    g = Polynomial.zero()
    for rsel in combinations(range(nrows), k):
        for csel in combinations(range(ncols), k):
            sub = LabeledMatrix(
                list(range(k)), [[rows[i][j] for j in csel] for i in rsel]
            )
            minor = det_bruteforce(sub)
            if minor.is_zero():
                continue
            g = minor if g.is_zero() else _poly_gcd(g, minor)
            if g.is_constant() and abs(g.as_int()) == 1:
                return Polynomial.one()
    return g


def integer_snf(grid: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form: nonnegative, divisibility chain.

    Pivot reduction with smallest-entry pivoting to limit growth.
    """
    rows = _check_int_grid(grid)
    n = len(rows)
    m = len(rows[0]) if rows else 0
    if max(n, m) > MAX_SNF_SIZE:
        raise TooLarge(f"SNF capped at {MAX_SNF_SIZE}, got {n}x{m}")
    diag: list[int] = []
    t = 0
    while t < min(n, m):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = abs(rows[i][j])
                if v and (best is None or v < abs(rows[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        rows[t], rows[bi] = rows[bi], rows[t]
        for r in rows:
            r[t], r[bj] = r[bj], r[t]
        pivot = rows[t][t]
        dirty = False
        for i in range(t + 1, n):
            q = rows[i][t] // pivot
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[t])]
            if rows[i][t]:
                dirty = True
        for j in range(t + 1, m):
            q = rows[t][j] // pivot
            if q:
                for r in rows:
                    r[j] -= q * r[t]
            if rows[t][j]:
                dirty = True
        if dirty:
            continue  # remainders became new smaller entries; repeat
        bad = next(
            (
                (i, j)
                for i in range(t + 1, n)
                for j in range(t + 1, m)
                if rows[i][j] % pivot
            ),
            None,
        )
        if bad is not None:
            rows[t] = [a + b for a, b in zip(rows[t], rows[bad[0]])]
            continue
        diag.append(abs(pivot))
        t += 1
    diag.extend([0] * (min(n, m) - len(diag)))
    return diag


def deletion_reduction(v_ext: LabeledMatrix, e: int) -> tuple[LabeledMatrix, dict[int, int]]:
    """Delete hyperplane e from a Varchenko matrix by setting x_e = 1 and
    cancelling the duplicated rows and columns.

    Region pairs separated only by hyperplane e become equal rows after the
    substitution; each duplicate is subtracted away, leaving the deleted
    arrangement's matrix plus a zero block (up to simultaneous permutation).
    Returns the reduced matrix and the map duplicate -> representative.
    """
    x_e = Polynomial.variable(e)
    pairs = []
    paired = set()
    for i in range(v_ext.size):
        if i in paired:
            continue
        for j in range(i + 1, v_ext.size):
            if j not in paired and v_ext.rows[i][j] == x_e:
                pairs.append((i, j))
                paired.update((i, j))
                break
    variables = {e}
    for row in v_ext.rows:
        for p in row:
            variables.update(p.variables())
    sigma = {v: 1 if v == e else Polynomial.variable(v) for v in variables}
    reduced = v_ext.substitute(sigma)
    rows = [list(r) for r in reduced.rows]
    for i, j in pairs:
        rows[j] = [a - b for a, b in zip(rows[j], rows[i])]
    for i, j in pairs:
        for r in rows:
            r[j] = r[j] - r[i]
    return LabeledMatrix(reduced.labels, rows), {j: i for i, j in pairs}


def nonzero_block(matrix: LabeledMatrix) -> LabeledMatrix:
    """Submatrix on the rows/columns that are not identically zero."""
    keep = [
        i
        for i in range(matrix.size)
        if any(not e.is_zero() for e in matrix.rows[i])
    ]
    return LabeledMatrix(
        [matrix.labels[i] for i in keep],
        [[matrix.rows[i][j] for j in keep] for i in keep],
    )


# ----------------------------------------------------------------------
# obstruction diagnostics


@dataclass(frozen=True)
class ObstructionCheck:
    name: str
    inputs: dict
    result: dict
    consistent: bool


@dataclass(frozen=True)
class ObstructionReport:
    """Named diagnostics for a non-semigeneral arrangement.

    Every check is a necessary condition consistent with the nonexistence
    of a diagonal form, not a standalone proof.
    """

    semigeneral: bool
    checks: tuple[ObstructionCheck, ...]

    @property
    def all_consistent(self) -> bool:
        return all(c.consistent for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "semigeneral": self.semigeneral,
            "all_consistent": self.all_consistent,
            "checks": [
                {
                    "name": c.name,
                    "inputs": c.inputs,
                    "result": c.result,
                    "consistent": c.consistent,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _minimal_core(arrangement: Arrangement) -> Arrangement:
    """Greedily delete hyperplanes while the result stays non-semigeneral."""
    current = arrangement
    while True:
        for i in range(current.n):
            kept = [h for j, h in enumerate(current.hyperplanes) if j != i]
            candidate = Arrangement(current.mode, current.dim, kept)
            if not candidate.is_semigeneral():
                current = candidate
                break
        else:
            return current


def obstruction_report(arrangement: Arrangement) -> ObstructionReport:
    """Run the degenerate-arrangement diagnostics; refuses semigeneral input."""
    if arrangement.is_semigeneral():
        raise SemigeneralInput("arrangement is semigeneral: nothing to obstruct")
    v = build_varchenko(arrangement)
    n = arrangement.n
    checks = []

    core = _minimal_core(arrangement)
    core_witness = core.semigeneral_witness()
    checks.append(
        ObstructionCheck(
            name="core",
            inputs={"hyperplanes": list(arrangement.names)},
            result={
                "core_hyperplanes": list(core.names),
                "witness": sorted(
                    core.names[i] for i in core_witness.defining_set
                ),
                "witness_dim": core_witness.dim,
                "expected_dim": core.dim - len(core_witness.defining_set),
            },
            consistent=True,
        )
    )

    deficient = []
    for flat, factor in _deficient_factors(arrangement):
        deficient.append(
            {
                "defining_set": sorted(arrangement.names[i] for i in flat.defining_set),
                "dim": flat.dim,
                "expected_dim": arrangement.dim - len(flat.defining_set),
                "factor": factor,
            }
        )
    checks.append(
        ObstructionCheck(
            name="determinant_mixed_factor",
            inputs={"formula": str(det_formula(arrangement))},
            result={"deficient_factors": deficient},
            consistent=bool(deficient),
        )
    )

    g = gcd_minors(v.substitute_all(3).to_int_grid(), 2)
    checks.append(
        ObstructionCheck(
            name="gcd_minors_all_threes",
            inputs={"specialization": "x_i = 3 for all i", "minor_size": 2},
            result={"gcd": g},
            consistent=g != 0 and 8 % g == 0,
        )
    )

    rank = int_rank(v.substitute_all(1).to_int_grid())
    checks.append(
        ObstructionCheck(
            name="rank_all_ones",
            inputs={"specialization": "x_i = 1 for all i"},
            result={"rank": rank},
            consistent=rank == 1,
        )
    )

    snf_values = {}
    ok = True
    for i in range(n):
        sigma = {j: 3 if j == i else 0 for j in range(n)}
        diag = integer_snf(v.substitute(sigma).to_int_grid())
        values = sorted(set(diag))
        snf_values[arrangement.names[i]] = {
            str(val): diag.count(val) for val in values
        }
        if not set(values) <= {1, 8}:
            ok = False
    checks.append(
        ObstructionCheck(
            name="snf_specializations",
            inputs={"specialization": "x_i = 3, x_j = 0 for j != i"},
            result={"snf_multiplicities": snf_values},
            consistent=ok,
        )
    )

    checks.sort(key=lambda c: c.name)
    return ObstructionReport(semigeneral=False, checks=tuple(checks))


def _deficient_factors(arrangement: Arrangement):
    factored = det_formula(arrangement)
    by_defset = {}
    for base, exp in factored.factors:
        variables = tuple(sorted(base.variables()))
        by_defset[variables] = f"({base.to_string(spaces=False)})" + (
            f"^{exp}" if exp > 1 else ""
        )
    out = []
    for flat in arrangement.poset():
        defset = tuple(sorted(flat.defining_set))
        if (
            len(defset) >= 2
            and flat.dim != arrangement.dim - len(defset)
            and defset in by_defset
        ):
            out.append((flat, by_defset[defset]))
    return out
