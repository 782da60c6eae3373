"""The Varchenko matrix, distance monomials, the closed determinant formula
and an independent brute-force determinant oracle."""

from __future__ import annotations

import json
from typing import Mapping, Sequence, Union

from .errors import InvalidInput, TooLarge, Unsupported
from .geometry import Arrangement
from .polyring import (
    FactoredPoly,
    Monomial,
    Polynomial,
    exact_div,
    one_minus_square,
    parse_polynomial,
)

MAX_BRUTE_DET = 12


def monomial_from_mask(mask: int) -> Monomial:
    variables = []
    e = 0
    while mask:
        if mask & 1:
            variables.append(e)
        mask >>= 1
        e += 1
    return Monomial.from_vars(variables)


class LabeledMatrix:
    """Square symmetric-by-construction grid of polynomials with row labels.

    Labels are canonical region ids; entry (i, j) belongs to the pair
    (labels[i], labels[j]).
    """

    def __init__(self, labels: Sequence[int], rows: Sequence[Sequence[Polynomial]]):
        self.labels = list(labels)
        self.rows = [list(r) for r in rows]
        n = len(self.labels)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise InvalidInput("labeled matrix must be square")

    @property
    def size(self) -> int:
        return len(self.labels)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.rows[i][j]

    def is_symmetric(self) -> bool:
        n = self.size
        return all(
            self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i)
        )

    def copy(self) -> "LabeledMatrix":
        return LabeledMatrix(self.labels, self.rows)

    def permuted(self, perm: Sequence[int]) -> "LabeledMatrix":
        """Simultaneous row/column reorder; row i of the result is row perm[i]."""
        if sorted(perm) != list(range(self.size)):
            raise InvalidInput("not a permutation of the matrix indices")
        return LabeledMatrix(
            [self.labels[p] for p in perm],
            [[self.rows[p][q] for q in perm] for p in perm],
        )

    def substitute(
        self, sigma: Mapping[int, Union[int, Polynomial]]
    ) -> "LabeledMatrix":
        return LabeledMatrix(
            self.labels,
            [[e.substitute(sigma) for e in row] for row in self.rows],
        )

    def substitute_all(self, value: Union[int, Polynomial]) -> "LabeledMatrix":
        variables = set()
        for row in self.rows:
            for e in row:
                variables.update(e.variables())
        return self.substitute({v: value for v in variables})

    def to_int_grid(self) -> list[list[int]]:
        return [[e.as_int() for e in row] for row in self.rows]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LabeledMatrix)
            and self.labels == other.labels
            and self.rows == other.rows
        )

    def to_text(self) -> str:
        cells = [[e.to_string(spaces=False) for e in row] for row in self.rows]
        widths = [
            max(len(cells[i][j]) for i in range(self.size))
            for j in range(self.size)
        ]
        lines = []
        for row in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "labels": self.labels,
            "entries": [
                [e.to_string(spaces=False) for e in row] for row in self.rows
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LabeledMatrix":
        if not isinstance(data, dict) or "entries" not in data:
            raise InvalidInput("matrix JSON must be an object with 'entries'")
        entries = data["entries"]
        if not isinstance(entries, list):
            raise InvalidInput("'entries' must be a list of rows")
        rows = [[parse_polynomial(cell) for cell in row] for row in entries]
        labels = data.get("labels", list(range(len(rows))))
        return cls(labels, rows)

    @classmethod
    def from_json(cls, text: str) -> "LabeledMatrix":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"bad JSON: {exc}") from None
        return cls.from_json_dict(data)


def build_varchenko(arrangement: Arrangement) -> LabeledMatrix:
    """Entry (m, n) is the squarefree monomial over sep(R_m, R_n)."""
    regions = arrangement.regions()
    rows = []
    for x in regions:
        row = []
        for y in regions:
            row.append(
                Polynomial.from_monomial(monomial_from_mask(x.separation_mask(y)))
            )
        rows.append(row)
    return LabeledMatrix(list(range(len(regions))), rows)


def distance(arrangement: Arrangement, k: int, m: int, n: int) -> Monomial:
    """Product of the variables separating region k from both m and n."""
    regions = arrangement.regions()
    try:
        rk, rm, rn = regions[k], regions[m], regions[n]
    except IndexError:
        raise InvalidInput("region id out of range") from None
    return monomial_from_mask(rk.separation_mask(rm) & rk.separation_mask(rn))


def det_formula(arrangement: Arrangement) -> FactoredPoly:
    """Closed-form determinant.

    Each flat above the bottom contributes (1 - m^2)^e, where m is the
    product of the variables of the hyperplanes containing the flat and the
    exponent e multiplies the region count of the restriction to the flat
    by the absolute derivative at 1 of the localization's characteristic
    polynomial."""
    if arrangement.mode == "covector":
        raise Unsupported("determinant formula needs coordinates (covector mode)")
    factors = []
    for flat in arrangement.poset():
        if not flat.defining_set:
            continue
        n_m = len(arrangement.restriction(flat).regions())
        coeffs = arrangement.localization(flat).charpoly()
        p_m = abs(sum(deg * c for deg, c in enumerate(coeffs)))
        exponent = n_m * p_m
        if exponent:
            factors.append(
                (one_minus_square(flat.defining_tuple()), exponent)
            )
    return FactoredPoly.from_factors(factors)


def _det_cofactor(rows: list[list[Polynomial]]) -> Polynomial:
    n = len(rows)
    if n == 0:
        return Polynomial.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    out = Polynomial.zero()
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_cofactor(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def det_bruteforce(matrix: LabeledMatrix) -> Polynomial:
    """Exact expanded determinant via fraction-free elimination.

    Bareiss one-step elimination keeps every intermediate entry a minor of
    the input, so all divisions are exact in the polynomial ring; tiny
    matrices fall back to cofactor expansion.
    """
    n = matrix.size
    if n > MAX_BRUTE_DET:
        raise TooLarge(f"determinant oracle capped at {MAX_BRUTE_DET}, got {n}")
    rows = [list(r) for r in matrix.rows]
    if n <= 3:
        return _det_cofactor(rows)
    sign = 1
    prev = Polynomial.one()
    for k in range(n - 1):
        if rows[k][k].is_zero():
            pivot_row = next(
                (i for i in range(k + 1, n) if not rows[i][k].is_zero()), None
            )
            if pivot_row is None:
                return Polynomial.zero()
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]
                rows[i][j] = exact_div(num, prev)
            rows[i][k] = Polynomial.zero()
        prev = rows[k][k]
    det = rows[n - 1][n - 1]
    return det if sign == 1 else -det


def equal_up_to_relabeling(a: LabeledMatrix, b: LabeledMatrix):
    """A permutation p with a[i][j] == b[p[i]][p[j]], or None.

    Backtracking with row-multiset pruning; intended for desk-size matrices.
    """
    n = a.size
    if b.size != n:
        return None

    def row_signature(m: LabeledMatrix, i: int):
        return sorted(e.to_string(spaces=False) for e in m.rows[i])

    sig_a = [row_signature(a, i) for i in range(n)]
    sig_b = [row_signature(b, i) for i in range(n)]
    candidates = [
        [j for j in range(n) if sig_b[j] == sig_a[i]] for i in range(n)
    ]
    perm: list[int] = []
    used = set()

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if j in used:
                continue
            ok = all(
                a.rows[i][i2] == b.rows[j][perm[i2]]
                and a.rows[i2][i] == b.rows[perm[i2]][j]
                for i2 in range(i)
            ) and a.rows[i][i] == b.rows[j][j]
            if not ok:
                continue
            perm.append(j)
            used.add(j)
            if extend(i + 1):
                return True
            perm.pop()
            used.remove(j)
        return False

    return list(perm) if extend(0) else None
