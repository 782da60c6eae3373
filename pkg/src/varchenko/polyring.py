"""Sparse multivariate polynomials over the integers.

Coefficients are Python ints (arbitrary precision).  Monomials are sorted
tuples of (variable id, exponent); variable ids are 0-based but print
1-based ("x1", "x2", ...).  The exponent-capping map (`capped`) replaces
every exponent >= 3 by 2; applied eagerly it keeps elimination
intermediates bounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import InvalidInput, NotDivisible


class Monomial:
    """Product of variable powers; immutable, hashable."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Iterable[tuple[int, int]] = ()):
        items = tuple(sorted((v, e) for v, e in exps if e))
        for v, e in items:
            if v < 0 or e < 0:
                raise InvalidInput(f"bad monomial entry ({v}, {e})")
        self.exps = items
        self._hash = hash(items)

    @classmethod
    def one(cls) -> "Monomial":
        return _MONOMIAL_ONE

    @classmethod
    def variable(cls, v: int, e: int = 1) -> "Monomial":
        return cls(((v, e),))

    @classmethod
    def from_vars(cls, variables: Iterable[int]) -> "Monomial":
        return cls((v, 1) for v in variables)

    def is_one(self) -> bool:
        return not self.exps

    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def variables(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.exps)

    def mul(self, other: "Monomial") -> "Monomial":
        if not self.exps:
            return other
        if not other.exps:
            return self
        merged = dict(self.exps)
        for v, e in other.exps:
            merged[v] = merged.get(v, 0) + e
        return Monomial(merged.items())

    def divides(self, other: "Monomial") -> bool:
        their = dict(other.exps)
        return all(their.get(v, 0) >= e for v, e in self.exps)

    def div(self, other: "Monomial") -> "Monomial":
        """Quotient self / other; raises NotDivisible if not exact."""
        mine = dict(self.exps)
        for v, e in other.exps:
            left = mine.get(v, 0) - e
            if left < 0:
                raise NotDivisible(f"{other} does not divide {self}")
            mine[v] = left
        return Monomial(mine.items())

    def capped(self) -> "Monomial":
        """Exponents clipped to at most 2."""
        if all(e <= 2 for _, e in self.exps):
            return self
        return Monomial((v, min(e, 2)) for v, e in self.exps)

    def sort_key(self) -> tuple:
        # graded ordering: total degree first, then the exponent tuple
        return (self.degree(), self.exps)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for v, e in self.exps:
            parts.append(f"x{v + 1}" if e == 1 else f"x{v + 1}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"


_MONOMIAL_ONE = Monomial()


class Polynomial:
    """Sparse integer polynomial: a map monomial -> nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {
            m: c for m, c in (terms or {}).items() if c
        }

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.constant(1)

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({_MONOMIAL_ONE: c}) if c else cls()

    @classmethod
    def variable(cls, v: int, e: int = 1) -> "Polynomial":
        return cls({Monomial.variable(v, e): 1})

    @classmethod
    def from_monomial(cls, m: Monomial, c: int = 1) -> "Polynomial":
        return cls({m: c}) if c else cls()

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {_MONOMIAL_ONE: 1}

    def is_constant(self) -> bool:
        return not self.terms or self.terms.keys() == {_MONOMIAL_ONE}

    def as_int(self) -> int:
        if not self.terms:
            return 0
        if self.is_constant():
            return self.terms[_MONOMIAL_ONE]
        raise InvalidInput(f"{self} is not a constant")

    def as_monomial(self) -> Monomial:
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            if c == 1:
                return m
        raise InvalidInput(f"{self} is not a monic monomial")

    def constant_term(self) -> int:
        return self.terms.get(_MONOMIAL_ONE, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(m.degree() for m in self.terms)

    def variables(self) -> frozenset[int]:
        out: set[int] = set()
        for m in self.terms:
            out.update(m.variables())
        return frozenset(out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return _raw(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) - c
            if s:
                out[m] = s
            else:
                del out[m]
        return _raw(out)

    def __neg__(self) -> "Polynomial":
        return _raw({m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms or not other.terms:
            return Polynomial.zero()
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.mul(m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return _raw(out)

    def scaled(self, c: int) -> "Polynomial":
        if not c:
            return Polynomial.zero()
        return _raw({m: c * v for m, v in self.terms.items()})

    def capped(self) -> "Polynomial":
        """Cap every exponent at 2, recombining like terms."""
        if all(all(e <= 2 for _, e in m.exps) for m in self.terms):
            return self
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            cm = m.capped()
            s = out.get(cm, 0) + c
            if s:
                out[cm] = s
            else:
                del out[cm]
        return _raw(out)

    def substitute(
        self, sigma: Mapping[int, Union[int, "Polynomial"]]
    ) -> "Polynomial":
        """Replace each variable by an integer or a polynomial.

        `sigma` must cover every variable that occurs.
        """
        out = Polynomial.zero()
        for m, c in self.terms.items():
            term = Polynomial.constant(c)
            for v, e in m.exps:
                if v not in sigma:
                    raise InvalidInput(f"substitution missing variable x{v + 1}")
                val = sigma[v]
                if isinstance(val, int):
                    term = term.scaled(val ** e)
                    if term.is_zero():
                        break
                else:
                    term = term * _power(val, e)
            out = out + term
        return out

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def to_string(self, spaces: bool = True) -> str:
        if not self.terms:
            return "0"
        sep_plus, sep_minus = (" + ", " - ") if spaces else ("+", "-")
        parts: list[str] = []
        for m, c in self.sorted_terms():
            mag = abs(c)
            if m.is_one():
                body = str(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = f"{mag}*{m}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append((sep_plus if c > 0 else sep_minus) + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()})"


def _raw(terms: dict[Monomial, int]) -> Polynomial:
    p = Polynomial.__new__(Polynomial)
    p.terms = terms
    return p


def _power(p: Polynomial, e: int) -> Polynomial:
    out = Polynomial.one()
    for _ in range(e):
        out = out * p
    return out


def exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return r with r*q == p, or raise NotDivisible.

    Reduction by the graded-lex leading term of q; with a single divisor this
    decides divisibility exactly.
    """
    if q.is_zero():
        raise InvalidInput("division by the zero polynomial")
    if p.is_zero():
        return Polynomial.zero()
    if q.is_one():
        return p
    lead_m = max(q.terms, key=Monomial.sort_key)
    lead_c = q.terms[lead_m]
    quotient: dict[Monomial, int] = {}
    rest = p
    while not rest.is_zero():
        m = max(rest.terms, key=Monomial.sort_key)
        c = rest.terms[m]
        if c % lead_c or not lead_m.divides(m):
            raise NotDivisible(f"({q}) does not divide ({p})")
        qm = m.div(lead_m)
        qc = c // lead_c
        quotient[qm] = quotient.get(qm, 0) + qc
        rest = rest - q * Polynomial.from_monomial(qm, qc)
    return _raw({m: c for m, c in quotient.items() if c})


def one_minus_square(variables: Iterable[int]) -> Polynomial:
    """The factor 1 - (x_{v1} * x_{v2} * ...)^2."""
    m = Monomial((v, 2) for v in variables)
    if m.is_one():
        return Polynomial.zero()  # 1 - 1
    return _raw({_MONOMIAL_ONE: 1, m: -1})


@dataclass(frozen=True)
class FactoredPoly:
    """A product of polynomial factors with positive integer exponents."""

    factors: tuple[tuple[Polynomial, int], ...]

    @classmethod
    def from_factors(
        cls, factors: Iterable[tuple[Polynomial, int]]
    ) -> "FactoredPoly":
        kept = tuple((base, e) for base, e in factors if e > 0)
        return cls(kept)

    def expand(self) -> Polynomial:
        out = Polynomial.one()
        for base, e in self.factors:
            out = out * _power(base, e)
        return out

    def exponent_map(self) -> dict[Polynomial, int]:
        """Exponent per distinct base.

        Two factored products with equal maps are equal as polynomials
        without expanding (the converse may fail; use expand() to settle
        structurally different factorizations).
        """
        out: dict[Polynomial, int] = {}
        for base, e in self.factors:
            out[base] = out.get(base, 0) + e
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for base, e in self.factors:
            body = f"({base.to_string(spaces=False)})"
            parts.append(body if e == 1 else f"{body}^{e}")
        return "".join(parts)


def parse_polynomial(s: str) -> Polynomial:
    """Parse the canonical textual form, e.g. "1 - x1^2*x2^2 + 2*x3"."""
    text = s.replace(" ", "")
    if not text:
        raise InvalidInput("empty polynomial string")
    out = Polynomial.zero()
    i = 0
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        i = 1
    while i < len(text):
        j = i
        while j < len(text) and text[j] not in "+-":
            j += 1
        term = text[i:j]
        if not term:
            raise InvalidInput(f"dangling sign in {s!r}")
        out = out + _parse_term(term, sign, s)
        if j < len(text):
            sign = -1 if text[j] == "-" else 1
        i = j + 1
    return out


def _parse_term(term: str, sign: int, original: str) -> Polynomial:
    coeff = sign
    exps: dict[int, int] = {}
    for factor in term.split("*"):
        if not factor:
            raise InvalidInput(f"empty factor in {original!r}")
        if factor[0] == "x":
            body = factor[1:]
            if "^" in body:
                var_s, _, exp_s = body.partition("^")
            else:
                var_s, exp_s = body, "1"
            if not var_s.isdigit() or not exp_s.isdigit() or var_s == "0":
                raise InvalidInput(f"bad variable factor {factor!r} in {original!r}")
            v = int(var_s) - 1
            exps[v] = exps.get(v, 0) + int(exp_s)
        elif factor.isdigit():
            coeff *= int(factor)
        else:
            raise InvalidInput(f"bad factor {factor!r} in {original!r}")
    return Polynomial.from_monomial(Monomial(exps.items()), coeff)
