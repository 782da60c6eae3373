"""Exact arrangement geometry over the rationals.

Supported modes:

* ``affine``  - hyperplanes ``normal . x = offset`` in R^dim; the positive
  side is ``normal . x > offset``.
* ``central`` - the sphere S^dim; hyperplanes pass through the origin of
  R^(dim+1) and every offset is 0.  Dimensions are spherical (linear
  dimension minus one) and subspaces meeting the sphere only at the origin
  count as empty.
* ``covector`` - no coordinates: the face family is given explicitly as a
  list of sign vectors, with flats read off as zero sets and dimensions
  taken from poset height.

Faces are enumerated by depth-first sign assignment with exact
Fourier-Motzkin pruning, so every reported sign vector is backed by a
rational feasibility certificate and no floating point is involved.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import InvalidArrangement, InvalidInput, TooLarge, Unsupported
from .exactlp import feasible_strict, solve_equalities
from .signedsets import SignedFamily, SignVector, check_composition_closure

MAX_GROUND_SIZE = 16

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL_RE.match(s):
        raise InvalidInput(f"bad rational string {s!r}")
    return Fraction(s)


def rational_str(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class Hyperplane:
    """Oriented hyperplane ``normal . x = offset``; positive side is '>'."""

    name: str
    normal: tuple[Fraction, ...]
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        if not self.name:
            raise InvalidArrangement("hyperplane name must be nonempty")
        if not any(self.normal):
            raise InvalidArrangement(f"hyperplane {self.name!r} has zero normal")


def _canonical_key(normal: Sequence[Fraction], offset: Fraction) -> tuple[int, ...]:
    """Primitive integer form of (normal, offset), sign-normalized.

    Two hyperplanes with the same key have the same point set regardless of
    orientation or scaling.
    """
    entries = list(normal) + [offset]
    denom = 1
    for c in entries:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in entries]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class Flat:
    """A nonempty intersection, identified by its closed defining set."""

    index: int
    defining_set: frozenset[int]
    dim: int
    sample_point: Optional[tuple[Fraction, ...]] = None

    def defining_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.defining_set))


class IntersectionPoset:
    """Flats ordered by reverse inclusion of point sets.

    Because defining sets are closed, ``M <= N`` (N inside M) is exactly
    ``defining_set(M) issubset defining_set(N)``.  The bottom element is the
    ambient space (empty defining set) and Moebius values are taken from it.
    """

    def __init__(self, flats: list[Flat], ambient_dim: int):
        self.flats = flats
        self.ambient_dim = ambient_dim
        self._by_defset = {f.defining_set: f.index for f in flats}
        if flats[0].defining_set:
            raise InvalidArrangement("poset bottom must be the ambient flat")
        self.mobius = self._mobius_values()

    def __len__(self) -> int:
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    def leq(self, i: int, j: int) -> bool:
        return self.flats[i].defining_set <= self.flats[j].defining_set

    def flat_index(self, defining_set: Iterable[int]) -> Optional[int]:
        return self._by_defset.get(frozenset(defining_set))

    def _mobius_values(self) -> tuple[int, ...]:
        # flats are sorted by |defining_set|, a linear extension of the order
        mu = [0] * len(self.flats)
        mu[0] = 1
        for j in range(1, len(self.flats)):
            dj = self.flats[j].defining_set
            mu[j] = -sum(
                mu[i] for i in range(j) if self.flats[i].defining_set < dj
            )
        return tuple(mu)

    def characteristic_polynomial(self) -> tuple[int, ...]:
        """Integer coefficients by degree of t."""
        coeffs = [0] * (self.ambient_dim + 1)
        for f, mu in zip(self.flats, self.mobius):
            coeffs[f.dim] += mu
        return tuple(coeffs)

    def dim_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.flats:
            out[f.dim] = out.get(f.dim, 0) + 1
        return out


def charpoly_string(coeffs: Sequence[int]) -> str:
    parts: list[str] = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if not c:
            continue
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            t = "t" if deg == 1 else f"t^{deg}"
            body = t if mag == 1 else f"{mag}*{t}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts) if parts else "0"


class Arrangement:
    """A named hyperplane (or covector) arrangement with exact coordinates."""

    def __init__(
        self,
        mode: str,
        dim: int,
        hyperplanes: Sequence[Hyperplane] = (),
        covectors: Optional[SignedFamily] = None,
    ):
        if mode not in ("affine", "central", "covector"):
            raise InvalidInput(f"unknown mode {mode!r}")
        if dim < 0:
            raise InvalidInput(f"dimension must be nonnegative, got {dim}")
        self.mode = mode
        self.dim = dim
        self.hyperplanes = tuple(hyperplanes)
        self.covectors = covectors
        if mode == "covector":
            self._init_covector()
        else:
            self._init_realizable()

    def _init_realizable(self):
        if self.covectors is not None:
            raise InvalidInput("covectors are only allowed in covector mode")
        nvars = self._nvars
        names = set()
        keys = {}
        for h in self.hyperplanes:
            if len(h.normal) != nvars:
                raise InvalidArrangement(
                    f"hyperplane {h.name!r} has {len(h.normal)} coordinates, "
                    f"expected {nvars}"
                )
            if self.mode == "central" and h.offset:
                raise InvalidArrangement(
                    f"central hyperplane {h.name!r} has nonzero offset"
                )
            if h.name in names:
                raise InvalidArrangement(f"duplicate hyperplane name {h.name!r}")
            names.add(h.name)
            key = _canonical_key(h.normal, h.offset)
            if key in keys:
                raise InvalidArrangement(
                    f"hyperplanes {keys[key]!r} and {h.name!r} coincide"
                )
            keys[key] = h.name

    def _init_covector(self):
        if self.hyperplanes:
            raise InvalidInput("covector mode takes no hyperplanes")
        if self.covectors is None:
            raise InvalidInput("covector mode needs a covector family")
        # gate on the cheap axioms only: no zero vector, symmetry, closure
        # (the elimination axiom is available through check_vector_axioms)
        for v in self.covectors.members:
            if v.is_zero():
                raise InvalidArrangement(
                    "covector family contains the zero vector"
                )
            if -v not in self.covectors:
                raise InvalidArrangement(
                    f"covector family is not symmetric: missing opposite of "
                    f"{v.to_string()!r}"
                )
        witness = check_composition_closure(self.covectors)
        if witness is not None:
            x, y = witness
            raise InvalidArrangement(
                f"covector family not closed under composition: "
                f"{x.to_string()} o {y.to_string()} is missing"
            )

    @property
    def n(self) -> int:
        if self.mode == "covector":
            return self.covectors.ground_size
        return len(self.hyperplanes)

    @property
    def names(self) -> tuple[str, ...]:
        if self.mode == "covector":
            return tuple(f"S{i + 1}" for i in range(self.n))
        return tuple(h.name for h in self.hyperplanes)

    @property
    def _nvars(self) -> int:
        return self.dim + 1 if self.mode == "central" else self.dim

    # ------------------------------------------------------------------
    # face / region enumeration

    def _constraints(self, signs: Sequence[int]):
        """Equalities and strict inequalities for a sign prefix."""
        eqs = []
        stricts = []
        for h, s in zip(self.hyperplanes, signs):
            if s == 0:
                eqs.append((h.normal, h.offset))
            elif s > 0:
                stricts.append((h.normal, h.offset))
            else:
                neg = tuple(-c for c in h.normal)
                stricts.append((neg, -h.offset))
        return eqs, stricts

    def _prefix_feasible(self, signs: Sequence[int]) -> bool:
        eqs, stricts = self._constraints(signs)
        return feasible_strict(
            eqs, stricts, self._nvars, require_nonzero=self.mode == "central"
        )

    def _enumerate(self, allow_zero: bool) -> list[SignVector]:
        if self.n > MAX_GROUND_SIZE:
            raise TooLarge(
                f"enumeration capped at {MAX_GROUND_SIZE} hyperplanes, got {self.n}"
            )
        choices = (1, 0, -1) if allow_zero else (1, -1)
        out: list[SignVector] = []
        assign: list[int] = []

        def dfs(i: int) -> None:
            if i == self.n:
                out.append(SignVector.from_signs(assign))
                return
            for s in choices:
                assign.append(s)
                if self._prefix_feasible(assign):
                    dfs(i + 1)
                assign.pop()

        dfs(0)
        return out

    @cached_property
    def _regions(self) -> tuple[SignVector, ...]:
        if self.mode == "covector":
            vecs = [v for v in self.covectors.sorted_members() if v.is_zero_free()]
        else:
            vecs = self._enumerate(allow_zero=False)
        return tuple(sorted(vecs, key=SignVector.sort_key))

    @cached_property
    def _faces(self) -> SignedFamily:
        if self.mode == "covector":
            return self.covectors
        return SignedFamily.from_vectors(self.n, self._enumerate(allow_zero=True))

    def regions(self) -> list[SignVector]:
        """Zero-free sign vectors in canonical (lex, '+' < '-') order."""
        return list(self._regions)

    def region_index(self) -> dict[SignVector, int]:
        return {v: i for i, v in enumerate(self._regions)}

    def faces(self) -> SignedFamily:
        return self._faces

    def covector_family(self) -> SignedFamily:
        """The arrangement's sign vectors as a symmetric, zero-free family.

        Affine face families are neither symmetric nor free of the zero
        vector in general; this view adds opposites and drops the zero
        vector, which is the family the axiom checks apply to.
        """
        members = set()
        for f in self._faces.members:
            if f.is_zero():
                continue
            members.add(f)
            members.add(-f)
        return SignedFamily.from_vectors(self.n, members)

    # ------------------------------------------------------------------
    # flats and the intersection poset

    def _flat_geometry(
        self, defset: frozenset[int]
    ) -> tuple[int, Optional[tuple[Fraction, ...]]]:
        eqs = [
            (self.hyperplanes[i].normal, self.hyperplanes[i].offset)
            for i in sorted(defset)
        ]
        solved = solve_equalities(eqs, self._nvars)
        if solved is None:
            raise InvalidArrangement("flat from an infeasible defining set")
        particular, basis = solved
        if self.mode == "central":
            if not basis:
                # meets R^{dim+1} only at the origin: empty on the sphere
                raise InvalidArrangement("flat does not meet the sphere")
            return len(basis) - 1, tuple(basis[0])
        return len(basis), tuple(particular)

    @cached_property
    def _poset(self) -> IntersectionPoset:
        zsets = sorted(
            {f.zero_set() for f in self._faces.members},
            key=lambda z: (len(z), tuple(sorted(z))),
        )
        if self.mode == "covector":
            if frozenset() not in zsets:
                raise InvalidArrangement("covector family has no zero-free member")
            flats = []
            heights: dict[frozenset[int], int] = {}
            for idx, z in enumerate(zsets):
                h = 0
                for other, oh in heights.items():
                    if other < z:
                        h = max(h, oh + 1)
                heights[z] = h
                dim = self.dim - h
                if dim < 0:
                    raise InvalidArrangement(
                        f"covector poset is deeper than the stated dimension "
                        f"{self.dim}"
                    )
                flats.append(Flat(idx, z, dim))
        else:
            flats = []
            for idx, z in enumerate(zsets):
                dim, sample = self._flat_geometry(z)
                flats.append(Flat(idx, z, dim, sample))
        return IntersectionPoset(flats, self.dim)

    def poset(self) -> IntersectionPoset:
        return self._poset

    def charpoly(self) -> tuple[int, ...]:
        return self._poset.characteristic_polynomial()

    # ------------------------------------------------------------------
    # semigeneral position

    def semigeneral_witness(self) -> Optional[Flat]:
        """None if semigeneral, else the first flat of deficient dimension."""
        for f in self._poset:
            if f.dim != self.dim - len(f.defining_set):
                return f
        return None

    def is_semigeneral(self) -> bool:
        return self.semigeneral_witness() is None

    # ------------------------------------------------------------------
    # restriction and localization

    def _check_flat(self, flat: Flat) -> Flat:
        idx = self._poset.flat_index(flat.defining_set)
        if idx is None:
            raise InvalidInput("flat does not belong to this arrangement")
        return self._poset.flats[idx]

    def localization(self, flat: Flat) -> "Arrangement":
        """Sub-arrangement of the hyperplanes containing the flat."""
        flat = self._check_flat(flat)
        keep = sorted(flat.defining_set)
        if self.mode == "covector":
            members = set()
            for v in self.covectors.members:
                proj = SignVector.from_signs([v[i] for i in keep])
                if not proj.is_zero():
                    members.add(proj)
            family = SignedFamily.from_vectors(len(keep), members)
            return Arrangement("covector", self.dim, covectors=family)
        return Arrangement(
            self.mode, self.dim, [self.hyperplanes[i] for i in keep]
        )

    def restriction(self, flat: Flat) -> "Arrangement":
        """The arrangement induced inside the flat, in exact flat coordinates.

        Hyperplanes containing or missing the flat are dropped; hyperplanes
        with the same trace are merged and their names joined with '&'.
        """
        if self.mode == "covector":
            raise Unsupported("restriction needs coordinates (covector mode)")
        flat = self._check_flat(flat)
        eqs = [
            (self.hyperplanes[i].normal, self.hyperplanes[i].offset)
            for i in sorted(flat.defining_set)
        ]
        particular, basis = solve_equalities(eqs, self._nvars)
        m = len(basis)
        central = self.mode == "central"
        if central and m <= 1:
            # traces on a 0-sphere are empty
            return Arrangement("central", m - 1 if m else 0, [])

        merged: dict[tuple[int, ...], list[str]] = {}
        order: list[tuple[int, ...]] = []
        for i, h in enumerate(self.hyperplanes):
            if i in flat.defining_set:
                continue
            coeffs = tuple(
                sum(a * b for a, b in zip(h.normal, vec)) for vec in basis
            )
            if not any(coeffs):
                continue  # contains or misses the flat
            offset = h.offset - sum(a * p for a, p in zip(h.normal, particular))
            key = _canonical_key(coeffs, offset)
            if key not in merged:
                merged[key] = []
                order.append(key)
            merged[key].append(h.name)

        hyperplanes = []
        for key in order:
            normal = tuple(Fraction(c) for c in key[:-1])
            offset = Fraction(key[-1])
            if central:
                offset = Fraction(0)
            hyperplanes.append(
                Hyperplane("&".join(merged[key]), normal, offset)
            )
        new_dim = m - 1 if central else m
        return Arrangement(self.mode, new_dim, hyperplanes)

    # ------------------------------------------------------------------
    # serialization

    def to_json_dict(self) -> dict:
        out: dict = {"mode": self.mode, "dim": self.dim}
        if self.mode == "covector":
            out["covectors"] = [v.to_string() for v in self.covectors]
        else:
            out["hyperplanes"] = [
                {
                    "name": h.name,
                    "normal": [rational_str(c) for c in h.normal],
                    "offset": rational_str(h.offset),
                }
                for h in self.hyperplanes
            ]
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "Arrangement":
        if not isinstance(data, dict):
            raise InvalidInput("arrangement JSON must be an object")
        try:
            mode = data["mode"]
            dim = data["dim"]
        except KeyError as exc:
            raise InvalidInput(f"arrangement JSON missing key {exc}") from None
        if not isinstance(dim, int):
            raise InvalidInput("dim must be an integer")
        if mode == "covector":
            strings = data.get("covectors")
            if not isinstance(strings, list) or not strings:
                raise InvalidInput("covector mode needs a nonempty 'covectors' list")
            return cls(mode, dim, covectors=SignedFamily.from_strings(strings))
        hyps = []
        for item in data.get("hyperplanes", []):
            if not isinstance(item, dict) or "name" not in item or "normal" not in item:
                raise InvalidInput(f"bad hyperplane entry {item!r}")
            normal = tuple(parse_rational(c) for c in item["normal"])
            offset = parse_rational(item.get("offset", "0"))
            hyps.append(Hyperplane(str(item["name"]), normal, offset))
        return cls(mode, dim, hyps)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Arrangement":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"bad JSON: {exc}") from None
        return cls.from_json_dict(data)

    def __repr__(self) -> str:
        return f"Arrangement({self.mode}, dim={self.dim}, n={self.n})"
