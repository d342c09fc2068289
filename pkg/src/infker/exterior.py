"""Exterior algebra over F_p with an explicit monomial calculus.

The low-level layer works over an arbitrary number of coordinates: a
monomial is a strictly increasing tuple of 0-based positions, and the
degree-r monomials are ordered colexicographically.  That ordering gives
every monomial a rank through the combinatorial number system, so graded
pieces get stable coordinates and operators become plain matrices.

On top of that sits :class:`Multivector`, the user-facing value for the
symplectic setting: 2m variables named x1..xm, y1..ym (in that order),
with a text grammar and a JSON form for round-tripping.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional, Sequence

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    HomogeneityError,
    ParseError,
)
from .prime_linalg import Matrix, check_prime, inv_mod

Mono = tuple  # strictly increasing tuple of 0-based positions


# ---------------------------------------------------------------------------
# monomial order and ranking


@lru_cache(maxsize=None)
def monomials(nvars: int, r: int) -> tuple:
    """All degree-r monomials on ``nvars`` positions, in colex order."""
    if r < 0 or r > nvars:
        return ()
    return tuple(sorted(itertools.combinations(range(nvars), r),
                        key=lambda mono: mono[::-1]))


def mono_rank(mono: Mono, r: Optional[int] = None) -> int:
    """Colex rank of a monomial among all monomials of its degree.

    The combinatorial number system: rank = sum of C(c_i, i) over the
    1-based positions i of the entries c_i.
    """
    if r is not None and len(mono) != r:
        raise DimensionMismatchError(f"monomial {mono} does not have degree {r}")
    if any(a >= b for a, b in zip(mono, mono[1:])):
        raise ValueError(f"monomial positions must strictly increase: {mono}")
    return sum(comb(c, i + 1) for i, c in enumerate(mono))


def mono_unrank(index: int, r: int, nvars: int) -> Mono:
    """Inverse of :func:`mono_rank` for degree r on ``nvars`` positions."""
    total = comb(nvars, r)
    if not 0 <= index < total:
        raise ValueError(f"rank {index} out of range for C({nvars},{r}) = {total}")
    out = []
    rem = index
    c = nvars - 1
    for i in range(r, 0, -1):
        while comb(c, i) > rem:
            c -= 1
        out.append(c)
        rem -= comb(c, i)
        c -= 1
    return tuple(reversed(out))


def wedge_monomials(a: Mono, b: Mono):
    """Merge two monomials into one, tracking the transposition sign.

    Returns (sign, merged) with sign in {1, -1}, or None when the factors
    share a position (the product is zero).
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    merged = []
    inversions = 0
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] jumps over the len(a) - i remaining entries of a
            inversions += len(a) - i
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return (-1) ** (inversions & 1), tuple(merged)


def sort_to_monomial(positions: Sequence[int]):
    """Sort wedge factors into a monomial; None when a position repeats."""
    if len(set(positions)) != len(positions):
        return None
    sign = 1
    order = list(positions)
    # insertion sort keeps the transposition count exact
    for i in range(1, len(order)):
        j = i
        while j > 0 and order[j - 1] > order[j]:
            order[j - 1], order[j] = order[j], order[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(order)


# ---------------------------------------------------------------------------
# minors, compound and pullback matrices


def det_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant of a small square matrix over F_p."""
    n = len(rows)
    mat = [[v % p for v in row] for row in rows]
    det = 1
    for col in range(n):
        pivot = next((i for i in range(col, n) if mat[i][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        lead = mat[col][col]
        det = det * lead % p
        inv = inv_mod(lead, p)
        for i in range(col + 1, n):
            if mat[i][col]:
                f = mat[i][col] * inv % p
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[col])]
    return det % p


def compound_matrix(f: Matrix, r: int) -> Matrix:
    """The degree-r compound of ``f``: entry (I, J) is the minor with rows
    I and columns J.  It is the matrix of the induced map on degree-r
    wedges, acting on colex coordinates."""
    if r < 0:
        raise ValueError("degree must be nonnegative")
    row_monos = monomials(f.rows, r)
    col_monos = monomials(f.cols, r)
    p = f.p
    ent = f.entries
    out = []
    for mi in row_monos:
        out.append([
            det_mod([[ent[i][j] for j in mj] for i in mi], p)
            for mj in col_monos
        ])
    return Matrix(p, out, cols=len(col_monos))


def pullback_matrix(f: Matrix, r: int) -> Matrix:
    """Matrix of the degree-r pullback of functionals along ``f``.

    With ``f`` the 2m x a matrix of a linear map A -> V (columns are the
    images of A's basis), the result maps colex coordinates on degree-r
    wedges of V-functionals to the same for A.  Entry (J, I) is the r x r
    minor of ``f`` with rows I and columns J, so the pullback is the
    transpose of the compound and composition is contravariant.
    """
    return compound_matrix(f, r).transpose()


def pure_wedge_coords(rows: Sequence[Sequence[int]], nvars: int, p: int) -> tuple:
    """Colex coordinates of the wedge of the given vectors.

    ``rows`` is an r x nvars array; coordinate I of the result is the
    r x r minor on columns I.
    """
    r = len(rows)
    return tuple(
        det_mod([[row[j] for j in mono] for row in rows], p)
        for mono in monomials(nvars, r)
    )


def wedge_coords(nvars: int, p: int, deg_a: int, vec_a: Sequence[int],
                 deg_b: int, vec_b: Sequence[int]) -> tuple:
    """Wedge two coordinate vectors of pure degrees into one of degree
    deg_a + deg_b, all in colex coordinates on ``nvars`` positions."""
    out = [0] * comb(nvars, deg_a + deg_b)
    monos_a = monomials(nvars, deg_a)
    monos_b = monomials(nvars, deg_b)
    for ia, ca in enumerate(vec_a):
        if not ca:
            continue
        ma = monos_a[ia]
        for ib, cb in enumerate(vec_b):
            if not cb:
                continue
            merged = wedge_monomials(ma, monos_b[ib])
            if merged is None:
                continue
            sign, mono = merged
            k = mono_rank(mono)
            out[k] = (out[k] + sign * ca * cb) % p
    return tuple(out)


# ---------------------------------------------------------------------------
# named variables and multivectors


_VAR_RE = re.compile(r"([xy])([0-9]+)$")


@dataclass(frozen=True)
class VariableOrder:
    """The fixed variable order x1 < ... < xm < y1 < ... < ym."""

    m: int

    @property
    def nvars(self) -> int:
        return 2 * self.m

    def name(self, position: int) -> str:
        if not 0 <= position < 2 * self.m:
            raise ValueError(f"position {position} out of range for m = {self.m}")
        if position < self.m:
            return f"x{position + 1}"
        return f"y{position - self.m + 1}"

    def position(self, name: str) -> int:
        match = _VAR_RE.match(name)
        if not match:
            raise ValueError(f"unknown variable {name!r}")
        letter, idx = match.group(1), int(match.group(2))
        if not 1 <= idx <= self.m:
            raise ValueError(f"variable index out of range in {name!r} (m = {self.m})")
        return idx - 1 if letter == "x" else self.m + idx - 1

    def mono_name(self, mono: Mono) -> str:
        if not mono:
            return "1"
        return "^".join(self.name(c) for c in mono)


class Multivector:
    """An element of the exterior algebra on x1..xm, y1..ym over F_p.

    Terms are stored sparsely as {monomial: coefficient} with coefficients
    normalized into [1, p).  Instances are treated as immutable; all
    arithmetic returns new values.
    """

    __slots__ = ("p", "m", "terms")

    def __init__(self, p: int, m: int, terms: Optional[dict] = None):
        check_prime(p)
        if m < 1:
            raise ValueError(f"need at least one hyperbolic pair, got m = {m}")
        n = 2 * m
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if any(not 0 <= c < n for c in mono):
                raise ValueError(f"monomial {mono} out of range for 2m = {n}")
            if any(a >= b for a, b in zip(mono, mono[1:])):
                raise ValueError(f"monomial positions must strictly increase: {mono}")
            coeff %= p
            if coeff:
                clean[mono] = coeff
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, p: int, m: int) -> "Multivector":
        return cls(p, m, {})

    @classmethod
    def one(cls, p: int, m: int) -> "Multivector":
        return cls(p, m, {(): 1})

    @classmethod
    def variable(cls, p: int, m: int, name: str) -> "Multivector":
        pos = VariableOrder(m).position(name)
        return cls(p, m, {(pos,): 1})

    @classmethod
    def from_coords(cls, p: int, m: int, r: int, coords: Sequence[int]) -> "Multivector":
        monos = monomials(2 * m, r)
        if len(coords) != len(monos):
            raise DimensionMismatchError(
                f"expected {len(monos)} coordinates for degree {r}, got {len(coords)}"
            )
        return cls(p, m, {mono: c for mono, c in zip(monos, coords)})

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> tuple:
        return tuple(sorted({len(mono) for mono in self.terms}))

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a nonzero homogeneous value."""
        degs = self.degrees()
        if len(degs) != 1:
            raise HomogeneityError(f"value has degrees {degs}, expected exactly one")
        return degs[0]

    def component(self, r: int) -> "Multivector":
        return Multivector(self.p, self.m,
                           {mono: c for mono, c in self.terms.items() if len(mono) == r})

    def coords(self, r: int) -> tuple:
        """Colex coordinate vector of the degree-r component."""
        vec = [0] * comb(2 * self.m, r)
        for mono, coeff in self.terms.items():
            if len(mono) == r:
                vec[mono_rank(mono)] = coeff
        return tuple(vec)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(),
                      key=lambda kv: (len(kv[0]), mono_rank(kv[0])))

    # -- arithmetic -------------------------------------------------------

    def _check_compatible(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            raise TypeError("expected a Multivector")
        if self.p != other.p or self.m != other.m:
            raise FieldMismatchError(
                f"mixed algebras (p={self.p}, m={self.m}) vs (p={other.p}, m={other.m})"
            )

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check_compatible(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = (terms.get(mono, 0) + coeff) % self.p
        return Multivector(self.p, self.m, terms)

    def __sub__(self, other: "Multivector") -> "Multivector":
        self._check_compatible(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = (terms.get(mono, 0) - coeff) % self.p
        return Multivector(self.p, self.m, terms)

    def __neg__(self) -> "Multivector":
        return self.scale(-1)

    def scale(self, c: int) -> "Multivector":
        return Multivector(self.p, self.m,
                           {mono: (c * coeff) % self.p for mono, coeff in self.terms.items()})

    def wedge(self, other: "Multivector") -> "Multivector":
        self._check_compatible(other)
        terms: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                merged = wedge_monomials(ma, mb)
                if merged is None:
                    continue
                sign, mono = merged
                terms[mono] = (terms.get(mono, 0) + sign * ca * cb) % self.p
        return Multivector(self.p, self.m, terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Multivector)
            and self.p == other.p
            and self.m == other.m
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, tuple(sorted(self.terms.items()))))

    # -- text and JSON ------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        order = VariableOrder(self.m)
        parts = []
        for mono, coeff in self.sorted_terms():
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(order.mono_name(mono))
            else:
                parts.append(f"{coeff}*{order.mono_name(mono)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Multivector(p={self.p}, m={self.m}, {str(self)!r})"

    def to_json(self) -> dict:
        order = VariableOrder(self.m)
        return {
            "p": self.p,
            "m": self.m,
            "terms": [
                {"mono": [order.name(c) for c in mono], "coeff": coeff}
                for mono, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Multivector":
        p, m = obj["p"], obj["m"]
        order = VariableOrder(m)
        terms: dict = {}
        for item in obj["terms"]:
            resolved = sort_to_monomial([order.position(n) for n in item["mono"]])
            if resolved is None:
                continue
            sign, mono = resolved
            terms[mono] = (terms.get(mono, 0) + sign * item["coeff"]) % p
        return cls(p, m, terms)


# ---------------------------------------------------------------------------
# text grammar
#
#   expr  := term (('+'|'-') term)*
#   term  := [coeff '*'] mono | coeff
#   mono  := var ('^' var)*
#   var   := ('x'|'y') digits
#   coeff := digits


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_digits(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected digits", start)
        return int(self.text[start:self.pos])


def parse(text: str, p: int, m: int) -> Multivector:
    """Parse the additive multivector grammar into a value.

    Raises :class:`ParseError` with a character offset on malformed input,
    unknown variable letters, or indices outside 1..m.
    """
    order = VariableOrder(m)
    scan = _Scanner(text)
    result = Multivector.zero(p, m)

    def parse_var() -> int:
        scan.skip_ws()
        start = scan.pos
        letter = scan.peek()
        if letter not in ("x", "y"):
            raise ParseError(f"expected a variable, found {letter or 'end of input'!r}", start)
        scan.pos += 1
        idx = scan.take_digits()
        if not 1 <= idx <= m:
            raise ParseError(f"variable index {idx} out of range 1..{m}", start)
        return order.position(f"{letter}{idx}")

    def parse_term() -> Multivector:
        scan.skip_ws()
        coeff = 1
        if scan.peek().isdigit():
            coeff = scan.take_digits()
            scan.skip_ws()
            if scan.peek() == "*":
                scan.pos += 1
            else:
                return Multivector(p, m, {(): coeff})
        positions = [parse_var()]
        scan.skip_ws()
        while scan.peek() == "^":
            scan.pos += 1
            positions.append(parse_var())
            scan.skip_ws()
        resolved = sort_to_monomial(positions)
        if resolved is None:
            return Multivector.zero(p, m)
        sign, mono = resolved
        return Multivector(p, m, {mono: sign * coeff})

    result = result + parse_term()
    scan.skip_ws()
    while scan.pos < len(scan.text):
        op = scan.peek()
        if op not in "+-":
            raise ParseError(f"expected '+' or '-', found {op!r}", scan.pos)
        scan.pos += 1
        term = parse_term()
        result = result + term if op == "+" else result - term
        scan.skip_ws()
    return result
