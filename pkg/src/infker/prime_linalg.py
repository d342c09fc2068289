"""Exact dense linear algebra over a prime field F_p.

Everything runs on plain Python integers reduced into [0, p); there is no
floating point anywhere.  Matrices are immutable (entries live in a tuple
of row tuples) so values can be cached and shared freely.

Row reduction is deterministic: pivots are chosen leftmost column first,
then topmost available row.  Canonical objects downstream (subspace bases,
quotient monomials, report payloads) inherit their reproducibility from
this rule.  For p = 2 rows are packed into Python ints and eliminated with
XOR; that path produces bit-identical output to the generic one and the
test suite cross-checks the two on random inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    CatalogTooLargeError,
    DimensionMismatchError,
    FieldMismatchError,
    NotPrimeError,
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"modulus must be prime, got {p!r}")
    return p


def inv_mod(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` via the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 is not invertible mod {p}")
    r0, r1 = p, a
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r0 != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {p}")
    return t0 % p


@dataclass(frozen=True)
class Fp:
    """A single residue modulo a prime.

    The class exists for scalar-level work and doctests; the matrix layer
    below keeps raw ints for speed and converts on demand.
    """

    value: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatchError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return Fp(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Fp(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        return Fp(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        return Fp(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        return Fp(inv_mod(self.value, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"Fp({self.value}, {self.p})"


class Matrix:
    """Immutable dense matrix over F_p.

    Zero-row and zero-column shapes are legal; they show up naturally as
    operator matrices between trivial graded pieces.
    """

    __slots__ = ("p", "rows", "cols", "entries")

    def __init__(self, p: int, data: Iterable[Iterable[int]], cols: Optional[int] = None):
        check_prime(p)
        normalized = tuple(tuple(v % p for v in row) for row in data)
        if normalized:
            width = len(normalized[0])
            if any(len(row) != width for row in normalized):
                raise DimensionMismatchError("ragged rows")
            if cols is not None and cols != width:
                raise DimensionMismatchError(
                    f"declared {cols} columns but rows have {width}"
                )
            cols = width
        elif cols is None:
            cols = 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "rows", len(normalized))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", normalized)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, p: int, n: int) -> "Matrix":
        return cls(p, ([int(i == j) for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def zero(cls, p: int, rows: int, cols: int) -> "Matrix":
        return cls(p, ([0] * cols for _ in range(rows)), cols=cols)

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "Matrix":
        return cls(p, rows, cols=cols)

    @classmethod
    def vstack(cls, mats: Sequence["Matrix"]) -> "Matrix":
        if not mats:
            raise DimensionMismatchError("need at least one matrix to stack")
        p = mats[0].p
        cols = mats[0].cols
        for m in mats:
            if m.p != p:
                raise FieldMismatchError("mixed moduli in stack")
            if m.cols != cols:
                raise DimensionMismatchError("mixed widths in stack")
        return cls(p, itertools.chain.from_iterable(m.entries for m in mats), cols=cols)

    # -- basics -------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.p == other.p
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.p, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"Matrix(p={self.p}, {self.rows}x{self.cols})"

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.entries)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def is_zero(self) -> bool:
        return all(not v for row in self.entries for v in row)

    def transpose(self) -> "Matrix":
        if not self.rows:
            # 0 x n transposes to n x 0
            return Matrix(self.p, [()] * self.cols, cols=0)
        return Matrix(self.p, zip(*self.entries), cols=self.rows)

    def scale(self, c: int) -> "Matrix":
        c %= self.p
        return Matrix(
            self.p,
            (((c * v) % self.p for v in row) for row in self.entries),
            cols=self.cols,
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.p,
            (((a + b) % self.p for a, b in zip(ra, rb))
             for ra, rb in zip(self.entries, other.entries)),
            cols=self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.p,
            (((a - b) % self.p for a, b in zip(ra, rb))
             for ra, rb in zip(self.entries, other.entries)),
            cols=self.cols,
        )

    def _check_same_shape(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.p != other.p:
            raise FieldMismatchError("mixed moduli")
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatchError(
                f"shape {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.p != other.p:
            raise FieldMismatchError("mixed moduli")
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        p = self.p
        cols_b = list(zip(*other.entries)) if other.rows else []
        out = []
        for row in self.entries:
            if cols_b:
                out.append([sum(a * b for a, b in zip(row, col)) % p for col in cols_b])
            else:
                out.append([0] * other.cols)
        return Matrix(p, out, cols=other.cols)

    def matvec(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.cols:
            raise DimensionMismatchError(f"vector length {len(vec)} vs {self.cols} columns")
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, vec)) % p for row in self.entries)

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "rows": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        return cls(obj["p"], obj["rows"])


def _rref_generic(rows: Sequence[Sequence[int]], ncols: int, p: int):
    mat = [[v % p for v in row] for row in rows]
    nrows = len(mat)
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        lead = mat[rank][col]
        if lead != 1:
            inv = inv_mod(lead, p)
            mat[rank] = [(inv * v) % p for v in mat[rank]]
        prow = mat[rank]
        for i in range(nrows):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(v - f * w) % p for v, w in zip(mat[i], prow)]
        pivots.append(col)
        rank += 1
    return mat, tuple(pivots), rank


def _rref_packed2(rows: Sequence[Sequence[int]], ncols: int):
    # rows packed little-endian: bit c of the int is column c
    packed = []
    for row in rows:
        acc = 0
        for c, v in enumerate(row):
            if v & 1:
                acc |= 1 << c
        packed.append(acc)
    nrows = len(packed)
    pivots = []
    rank = 0
    for col in range(ncols):
        mask = 1 << col
        pivot = next((i for i in range(rank, nrows) if packed[i] & mask), None)
        if pivot is None:
            continue
        packed[rank], packed[pivot] = packed[pivot], packed[rank]
        prow = packed[rank]
        for i in range(nrows):
            if i != rank and packed[i] & mask:
                packed[i] ^= prow
        pivots.append(col)
        rank += 1
    mat = [[(w >> c) & 1 for c in range(ncols)] for w in packed]
    return mat, tuple(pivots), rank


def rref(mat: Matrix, method: str = "auto"):
    """Reduced row echelon form.

    Args:
        mat: the matrix to reduce.
        method: "auto" picks the packed XOR path when p = 2, "generic" and
            "packed" force one path (packed demands p = 2).

    Returns:
        (reduced Matrix, pivot column tuple, rank).
    """
    if method not in ("auto", "generic", "packed"):
        raise ValueError(f"unknown rref method {method!r}")
    if method == "packed" and mat.p != 2:
        raise ValueError("packed elimination only applies to p = 2")
    if mat.p == 2 and method != "generic":
        rows, pivots, rank = _rref_packed2(mat.entries, mat.cols)
    else:
        rows, pivots, rank = _rref_generic(mat.entries, mat.cols, mat.p)
    return Matrix(mat.p, rows, cols=mat.cols), pivots, rank


def rank(mat: Matrix) -> int:
    return rref(mat)[2]


def solve(mat: Matrix, rhs: Sequence[int]) -> Optional[tuple]:
    """One solution of ``mat @ x = rhs``, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(rhs) != mat.rows:
        raise DimensionMismatchError(f"rhs length {len(rhs)} vs {mat.rows} rows")
    aug = Matrix(mat.p, (list(row) + [b] for row, b in zip(mat.entries, rhs)),
                 cols=mat.cols + 1)
    red, pivots, _ = rref(aug)
    if mat.cols in pivots:
        return None
    x = [0] * mat.cols
    for i, col in enumerate(pivots):
        x[col] = red.entries[i][mat.cols]
    return tuple(x)


class Subspace:
    """A subspace of F_p^n held in reduced-row-echelon canonical form.

    Two subspaces are equal iff they have the same span; the rref basis
    makes that a tuple comparison.
    """

    __slots__ = ("p", "ambient_dim", "basis", "pivots")

    def __init__(self, p: int, ambient_dim: int, basis: Matrix, pivots: tuple):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_rows(cls, p: int, ambient_dim: int, rows: Iterable[Sequence[int]]) -> "Subspace":
        rows = [list(r) for r in rows]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatchError(
                    f"row length {len(r)} vs ambient dimension {ambient_dim}"
                )
        mat = Matrix(p, rows, cols=ambient_dim)
        red, pivots, rk = rref(mat)
        return cls(p, ambient_dim, Matrix(p, red.entries[:rk], cols=ambient_dim), pivots)

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls.from_rows(p, ambient_dim, [])

    @classmethod
    def full(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls.from_rows(p, ambient_dim, Matrix.identity(p, ambient_dim).entries)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.basis.entries == other.basis.entries
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ambient_dim, self.basis.entries))

    def __repr__(self) -> str:
        return f"Subspace(p={self.p}, dim={self.dim}, ambient={self.ambient_dim})"

    def member(self, vec: Sequence[int]) -> Optional[tuple]:
        """Coefficients of ``vec`` over the rref basis, or None if outside.

        Because the basis is reduced, the only candidate coefficients are
        the entries of ``vec`` at the pivot columns; one exact comparison
        settles membership.
        """
        if len(vec) != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector length {len(vec)} vs ambient {self.ambient_dim}"
            )
        p = self.p
        vec = [v % p for v in vec]
        coeffs = tuple(vec[c] for c in self.pivots)
        residual = list(vec)
        for coeff, row in zip(coeffs, self.basis.entries):
            if coeff:
                residual = [(a - coeff * b) % p for a, b in zip(residual, row)]
        if any(residual):
            return None
        return coeffs

    def contains(self, vec: Sequence[int]) -> bool:
        return self.member(vec) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        if self.p != other.p or self.ambient_dim != other.ambient_dim:
            raise FieldMismatchError("subspaces live in different ambient spaces")
        return all(self.contains(row) for row in other.basis.entries)

    def vectors(self, limit: int = 1_000_000) -> Iterator[tuple]:
        """Every vector of the subspace, p^dim of them, in a fixed order."""
        if self.p ** self.dim > limit:
            raise CatalogTooLargeError(self.p ** self.dim, limit)
        p = self.p
        rows = self.basis.entries
        for coeffs in itertools.product(range(p), repeat=self.dim):
            vec = [0] * self.ambient_dim
            for c, row in zip(coeffs, rows):
                if c:
                    vec = [(a + c * b) % p for a, b in zip(vec, row)]
            yield tuple(vec)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "ambient_dim": self.ambient_dim,
            "basis": [list(r) for r in self.basis.entries],
        }


def kernel_basis(mat: Matrix) -> Subspace:
    """Kernel of ``mat`` as a canonical subspace of F_p^cols."""
    red, pivots, rk = rref(mat)
    p = mat.p
    n = mat.cols
    free = [c for c in range(n) if c not in set(pivots)]
    gens = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = (-red.entries[i][f]) % p
        gens.append(vec)
    return Subspace.from_rows(p, n, gens)


def image_basis(mat: Matrix) -> Subspace:
    """Column space of ``mat`` as a canonical subspace of F_p^rows."""
    return Subspace.from_rows(mat.p, mat.rows, mat.transpose().entries)


def count_subspaces(p: int, n: int, r: int) -> int:
    """Gaussian binomial: the number of r-dimensional subspaces of F_p^n."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= p ** (n - i) - 1
        den *= p ** (r - i) - 1
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def iter_subspaces(p: int, n: int, r: int):
    """Every r-dimensional subspace of F_p^n, one per rref basis.

    Pivot patterns run in lexicographic order; for each pattern the free
    entries (right of the own pivot, excluding other pivot columns) run
    through all values.  Each subspace appears exactly once.
    """
    if r == 0:
        yield Subspace.zero(p, n)
        return
    if r < 0 or r > n:
        return
    for pattern in itertools.combinations(range(n), r):
        pset = set(pattern)
        free = [
            (i, c)
            for i, piv in enumerate(pattern)
            for c in range(piv + 1, n)
            if c not in pset
        ]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(r)]
            for i, piv in enumerate(pattern):
                rows[i][piv] = 1
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            yield Subspace.from_rows(p, n, rows)


def sum_and_intersection(u: Subspace, w: Subspace):
    """The pair (U + W, U intersect W), computed by the Zassenhaus trick.

    The modular law check dim(U+W) + dim(U int W) = dim U + dim W is
    asserted on every call.
    """
    if u.p != w.p or u.ambient_dim != w.ambient_dim:
        raise FieldMismatchError("subspaces live in different ambient spaces")
    p, n = u.p, u.ambient_dim
    rows = []
    for r in u.basis.entries:
        rows.append(list(r) + list(r))
    for r in w.basis.entries:
        rows.append(list(r) + [0] * n)
    big = Matrix(p, rows, cols=2 * n)
    red, pivots, rk = rref(big)
    total = Subspace.from_rows(p, n, (row[:n] for row in red.entries[:rk]))
    inter_rows = [row[n:] for i, row in enumerate(red.entries[:rk]) if pivots[i] >= n]
    inter = Subspace.from_rows(p, n, inter_rows)
    if total.dim + inter.dim != u.dim + w.dim:
        raise AssertionError("modular law violated; elimination bug")
    return total, inter
