"""Symplectic structure on F_p^{2m} and the graded operator triple.

Conventions, fixed once for the whole package:

* Coordinates are ordered x1 < ... < xm < y1 < ... < ym; position i < m is
  x_{i+1} and position m + i is y_{i+1}.
* The alternating form pairs the hyperbolic partners to 1: psi(xi, yi) = 1,
  psi(yi, xi) = -1, and every other basis pairing is 0.
* gamma = sum_i xi ^ yi is the invariant 2-form; its dual carries the
  opposite sign on each term.

The graded triple consists of the lowering operator (left wedge by gamma,
raising degree by 2 in this grading), the raising operator (a signed
contraction dropping degree by 2), and the weight operator acting as
(m - r) on degree r.  The contraction carries one global sign SIGMA,
calibrated so that the three matrices satisfy the standard bracket
relations over every prime; ``calibrate_sigma`` recomputes that choice
from scratch and the test suite pins it.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import (
    DecompositionDefectError,
    DimensionMismatchError,
    FieldMismatchError,
    HomogeneityError,
    InvariantError,
    PrimitivityError,
)
from .exterior import (
    Multivector,
    VariableOrder,
    compound_matrix,
    mono_rank,
    monomials,
    pure_wedge_coords,
    wedge_monomials,
)
from .prime_linalg import (
    Matrix,
    Subspace,
    check_prime,
    image_basis,
    inv_mod,
    kernel_basis,
    rref,
    solve,
    sum_and_intersection,
)

#: Global sign on the raising operator.  With the bare contraction formula
#: the bracket of raising and lowering comes out as +(m - r) on degree r;
#: the triple closes up with the opposite sign, so every raising matrix is
#: scaled by -1.  This is the only sign choice that works for odd primes
#: (for p = 2 the two choices coincide); recorded in every report.
SIGMA = -1


def dim_wedge(n: int, r: int) -> int:
    """Dimension of the degree-r graded piece on n coordinates."""
    return comb(n, r) if 0 <= r <= n else 0


class SymplecticSpace:
    """F_p^{2m} with the standard alternating form and its cached operators."""

    __slots__ = ("p", "m", "gram", "order", "_cache")

    def __init__(self, p: int, m: int):
        check_prime(p)
        if m < 1:
            raise ValueError(f"need m >= 1, got {m}")
        n = 2 * m
        rows = [[0] * n for _ in range(n)]
        for i in range(m):
            rows[i][m + i] = 1
            rows[m + i][i] = (-1) % p
        gram = Matrix(p, rows, cols=n)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "order", VariableOrder(m))
        object.__setattr__(self, "_cache", {})
        # construction-time sanity: alternating with zero diagonal, and
        # nondegenerate (the matrix is its own certificate, but check anyway)
        if any(gram.entries[i][i] for i in range(n)):
            raise InvariantError("form has a nonzero self-pairing")
        if not (gram + gram.transpose()).is_zero():
            raise InvariantError("form is not alternating")
        if rref(gram)[2] != n:
            raise InvariantError("form is degenerate")

    def __setattr__(self, name, value):
        raise AttributeError("SymplecticSpace is immutable")

    @property
    def n(self) -> int:
        return 2 * self.m

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        """psi(u, v) as an integer in [0, p)."""
        return sum(a * b for a, b in zip(self.gram.matvec(v), u)) % self.p

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticSpace) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))

    def __repr__(self) -> str:
        return f"SymplecticSpace(p={self.p}, m={self.m})"


def _check_value(space: SymplecticSpace, a: Multivector):
    if a.p != space.p or a.m != space.m:
        raise FieldMismatchError(
            f"value over (p={a.p}, m={a.m}) does not live on {space!r}"
        )


def gamma(space: SymplecticSpace) -> Multivector:
    """The invariant 2-form, sum of xi ^ yi."""
    return Multivector(space.p, space.m,
                       {(i, space.m + i): 1 for i in range(space.m)})


def gamma_dual(space: SymplecticSpace) -> Multivector:
    """The dual 2-form; each hyperbolic term carries coefficient -1."""
    return Multivector(space.p, space.m,
                       {(i, space.m + i): -1 for i in range(space.m)})


def x_minus(space: SymplecticSpace, a: Multivector) -> Multivector:
    """Lowering operator: left wedge by gamma."""
    _check_value(space, a)
    return gamma(space).wedge(a)


def _x_plus_mono(m: int, mono: tuple, sigma: int):
    """Termwise raising action on one monomial: signed pair removals."""
    out = []
    where = {c: i for i, c in enumerate(mono)}
    for i0, c in enumerate(mono):
        j0 = where.get(c + m) if c < m else None
        if j0 is None:
            continue
        # psi of the pair is 1; the contraction contributes
        # (-psi) * (-1)^(i+j) with 1-based slots i, j, so with 0-based
        # slots the factor is -((-1)^(i0+j0)), all times the global sign
        sign = sigma if ((i0 + j0) & 1) else -sigma
        out.append((sign, tuple(x for t, x in enumerate(mono) if t not in (i0, j0))))
    return out


def x_plus(space: SymplecticSpace, a: Multivector, sigma: int = SIGMA) -> Multivector:
    """Raising operator: the signed contraction against the dual 2-form."""
    _check_value(space, a)
    p, m = space.p, space.m
    terms: dict = {}
    for mono, coeff in a.terms.items():
        for sign, reduced in _x_plus_mono(m, mono, sigma):
            terms[reduced] = (terms.get(reduced, 0) + sign * coeff) % p
    return Multivector(p, m, terms)


def h_op(space: SymplecticSpace, a: Multivector) -> Multivector:
    """Weight operator: multiplies the degree-r piece by (m - r)."""
    _check_value(space, a)
    terms = {mono: (space.m - len(mono)) * coeff for mono, coeff in a.terms.items()}
    return Multivector(space.p, space.m, terms)


# ---------------------------------------------------------------------------
# operator matrices on colex coordinates


def _cached(space: SymplecticSpace, key, build):
    cache = space._cache
    if key not in cache:
        cache[key] = build()
    return cache[key]


def x_minus_matrix(space: SymplecticSpace, r: int) -> Matrix:
    """Matrix of the lowering operator from degree r to degree r + 2."""
    def build():
        p, m, n = space.p, space.m, space.n
        src = dim_wedge(n, r)
        dst = dim_wedge(n, r + 2)
        if src == 0 or dst == 0:
            return Matrix.zero(p, dst, src)
        cols = []
        for mono in monomials(n, r):
            col = [0] * dst
            for t in range(m):
                merged = wedge_monomials((t, m + t), mono)
                if merged is None:
                    continue
                sign, out = merged
                col[mono_rank(out)] = (col[mono_rank(out)] + sign) % p
            cols.append(col)
        return Matrix(p, zip(*cols), cols=src)
    return _cached(space, ("x_minus", r), build)


def x_plus_matrix(space: SymplecticSpace, r: int, sigma: int = SIGMA) -> Matrix:
    """Matrix of the raising operator from degree r to degree r - 2."""
    def build():
        p, m, n = space.p, space.m, space.n
        src = dim_wedge(n, r)
        dst = dim_wedge(n, r - 2)
        if src == 0 or dst == 0:
            return Matrix.zero(p, dst, src)
        cols = []
        for mono in monomials(n, r):
            col = [0] * dst
            for sign, reduced in _x_plus_mono(m, mono, sigma):
                col[mono_rank(reduced)] = (col[mono_rank(reduced)] + sign) % p
            cols.append(col)
        return Matrix(p, zip(*cols), cols=src)
    if sigma == SIGMA:
        return _cached(space, ("x_plus", r), build)
    return build()


def h_matrix(space: SymplecticSpace, r: int) -> Matrix:
    """Matrix of the weight operator on degree r: (m - r) times identity."""
    d = dim_wedge(space.n, r)
    return Matrix.identity(space.p, d).scale(space.m - r)


@dataclass(frozen=True)
class OperatorReport:
    """One graded operator pinned down as exact data."""

    name: str
    degree: int
    matrix: Matrix
    rank: int
    corank: int
    kernel: Subspace
    sigma: int = SIGMA


def operator_report(space: SymplecticSpace, name: str, r: int) -> OperatorReport:
    builders = {"x_minus": x_minus_matrix, "x_plus": x_plus_matrix, "h": h_matrix}
    if name not in builders:
        raise ValueError(f"unknown operator {name!r}")
    mat = builders[name](space, r)
    rk = rref(mat)[2]
    return OperatorReport(
        name=name,
        degree=r,
        matrix=mat,
        rank=rk,
        corank=mat.rows - rk,
        kernel=kernel_basis(mat),
    )


# ---------------------------------------------------------------------------
# bracket relations


@dataclass(frozen=True)
class DegreeCheck:
    r: int
    bracket_ok: bool          # [raise, lower] = -(weight)
    raise_shift_ok: bool      # [weight, raise] = 2 raise
    lower_shift_ok: bool      # [weight, lower] = -2 lower
    weight_ok: bool           # weight acts by m - r

    @property
    def ok(self) -> bool:
        return (self.bracket_ok and self.raise_shift_ok
                and self.lower_shift_ok and self.weight_ok)


@dataclass(frozen=True)
class Sl2Report:
    p: int
    m: int
    sigma: int
    ok: bool
    degrees: tuple

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "sigma": self.sigma,
            "ok": self.ok,
            "degrees": [
                {
                    "r": d.r,
                    "bracket_ok": d.bracket_ok,
                    "raise_shift_ok": d.raise_shift_ok,
                    "lower_shift_ok": d.lower_shift_ok,
                    "weight_ok": d.weight_ok,
                }
                for d in self.degrees
            ],
        }


def sl2_check(space: SymplecticSpace, sigma: int = SIGMA) -> Sl2Report:
    """Verify the full set of bracket relations degree by degree.

    All three identities are checked as exact matrix equations on every
    graded piece; nothing is assumed from the construction.
    """
    p, m, n = space.p, space.m, space.n
    checks = []
    for r in range(n + 1):
        d = dim_wedge(n, r)
        xm_r = x_minus_matrix(space, r)
        xp_r = x_plus_matrix(space, r, sigma)
        h_r = h_matrix(space, r)
        lhs = x_plus_matrix(space, r + 2, sigma) @ xm_r
        rhs = x_minus_matrix(space, r - 2) @ xp_r
        bracket = lhs - rhs
        minus_h = Matrix.identity(p, d).scale(r - m)
        h_up = h_matrix(space, r - 2) @ xp_r
        h_dn = xp_r @ h_r
        raise_shift = (h_up - h_dn) == xp_r.scale(2)
        l_up = h_matrix(space, r + 2) @ xm_r
        l_dn = xm_r @ h_r
        lower_shift = (l_up - l_dn) == xm_r.scale(-2)
        checks.append(DegreeCheck(
            r=r,
            bracket_ok=bracket == minus_h,
            raise_shift_ok=raise_shift,
            lower_shift_ok=lower_shift,
            weight_ok=h_r == Matrix.identity(p, d).scale(m - r),
        ))
    return Sl2Report(p=p, m=m, sigma=sigma, ok=all(c.ok for c in checks),
                     degrees=tuple(checks))


def calibrate_sigma(space: SymplecticSpace) -> tuple:
    """All global signs under which the bracket relations close up.

    Over odd primes exactly one of {+1, -1} works; over p = 2 the two
    candidates coincide, so both are reported.
    """
    return tuple(s for s in (1, -1) if sl2_check(space, sigma=s).ok)


# ---------------------------------------------------------------------------
# ladders


@dataclass(frozen=True)
class LadderSequence:
    """A string of vectors generated downward from a primitive seed.

    entry nu is ((-1)^nu / nu!) times the nu-fold lowering of the seed;
    the divided-power normalization keeps every index below p, where the
    factorials stay invertible.  The sequence stops at the first zero or
    at index p - 1, whichever comes first.
    """

    start: Multivector
    weight: int
    entries: tuple

    def __len__(self) -> int:
        return len(self.entries)


def ladder(space: SymplecticSpace, seed: Multivector) -> LadderSequence:
    """Build the ladder from a primitive homogeneous seed and verify the
    three recurrences it must satisfy."""
    _check_value(space, seed)
    if seed.is_zero():
        raise HomogeneityError("ladder seed must be nonzero")
    r = seed.degree()
    p, m = space.p, space.m
    if r > m:
        raise ValueError(f"seed degree {r} exceeds m = {m}")
    if not x_plus(space, seed).is_zero():
        raise PrimitivityError("seed is not annihilated by the raising operator")
    lam = (m - r) % p

    entries = [seed]
    while len(entries) <= p - 1:
        nu = len(entries) - 1
        lowered = x_minus(space, entries[-1])
        nxt = lowered.scale(-inv_mod(nu + 1, p))
        if nxt.is_zero():
            break
        entries.append(nxt)

    # recurrences, verified rather than trusted
    for nu, e in enumerate(entries):
        if h_op(space, e) != e.scale(lam - 2 * nu):
            raise InvariantError(f"weight recurrence fails at index {nu}")
        lowered = x_minus(space, e)
        if nu + 1 < len(entries):
            if lowered != entries[nu + 1].scale(-(nu + 1)):
                raise InvariantError(f"lowering recurrence fails at index {nu}")
        elif nu + 1 <= p - 1:
            if not lowered.is_zero():
                raise InvariantError("sequence stopped before its lowering vanished")
        raised = x_plus(space, e)
        expect = (Multivector.zero(p, m) if nu == 0
                  else entries[nu - 1].scale(lam - nu + 1))
        if raised != expect:
            raise InvariantError(f"raising recurrence fails at index {nu}")
    return LadderSequence(start=seed, weight=lam, entries=tuple(entries))


# ---------------------------------------------------------------------------
# primitive pieces and isotropic spans


def primitive_basis(space: SymplecticSpace, r: int) -> Subspace:
    """Kernel of the raising operator on degree r, canonical basis."""
    def build():
        return kernel_basis(x_plus_matrix(space, r))
    return _cached(space, ("primitive", r), build)


def isotropic_span_basis(space: SymplecticSpace, r: int) -> Subspace:
    """Span of the wedges of bases of all isotropic r-dimensional subspaces.

    Every isotropic r-subspace sits inside a maximal one, and the wedge of
    any r vectors drawn from a maximal isotropic subspace expands over the
    wedges of r-subsets of its basis.  The span is therefore accumulated
    by streaming the maximal catalog.  Each contributing wedge is checked
    to be primitive; once the span fills the whole primitive subspace it
    cannot grow further, so the stream stops early.  The classical
    dimension count C(2m, r) - C(2m, r - 2) is asserted at the end.
    """
    p, m, n = space.p, space.m, space.n
    if r < 0:
        raise ValueError("degree must be nonnegative")
    if r > m:
        warnings.warn(f"no isotropic subspaces of dimension {r} > m = {m}; span is zero")
        return Subspace.zero(p, dim_wedge(n, r))

    def build():
        from .isotropic import iter_isotropic

        ambient = dim_wedge(n, r)
        cap = primitive_basis(space, r)
        xp = x_plus_matrix(space, r)
        span = Subspace.zero(p, ambient)
        for lag in iter_isotropic(space, m):
            rows = lag.basis.entries
            for subset in itertools.combinations(range(m), r):
                w = pure_wedge_coords([rows[i] for i in subset], n, p)
                if any(xp.matvec(w)):
                    raise InvariantError("isotropic wedge escaped the primitive subspace")
                if not span.contains(w):
                    span = Subspace.from_rows(p, ambient, list(span.basis.entries) + [w])
            if span.dim == cap.dim:
                break
        expected = dim_wedge(n, r) - dim_wedge(n, r - 2)
        if span.dim != expected:
            raise InvariantError(
                f"isotropic span has dimension {span.dim}, expected {expected}"
            )
        return span
    return _cached(space, ("isotropic_span", r), build)


def decompose(space: SymplecticSpace, alpha: Multivector):
    """Split a homogeneous value into primitive part plus lowered part.

    Returns (e, beta) with alpha = e + gamma ^ beta, e primitive.  When
    the primitive subspace and the lowered image fail to meet trivially or
    to span (possible once p <= m), the defect dimensions are reported via
    :class:`DecompositionDefectError` instead.
    """
    _check_value(space, alpha)
    if alpha.is_zero():
        z = Multivector.zero(space.p, space.m)
        return z, z
    r = alpha.degree()
    p, m, n = space.p, space.m, space.n
    if r > m:
        raise ValueError(f"degree {r} exceeds m = {m}")
    d = dim_wedge(n, r)
    prim = primitive_basis(space, r)
    lower = x_minus_matrix(space, r - 2)
    total, overlap = sum_and_intersection(prim, image_basis(lower))
    if overlap.dim or total.dim != d:
        raise DecompositionDefectError(overlap.dim, d - total.dim)
    cols = [list(col) for col in prim.basis.entries] + \
           [list(lower.column(j)) for j in range(lower.cols)]
    mat = Matrix(p, zip(*cols), cols=len(cols)) if cols else Matrix.zero(p, d, 0)
    sol = solve(mat, alpha.coords(r))
    if sol is None:
        raise InvariantError("decomposition solve failed after span check")
    e_coords = [0] * d
    for c, row in zip(sol[:prim.dim], prim.basis.entries):
        if c:
            e_coords = [(a + c * b) % p for a, b in zip(e_coords, row)]
    e = Multivector.from_coords(p, m, r, e_coords)
    beta = Multivector.from_coords(p, m, r - 2, sol[prim.dim:]) if r >= 2 \
        else Multivector.zero(p, m)
    if alpha != e + x_minus(space, beta):
        raise InvariantError("decomposition does not reassemble")
    return e, beta


@dataclass(frozen=True)
class ProbeReport:
    r: int
    rank: int
    corank: int
    injective: bool
    surjective: bool


def injectivity_surjectivity_probe(space: SymplecticSpace, r: int) -> ProbeReport:
    """Exact rank data for the lowering operator out of degree r."""
    mat = x_minus_matrix(space, r)
    rk = rref(mat)[2]
    return ProbeReport(
        r=r,
        rank=rk,
        corank=mat.rows - rk,
        injective=rk == mat.cols,
        surjective=rk == mat.rows,
    )


# ---------------------------------------------------------------------------
# transvections and generated submodules


def transvection(space: SymplecticSpace, v: Sequence[int]) -> Matrix:
    """The symplectic transvection x -> x + psi(x, v) v as a matrix."""
    p, n = space.p, space.n
    if len(v) != n:
        raise DimensionMismatchError(f"vector length {len(v)} vs 2m = {n}")
    v = [c % p for c in v]
    if not any(v):
        raise ValueError("transvection direction must be nonzero")
    gv = space.gram.matvec(v)
    rows = [[(int(i == j) + v[i] * gv[j]) % p for j in range(n)] for i in range(n)]
    t = Matrix(p, rows, cols=n)
    if t.transpose() @ space.gram @ t != space.gram:
        raise InvariantError("transvection does not preserve the form")
    return t


def _nonzero_vectors(p: int, n: int):
    for vec in itertools.product(range(p), repeat=n):
        if any(vec):
            yield vec


def _transvection_compounds(space: SymplecticSpace, r: int) -> tuple:
    def build():
        return tuple(
            compound_matrix(transvection(space, v), r)
            for v in _nonzero_vectors(space.p, space.n)
        )
    return _cached(space, ("tv_compound", r), build)


def submodule_closure(space: SymplecticSpace, r: int, seeds: Sequence[Multivector]) -> Subspace:
    """Smallest subspace of degree r containing the seeds and stable under
    the induced action of every symplectic transvection.

    Transvections generate the full symplectic group and each one has
    finite order, so closure under the whole set is exactly invariance
    under the group.
    """
    p, n = space.p, space.n
    ambient = dim_wedge(n, r)
    rows = []
    for s in seeds:
        _check_value(space, s)
        if not s.is_zero() and s.degrees() != (r,):
            raise HomogeneityError(f"seed {s} is not homogeneous of degree {r}")
        rows.append(list(s.coords(r)))
    span = Subspace.from_rows(p, ambient, rows)
    compounds = _transvection_compounds(space, r)
    frontier = [list(row) for row in span.basis.entries]
    while frontier:
        vec = frontier.pop()
        for mat in compounds:
            img = mat.matvec(vec)
            if not span.contains(img):
                span = Subspace.from_rows(p, ambient,
                                          list(span.basis.entries) + [img])
                frontier.append(img)
    return span


# ---------------------------------------------------------------------------
# irreducibility predicate


@dataclass(frozen=True)
class PremetReport:
    p: int
    m: int
    r: int
    product: int
    divisible: bool
    sufficient_bound_holds: bool
    irreducible: bool

    def to_json(self) -> dict:
        return {
            "p": self.p, "m": self.m, "r": self.r,
            "product": self.product,
            "divisible": self.divisible,
            "sufficient_bound_holds": self.sufficient_bound_holds,
            "irreducible": self.irreducible,
        }


def premet_suprunenko(p: int, m: int, r: int) -> PremetReport:
    """Arithmetic irreducibility test for the degree-r primitive piece.

    The criterion multiplies C(m - (r + j)/2 + 1, (r - j)/2) over the j
    between 0 and r of the same parity as r; the piece is irreducible
    exactly when p does not divide the product.  Everything is exact
    integer arithmetic.  The simpler sufficient bound p > m - r/2 + 1 is
    reported alongside (compared as 2p > 2m - r + 2 to stay integral).
    """
    check_prime(p)
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if not 0 <= r <= m:
        raise ValueError(f"degree {r} out of range 0..{m}")
    product = 1
    for j in range(r % 2, r + 1, 2):
        product *= comb(m - (r + j) // 2 + 1, (r - j) // 2)
    divisible = product % p == 0
    return PremetReport(
        p=p, m=m, r=r,
        product=product,
        divisible=divisible,
        sufficient_bound_holds=2 * p > 2 * m - r + 2,
        irreducible=not divisible,
    )
