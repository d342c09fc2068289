"""Catalogs of totally isotropic subspaces, perps, and radical splittings.

Subspaces are enumerated through their reduced-row-echelon bases: for each
pivot pattern the rows are filled top to bottom, and the isotropy
conditions against the rows already placed form an affine-linear system in
the free entries of the next row.  Enumerating the solution set of that
system (particular solution plus kernel combinations, in a fixed order)
visits every isotropic subspace exactly once, deterministically, without
scanning the full row space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import (
    CatalogTooLargeError,
    DimensionMismatchError,
    InvariantError,
)
from .prime_linalg import (
    Matrix,
    Subspace,
    inv_mod,
    kernel_basis,
    rref,
    solve,
    sum_and_intersection,
)
from .symplectic import SymplecticSpace, _cached

#: Refuse to materialize catalogs beyond this many subspaces.
CATALOG_LIMIT = 10 ** 6


def count_isotropic(p: int, m: int, r: int) -> int:
    """Closed-form count of totally isotropic r-subspaces of F_p^{2m}.

    Ordered isotropic r-frames divided by ordered bases of an r-space;
    the division is exact and asserted.
    """
    if r < 0 or r > m:
        return 0
    num = den = 1
    for i in range(1, r + 1):
        num *= p ** (2 * m - i + 1) - p ** (i - 1)
        den *= p ** r - p ** (i - 1)
    q, rem = divmod(num, den)
    if rem:
        raise InvariantError("frame count is not divisible by basis count")
    return q


def _row_solutions(space: SymplecticSpace, fixed_rows, pattern, i):
    """Yield each valid row i for the given pivot pattern, in a fixed order.

    The row is pinned to 1 at its own pivot, 0 at the other pivots and left
    of its pivot; isotropy against the earlier rows is linear in the free
    entries, so the candidates are exactly an affine solution set.
    """
    p, n = space.p, space.n
    pset = set(pattern)
    piv = pattern[i]
    free = [c for c in range(piv + 1, n) if c not in pset]
    gram_t = space.gram.transpose()
    # one linear constraint per earlier row
    lhs = []
    rhs = []
    for u in fixed_rows:
        w = gram_t.matvec(u)  # w . x = psi(u, x)
        lhs.append([w[c] for c in free])
        rhs.append((-w[piv]) % p)
    base = [0] * n
    base[piv] = 1
    if not free:
        if all(v == 0 for v in rhs):
            yield tuple(base)
        return
    mat = Matrix(p, lhs, cols=len(free))
    particular = solve(mat, rhs)
    if particular is None:
        return
    homogeneous = kernel_basis(mat)
    for coeffs in itertools.product(range(p), repeat=homogeneous.dim):
        vals = list(particular)
        for c, hrow in zip(coeffs, homogeneous.basis.entries):
            if c:
                vals = [(a + c * b) % p for a, b in zip(vals, hrow)]
        row = list(base)
        for c, v in zip(free, vals):
            row[c] = v
        yield tuple(row)


def iter_isotropic(space: SymplecticSpace, r: int) -> Iterator[Subspace]:
    """Stream every totally isotropic r-subspace in a deterministic order.

    No global size guard applies here; callers that materialize should go
    through :func:`enumerate_isotropic`.
    """
    p, n = space.p, space.n
    if r == 0:
        yield Subspace.zero(p, n)
        return
    if r < 0 or r > space.m:
        return

    def fill(pattern, rows):
        i = len(rows)
        if i == r:
            yield Subspace.from_rows(p, n, rows)
            return
        for row in _row_solutions(space, rows, pattern, i):
            yield from fill(pattern, rows + [list(row)])

    for pattern in itertools.combinations(range(n), r):
        yield from fill(pattern, [])


@dataclass(frozen=True)
class IsotropicCatalog:
    """A complete, cached enumeration for one (p, m, r)."""

    p: int
    m: int
    r: int
    count: int
    complete: bool
    subspaces: tuple

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.subspaces)

    def __len__(self) -> int:
        return len(self.subspaces)


def enumerate_isotropic(space: SymplecticSpace, r: int,
                        limit: int = CATALOG_LIMIT) -> IsotropicCatalog:
    """Materialize the full catalog, refusing beyond the size budget.

    Completeness is certified against the closed-form count, and every
    listed subspace is re-checked to be isotropic.
    """
    def build():
        expected = count_isotropic(space.p, space.m, r)
        if expected > limit:
            raise CatalogTooLargeError(expected, limit)
        subs = tuple(iter_isotropic(space, r))
        if len(subs) != expected:
            raise InvariantError(
                f"enumerated {len(subs)} subspaces, closed form says {expected}"
            )
        gram = space.gram
        for sub in subs:
            b = sub.basis
            if not (b @ gram @ b.transpose()).is_zero():
                raise InvariantError("catalog contains a non-isotropic subspace")
        return IsotropicCatalog(p=space.p, m=space.m, r=r, count=expected,
                                complete=True, subspaces=subs)
    return _cached(space, ("catalog", r), build)


def perp(space: SymplecticSpace, g: Sequence[int]) -> Subspace:
    """The set of vectors pairing to zero with ``g``."""
    p, n = space.p, space.n
    if len(g) != n:
        raise DimensionMismatchError(f"vector length {len(g)} vs 2m = {n}")
    functional = space.gram.transpose().matvec(g)
    return kernel_basis(Matrix(p, [functional], cols=n))


@dataclass(frozen=True)
class RadicalSplit:
    """A subspace split as radical plus a nondegenerate complement."""

    sub: Subspace
    rad: Subspace
    a: Subspace
    gram_a: Matrix


def radical_split(space: SymplecticSpace, sub: Subspace) -> RadicalSplit:
    """Split ``sub`` into the radical of the restricted form and a
    complement on which the form is nondegenerate.

    The complement comes from greedy hyperbolic-pair extraction over the
    rref basis, always preferring the lowest-index vectors, so the output
    is deterministic.  All the defining properties are asserted before
    returning.
    """
    p, n = space.p, space.n
    if sub.p != p or sub.ambient_dim != n:
        raise DimensionMismatchError("subspace does not live on this space")
    k = sub.dim
    b = sub.basis
    gram_sub = b @ space.gram @ b.transpose()  # k x k restricted form

    def form(u, v):
        return sum(a * c for a, c in zip(gram_sub.matvec(v), u)) % p

    remaining = [[int(i == j) for j in range(k)] for i in range(k)]
    pair_vecs = []
    while True:
        hit = None
        for iu, u in enumerate(remaining):
            for iw in range(iu + 1, len(remaining)):
                val = form(u, remaining[iw])
                if val:
                    hit = (iu, iw, val)
                    break
            if hit:
                break
        if hit is None:
            break
        iu, iw, val = hit
        u = remaining[iu]
        w = [(inv_mod(val, p) * c) % p for c in remaining[iw]]
        others = [v for t, v in enumerate(remaining) if t not in (iu, iw)]
        # make the rest orthogonal to the extracted pair
        corrected = []
        for v in others:
            fvw = form(v, w)
            fvu = form(v, u)
            vv = [(a - fvw * bu + fvu * bw) % p
                  for a, bu, bw in zip(v, u, w)]
            corrected.append(vv)
        pair_vecs.extend([u, w])
        remaining = corrected

    bt = b.transpose()
    a_space = Subspace.from_rows(p, n, [bt.matvec(c) for c in pair_vecs])
    sub_perp = kernel_basis(b @ space.gram)
    _, rad = sum_and_intersection(sub, sub_perp)

    total, overlap = sum_and_intersection(rad, a_space)
    if overlap.dim or total != sub:
        raise InvariantError("radical and complement do not split the subspace")
    for rrow in rad.basis.entries:
        if any(space.pairing(rrow, srow) for srow in b.entries):
            raise InvariantError("radical vector pairs nontrivially inside the subspace")
    ab = a_space.basis
    gram_a = ab @ space.gram @ ab.transpose()
    if rref(gram_a)[2] != a_space.dim:
        raise InvariantError("complement form is degenerate")
    return RadicalSplit(sub=sub, rad=rad, a=a_space, gram_a=gram_a)


def annihilator(space: SymplecticSpace, sub: Subspace, g: Sequence[int]) -> Subspace:
    """Functionals on ``sub`` (in the dual of its rref basis) killing ``g``.

    For g = 0 this is the whole dual; otherwise a hyperplane.  Raises when
    ``g`` lies outside the subspace.
    """
    coeffs = sub.member(g)
    if coeffs is None:
        raise ValueError("vector lies outside the subspace")
    return kernel_basis(Matrix(sub.p, [coeffs], cols=sub.dim))
