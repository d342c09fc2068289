"""The graded sandwich: image ideal inside the common vanishing kernel.

Per degree r this module computes two subspaces of the degree-r wedge
coordinates on F_p^{2m}:

* the ideal component, the image of wedging with the invariant 2-tensor
  from degree r - 2, and
* the vanishing space, the classes whose pullback to every Lagrangian
  (optionally: every isotropic) subspace is zero.

The first always sits inside the second; the dimension gap between them
is the interesting quantity.  For p > m the gap is zero in every degree
and this is asserted.  Otherwise the gap classes are reported in reduced
form (coordinates supported on monomials outside the ideal's pivot set),
and ``certificate`` checks, one vector at a time, that a class passes
every pointwise membership condition even when it lies outside the
ideal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import HomogeneityError, InvariantError
from .exterior import (
    Multivector,
    mono_rank,
    monomials,
    pullback_matrix,
    pure_wedge_coords,
    wedge_coords,
)
from .isotropic import annihilator, enumerate_isotropic, perp, radical_split
from .prime_linalg import (
    Matrix,
    Subspace,
    image_basis,
    kernel_basis,
    solve,
)
from .symplectic import SymplecticSpace, _cached, dim_wedge, x_minus_matrix


def ideal_component(space: SymplecticSpace, r: int) -> Subspace:
    """Degree-r part of the ideal generated by the invariant 2-tensor:
    the image of the lowering operator out of degree r - 2."""
    def build():
        return image_basis(x_minus_matrix(space, r - 2))
    return _cached(space, ("ideal", r), build)


def quotient_basis(space: SymplecticSpace, r: int) -> tuple:
    """Monomials whose classes form a basis of degree r modulo the ideal.

    These are the colex monomials at the non-pivot columns of the ideal's
    reduced basis, listed in colex order.
    """
    ideal = ideal_component(space, r)
    pivots = set(ideal.pivots)
    return tuple(
        mono for j, mono in enumerate(monomials(space.n, r))
        if j not in pivots
    )


def reduce_mod_ideal(space: SymplecticSpace, r: int, coords: Sequence[int]) -> tuple:
    """Rewrite degree-r coordinates modulo the ideal so that every ideal
    pivot coordinate becomes zero.  The result is the canonical standard-
    monomial form of the class."""
    p = space.p
    ideal = ideal_component(space, r)
    vec = [c % p for c in coords]
    if len(vec) != dim_wedge(space.n, r):
        raise ValueError("coordinate length does not match the degree")
    for row, piv in zip(ideal.basis.entries, ideal.pivots):
        c = vec[piv]
        if c:
            vec = [(a - c * b) % p for a, b in zip(vec, row)]
    return tuple(vec)


def vanishing_space(space: SymplecticSpace, r: int,
                    all_isotropic: bool = False) -> Subspace:
    """Classes of degree r that pull back to zero on every Lagrangian.

    With ``all_isotropic`` the constraints range over the isotropic
    subspaces of every dimension 1..m instead; on the small cases this
    gives the same space and the equality is exercised in tests.
    """
    def build():
        p, n = space.p, space.n
        d = dim_wedge(n, r)
        dims = range(1, space.m + 1) if all_isotropic else [space.m]
        blocks = []
        for k in dims:
            if dim_wedge(k, r) == 0:
                continue  # no degree-r functionals on a k-dim subspace
            for sub in enumerate_isotropic(space, k):
                f = sub.basis.transpose()
                blocks.append(pullback_matrix(f, r))
        if not blocks:
            return Subspace.full(p, d)
        return kernel_basis(Matrix.vstack(blocks))
    key = ("vanishing", r, bool(all_isotropic))
    return _cached(space, key, build)


@dataclass(frozen=True)
class KernelSandwich:
    """Both spaces at one degree, with the gap spelled out."""

    p: int
    m: int
    r: int
    ideal: Subspace
    vanishing: Subspace
    gap: int
    gap_classes: tuple

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "degree": self.r,
            "ideal_dim": self.ideal.dim,
            "vanishing_dim": self.vanishing.dim,
            "gap": self.gap,
            "gap_classes": [str(c) for c in self.gap_classes],
        }


def sandwich(space: SymplecticSpace, r: int,
             all_isotropic: bool = False) -> KernelSandwich:
    """Compute both spaces at degree r and certify the containment.

    Raises InvariantError if the ideal ever escapes the vanishing space;
    that containment is unconditional.
    """
    ideal = ideal_component(space, r)
    vanish = vanishing_space(space, r, all_isotropic=all_isotropic)
    for row in ideal.basis.entries:
        if vanish.member(row) is None:
            raise InvariantError(
                f"degree {r}: ideal class escapes the vanishing space"
            )
    gap = vanish.dim - ideal.dim
    reduced = []
    for row in vanish.basis.entries:
        res = reduce_mod_ideal(space, r, row)
        if any(res):
            reduced.append(res)
    reps = Subspace.from_rows(space.p, dim_wedge(space.n, r), reduced)
    if reps.dim != gap:
        raise InvariantError(
            f"degree {r}: reduced representatives span {reps.dim}, gap is {gap}"
        )
    classes = tuple(
        Multivector.from_coords(space.p, space.m, r, row)
        for row in reps.basis.entries
    )
    return KernelSandwich(p=space.p, m=space.m, r=r, ideal=ideal,
                          vanishing=vanish, gap=gap, gap_classes=classes)


def theorem1_verify(space: SymplecticSpace,
                    all_isotropic: bool = False) -> tuple:
    """The sandwich in every degree 0..2m.

    For p > m the two spaces are asserted equal degreewise, so any gap
    raises InvariantError.  For p <= m gaps are legitimate output.
    """
    out = []
    for r in range(space.n + 1):
        s = sandwich(space, r, all_isotropic=all_isotropic)
        if space.p > space.m and s.gap:
            raise InvariantError(
                f"p > m but degree {r} has gap {s.gap}"
            )
        out.append(s)
    return tuple(out)


def counterexample(space: SymplecticSpace) -> Optional[Multivector]:
    """The first gap class at the lowest defective degree, reduced to
    standard-monomial form; None when every degree collapses."""
    for r in range(space.n + 1):
        s = sandwich(space, r)
        if s.gap:
            return s.gap_classes[0]
    return None


def _omega_coords(space: SymplecticSpace) -> tuple:
    """The symplectic form as a degree-2 functional coordinate vector."""
    vec = [0] * dim_wedge(space.n, 2)
    for i in range(space.m):
        vec[mono_rank((i, space.m + i))] = 1
    return tuple(vec)


@dataclass(frozen=True)
class CertificateRecord:
    """Outcome of the membership test at one nonzero vector, together
    with the structure of the perp: its radical and the dimension of a
    complement carrying a nondegenerate form."""

    g: tuple
    dim_perp: int
    dim_radical: int
    dim_complement: int
    dim_annihilator: int
    vacuous: bool
    member: bool
    witness: Optional[dict]

    @property
    def ok(self) -> bool:
        return self.vacuous or self.member

    def to_json(self) -> dict:
        return {
            "g": list(self.g),
            "dim_perp": self.dim_perp,
            "dim_radical": self.dim_radical,
            "dim_complement": self.dim_complement,
            "dim_annihilator": self.dim_annihilator,
            "vacuous": self.vacuous,
            "member": self.member,
            "ok": self.ok,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class CertificateReport:
    """Per-vector membership outcomes for one homogeneous class."""

    p: int
    m: int
    degree: int
    target: Multivector
    records: tuple

    @property
    def overall(self) -> bool:
        return all(rec.ok for rec in self.records)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "degree": self.degree,
            "target": str(self.target),
            "overall": self.overall,
            "checked": len(self.records),
            "vacuous": sum(1 for rec in self.records if rec.vacuous),
            "records": [rec.to_json() for rec in self.records],
        }


def _restriction_data(space: SymplecticSpace, g, degree: int):
    """Perp of g, the restriction matrix at the given degree, and the
    restricted symplectic form."""
    s_g = perp(space, g)
    f = s_g.basis.transpose()
    restrict = pullback_matrix(f, degree)
    omega_rest = pullback_matrix(f, 2).matvec(_omega_coords(space))
    return s_g, restrict, omega_rest


def _membership_generators(space: SymplecticSpace, s_g: Subspace,
                           omega_rest, g, degree: int):
    """Generator columns for the membership space at one vector.

    Two families: the restricted 2-form wedged with every lower-degree
    monomial, and the pure wedges of annihilator functionals of g.  Each
    generator carries an identity record that re-verification can replay.
    """
    p = space.p
    k = s_g.dim
    gens = []
    idents = []
    for mu in monomials(k, degree - 2):
        unit = [0] * dim_wedge(k, degree - 2)
        unit[mono_rank(mu)] = 1
        gens.append(wedge_coords(k, p, 2, omega_rest, degree - 2, unit))
        idents.append({"kind": "form_wedge", "monomial": list(mu)})
    ann = annihilator(space, s_g, g)
    for subset in itertools.combinations(range(ann.dim), degree):
        rows = [ann.basis.entries[i] for i in subset]
        gens.append(pure_wedge_coords(rows, k, p))
        idents.append({"kind": "annihilator_wedge", "rows": list(subset)})
    return gens, idents, ann


def certificate(space: SymplecticSpace, target: Multivector) -> CertificateReport:
    """Check, for every nonzero vector g, that the restriction of the
    target to the perp of g lies in the span of (restricted 2-form) wedge
    (anything) plus top wedges of functionals annihilating g.

    Vectors whose restriction of the target vanishes pass vacuously.
    Witness coefficient lists are stored for the non-vacuous passes so
    the membership can be replayed independently.
    """
    if target.p != space.p or target.m != space.m:
        raise ValueError("class does not live on this space")
    if target.is_zero():
        raise ValueError("class is zero")
    degree = target.degree()
    if degree < 2:
        raise ValueError("degree must be at least 2")
    p, n = space.p, space.n
    coords = target.coords(degree)
    records = []
    for g in itertools.product(range(p), repeat=n):
        if not any(g):
            continue
        s_g, restrict, omega_rest = _restriction_data(space, g, degree)
        split = radical_split(space, s_g)
        rest = restrict.matvec(coords)
        if not any(rest):
            records.append(CertificateRecord(
                g=g, dim_perp=s_g.dim, dim_radical=split.rad.dim,
                dim_complement=split.a.dim,
                dim_annihilator=annihilator(space, s_g, g).dim,
                vacuous=True, member=False, witness=None,
            ))
            continue
        gens, idents, ann = _membership_generators(
            space, s_g, omega_rest, g, degree)
        mat = Matrix(p, zip(*gens), cols=len(gens))
        coeffs = solve(mat, rest)
        witness = None
        if coeffs is not None:
            witness = {
                "terms": [
                    {"coeff": c, **ident}
                    for c, ident in zip(coeffs, idents) if c
                ],
            }
        records.append(CertificateRecord(
            g=g, dim_perp=s_g.dim, dim_radical=split.rad.dim,
            dim_complement=split.a.dim, dim_annihilator=ann.dim,
            vacuous=False, member=coeffs is not None, witness=witness,
        ))
    return CertificateReport(p=p, m=space.m, degree=degree,
                             target=target, records=records)


def verify_certificate_record(space: SymplecticSpace, target: Multivector,
                              record: CertificateRecord) -> bool:
    """Replay a stored witness from its generator identities alone.

    Returns True when the witness terms rebuild exactly the restriction
    of the target (or when the record is a vacuous pass and the
    restriction really is zero).
    """
    degree = target.degree()
    s_g, restrict, omega_rest = _restriction_data(space, record.g, degree)
    rest = restrict.matvec(target.coords(degree))
    if record.vacuous:
        return not any(rest)
    if not record.member or record.witness is None:
        return False
    p = space.p
    k = s_g.dim
    ann = annihilator(space, s_g, record.g)
    total = [0] * dim_wedge(k, degree)
    for term in record.witness["terms"]:
        if term["kind"] == "form_wedge":
            unit = [0] * dim_wedge(k, degree - 2)
            unit[mono_rank(tuple(term["monomial"]))] = 1
            vec = wedge_coords(k, p, 2, omega_rest, degree - 2, unit)
        elif term["kind"] == "annihilator_wedge":
            rows = [ann.basis.entries[i] for i in term["rows"]]
            vec = pure_wedge_coords(rows, k, p)
        else:
            return False
        c = term["coeff"]
        total = [(t + c * v) % p for t, v in zip(total, vec)]
    return tuple(total) == tuple(rest)
