"""Rank-3 Hecke operators on boundary symbol spaces and the attachment
characteristic-polynomial identity.

The operator for a prime l and k in {1,2} is assembled coset by coset from
the raw translation data: each representative contributes the scalar
chi0(psi1) * psi1^c * (chi1-twisted symbol action of psi2).  Nothing is
hand-simplified; the closed-form eigenvalue expressions are used only as
test oracles.  The third operator is central and acts by
chi0(l) * chi1(l) * l^(a+b+c), the unique scalar closing the attachment
identity (pinned by the split calibration instance with all data trivial).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .characters import DirichletCharacter
from .heckegl3 import hecke_orbit_action
from .modsym2 import EigenSystem, SymbolSpace, find_eigensystems


@dataclass
class BoundaryDatum:
    """Everything needed to run the eigenvalue transfer at one boundary
    stratum: the symbol space at level N1 = N/d with its eigenclass, the
    weight exponents, and the character factorization."""

    p: int
    a: int
    b: int
    c: int
    d: int
    N1: int
    chi0: DirichletCharacter
    chi1: DirichletCharacter
    space: SymbolSpace
    eigen: EigenSystem

    @property
    def N(self):
        return self.N1 * self.d

    @classmethod
    def build(cls, p, a, b, c, d, N1, chi0=None, chi1=None, window=(2,), field=None, lambdas=None):
        """Construct the symbol space, locate the eigensystem with the given
        lambda fingerprint (or the unique one), and package the datum."""
        from .ffield import FiniteField

        if field is None:
            field = FiniteField(p, 1)
        if chi0 is None:
            chi0 = DirichletCharacter.trivial(field, d) if d > 1 else DirichletCharacter.trivial(field, 1)
        if chi1 is None:
            chi1 = DirichletCharacter.trivial(field, N1)
        space = SymbolSpace(N1, p, a, b, chi1=chi1, field=field)
        systems = find_eigensystems(space, list(window))
        if not systems:
            raise ValueError("no eigensystem found in the window")
        if lambdas is not None:
            matches = [
                s
                for s in systems
                if all(s.lambdas[l] == s.field.from_int(lambdas[l]) for l in lambdas)
            ]
            if not matches:
                raise ValueError("no eigensystem matches the requested eigenvalues")
            sys = matches[0]
        else:
            sys = systems[0]
        sp = sys.space
        chi0 = _match_field(chi0, sp.field)
        return cls(p=p, a=a, b=b, c=c, d=d, N1=N1, chi0=chi0, chi1=sp.chi1, space=sp, eigen=sys)


def _match_field(chi, field):
    if chi.field == field:
        return chi
    values = {u: chi.field.embed(v, field) for u, v in chi._values.items()}
    return DirichletCharacter(field, chi.modulus, values)


def gl3_hecke_on_boundary(datum, l, k, policy="least"):
    """The rank-3 operator T(l,k) on the boundary symbol space, as a matrix
    over the scalar field, built from raw per-coset translation data."""
    space = datum.space
    p = datum.p
    N, d = datum.N, datum.d
    if gcd(l, p * N) != 1:
        raise ValueError("l must be prime to p and the level")
    field = space.field
    rows = hecke_orbit_action(l, k, N, d, policy=policy)
    dim = space.dim
    cols = [[field.zero()] * dim for _ in range(dim)]
    basis = []
    for j in range(dim):
        e = [field.zero()] * dim
        e[j] = field.one()
        basis.append(e)
    mat = [[field.zero()] * dim for _ in range(dim)]
    for s, tr in rows:
        psi1 = tr.psi1
        psi2 = tr.psi2
        if psi2[0][1] % datum.N1:
            raise RuntimeError("psi2 is not in the level-N1 semigroup")
        scalar = datum.chi0(psi1) * field.from_int(pow(psi1 % p, datum.c % (p - 1), p))
        for j in range(dim):
            img = space.semigroup_act(basis[j], psi2)
            for i in range(dim):
                if not img[i].is_zero():
                    mat[i][j] = mat[i][j] + scalar * img[i]
    return mat


def eigenvalue_of(datum, mat):
    """The scalar by which mat acts on the eigenclass; exact, or None."""
    space = datum.space
    v = list(datum.eigen.vector)
    img = space.apply_matrix(mat, v)
    pivot = next((i for i, x in enumerate(v) if not x.is_zero()), None)
    if pivot is None:
        raise ValueError("zero eigenvector")
    lam = img[pivot] / v[pivot]
    if img != [lam * x for x in v]:
        return None
    return lam


def expected_eigenvalues(datum, l):
    """The closed-form oracle values for T(l,1) and T(l,2) on the class."""
    field = datum.space.field
    p = datum.p
    lam = datum.eigen.lambdas[l]
    lmod = field.from_int(l % p)
    chi0l = datum.chi0(l)
    chi1l = datum.chi1(l)
    a, b, c = datum.a, datum.b, datum.c
    e1 = lmod * lam + chi0l * field.from_int(pow(l, c % (p - 1), p))
    e2 = chi1l * field.from_int(pow(l, (a + b + 2) % (p - 1), p)) + chi0l * field.from_int(
        pow(l, c % (p - 1), p)
    ) * lam
    return e1, e2


def a_l3(datum, l):
    """Eigenvalue of the central third operator: the determinant-type scalar
    chi0(l) chi1(l) l^(a+b+c)."""
    field = datum.space.field
    p = datum.p
    return (
        datum.chi0(l)
        * datum.chi1(l)
        * field.from_int(pow(l, (datum.a + datum.b + datum.c) % (p - 1), p))
    )


@dataclass
class FrobeniusData:
    """Characteristic-polynomial data of the three-dimensional mod-p
    representation at a prime l: det(I - rho(Frob_l) X) = 1 - c1 X + c2 X^2
    - c3 X^3."""

    l: int
    c1: object
    c2: object
    c3: object

    @classmethod
    def from_boundary(cls, datum, l):
        field = datum.space.field
        p = datum.p
        lam = datum.eigen.lambdas[l]
        lmod = field.from_int(l % p)
        chi0l, chi1l = datum.chi0(l), datum.chi1(l)
        a, b, c = datum.a, datum.b, datum.c
        lc = field.from_int(pow(l, c % (p - 1), p))
        trace = lmod * lam + chi0l * lc
        cotrace = lmod * (chi1l * field.from_int(pow(l, (a + b + 2) % (p - 1), p)) + chi0l * lc * lam)
        det = chi0l * chi1l * field.from_int(pow(l, (a + b + 3 + c) % (p - 1), p))
        return cls(l=l, c1=trace, c2=cotrace, c3=det)


def verify_attachment(frob, a1, a2, a3):
    """True iff 1 - a1 X + l a2 X^2 - l^3 a3 X^3 equals the characteristic
    polynomial coefficients of the Frobenius data, coefficientwise."""
    field = frob.c1.field
    l = field.from_int(frob.l % field.p)
    return (
        frob.c1 == a1
        and frob.c2 == l * a2
        and frob.c3 == l**3 * a3
    )


def twisted_contragredient(frob):
    """Frobenius data of the inverse-transpose twisted by the square of the
    cyclotomic character: (c1, c2, c3) -> (l^2 c2/c3, l^4 c1/c3, l^6/c3)."""
    if frob.c3.is_zero():
        raise ValueError("determinant coefficient must be invertible")
    field = frob.c1.field
    l = field.from_int(frob.l % field.p)
    return FrobeniusData(
        l=frob.l,
        c1=l**2 * frob.c2 / frob.c3,
        c2=l**4 * frob.c1 / frob.c3,
        c3=l**6 / frob.c3,
    )


def run_transfer_checks(datum, window, recheck_gamma=True):
    """Per-prime report: operator eigenvalues vs the closed forms, the
    attachment identity, and the alternative-translation re-run."""
    report = []
    for l in window:
        if gcd(l, datum.p * datum.N) != 1:
            continue
        t1 = gl3_hecke_on_boundary(datum, l, 1)
        t2 = gl3_hecke_on_boundary(datum, l, 2)
        ev1 = eigenvalue_of(datum, t1)
        ev2 = eigenvalue_of(datum, t2)
        e1, e2 = expected_eigenvalues(datum, l)
        entry = {
            "l": l,
            "t1_matches": ev1 is not None and ev1 == e1,
            "t2_matches": ev2 is not None and ev2 == e2,
        }
        if recheck_gamma:
            t1b = gl3_hecke_on_boundary(datum, l, 1, policy="alt")
            t2b = gl3_hecke_on_boundary(datum, l, 2, policy="alt")
            entry["gamma_independent"] = (
                eigenvalue_of(datum, t1b) == ev1 and eigenvalue_of(datum, t2b) == ev2
            )
        frob = FrobeniusData.from_boundary(datum, l)
        entry["attachment"] = verify_attachment(frob, e1, e2, a_l3(datum, l))
        report.append(entry)
    return report
