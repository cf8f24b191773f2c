import pytest

from gl3hecke.characters import DirichletCharacter
from gl3hecke.ffield import make_field
from gl3hecke.transfer import (
    BoundaryDatum,
    FrobeniusData,
    a_l3,
    eigenvalue_of,
    expected_eigenvalues,
    gl3_hecke_on_boundary,
    run_transfer_checks,
    twisted_contragredient,
    verify_attachment,
)

from _oracles import elliptic_ap

F5 = make_field(5)
WINDOW = (2, 7, 13)
CURVE_LAMBDAS = {l: elliptic_ap(l) for l in WINDOW}


def _datum(c, d=1, chi0=None):
    N1 = 11
    return BoundaryDatum.build(
        5, 0, 0, c, d, N1, chi0=chi0, window=WINDOW, lambdas=CURVE_LAMBDAS
    )


def test_t1_eigenvalue_identity_d1():
    datum = _datum(0)
    for l in WINDOW:
        t1 = gl3_hecke_on_boundary(datum, l, 1)
        ev = eigenvalue_of(datum, t1)
        e1, _ = expected_eigenvalues(datum, l)
        assert ev is not None and ev == e1


def test_t1_pinned_value_l2():
    # (a,b,c) = (0,0,0), trivial characters, l=2, lambda_2 = -2:
    # T(2,1) eigenvalue = 2*(-2) + 1 = -3 = 2 mod 5
    datum = _datum(0)
    t1 = gl3_hecke_on_boundary(datum, 2, 1)
    ev = eigenvalue_of(datum, t1)
    assert ev == datum.space.field.from_int(2)


def test_t2_eigenvalue_identity_d1():
    datum = _datum(1)
    for l in WINDOW:
        t2 = gl3_hecke_on_boundary(datum, l, 2)
        ev = eigenvalue_of(datum, t2)
        _, e2 = expected_eigenvalues(datum, l)
        assert ev is not None and ev == e2


def test_full_checks_d3_quadratic():
    chi0 = DirichletCharacter.quadratic(F5, 3)
    datum = _datum(2, d=3, chi0=chi0)
    report = run_transfer_checks(datum, WINDOW)
    assert report
    for entry in report:
        assert entry["t1_matches"], entry
        assert entry["t2_matches"], entry
        assert entry["gamma_independent"], entry
        assert entry["attachment"], entry


def test_gl3_operators_commute_with_gl2_hecke():
    datum = _datum(0)
    space = datum.space
    F = space.field
    t1 = gl3_hecke_on_boundary(datum, 2, 1)
    T7 = space.hecke_matrix(7)
    n = space.dim
    for i in range(n):
        for j in range(n):
            a = sum((t1[i][k] * T7[k][j] for k in range(n)), F.zero())
            b = sum((T7[i][k] * t1[k][j] for k in range(n)), F.zero())
            assert a == b


def test_case_weighted_contribution_count():
    # T(l,1) decomposes as l^2 + (l-1) + 1 + 1 case-weighted contributions
    from gl3hecke.heckegl3 import hecke_orbit_action

    l, N, d = 2, 33, 3
    cases = [tr.case for _, tr in hecke_orbit_action(l, 1, N, d)]
    assert sorted(cases) == sorted([1] * (l * l) + [3] * (l - 1) + [4] + [2])


def test_attachment_identity_and_perturbation():
    datum = _datum(0)
    l = 2
    frob = FrobeniusData.from_boundary(datum, l)
    e1, e2 = expected_eigenvalues(datum, l)
    a3 = a_l3(datum, l)
    assert verify_attachment(frob, e1, e2, a3)
    one = datum.space.field.one()
    assert not verify_attachment(frob, e1 + one, e2, a3)


def test_attachment_eisenstein_calibration():
    # identity-type representation: lambda = 1 + l, all data trivial; both
    # sides are the characteristic polynomial of diag(1, l, l^2)
    F = F5
    for l in (2, 13):
        lam = F.from_int(1 + l)
        lm = F.from_int(l)
        c1 = lm * lam + F.one()
        c2 = lm * (lm**2 + lam)
        c3 = lm**3
        frob = FrobeniusData(l=l, c1=c1, c2=c2, c3=c3)
        # factorized form (1 - X)(1 - lX)(1 - l^2 X)
        assert c1 == F.one() + lm + lm**2
        assert c2 == lm + lm**2 + lm**3
        a1, a2, a3 = c1, lm**2 + lam, F.one()
        assert verify_attachment(frob, a1, a2, a3)


def test_twisted_contragredient_involution_and_identity():
    datum = _datum(3)
    for l in WINDOW:
        frob = FrobeniusData.from_boundary(datum, l)
        back = twisted_contragredient(twisted_contragredient(frob))
        assert (back.c1, back.c2, back.c3) == (frob.c1, frob.c2, frob.c3)
    # identity representation: all eigenvalues 1 -> output eigenvalues l^2
    F = F5
    l = 2
    frob = FrobeniusData(l=l, c1=F.from_int(3), c2=F.from_int(3), c3=F.one())
    out = twisted_contragredient(frob)
    lm = F.from_int(l)
    assert out.c1 == F.from_int(3) * lm**2
    assert out.c2 == F.from_int(3) * lm**4
    assert out.c3 == lm**6


def test_twisted_contragredient_weight_link():
    # the dual-data first-recipe weights match dual_weight of the original
    # second-recipe weights, exhaustively over tame data at p=5
    from gl3hecke.weights import (
        InertialData,
        ORDINARY,
        dual_weight,
        predict_weights_by_recipe,
        twisted_contragredient_data,
    )

    import itertools

    for a, b, c in itertools.product(range(4), repeat=3):
        data = InertialData(p=5, kind=ORDINARY, a=a, b=b, c=c)
        tc = twisted_contragredient_data(data)
        r1, r2 = predict_weights_by_recipe(data)
        tc_r1, _ = predict_weights_by_recipe(tc)
        assert {dual_weight(t) for t in tc_r1} == r2


def test_c_varies_only_scalar():
    # the operators for different c differ by the per-coset psi1-power
    d0 = _datum(0)
    d2 = _datum(2)
    l = 7
    ev0 = eigenvalue_of(d0, gl3_hecke_on_boundary(d0, l, 1))
    ev2 = eigenvalue_of(d2, gl3_hecke_on_boundary(d2, l, 1))
    F = d0.space.field
    lam = d0.eigen.lambdas[l]
    assert ev0 == F.from_int(l) * lam + F.one()
    assert ev2 == F.from_int(l) * lam + F.from_int(pow(l, 2, 5))
