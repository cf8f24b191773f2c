import random
from math import gcd

import pytest

from gl3hecke.heckegl3 import (
    IDENTITY3,
    ProjectiveOrbits,
    coset_reps,
    det3,
    divisors,
    g_elem,
    g_elem_inv,
    gl2_orbit_example_check,
    hecke_orbit_action,
    in_gamma0,
    in_parabolic,
    in_semigroup,
    mat3,
    mat_mul3,
    mat_vec3,
    orbit_rep,
    p1_row_orbit_equivalent,
    psi_blocks,
    same_right_coset,
    smith_diagonal,
    theorem_psi_blocks,
    translate_to_parabolic,
)


def test_coset_reps_l2_k1_shapes():
    cs = coset_reps(2, 1, 1)
    assert len(cs) == 7
    bottom = [g for g in cs.reps if g[2][2] == 2]
    middle = [g for g in cs.reps if g[1][1] == 2]
    top = [g for g in cs.reps if g[0][0] == 2]
    assert len(bottom) == 4 and len(middle) == 2 and len(top) == 1
    assert top[0] == mat3([[2, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_coset_reps_l2_k2_count():
    cs = coset_reps(2, 2, 1)
    assert len(cs) == 7
    assert all(det3(g) == 4 for g in cs.reps)


def test_coset_reps_l3_N5_det_and_shape():
    cs = coset_reps(3, 1, 5)
    assert len(cs) == 13
    for g in cs.reps:
        assert det3(g) == 3
        assert in_semigroup(g, 5)


@pytest.mark.parametrize("l,k,N", [(2, 1, 11), (2, 2, 11), (3, 1, 5), (3, 2, 5), (5, 1, 33)])
def test_coset_reps_pairwise_distinct(l, k, N):
    reps = coset_reps(l, k, N).reps
    assert len(reps) == l * l + l + 1
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            assert not same_right_coset(reps[i], reps[j], N)


@pytest.mark.parametrize("l,k", [(2, 1), (2, 2), (3, 1)])
def test_coset_smith_form(l, k):
    want = (1, 1, l) if k == 1 else (1, l, l)
    for g in coset_reps(l, k, 7).reps:
        assert smith_diagonal(g) == want


def test_double_coset_closure_randomized():
    # random gamma1 * rep * gamma2 lands back in the union of rep cosets
    rng = random.Random(7)
    N, l, k = 5, 2, 1
    reps = coset_reps(l, k, N).reps
    gens = [
        mat3([[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
        mat3([[1, 0, 0], [0, 1, 0], [1, 0, 1]]),
        mat3([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
        mat3([[1, 0, 0], [0, 1, 0], [0, 1, 1]]),
        mat3([[1, N, 0], [0, 1, 0], [0, 0, 1]]),
        mat3([[1, 0, N], [0, 1, 0], [0, 0, 1]]),
    ]
    inv = {g: None for g in gens}

    def rand_gamma():
        g = IDENTITY3
        for _ in range(rng.randint(1, 6)):
            h = rng.choice(gens)
            if rng.random() < 0.5:
                # inverse of an elementary matrix: negate the off-diagonal
                h = mat3([[h[i][j] if i == j else -h[i][j] for j in range(3)] for i in range(3)])
            g = mat_mul3(g, h)
        return g

    for _ in range(40):
        s = rng.choice(reps)
        g = mat_mul3(mat_mul3(rand_gamma(), s), rand_gamma())
        hits = [r for r in reps if same_right_coset(g, r, N)]
        assert len(hits) == 1


def test_translate_case1_diagonal():
    # s = diag(l, l, 1) with a = 0: gamma = I, psi1 = l, psi2 = [[l,0],[0,1]]
    for l in (2, 5, 7):
        for d in (1, 3, 11, 33):
            s = mat3([[l, 0, 0], [0, l, 0], [0, 0, 1]])
            tr = translate_to_parabolic(s, d, 33, l=l)
            assert tr.case == 1
            assert tr.gamma == IDENTITY3
            assert tr.psi1 == l
            assert tr.psi2 == ((l, 0), (0, 1))


def test_translate_case4_pinned_example():
    # l=3, d=1, N=5, s has a*d+1 = 3 divisible by l
    s = mat3([[1, 0, 0], [2, 3, 0], [0, 0, 1]])
    tr = translate_to_parabolic(s, 1, 5, l=3)
    assert tr.case == 4
    assert tr.psi1 == 3
    assert tr.psi2[0] == (1, 0)
    assert tr.psi2[1][0] == 0  # (1+ad)/l * c - b*d = 0 here
    sg = mat_mul3(s, tr.gamma)
    assert in_parabolic(sg, 1)


def test_translate_case3_pinned_example():
    # l=2, d=3, N=33, s = diag(1,2,1): ad+1 = 1, not divisible by 2
    s = mat3([[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    tr = translate_to_parabolic(s, 3, 33, l=2)
    assert tr.case == 3
    assert tr.psi1 == 1
    assert tr.psi2[0] == (2, 0)
    assert in_parabolic(mat_mul3(s, tr.gamma), 3)


def _random_squarefree_instances(rng, count):
    cases = []
    while len(cases) < count:
        N = rng.choice([1, 5, 7, 11, 15, 21, 33, 35, 30, 6, 10, 14, 55])
        l = rng.choice([2, 3, 5, 7, 11, 13])
        if N % l == 0:
            continue
        ds = divisors(N)
        d = rng.choice([x for x in ds if gcd(x, N // x) == 1])
        k = rng.choice([1, 2])
        cases.append((l, k, N, d))
    return cases


def test_translate_randomized_validation():
    rng = random.Random(20240811)
    for l, k, N, d in _random_squarefree_instances(rng, 250):
        reps = coset_reps(l, k, N).reps
        s = rng.choice(reps)
        for policy in ("least", "alt"):
            tr = translate_to_parabolic(s, d, N, l=l, policy=policy)
            gamma = tr.gamma
            assert det3(gamma) == 1
            assert in_gamma0(gamma, N)
            assert gamma[0][2] == gamma[1][2] == gamma[2][0] == gamma[2][1] == 0
            assert gamma[2][2] == 1
            sg = mat_mul3(s, gamma)
            assert in_parabolic(sg, d)
            # block congruences
            assert (tr.psi1 - sg[0][0]) % d == 0 if d > 1 else True
            assert (tr.psi2[0][0] - sg[0][0]) % (N // d) == 0 if N // d > 1 else True
            # closed-form oracle equality (policy-independent)
            psi1, psi2, case = theorem_psi_blocks(s, d, l)
            assert tr.psi1 == psi1
            if policy == "least":
                assert tr.psi2 == psi2
                assert tr.case == case


def test_psi_blocks_basics():
    assert psi_blocks(IDENTITY3, 3) == (1, ((1, 0), (0, 1)))
    # unipotent radical elements: psi trivial
    u = mat_mul3(mat_mul3(g_elem_inv(3), mat3([[1, 0, 0], [5, 1, 0], [7, 0, 1]])), g_elem(3))
    assert psi_blocks(u, 3) == (1, ((1, 0), (0, 1)))


def test_psi_congruence_on_parabolic_semigroup_samples():
    rng = random.Random(99)
    N, d = 33, 3
    found = 0
    while found < 200:
        # random element of P_d cap S_0(3,N): conjugate a random parabolic
        x = mat3(
            [
                [rng.randint(1, 40), 0, 0],
                [rng.randint(-9, 9), rng.randint(1, 40), rng.randint(-9, 9)],
                [rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(1, 40)],
            ]
        )
        s = mat_mul3(mat_mul3(g_elem_inv(d), x), g_elem(d))
        if gcd(det3(s), 5 * N) != 1 or det3(s) <= 0:
            continue
        if not in_semigroup(s, N):
            continue
        found += 1
        psi1, psi2 = psi_blocks(s, d)
        assert (psi1 - s[0][0]) % d == 0
        assert (psi2[0][0] - s[0][0]) % (N // d) == 0
        # psi2 lands in the rank-2 semigroup at level N/d
        assert psi2[0][1] % (N // d) == 0


def test_unipotent_levi_intersection_small_height():
    # integral elements of U_d * L^1_d with determinant one are unipotent
    d, N = 3, 33
    for x11 in range(1, 5):
        for u1 in range(-3, 4):
            for u2 in range(-3, 4):
                m = mat3([[x11, 0, 0], [u1, 1, 0], [u2, 0, 1]])
                s = mat_mul3(mat_mul3(g_elem_inv(d), m), g_elem(d))
                if det3(s) == 1 and in_gamma0(s, N):
                    assert x11 == 1


def test_orbit_reps_n30():
    orb = ProjectiveOrbits(30)
    assert orb.orbit_count == 8
    for d in divisors(30):
        assert orb.orbit_rep((1, d, 0)) == d


def test_orbit_rep_small_cases():
    assert orbit_rep((1, 1, 0), 1) == 1
    assert orbit_rep((1, 0, 0), 6) == 6  # (1:6:0) reduces to (1:0:0)


def test_orbit_rep_rejects_nonsquarefree():
    with pytest.raises(ValueError):
        ProjectiveOrbits(25)


def test_orbit_rep_constant_on_orbits():
    orb = ProjectiveOrbits(33)
    rng = random.Random(5)
    gens = [
        mat3([[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
        mat3([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
        mat3([[1, 0, 0], [0, 1, 0], [0, 1, 1]]),
        mat3([[2, 0, 0], [0, 17, 0], [0, 0, 1]]),  # 2*17 = 34 = 1 mod 33
    ]
    for _ in range(100):
        v = (rng.randint(0, 32), rng.randint(0, 32), rng.randint(0, 32))
        if gcd(gcd(gcd(v[0], v[1]), v[2]), 33) != 1:
            continue
        d = orb.orbit_rep(v)
        g = gens[rng.randrange(len(gens))]
        w = tuple(sum(v[k] * g[k][j] for k in range(3)) % 33 for j in range(3))
        assert orb.orbit_rep(w) == d


def test_hecke_orbit_action_stabilizes():
    for (l, N, d) in [(2, 11, 1), (2, 33, 3), (3, 35, 5)]:
        for k in (1, 2):
            rows = hecke_orbit_action(l, k, N, d)
            assert len(rows) == l * l + l + 1
            for s, tr in rows:
                v = mat_vec3((1, d, 0), mat_mul3(s, tr.gamma))
                assert v[2] == 0 and v[1] == d * v[0]
                # orbit preservation: (1:d:0)s stays in the orbit of (1:d:0)
                w = mat_vec3((1, d, 0), s)
                assert ProjectiveOrbits(N).orbit_rep(w) == d


def test_case_partition_matches_四_family_split():
    # for T(l,1): l^2 in case 1, l-1 in case 3, 1 in case 4, 1 in case 2
    l, N, d = 2, 33, 3
    cases = [tr.case for _, tr in hecke_orbit_action(l, 1, N, d)]
    assert cases.count(1) == l * l
    assert cases.count(3) == l - 1
    assert cases.count(4) == 1
    assert cases.count(2) == 1


def test_gl2_orbit_example():
    assert gl2_orbit_example_check()


def test_p1_row_equivalence_witness_and_identity_images():
    assert p1_row_orbit_equivalent(25, (5, 1), (5, 6))
    # with s = identity the images stay equivalent
    assert p1_row_orbit_equivalent(25, (5, 1), (5, 6))
    assert not p1_row_orbit_equivalent(25, (10, 1), (5, 3))
