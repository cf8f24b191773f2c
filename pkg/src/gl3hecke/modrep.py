"""Explicit matrix models of the irreducible mod-p modules F(a,b) for the
rank-2 group and F(a,b,c) for the rank-3 group, with parabolic invariants.

Construction of F(a,b,c): the carrier is Sym^{a-b}(std) (x) Sym^{b-c}(wedge^2
std) (x) det^c, realized on monomials in two sets of three variables.  The
highest-weight vector is spun under group generators to a highest-weight
submodule W; the radical of the contravariant (apolarity) form on W is cut
out money-exactly, and W/rad is the irreducible module.  Certificates run at
build time: the highest-weight line, form adjointness, and the spin
irreducibility check.

Matrices are stored as left homomorphisms rho(g) over F_p acting on
coordinate columns; the semigroup right action used by the symbol spaces is
v|m = rho(transpose m) v, which is the classical substitution action with
positive central character.  Parabolic invariants are fixed spaces of
rho(u) for u in the first-column unipotent group.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import factorial, gcd

import numpy as np

from .characters import DirichletCharacter
from .ffield import Fq
from .linalg import SpinBasis, np_inv, np_nullspace, np_rref


class CertificateError(RuntimeError):
    """A build-time certificate failed; the construction is wrong."""


# -- monomial machinery -------------------------------------------------------


def sym_basis(nvars, deg):
    """Exponent tuples of the degree-deg monomials, lexicographic."""
    idx = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        idx.append(tuple(e))
    return sorted(set(idx), reverse=True)


def _poly_pow(base_terms, e, p):
    """(linear form)^e as a dict exponent-tuple -> coefficient."""
    acc = {tuple([0] * len(base_terms)): 1}
    for _ in range(e):
        new = {}
        for mono, c in acc.items():
            for v, cv in enumerate(base_terms):
                if cv % p == 0:
                    continue
                m2 = list(mono)
                m2[v] += 1
                m2 = tuple(m2)
                new[m2] = (new.get(m2, 0) + c * cv) % p
        acc = new
    return acc


def sub_matrix(M, deg, p):
    """Matrix of f -> f(M y) on the degree-deg monomial basis, mod p.

    Columns are images of basis monomials; the map is an anti-homomorphism
    in M (substitutions compose contravariantly).
    """
    M = np.asarray(M, dtype=np.int64) % p
    nvars = M.shape[0]
    basis = sym_basis(nvars, deg)
    index = {m: i for i, m in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for j, mono in enumerate(basis):
        # product over variables of (row_i of M . y)^{mono_i}
        poly = {tuple([0] * nvars): 1}
        for v, e in enumerate(mono):
            if e == 0:
                continue
            factor = _poly_pow([int(M[v, k]) for k in range(nvars)], e, p)
            new = {}
            for m1, c1 in poly.items():
                for m2, c2 in factor.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    new[m] = (new.get(m, 0) + c1 * c2) % p
            poly = new
        for m, c in poly.items():
            if c % p:
                out[index[m], j] = c % p
    return out


def cofactor3(M):
    M = np.asarray(M, dtype=np.int64)
    C = np.zeros((3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(M, i, axis=0), j, axis=1)
            C[i, j] = (-1) ** (i + j) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    return C


def _det(M, p):
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if n == 2:
        return int(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) % p
    if n != 3:
        raise ValueError("only 2x2 and 3x3 supported")
    return int(
        M[0, 0] * (M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1])
        - M[0, 1] * (M[1, 0] * M[2, 2] - M[1, 2] * M[2, 0])
        + M[0, 2] * (M[1, 0] * M[2, 1] - M[1, 1] * M[2, 0])
    ) % p


def gl_generators(n, p):
    """Adjacent transvections plus torus generators of the rank-n group."""
    gens = []
    for i in range(n - 1):
        for (a, b) in ((i, i + 1), (i + 1, i)):
            E = np.eye(n, dtype=np.int64)
            E[a, b] = 1
            gens.append(E)
    g0 = _primitive_root(p)
    for i in range(min(n - 1, 2)):
        T = np.eye(n, dtype=np.int64)
        T[i, i] = g0
        gens.append(T)
    return gens


def _primitive_root(p):
    for g in range(2, p):
        order = 1
        acc = g
        while acc != 1:
            acc = acc * g % p
            order += 1
        if order == p - 1:
            return g
    raise RuntimeError("no primitive root")


# -- module objects ------------------------------------------------------------


@dataclass
class IrreducibleModule:
    p: int
    n: int
    label: tuple
    dim: int
    basis: np.ndarray  # rows: module basis inside the carrier (identity for n=2)
    carrier_dim: int
    monomials: tuple  # basis tags of the ambient carrier

    def __post_init__(self):
        self._rho_cache = {}
        self._solver = None

    # internal hooks installed by the builders
    _carrier_rho = None
    _coords = None

    def rho(self, g):
        """Left homomorphism matrix of g (n x n integers, reduced mod p)."""
        g = np.asarray(g, dtype=np.int64) % self.p
        key = g.tobytes()
        if key not in self._rho_cache:
            self._rho_cache[key] = self._compute_rho(g)
        return self._rho_cache[key]

    def _compute_rho(self, g):
        raise NotImplementedError

    def act_right(self, v, m):
        """Right semigroup action v|m = rho(transpose(m mod p)) v."""
        m = np.asarray(m, dtype=np.int64) % self.p
        return self.rho(m.T) @ np.asarray(v, dtype=np.int64) % self.p

    def torus_weight_of_highest_vector(self):
        return self.label


class _Gl2Module(IrreducibleModule):
    def _compute_rho(self, g):
        a, b = self.label
        S = sub_matrix(g.T % self.p, a - b, self.p)
        d = pow(_det(g, self.p), b % (self.p - 1), self.p)
        return S * d % self.p


class _Gl3Module(IrreducibleModule):
    def _compute_rho(self, g):
        p = self.p
        C = self._carrier_rho(g)
        imgs = self.basis @ C.T % p
        coords = self._coords(imgs)
        k = self.dim
        return coords[:, -k:].T.copy()


def build_gl2_module(p, a, b):
    """Symmetric-power model of F(a,b): monomials of degree a-b in two
    variables twisted by the b-th power of the determinant."""
    if not 0 <= a - b <= p - 1:
        raise ValueError("label (%d, %d) is not p-restricted" % (a, b))
    deg = a - b
    monos = tuple(sym_basis(2, deg))
    dim = deg + 1
    mod = _Gl2Module(
        p=p, n=2, label=(a, b), dim=dim, basis=np.eye(dim, dtype=np.int64), carrier_dim=dim, monomials=monos
    )
    _certify_module(mod)
    return mod


_GL3_CACHE = {}


def build_gl3_module(p, a, b, c):
    """Irreducible F(a,b,c) via spin-plus-radical on the tensor carrier."""
    if not (0 <= a - b <= p - 1 and 0 <= b - c <= p - 1):
        raise ValueError("label (%d, %d, %d) is not p-restricted" % (a, b, c))
    base_key = (p, a - b, b - c)
    if base_key not in _GL3_CACHE:
        _GL3_CACHE[base_key] = _build_gl3_base(p, a - b, b - c)
    base = _GL3_CACHE[base_key]
    return _twist_gl3(base, p, a, b, c)


def _build_gl3_base(p, i, j):
    """The label (i+j, j, 0) module: the determinant twist is added later."""
    a, b, c = i + j, j, 0
    ybasis = sym_basis(3, i)
    zbasis = sym_basis(3, j)
    dy, dz = len(ybasis), len(zbasis)
    D = dy * dz

    def carrier_rho(g):
        Sy = sub_matrix(np.asarray(g).T % p, i, p)
        Sz = sub_matrix(cofactor3(np.asarray(g).T) % p, j, p)
        return np.kron(Sy, Sz) % p

    # highest weight vector: y1^i * z3^j
    y_top = ybasis.index(tuple([i, 0, 0]))
    z_top = zbasis.index(tuple([0, 0, j]))
    vplus = np.zeros(D, dtype=np.int64)
    vplus[y_top * dz + z_top] = 1

    gens = gl_generators(3, p)
    gen_mats = [carrier_rho(g) for g in gens]

    # highest-weight certificate on the carrier
    for u in (np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), np.array([[1, 0, 0], [0, 1, 1], [0, 0, 1]])):
        if not np.array_equal(carrier_rho(u) @ vplus % p, vplus):
            raise CertificateError("highest-weight vector is not unipotent-invariant")
    g0 = _primitive_root(p)
    for t, want in (
        (np.diag([g0, 1, 1]), pow(g0, a, p)),
        (np.diag([1, g0, 1]), pow(g0, b, p)),
        (np.diag([1, 1, g0]), pow(g0, c, p)),
    ):
        if not np.array_equal(carrier_rho(t) @ vplus % p, want * vplus % p):
            raise CertificateError("highest-weight vector has the wrong torus weight")

    # adjointness of the contravariant form on the carrier (spot check)
    wt = _form_weights(ybasis, zbasis, p)
    rng = np.random.default_rng(12345)
    for _ in range(3):
        g = _random_invertible(p, rng)
        A = carrier_rho(g)
        At = carrier_rho(g.T % p)
        u = rng.integers(0, p, D)
        w = rng.integers(0, p, D)
        lhs = int((A @ u % p * wt % p) @ w % p)
        rhs = int((u * wt % p) @ (At @ w % p) % p)
        if lhs % p != rhs % p:
            raise CertificateError("contravariant pairing is not adjoint")

    # spin the highest-weight submodule W
    spin = SpinBasis(p, D)
    spin.add(vplus)
    queue = [vplus]
    while queue:
        batch = np.array(queue, dtype=np.int64)
        queue = []
        for G in gen_mats:
            imgs = batch @ G.T % p
            for row in imgs:
                if spin.add(row):
                    queue.append(row)
    W = spin.basis()

    if int(vplus @ (vplus * wt) % p) == 0:
        raise CertificateError("form degenerates on the highest-weight vector")

    # radical of the contravariant form on W
    gram = (W * wt) @ W.T % p
    rad_coords = np_nullspace(gram, p)
    rad = rad_coords @ W % p if len(rad_coords) else np.zeros((0, D), dtype=np.int64)

    # complement basis of W modulo the radical
    comp = SpinBasis(p, D)
    for r in rad:
        comp.add(r)
    L_rows = []
    for row in W:
        if comp.add(row):
            L_rows.append(row)
    L = np.array(L_rows, dtype=np.int64)
    stacked = np.vstack([rad, L]) if len(rad) else L
    R, pivots = np_rref(stacked, p)
    Jinv = np_inv(stacked[:, pivots], p)

    def coords(rows):
        return rows[:, pivots] @ Jinv % p

    mod = _Gl3Module(
        p=p,
        n=3,
        label=(a, b, c),
        dim=len(L),
        basis=L,
        carrier_dim=D,
        monomials=tuple((ym, zm) for ym in ybasis for zm in zbasis),
    )
    mod._carrier_rho = carrier_rho
    mod._coords = coords
    _certify_module(mod)
    return mod


def _twist_gl3(base, p, a, b, c):
    """Tensor the cached (a-c, b-c, 0) module by det^c."""
    if c % (p - 1) == 0 and (a, b, c) == base.label:
        return base
    twisted = _Gl3Module(
        p=p,
        n=3,
        label=(a, b, c),
        dim=base.dim,
        basis=base.basis,
        carrier_dim=base.carrier_dim,
        monomials=base.monomials,
    )
    shift = c

    def carrier_rho(g):
        d = pow(_det(g, p), shift % (p - 1), p)
        return base._carrier_rho(g) * d % p

    twisted._carrier_rho = carrier_rho
    twisted._coords = base._coords
    return twisted


def _form_weights(ybasis, zbasis, p):
    wt = np.zeros(len(ybasis) * len(zbasis), dtype=np.int64)
    dz = len(zbasis)
    for iy, ym in enumerate(ybasis):
        for iz, zm in enumerate(zbasis):
            w = 1
            for e in list(ym) + list(zm):
                w = w * factorial(e) % p
            wt[iy * dz + iz] = w
    return wt


def _random_invertible(p, rng):
    while True:
        g = rng.integers(0, p, (3, 3))
        if _det(g, p) % p:
            return np.asarray(g, dtype=np.int64)


def _certify_module(mod):
    """Irreducibility certificate: spinning the highest-weight image and a
    deterministic sample of vectors regenerates the whole module."""
    p = mod.p
    gens = gl_generators(mod.n, p)
    mats = [mod.rho(g) for g in gens]
    rng = np.random.default_rng(271828)
    vectors = []
    if mod.n == 3:
        hw = _module_highest_vector(mod)
        vectors.append(hw)
    else:
        v = np.zeros(mod.dim, dtype=np.int64)
        v[0] = 1
        vectors.append(v)
    for _ in range(2):
        w = rng.integers(0, p, mod.dim)
        if not w.any():
            w[0] = 1
        vectors.append(w % p)
    for v in vectors:
        spin = SpinBasis(p, mod.dim)
        spin.add(v)
        queue = [np.asarray(v, dtype=np.int64)]
        while queue:
            batch = np.array(queue)
            queue = []
            for G in mats:
                for row in batch @ G.T % p:
                    if spin.add(row):
                        queue.append(row)
        if spin.rank != mod.dim:
            raise CertificateError("spin certificate failed: proper submodule found")


def _module_highest_vector(mod):
    """Image of the carrier highest-weight vector in module coordinates."""
    p = mod.p
    mats = [
        mod.rho(np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]])),
        mod.rho(np.array([[1, 0, 0], [0, 1, 1], [0, 0, 1]])),
    ]
    stack = np.vstack([m - np.eye(mod.dim, dtype=np.int64) for m in mats])
    K = np_nullspace(stack, p)
    if len(K) == 0:
        raise CertificateError("no unipotent-fixed vector in the module")
    # pick the torus eigenvector of weight equal to the label
    g0 = _primitive_root(p)
    for v in K:
        ok = True
        for i, t in enumerate([np.diag([g0, 1, 1]), np.diag([1, g0, 1]), np.diag([1, 1, g0])]):
            lamb = pow(g0, mod.label[i] % (p - 1), p)
            if not np.array_equal(mod.rho(t) @ v % p, lamb * v % p):
                ok = False
                break
        if ok:
            return v
    raise CertificateError("no highest-weight vector of the labelled weight")


# -- parabolic invariants ------------------------------------------------------


@dataclass
class LeviModule:
    base: IrreducibleModule
    basis: np.ndarray  # rows: invariant vectors in module coordinates
    gl1_exponent: int
    gl2_module: IrreducibleModule
    iso: np.ndarray  # invertible matrix intertwining the block action

    @property
    def dim(self):
        return len(self.basis)


def u_invariants(mod):
    """Fixed space of the first-column unipotent group, with certificates.

    Returns the invariants of F(a,b,c) as a LeviModule: the rank-1 torus
    factor acts by the c-power, the rank-2 block acts as F(a,b), and an
    explicit equivariant isomorphism onto build_gl2_module(p,a,b) is part of
    the certificate.
    """
    if mod.n != 3:
        raise ValueError("parabolic invariants implemented for the rank-3 modules")
    p = mod.p
    a, b, c = mod.label
    u1 = np.array([[1, 0, 0], [1, 1, 0], [0, 0, 1]])
    u2 = np.array([[1, 0, 0], [0, 1, 0], [1, 0, 1]])
    stack = np.vstack([mod.rho(u) - np.eye(mod.dim, dtype=np.int64) for u in (u1, u2)])
    K = np_nullspace(stack, p)
    if len(K) != a - b + 1:
        raise CertificateError(
            "invariant dimension %d != %d for label %s" % (len(K), a - b + 1, mod.label)
        )
    # scalar action of the rank-1 torus factor
    g0 = _primitive_root(p)
    t = np.diag([g0, 1, 1])
    imgs = K @ mod.rho(t).T % p
    lamb = pow(g0, c % (p - 1), p)
    if not np.array_equal(imgs % p, lamb * K % p):
        raise CertificateError("rank-1 factor does not act by the expected power")
    # the rank-2 block action, restricted to the invariants
    gl2 = build_gl2_module(p, a, b)
    solver = _coord_solver(K, p)

    def restricted(h):
        g = np.eye(3, dtype=np.int64)
        g[1:, 1:] = np.asarray(h) % p
        return solver(K @ mod.rho(g).T % p).T

    iso = _intertwiner(restricted, gl2, p)
    return LeviModule(base=mod, basis=K, gl1_exponent=c % (p - 1), gl2_module=gl2, iso=iso)


def _coord_solver(B, p):
    R, pivots = np_rref(B, p)
    Jinv = np_inv(np.asarray(B, dtype=np.int64)[:, pivots], p)

    def coords(rows):
        return np.asarray(rows, dtype=np.int64)[:, pivots] @ Jinv % p

    return coords


def _intertwiner(restricted, gl2, p):
    """Solve Phi . A(h) = rho2(h) . Phi over the rank-2 generators; the
    solution space is one-dimensional by irreducibility, and any nonzero
    solution is invertible."""
    k = gl2.dim
    gens = gl_generators(2, p)
    mats = [(restricted(h), gl2.rho(h)) for h in gens]
    rows = []
    for A, R2 in mats:
        # row-major vec of Phi: vec(Phi A) = (I kron A^T) v, vec(R2 Phi) = (R2 kron I) v
        op = np.kron(np.eye(k, dtype=np.int64), A.T) - np.kron(R2, np.eye(k, dtype=np.int64))
        rows.append(op % p)
    sol = np_nullspace(np.vstack(rows), p)
    if len(sol) == 0:
        raise CertificateError("no equivariant isomorphism onto the rank-2 model")
    phi = sol[0].reshape(k, k)
    for A, R2 in mats:
        if not np.array_equal(phi @ A % p, R2 @ phi % p):
            raise CertificateError("intertwiner fails to intertwine")
    if len(np_nullspace(phi, p)):
        raise CertificateError("intertwiner is singular")
    return phi


# -- twisted and Levi actions --------------------------------------------------


@dataclass
class TwistedAction:
    base: IrreducibleModule
    x: int
    chi: DirichletCharacter

    @property
    def level(self):
        return self.chi.modulus


def _g_off(n, x):
    g = np.eye(n, dtype=np.int64)
    g[0, 1] = x
    return g


def _g_off_inv(n, x):
    g = np.eye(n, dtype=np.int64)
    g[0, 1] = -x
    return g


def twisted_act(T, e, s):
    """e |^x_chi s = chi(s_11) * (e | g_x s g_x^-1): Fq-vector result."""
    base, x, chi = T.base, T.x, T.chi
    n = base.n
    s = np.asarray(s, dtype=object)
    N = chi.modulus
    if n == 3:
        from .heckegl3 import det3, mat3

        dets = det3(mat3(s.tolist()))
    else:
        dets = int(s[0, 0] * s[1, 1] - s[0, 1] * s[1, 0])
    if dets == 0 or gcd(dets, base.p * N) != 1:
        raise ValueError("determinant must be nonzero and prime to p*N")
    for j in range(1, n):
        if int(s[0, j]) % N:
            raise ValueError("first row must be congruent to (*,0,...,0) mod N")
    m = _g_off(n, x).astype(object) @ np.asarray(s, dtype=object) @ _g_off_inv(n, x).astype(object)
    m = np.asarray([[int(v) % base.p for v in row] for row in m], dtype=np.int64)
    scalar = chi(int(s[0, 0]))
    field = chi.field
    acted = base.act_right(np.asarray([_as_int(c, field) for c in e], dtype=np.int64), m)
    return [scalar * field.from_int(int(v)) for v in acted]


def _as_int(c, field):
    if isinstance(c, Fq):
        return c.lift()
    return int(c)


def levi_act(levi, d, chi0, chi1, s, e, c=None):
    """Action on the invariants-as-rank-2-module, by blocks:
    chi0(psi1) * psi1^c * chi1(psi2_11) * (e | psi2).

    e is a coordinate vector in the build_gl2_module(p,a,b) model; returns
    an Fq-vector over the character field.
    """
    from .heckegl3 import psi_blocks

    base = levi.base
    p = base.p
    if c is None:
        c = levi.gl1_exponent
    psi1, psi2 = psi_blocks(s, d)
    field = chi0.field
    scalar = chi0(psi1) * chi1(psi2[0][0]) * field.from_int(pow(psi1 % p, c % (p - 1), p))
    m = np.asarray(psi2, dtype=np.int64) % p
    gl2 = levi.gl2_module
    ints = np.asarray([_as_int(x, field) for x in e], dtype=np.int64)
    acted = gl2.act_right(ints, m)
    return [scalar * field.from_int(int(v)) for v in acted]


# -- meataxe-style dimension oracle --------------------------------------------


def composition_factor_dims(gens, p, seed=0, max_tries=400):
    """Dimensions of the composition factors of the module given by the
    generator matrices (left homomorphisms over F_p), by random splitting
    with the dual-spin irreducibility certificate."""
    gens = [np.asarray(g, dtype=np.int64) % p for g in gens]
    rng = np.random.default_rng(seed)
    return sorted(_split(gens, p, rng, max_tries))


def _split(gens, p, rng, max_tries):
    D = gens[0].shape[0]
    if D == 0:
        return []
    if D == 1:
        return [1]
    for _ in range(max_tries):
        r = _random_algebra_element(gens, p, rng)
        for lam in range(p):
            M = (r - lam * np.eye(D, dtype=np.int64)) % p
            ker = np_nullspace(M, p)
            if len(ker) == 0 or len(ker) == D:
                continue
            U = _spin_rows(ker[:1], gens, p)
            if U.shape[0] < D:
                sub, quo = _restrict_and_quotient(gens, U, p)
                return _split(sub, p, rng, max_tries) + _split(quo, p, rng, max_tries)
            if len(ker) == 1:
                kert = np_nullspace(M.T, p)
                Ut = _spin_rows(kert[:1], [g.T % p for g in gens], p)
                if Ut.shape[0] < D:
                    ann = np_nullspace(Ut, p)
                    U2 = _spin_rows(ann, gens, p)
                    if U2.shape[0] < D:
                        sub, quo = _restrict_and_quotient(gens, U2, p)
                        return _split(sub, p, rng, max_tries) + _split(quo, p, rng, max_tries)
                    continue
                return [D]
    raise RuntimeError("meataxe failed to decide after %d tries" % max_tries)


def _random_algebra_element(gens, p, rng):
    D = gens[0].shape[0]
    r = np.zeros((D, D), dtype=np.int64)
    for _ in range(3):
        w = np.eye(D, dtype=np.int64)
        for _ in range(int(rng.integers(1, 4))):
            w = w @ gens[int(rng.integers(0, len(gens)))] % p
        r = (r + int(rng.integers(1, p)) * w) % p
    return r


def _spin_rows(rows, gens, p):
    D = gens[0].shape[0]
    spin = SpinBasis(p, D)
    queue = []
    for v in rows:
        if spin.add(v):
            queue.append(np.asarray(v, dtype=np.int64))
    while queue:
        batch = np.array(queue)
        queue = []
        for G in gens:
            for row in batch @ G.T % p:
                if spin.add(row):
                    queue.append(row)
    return spin.basis()


def _restrict_and_quotient(gens, U, p):
    """Matrices of the action on the invariant row space U and its quotient."""
    D = gens[0].shape[0]
    k = U.shape[0]
    solver = _coord_solver(U, p)
    sub = [solver(U @ g.T % p).T % p for g in gens]
    comp = SpinBasis(p, D)
    for r in U:
        comp.add(r)
    comp_rows = []
    eye = np.eye(D, dtype=np.int64)
    for i in range(D):
        if comp.add(eye[i]):
            comp_rows.append(eye[i])
    C = np.array(comp_rows, dtype=np.int64)
    full = np.vstack([U, C])
    solver_full = _coord_solver(full, p)
    quo = []
    for g in gens:
        co = solver_full(C @ g.T % p)  # rows: coords in [U; C]
        quo.append(co[:, k:].T % p)
    return sub, quo
