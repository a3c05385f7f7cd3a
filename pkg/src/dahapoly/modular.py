"""Roots-of-unity data: the finite module, restricted Macdonald functions,
and the projective SL2(Z) / GL2(Z) matrices.

With q a primitive N-th root of unity and t_nu = q_nu^{k_nu}, every principal
point q^c t^{-rho} is the pure power point x_e -> q^{(e, c - k.r)}, so values
only depend on c through B_N = B / K_N, where K_N = N Q intersect B is the
radical of the q-pairing.  The spectrum is discovered as the set of dot-orbits
of B_N carrying a nonzero discretized weight function, one anti-dominant
representative each, and then validated (separation, symmetry, orthogonality,
invertibility) before any matrix law is certified.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import gcd, lcm

from .rootdata import vadd, vneg
from .coeffs import SymbolicDomain, CyclotomicDomain, DomainError
from . import laurent as lx
from . import macdonald as mac


class ModularError(RuntimeError):
    """The requested (system, N, k) violates a nondegeneracy condition."""


# ---------------------------------------------------------------------------
# Integer lattices: Smith normal form and quotient bookkeeping.
# ---------------------------------------------------------------------------


def smith_normal_form(mat):
    """U, D, V with U*mat*V = D diagonal and U, V unimodular."""
    a = [list(row) for row in mat]
    n, m = len(a), len(a[0])
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_op(i, j, q):  # row_i -= q*row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        U[i] = [x - q * y for x, y in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q*col_j
        for r in range(n):
            a[r][i] -= q * a[r][j]
        for r in range(m):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(m):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(n, m):
        # find nonzero pivot of least absolute value
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    row_op(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, m):
                if a[t][j]:
                    col_op(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        t += 1
    for i in range(min(n, m)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            U[i] = [-x for x in U[i]]
    return U, a, V


def _int_inverse(mat):
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] +
           [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


class LatticeQuotient:
    """B_N = Z^n / L for a full-rank sublattice L given by basis columns."""

    def __init__(self, basis_cols):
        n = len(basis_cols[0])
        mat = [[basis_cols[j][i] for j in range(len(basis_cols))] for i in range(n)]
        U, D, _V = smith_normal_form(mat)
        self.n = n
        self.U = U
        self.Uinv = _int_inverse(U)
        self.diag = [D[i][i] for i in range(n)]
        if any(d == 0 for d in self.diag):
            raise ModularError("quotient lattice is not full rank")
        self.size = 1
        for d in self.diag:
            self.size *= d

    def label(self, x) -> tuple:
        return tuple(sum(self.U[i][j] * x[j] for j in range(self.n)) % self.diag[i]
                     for i in range(self.n))

    def lift(self, label) -> tuple:
        return tuple(sum(self.Uinv[i][j] * label[j] for j in range(self.n))
                     for i in range(self.n))

    def labels(self):
        for tup in iproduct(*(range(d) for d in self.diag)):
            yield tup


def radical_lattice(rs, N: int):
    """Basis of K_N = {a in B : (a, b) in N Z for all b in B} = N S Z^n ∩ Z^n."""
    n = rs.rank
    den = lcm(*(rs.S[i][j].denominator for i in range(n) for j in range(n)))
    A = [[int(N * rs.S[i][j] * den) for j in range(n)] for i in range(n)]
    # solve A c = den * e: columns of K_N basis are A c / den for c in the
    # kernel of (A mod den); kernel basis via SNF of A over Z with modulus den
    U, D, V = smith_normal_form([row[:] for row in A])
    # c-lattice: {c : A c ≡ 0 mod den}; with U A V = D, put c = V z, need
    # D z ≡ 0 mod den => z_i multiple of den / gcd(D_ii, den)
    mults = [den // gcd(D[i][i], den) for i in range(n)]
    basis = []
    for i in range(n):
        z = [0] * n
        z[i] = mults[i]
        c = [sum(V[r][j] * z[j] for j in range(n)) for r in range(n)]
        w = [sum(A[r][j] * c[j] for j in range(n)) for r in range(n)]
        assert all(x % den == 0 for x in w)
        basis.append(tuple(x // den for x in w))
    return basis


# ---------------------------------------------------------------------------
# Matrix helpers over an exact field (any scalars with operators).
# ---------------------------------------------------------------------------


def mat_mul(dom, A, B):
    n, m, p = len(A), len(B[0]), len(B)
    return [[_dot(dom, A[i], [B[k][j] for k in range(p)]) for j in range(m)]
            for i in range(n)]


def _dot(dom, row, col):
    tot = dom.zero
    for a, b in zip(row, col):
        tot = tot + a * b
    return tot


def mat_inv(dom, A):
    n = len(A)
    aug = [list(A[i]) + [dom.one if i == j else dom.zero for j in range(n)]
           for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise ModularError("singular matrix in modular data")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = dom.one / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def mat_conj(dom, A):
    return [[dom.conjugate(x) for x in row] for row in A]


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def mat_equal(A, B):
    return all(x == y for ra, rb in zip(A, B) for x, y in zip(ra, rb))


def mat_scale(dom, A, c):
    return [[c * x for x in row] for row in A]


def proportional(dom, A, B):
    """Exact scalar lam with A = lam*B, or None."""
    lam = None
    for ra, rb in zip(A, B):
        for x, y in zip(ra, rb):
            if bool(x) != bool(y):
                return None
            if y:
                r = x / y
                if lam is None:
                    lam = r
                elif lam != r:
                    return None
    return lam


def is_permutation_matrix(dom, A):
    """Permutation with a single common scalar; returns (perm, lam) or None."""
    n = len(A)
    perm = []
    lam = None
    for i in range(n):
        nz = [j for j in range(n) if A[i][j]]
        if len(nz) != 1:
            return None
        j = nz[0]
        if lam is None:
            lam = A[i][j]
        elif A[i][j] != lam:
            return None
        perm.append(j)
    if sorted(perm) != list(range(n)):
        return None
    return perm, lam


# ---------------------------------------------------------------------------
# ModularData.
# ---------------------------------------------------------------------------


class ModularData:
    def __init__(self, rs, N: int, k: dict, conductor: int | None = None):
        self.rs = rs
        self.N = N
        self.k = {Fraction(nu): int(v) for nu, v in k.items()}
        self.dom = CyclotomicDomain(rs, N, self.k, conductor)
        self.kr = tuple(sum(self.k[nu] * rs.r_nu[nu][i] for nu in rs.nu_classes)
                        for i in range(rs.rank))
        self._check_krho()
        self.quot = LatticeQuotient(radical_lattice(rs, N))
        self.labels = list(self.quot.labels())
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._check_aarho()
        self._build_spectrum()
        self._build_values()
        self._build_matrices()

    # -- nondegeneracy ------------------------------------------------------

    def _check_krho(self):
        rs = self.rs
        dom = self.dom
        rho_k = [sum(self.k[nu] * rs.rho_nu[nu][i] for nu in rs.nu_classes)
                 for i in range(rs.rank)]
        for idx in range(rs.n_pos):
            a = rs.pos_coroots[idx]
            nu = rs.root_nu[idx]
            ka = self.k[nu]
            pa = rs.pairing(rho_k, a)
            for i in range(-ka + 1, ka):
                if dom.q_power(Fraction(2, 1) / nu * (pa + i)) == dom.one:
                    raise ModularError(
                        f"nondegeneracy fails: q_a^((rho_k,a)+{i}) = 1 "
                        f"for coroot {a}; increase N or decrease k")

    def _check_aarho(self):
        rs = self.rs
        for v in radical_lattice(rs, self.N):
            if self.dom.q_power(Fraction(rs.pairing(v, v), 2)) != self.dom.one:
                raise ModularError(
                    f"Gaussian is not well defined on the quotient: "
                    f"q^((a,a)/2) != 1 for radical vector {v}")

    # -- spectrum discovery ---------------------------------------------------

    def _dot(self, w: int, x):
        rs = self.rs
        return vadd(rs.act(w, vadd(x, vneg(self.kr))), self.kr)

    def _orbits(self):
        rs = self.rs
        quot = self.quot
        orbit_of = {}
        orbits = []
        for lab in quot.labels():
            if lab in orbit_of:
                continue
            oid = len(orbits)
            members = []
            stack = [lab]
            orbit_of[lab] = oid
            while stack:
                cur = stack.pop()
                members.append(cur)
                x = quot.lift(cur)
                for i in range(rs.rank):
                    nxt = quot.label(self._dot(rs.simple_refl[i], x))
                    if nxt not in orbit_of:
                        orbit_of[nxt] = oid
                        stack.append(nxt)
            orbits.append(sorted(members))
        return orbit_of, orbits

    def point(self, c) -> tuple:
        """Exponent functional of the point q^c t^{-rho}: e -> (e, c - k.r)."""
        return vadd(tuple(c), vneg(self.kr))

    def mono_value(self, e, c):
        return self.dom.q_power(self.rs.pairing(e, self.point(c)))

    def eigen_value(self, a, b):
        """m_a(t^rho q^{-b}) = sum over the orbit of a of q^{(e, k.r - b)}."""
        tot = self.dom.zero
        u = vadd(self.kr, vneg(tuple(b)))
        for e in self.rs.orbit(a):
            tot = tot + self.dom.q_power(self.rs.pairing(e, u))
        return tot

    def eval_poly(self, f, c):
        tot = self.dom.zero
        for e in sorted(f.keys()):
            tot = tot + f[e] * self.mono_value(e, c)
        return tot

    def _build_spectrum(self):
        rs = self.rs
        quot = self.quot
        dom = self.dom
        self.orbit_of, self.orbits = self._orbits()
        mup = _mu_prime_values(self)
        self.mu_values = mup  # label -> value of mu' at q^c t^-rho
        alive = {}
        for oid, members in enumerate(self.orbits):
            v = mup[members[0]]
            if v:
                alive[oid] = None
        # anti-dominant lifts: scan the box of per-direction class periods
        bounds = []
        for i in range(rs.rank):
            e = tuple(-int(j == i) for j in range(rs.rank))
            period = 1
            acc = e
            while any(quot.label(tuple(x * period for x in e))):
                period += 1
                if period > quot.size + 1:
                    raise ModularError("period search failed")
            bounds.append(period)
        candidates = {}
        for tup in sorted(iproduct(*(range(b) for b in bounds))):
            c = tuple(-u for u in tup)
            lab = quot.label(c)
            oid = self.orbit_of[lab]
            if oid in alive:
                candidates.setdefault(oid, []).append(c)
        spectrum = []
        for oid in alive:
            reps = candidates.get(oid, [])
            chosen = None
            for c in sorted(reps, key=lambda c: (rs.level(c), c)):
                try:
                    val = mac.evaluation_formula(dom, c)
                except ZeroDivisionError:
                    continue
                if val:
                    chosen = (c, val)
                    break
            if chosen is None:
                raise ModularError(
                    f"no usable anti-dominant representative for orbit {oid}; "
                    "the spectrum construction is empty here")
            spectrum.append(chosen)
        spectrum.sort(key=lambda cv: (rs.level(cv[0]), cv[0]))
        if spectrum[0][0] != (0,) * rs.rank:
            raise ModularError("spectrum does not contain 0")
        self.beta = [c for c, _v in spectrum]
        self.beta_pval_formula = [v for _c, v in spectrum]
        self.size = len(self.beta)
        # the -w0 involution on spectrum indices
        self.invol = []
        for b in self.beta:
            img = vneg(rs.act(rs.w0, b))
            oid = self.orbit_of[quot.label(img)]
            match = [i for i, c in enumerate(self.beta)
                     if self.orbit_of[quot.label(c)] == oid]
            if len(match) != 1:
                raise ModularError("spectrum is not stable under -w0")
            self.invol.append(match[0])

    # -- values ---------------------------------------------------------------

    def _build_values(self):
        rs = self.rs
        dom = self.dom
        # Macdonald polynomials over the q-pinned symbolic domain, coefficients
        # specialized at q0 = zeta
        self.symdom = SymbolicDomain(rs, t_pins={nu: self.k[nu]
                                                 for nu in rs.nu_classes})
        table = mac.MacdonaldTable(self.symdom)
        self.table = table
        z = dom.q0_elem

        def specialize(sc):
            from .coeffs import peval
            dv = dom.one
            for f, m in sc.den.values():
                v = peval(f, [z])
                if not v:
                    raise ModularError(
                        "coefficient pole while specializing at the root of unity")
                dv = dv * v ** m
            nv = peval(sc.num, [z])
            if not nv:
                return dom.zero
            return nv / dv

        self.pvals = []
        self.polys = []
        for b in self.beta:
            p = table.poly(b)
            pc = {e: specialize(c) for e, c in p.items()}
            pv = self.eval_poly(pc, (0,) * rs.rank)
            if not pv:
                raise ModularError(f"principal value vanishes at {b}")
            if pv != self.beta_pval_formula[len(self.pvals)]:
                raise ModularError(
                    f"evaluation formula disagrees with the direct value at {b}")
            self.polys.append(pc)
            self.pvals.append(pv)
        # value tables over all of B_N
        self.values = []
        for i, b in enumerate(self.beta):
            inv = dom.one / self.pvals[i]
            row = {}
            for lab in self.labels:
                row[lab] = inv * self.eval_poly(self.polys[i], self.quot.lift(lab))
            self.values.append(row)
        self.pi_matrix = [[self.values[i][self.quot.label(self.beta[j])]
                           for j in range(self.size)] for i in range(self.size)]

    def restricted_pairing_values(self, fvals: dict, gvals: dict):
        """<f, g>' = sum over B_N of mu'(c) f(c) gbar(c)."""
        dom = self.dom
        tot = dom.zero
        two_kr = tuple(2 * x for x in self.kr)
        for lab in self.labels:
            mv = self.mu_values[lab]
            if not mv:
                continue
            bar_lab = self.quot.label(vadd(two_kr, vneg(self.quot.lift(lab))))
            tot = tot + mv * fvals[lab] * gvals[bar_lab]
        return tot

    # -- matrices ---------------------------------------------------------------

    def _build_matrices(self):
        dom = self.dom
        rs = self.rs
        n = self.size
        self.D = [self.restricted_pairing_values(self.values[i], self.values[i])
                  for i in range(n)]
        if any(not d for d in self.D):
            raise ModularError("restricted norm vanishes; spectrum invalid")
        self.T_plus = [[dom.q_power(Fraction(rs.pairing(b, b), 2)) *
                        mac.x_at_rho(dom, b, -1) if i == j else dom.zero
                        for j, _ in enumerate(self.beta)]
                       for i, b in enumerate(self.beta)]
        P = self.pi_matrix
        Pinv = mat_inv(dom, P)
        Tp_inv = mat_inv(dom, self.T_plus)
        # The SL2 conjugations live on the pairing-balanced matrix
        # [[p_i, p_j]] = pval_i Pi~_{ij} pval_j: the principal values are
        # +-real, so this dressing (and only it) keeps T_-, Omega unitary.
        self.pair_matrix = [[self.pvals[i] * P[i][j] * self.pvals[j]
                             for j in range(n)] for i in range(n)]
        self.pair_inv = mat_inv(dom, self.pair_matrix)
        self.D_pair = [self.D[i] * self.pvals[i] ** 2 for i in range(n)]
        self.T_minus = mat_mul(dom, mat_mul(dom, self.pair_matrix, Tp_inv),
                               self.pair_inv)
        self.Omega = mat_mul(dom, mat_mul(dom, Tp_inv, self.T_minus), Tp_inv)
        Dinv = [[(dom.one / self.D[i]) if i == j else dom.zero
                 for j in range(n)] for i in range(n)]
        self.E = mat_mul(dom, P, Dinv)
        self.W0 = [[dom.one if self.invol[i] == j else dom.zero
                    for j in range(n)] for i in range(n)]
        self.P_inv = Pinv


def _mu_prime_values(md: ModularData) -> dict:
    mup = lx.mu_prime(md.dom, md.k)
    return {lab: md.eval_poly(mup, md.quot.lift(lab)) for lab in md.labels}


def build_modular(label: str, rank: int, N: int, k, conductor=None) -> ModularData:
    from .rootdata import build_root_system
    rs = build_root_system(label, rank)
    if not isinstance(k, dict):
        k = {nu: int(k) for nu in rs.nu_classes}
    return ModularData(rs, N, k, conductor)


# ---------------------------------------------------------------------------
# Verification report.
# ---------------------------------------------------------------------------


def verify_modular(md: ModularData) -> list[dict]:
    dom = md.dom
    n = md.size
    rep = []

    def entry(law, ok, detail=""):
        rep.append({"law": law, "status": "pass" if ok else "fail",
                    "detail": detail})

    P = md.pi_matrix
    entry("pi-first-row-ones",
          all(P[0][j] == dom.one for j in range(n)))
    entry("pi-first-col-ones",
          all(P[i][0] == dom.one for i in range(n)))
    entry("pi-symmetric", mat_equal(P, mat_transpose(P)))

    # eigenvalue separation of the spectrum
    evs = []
    for b in md.beta:
        row = tuple(md.dom.scalar_key(md.eigen_value(
            tuple(-int(j == i) for j in range(md.rs.rank)), b))
            for i in range(md.rs.rank))
        evs.append(row)
    entry("eigenvalues-separate", len(set(evs)) == n)

    Tp, Tm, Om = md.T_plus, md.T_minus, md.Omega
    Tm_inv = mat_inv(dom, Tm)
    lhs = mat_mul(dom, mat_mul(dom, Tp, Tm_inv), Tp)
    rhs = mat_mul(dom, mat_mul(dom, Tm_inv, Tp), Tm_inv)
    lam = proportional(dom, lhs, rhs)
    entry("braid", lam is not None,
          dom.render(lam) if lam is not None else "not proportional")

    Om2 = mat_mul(dom, Om, Om)
    Om4 = mat_mul(dom, Om2, Om2)
    ident = [[dom.one if i == j else dom.zero for j in range(n)] for i in range(n)]
    lam4 = proportional(dom, Om4, ident)
    entry("Omega^4~Id", lam4 is not None,
          dom.render(lam4) if lam4 is not None else "not proportional")
    pm = is_permutation_matrix(dom, Om2)
    central = False
    if pm is not None:
        perm, _lam2 = pm
        pmat = [[dom.one if perm[i] == j else dom.zero for j in range(n)]
                for i in range(n)]
        central = mat_equal(mat_mul(dom, pmat, Tp), mat_mul(dom, Tp, pmat)) and \
            mat_equal(mat_mul(dom, pmat, Tm), mat_mul(dom, Tm, pmat))
    entry("Omega^2~central-permutation", pm is not None and central,
          str(pm[0]) if pm else "not a scaled permutation")

    # Unitarity: the invariant hermitian form has Gram ~ Diag(1/<p_i,p_i>');
    # the norms are constant exactly at k = 1, where this is the plain law.
    G = [[(dom.one / md.D_pair[i]) if i == j else dom.zero for j in range(n)]
         for i in range(n)]
    for name, M in (("T+", Tp), ("T-", Tm), ("Omega", Om)):
        plain = mat_equal(mat_conj(dom, mat_transpose(M)), mat_inv(dom, M))
        lhsu = mat_mul(dom, mat_mul(dom, mat_conj(dom, mat_transpose(M)), G), M)
        weighted = mat_equal(lhsu, G)
        entry(f"unitary[{name}]", weighted,
              "plain" if plain else "norm-weighted form (norms not constant)")

    Pplus = mat_conj(dom, P)
    W0P = mat_mul(dom, md.W0, P)
    PW0 = mat_mul(dom, P, md.W0)
    entry("conjugation-law", mat_equal(Pplus, W0P) and mat_equal(Pplus, PW0))

    Dmat = [[md.D_pair[i] if i == j else dom.zero for j in range(n)]
            for i in range(n)]
    DPinv = mat_mul(dom, Dmat, md.pair_inv)
    lam_o = proportional(dom, Om, DPinv)
    entry("Omega~D*Pi^-1", lam_o is not None,
          dom.render(lam_o) if lam_o is not None else "not proportional")

    E = md.E
    EEplus = mat_mul(dom, E, mat_conj(dom, E))
    lam_e = proportional(dom, EEplus, ident)
    entry("(E sigma)^2~Id", lam_e is not None,
          dom.render(lam_e) if lam_e is not None else "not proportional")

    # Fourier transform consistency and diagonalization by Gaussian twists
    F = E  # F(f)-values = E * conj(f-values) (semilinear in the delta basis)

    def F_apply(vec):
        cv = [dom.conjugate(x) for x in vec]
        return [_dot(dom, F[i], cv) for i in range(n)]

    ok_four = True
    for j in range(n):
        pi_j = [P[i][j] for i in range(n)]  # values of pi_j on the spectrum
        lhsv = F_apply(pi_j)
        rhsv = [dom.zero] * n
        for i in range(n):
            coef = dom.conjugate(P[i][j]) / md.D[i]
            for l in range(n):
                rhsv[l] = rhsv[l] + coef * P[l][i]
        if any(a != b for a, b in zip(lhsv, rhsv)):
            ok_four = False
            break
    entry("fourier-on-pi-basis", ok_four)

    FF = mat_mul(dom, F, mat_conj(dom, F))
    pmf = is_permutation_matrix(dom, FF)
    entry("fourier-squared~permutation", pmf is not None,
          str(pmf[0]) if pmf else "not a scaled permutation")

    # diagonalization ratios (Gaussian eigenbasis of F)
    A1 = mat_mul(dom, mat_mul(dom, md.P_inv, Tp), P)
    Dinv = [[(dom.one / md.D[i]) if i == j else dom.zero for j in range(n)]
            for i in range(n)]
    A2 = mat_mul(dom, Dinv, mat_conj(dom, P))
    A3 = mat_conj(dom, mat_mul(dom, mat_mul(dom, md.P_inv, mat_inv(dom, Tp)), P))
    Fd = mat_mul(dom, mat_mul(dom, A1, A2), A3)
    diag_ok = all(not Fd[i][j] for i in range(n) for j in range(n) if i != j)
    ratios_ok = False
    if diag_ok and Fd[0][0]:
        ratios_ok = True
        for i, b in enumerate(md.beta):
            expected = mac.x_at_rho(dom, b, +1) * \
                dom.q_power(Fraction(-md.rs.pairing(b, b), 2))
            if Fd[i][i] / Fd[0][0] != expected:
                ratios_ok = False
                break
    entry("gaussian-diagonalizes-fourier", diag_ok and ratios_ok)

    # orthogonality of restricted functions
    ortho = True
    for i in range(n):
        for j in range(i + 1, n):
            if md.restricted_pairing_values(md.values[i], md.values[j]):
                ortho = False
    entry("restricted-orthogonality", ortho)

    # irreducibility witness: delta-span from the constant function
    gens = []
    for i in range(md.rs.rank):
        a = tuple(-int(j == i) for j in range(md.rs.rank))
        lam_vec = [md.eigen_value(a, b) for b in md.beta]
        Lmat = mat_mul(dom, mat_mul(
            dom, P, [[lam_vec[i2] if i2 == j2 else dom.zero
                      for j2 in range(n)] for i2 in range(n)]), md.P_inv)
        gens.append(Lmat)
        mvals = [md.eval_poly({e: dom.one for e in md.rs.orbit(a)},
                              md.quot.lift(md.quot.label(b)))
                 for b in md.beta]
        gens.append([[mvals[i2] if i2 == j2 else dom.zero for j2 in range(n)]
                     for i2 in range(n)])
    ech = _Echelon(dom, n)
    ech.add([dom.one] * n)
    frontier = [[dom.one] * n]
    while frontier and ech.dim < n:
        nxt = []
        for v in frontier:
            for g in gens:
                w = [_dot(dom, g[i], v) for i in range(n)]
                if ech.add(w):
                    nxt.append(w)
                    if ech.dim == n:
                        break
            if ech.dim == n:
                break
        frontier = nxt
    entry("irreducible-span", ech.dim == n, f"dim {ech.dim} of {n}")

    return rep


class _Echelon:
    """Incremental row echelon basis for an exact membership test."""

    def __init__(self, dom, n):
        self.dom = dom
        self.n = n
        self.rows = {}
        self.dim = 0

    def add(self, w) -> bool:
        vec = list(w)
        for p in range(self.n):
            if not vec[p]:
                continue
            if p in self.rows:
                f = vec[p] / self.rows[p][p]
                vec = [x - f * y for x, y in zip(vec, self.rows[p])]
            else:
                self.rows[p] = vec
                self.dim += 1
                return True
        return False


def character_oracle_matrix(md: ModularData):
    """At t = q: the matrix of normalized Weyl characters at the spectrum points
    (independent of the Macdonald machinery)."""
    dom = md.dom
    rs = md.rs
    if any(v != 1 for v in md.k.values()):
        raise ModularError("character oracle applies at k = 1 only")
    n = md.size
    rho_hat = (1,) * rs.rank
    out = []
    for i, b in enumerate(md.beta):
        lam = rs.act(rs.w0, b)
        row = []
        for j, c in enumerate(md.beta):
            pt = md.point(c)
            num = dom.zero
            den = dom.zero
            for w in range(rs.w_order):
                s = dom.from_int(rs.det_w(w))
                num = num + s * dom.q_power(rs.pairing(rs.act(w, vadd(lam, rho_hat)), pt))
                den = den + s * dom.q_power(rs.pairing(rs.act(w, rho_hat), pt))
            if not den:
                raise ModularError("character denominator vanished on spectrum")
            row.append(num / den)
        base = row[0]
        row = [x / base for x in row]
        out.append(row)
    return out


def export_modular(md: ModularData) -> dict:
    dom = md.dom
    return {
        "system": f"{md.rs.label}{md.rs.rank}",
        "N": md.N,
        "k": {str(nu): v for nu, v in sorted(md.k.items())},
        "conductor": dom.M,
        "quotient_size": md.quot.size,
        "spectrum": [list(b) for b in md.beta],
        "involution": md.invol,
        "pi_matrix": [[dom.render(x) for x in row] for row in md.pi_matrix],
        "T_plus": [dom.render(md.T_plus[i][i]) for i in range(md.size)],
        "norms": [dom.render(d) for d in md.D],
    }
