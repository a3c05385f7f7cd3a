"""Polynomial representation of the double affine Hecke algebra.

Operators act on Laurent polynomials.  The Demazure-Lusztig images of the
T_j are applied through exact geometric-sum divided differences, so no
rational function in x ever appears during application.  Normal forms
(finite sums of coefficient * translation * finite-Weyl terms, with
coefficients kept as factored rational functions of x) are computed only
where closed formulas are needed: brackets, Pieri coefficients, the
Harish-Chandra map, and Gaussian twists.
"""

from __future__ import annotations

from fractions import Fraction

from .rootdata import InvariantViolation, vadd, vneg, vscale
from . import laurent as lx
from .laurent import Lx, Point


class EvaluationPole(ArithmeticError):
    """A coefficient was evaluated at a zero of its denominator."""


# ---------------------------------------------------------------------------
# Demazure-Lusztig operators and Y-operators (direct application).
# ---------------------------------------------------------------------------


def _dl_data(rs, j: int):
    """(direction vector of X_{a_j}, q-offset per X step, length class nu_j)."""
    if j == 0:
        return vneg(rs.theta), Fraction(1), Fraction(2)
    return rs.coroot[j - 1], Fraction(0), rs.nu[j - 1]


def _aff_pairing(rs, e, j: int) -> int:
    """k with s_j(x_e) = x_e X_{a_j}^k, i.e. k = -(e, alpha_j) affinely."""
    if j == 0:
        return rs.pair_theta(e)
    return -e[j - 1]


def demazure_apply(dom, j: int, f: Lx) -> Lx:
    """Apply the Demazure-Lusztig operator for node j (0..n)."""
    rs = dom.rs
    avec, qoff, nu = _dl_data(rs, j)
    th = dom.t_power(nu, Fraction(1, 2))
    diff = th - dom.t_power(nu, Fraction(-1, 2))
    out: Lx = {}

    def put(e, c):
        s = out.get(e)
        s = c if s is None else s + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)

    for e, c in f.items():
        k = _aff_pairing(rs, e, j)
        # reflection part: t^(1/2) x_e X^k
        ck = c * th
        if qoff and k:
            ck = ck * dom.q_power(qoff * k)
        put(vadd(e, vscale(k, avec)), ck)
        # divided difference part: (t^(1/2)-t^(-1/2)) x_e (X^k - 1)/(X - 1)
        if k > 0:
            for i in range(k):
                ci = c * diff
                if qoff and i:
                    ci = ci * dom.q_power(qoff * i)
                put(vadd(e, vscale(i, avec)), ci)
        elif k < 0:
            for i in range(k, 0):
                ci = -c * diff
                if qoff:
                    ci = ci * dom.q_power(qoff * i)
                put(vadd(e, vscale(i, avec)), ci)
    return out


def demazure_inv_apply(dom, j: int, f: Lx) -> Lx:
    """T_j^{-1} = T_j - t_j^{1/2} + t_j^{-1/2}."""
    rs = dom.rs
    nu = _dl_data(rs, j)[2]
    diff = dom.t_power(nu, Fraction(1, 2)) - dom.t_power(nu, Fraction(-1, 2))
    return lx.xsub(demazure_apply(dom, j, f), lx.xscale(f, diff))


def y_apply_basis(dom, i: int, f: Lx, inverse: bool = False) -> Lx:
    """Apply Y_{b_i} (or its inverse) via the reduced word of the translation."""
    rs = dom.rs
    e_i = tuple(int(j == i) for j in range(rs.rank))
    r, word = rs.translation_word(e_i)
    if not inverse:
        for j in reversed(word):
            f = demazure_apply(dom, j, f)
        return lx.act_pi(dom, r, f)
    f = lx.act_pair(dom, rs.aff_inv(rs.pi_pair(r)), f)
    for j in word:
        f = demazure_inv_apply(dom, j, f)
    return f


def y_apply(dom, b, f: Lx) -> Lx:
    """Apply Y_b = prod Y_i^{k_i} for any b in the coweight lattice."""
    for i, k in enumerate(b):
        for _ in range(abs(k)):
            f = y_apply_basis(dom, i, f, inverse=(k < 0))
    return f


def symmetric_y_apply(dom, fy: Lx, g: Lx) -> Lx:
    """Apply f(Y) for f given as a Laurent polynomial in the y-variables."""
    out: Lx = {}
    for e, c in sorted(fy.items()):
        out = lx.xadd(out, lx.xscale(y_apply(dom, e, g), c))
    return out


# ---------------------------------------------------------------------------
# Operator expressions: lists of (scalar, atom tuple); atoms apply rightmost
# first.  Atom kinds: ("T", j), ("Ti", j), ("X", weight), ("Y", weight),
# ("pi", r), ("pii", r).
# ---------------------------------------------------------------------------


def apply_atom(dom, atom, f: Lx) -> Lx:
    kind, arg = atom
    if kind == "T":
        return demazure_apply(dom, arg, f)
    if kind == "Ti":
        return demazure_inv_apply(dom, arg, f)
    if kind == "X":
        return lx.xmul_mono(f, arg, dom.one)
    if kind == "Y":
        return y_apply(dom, arg, f)
    if kind == "pi":
        return lx.act_pi(dom, arg, f)
    if kind == "pii":
        return lx.act_pair(dom, dom.rs.aff_inv(dom.rs.pi_pair(arg)), f)
    raise ValueError(f"unknown atom {kind}")


def apply_expr(dom, expr, f: Lx) -> Lx:
    out: Lx = {}
    for coeff, atoms in expr:
        g = dict(f)
        for atom in reversed(atoms):
            g = apply_atom(dom, atom, g)
        out = lx.xadd(out, lx.xscale(g, coeff))
    return out


def _t_word(rs, w: int, inverse: bool):
    """Atoms for T_w (or T_w^{-1}) along the cached reduced word of w."""
    word = [j + 1 for j in rs.w_words[w]]
    if not inverse:
        return [("T", j) for j in word]
    return [("Ti", j) for j in reversed(word)]


def _expand_pi(dom, expr):
    """Rewrite pi_r = Y_{b_r} T_{omega_r}^{-1} so involutions see generators only."""
    rs = dom.rs
    out = []
    for coeff, atoms in expr:
        new = []
        for kind, arg in atoms:
            if kind == "pi" and arg != 0:
                br = tuple(int(j == arg - 1) for j in range(rs.rank))
                new.append(("Y", br))
                new.extend(_t_word(rs, rs.omega_r[arg], inverse=True))
            elif kind == "pii" and arg != 0:
                br = tuple(int(j == arg - 1) for j in range(rs.rank))
                new.extend(_t_word(rs, rs.omega_r[arg], inverse=False))
                new.append(("Y", vneg(br)))
            elif kind in ("pi", "pii"):
                pass
            else:
                new.append((kind, arg))
        out.append((coeff, tuple(new)))
    return out


def involution_apply(dom, which: str, expr):
    """Syntactic phi / epsilon / star image of an operator expression."""
    rs = dom.rs
    theta = rs.theta
    s_theta_word = [j + 1 for j in rs.w_words[rs.s_theta]]
    expr = _expand_pi(dom, expr)
    out = []
    for coeff, atoms in expr:
        if which in ("phi", "star"):
            seq = list(reversed(atoms))
        else:
            seq = list(atoms)
        new = []
        for kind, arg in seq:
            if which == "phi":
                if kind == "T" and arg == 0:
                    # phi(T_0) = T_{s_theta}^{-1} X_theta^{-1}
                    new.extend([("Ti", j) for j in reversed(s_theta_word)])
                    new.append(("X", vneg(theta)))
                elif kind == "Ti" and arg == 0:
                    new.append(("X", theta))
                    new.extend([("T", j) for j in s_theta_word])
                elif kind in ("T", "Ti"):
                    new.append((kind, arg))
                elif kind == "X":
                    new.append(("Y", vneg(arg)))
                elif kind == "Y":
                    new.append(("X", vneg(arg)))
            elif which == "eps":
                if kind == "T" and arg == 0:
                    # eps(T_0) = X_theta T_{s_theta}
                    new.append(("X", theta))
                    new.extend([("T", j) for j in s_theta_word])
                elif kind == "Ti" and arg == 0:
                    new.extend([("Ti", j) for j in reversed(s_theta_word)])
                    new.append(("X", vneg(theta)))
                elif kind == "T":
                    new.append(("Ti", arg))
                elif kind == "Ti":
                    new.append(("T", arg))
                elif kind == "X":
                    new.append(("Y", arg))
                elif kind == "Y":
                    new.append(("X", arg))
            elif which == "star":
                if kind == "T":
                    new.append(("Ti", arg))
                elif kind == "Ti":
                    new.append(("T", arg))
                elif kind == "X":
                    new.append(("X", vneg(arg)))
                elif kind == "Y":
                    new.append(("Y", vneg(arg)))
            else:
                raise ValueError(f"unknown involution {which}")
        c = coeff if which == "phi" else dom.conjugate(coeff)
        out.append((c, tuple(new)))
    return out


# ---------------------------------------------------------------------------
# Defining relations report.
# ---------------------------------------------------------------------------


def _monomial_grid(rank: int, cap: int):
    from itertools import product
    return [tuple(t) for t in product(range(-cap, cap + 1), repeat=rank)]


def affine_braid_orders(rs):
    """m_ij for the affine diagram (None encodes infinity)."""
    n = rs.rank
    finite = {(-1, -1): None}
    orders = {}
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            ai = vneg(rs.theta) if i == 0 else rs.alpha[i - 1]
            aj = vneg(rs.theta) if j == 0 else rs.alpha[j - 1]
            nui = Fraction(2) if i == 0 else rs.nu[i - 1]
            nuj = Fraction(2) if j == 0 else rs.nu[j - 1]
            aij = Fraction(2) * rs.pairing(ai, aj) / nuj
            aji = Fraction(2) * rs.pairing(ai, aj) / nui
            p = aij * aji
            m = {0: 2, 1: 3, 2: 4, 3: 6}.get(int(p)) if p == int(p) else None
            orders[(i, j)] = m if p < 4 else None
    return orders


def verify_defining_relations(dom, cap: int = 2) -> list[dict]:
    """Check relations (o)-(vi) on all monomials with coordinates in [-cap, cap]."""
    rs = dom.rs
    monos = _monomial_grid(rs.rank, cap)
    report = []

    def check(rel_id, fn):
        status = "pass"
        detail = ""
        for e in monos:
            f = lx.xmono(dom, e)
            try:
                if not fn(f):
                    status = "fail"
                    detail = f"monomial {e}"
                    break
            except Exception as exc:  # report, never raise
                status = "error"
                detail = f"{type(exc).__name__}: {exc}"
                break
        report.append({"relation": rel_id, "system": f"{rs.label}{rs.rank}",
                       "cap": cap, "status": status, "detail": detail})

    n = rs.rank
    for j in range(n + 1):
        nu = _dl_data(rs, j)[2]
        th = dom.t_power(nu, Fraction(1, 2))
        thi = dom.t_power(nu, Fraction(-1, 2))

        def quad(f, j=j, th=th, thi=thi):
            g = demazure_apply(dom, j, f)
            lhs = lx.xsub(demazure_apply(dom, j, g), lx.xscale(g, th - thi))
            return lx.xequal(lhs, f)

        check(f"quadratic[T{j}]", quad)

    orders = affine_braid_orders(rs)
    for (i, j), m in sorted(orders.items()):
        if m is None:
            continue

        def braid(f, i=i, j=j, m=m):
            a, b = dict(f), dict(f)
            for step in range(m):
                a = demazure_apply(dom, i if step % 2 == 0 else j, a)
                b = demazure_apply(dom, j if step % 2 == 0 else i, b)
            return lx.xequal(a, b)

        check(f"braid[T{i},T{j};m={m}]", braid)

    for r in rs.O_star:
        perm = rs.pi_diagram_perm[r]

        def conj(f, r=r, perm=perm):
            pii = rs.aff_inv(rs.pi_pair(r))
            for i in range(n + 1):
                lhs = lx.act_pi(dom, r, demazure_apply(dom, i, lx.act_pair(dom, pii, f)))
                rhs = demazure_apply(dom, perm[i], f)
                if not lx.xequal(lhs, rhs):
                    return False
            return True

        check(f"pi-conjugation[pi{r}]", conj)

    # cross relations (iii)-(v) on witness weights, (vi) for pi_r
    box = _monomial_grid(rs.rank, 2)
    for i in range(1, n + 1):
        wit1 = [b for b in box if _aff_pairing(rs, b, i) == -1][:2]
        wit0 = [b for b in box if _aff_pairing(rs, b, i) == 0][:2]
        ai = rs.coroot[i - 1]

        def cross3(f, i=i, wits=wit1, ai=ai):
            for b in wits:
                g = demazure_apply(dom, i, lx.xmul_mono(demazure_apply(dom, i, f), b, dom.one))
                if not lx.xequal(g, lx.xmul_mono(f, vsub_safe(b, ai), dom.one)):
                    return False
            return True

        check(f"cross[T{i} X_b T{i} = X_(b-a{i})]", cross3)

        def cross5(f, i=i, wits=wit0):
            for b in wits:
                g1 = demazure_apply(dom, i, lx.xmul_mono(f, b, dom.one))
                g2 = lx.xmul_mono(demazure_apply(dom, i, f), b, dom.one)
                if not lx.xequal(g1, g2):
                    return False
            return True

        check(f"commute[T{i}, X_b]", cross5)

    wit_m1 = [b for b in box if rs.pair_theta(b) == -1][:2]
    wit_0 = [b for b in box if rs.pair_theta(b) == 0 and any(b)][:2]

    def cross4(f):
        for b in wit_m1:
            g = demazure_apply(dom, 0, lx.xmul_mono(demazure_apply(dom, 0, f), b, dom.one))
            rhs = lx.xmul_mono(f, vadd(b, rs.theta), dom.q_power(-1))
            if not lx.xequal(g, rhs):
                return False
        return True

    check("cross[T0 X_b T0 = X_b X_theta / q]", cross4)

    def cross5_aff(f):
        for b in wit_0:
            g1 = demazure_apply(dom, 0, lx.xmul_mono(f, b, dom.one))
            g2 = lx.xmul_mono(demazure_apply(dom, 0, f), b, dom.one)
            if not lx.xequal(g1, g2):
                return False
        return True

    if wit_0:
        check("commute[T0, X_b]", cross5_aff)

    for r in rs.O_star:
        def cross6(f, r=r):
            pii = rs.aff_inv(rs.pi_pair(r))
            for b in box[:6]:
                lhs = lx.act_pi(dom, r, lx.xmul_mono(lx.act_pair(dom, pii, f), b, dom.one))
                img = lx.act_pi(dom, r, lx.xmono(dom, b))
                rhs = lx.xmul(img, f)
                if not lx.xequal(lhs, rhs):
                    return False
            return True

        check(f"pi-X[pi{r}]", cross6)

    return report


def vsub_safe(a, b):
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Normal forms: sum over (translation b, finite w) of rational coefficients.
# ---------------------------------------------------------------------------


class RatX:
    """Rational function of x: Laurent numerator over factored denominator."""

    __slots__ = ("dom", "num", "den")

    def __init__(self, dom, num: Lx, den: dict | None = None):
        self.dom = dom
        self.num = num
        self.den = den or {}

    def copy(self):
        return RatX(self.dom, dict(self.num), dict(self.den))

    def is_zero(self):
        return not self.num

    def _factor_key(self, f: Lx):
        return tuple(sorted((e, self.dom.scalar_key(c)) for e, c in f.items()))

    def _canon_factor(self, f: Lx):
        """f = unit * x^shift * canon with canon's lex-lowest term monic."""
        n = self.dom.rs.rank
        mins = tuple(min(e[i] for e in f) for i in range(n))
        sh = {tuple(x - m for x, m in zip(e, mins)): c for e, c in f.items()}
        e0 = min(sh)
        c0 = sh[e0]
        if c0 != self.dom.one:
            inv = self.dom.one / c0
            sh = {e: c * inv for e, c in sh.items()}
        return c0, mins, sh

    def mul_poly(self, p: Lx):
        return RatX(self.dom, lx.xmul(self.num, p), dict(self.den))._cancel()

    def div_poly(self, p: Lx):
        if not p:
            raise ZeroDivisionError("division by zero polynomial")
        c0, mins, canon = self._canon_factor(p)
        num = lx.xmul_mono(self.num, vneg(mins), self.dom.one / c0)
        den = dict(self.den)
        if len(canon) > 1:
            key = self._factor_key(canon)
            f, m = den.get(key, (canon, 0))
            den[key] = (f, m + 1)
        return RatX(self.dom, num, den)._cancel()

    def scale(self, c):
        if not c:
            return RatX(self.dom, {})
        return RatX(self.dom, lx.xscale(self.num, c), dict(self.den))

    def add(self, other: "RatX"):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            s = lx.xadd(self.num, other.num)
            return RatX(self.dom, s, dict(self.den) if s else {})._cancel()
        merged: dict = {}
        for k, (f, m) in self.den.items():
            merged[k] = (f, m)
        for k, (f, m) in other.den.items():
            if k in merged:
                merged[k] = (f, max(merged[k][1], m))
            else:
                merged[k] = (f, m)
        a = self.num
        for k, (f, m) in merged.items():
            extra = m - (self.den[k][1] if k in self.den else 0)
            for _ in range(extra):
                a = lx.xmul(a, f)
        b = other.num
        for k, (f, m) in merged.items():
            extra = m - (other.den[k][1] if k in other.den else 0)
            for _ in range(extra):
                b = lx.xmul(b, f)
        s = lx.xadd(a, b)
        return RatX(self.dom, s, merged if s else {})._cancel()

    def mul(self, other: "RatX"):
        if self.is_zero() or other.is_zero():
            return RatX(self.dom, {})
        den = dict(self.den)
        for k, (f, m) in other.den.items():
            if k in den:
                den[k] = (f, den[k][1] + m)
            else:
                den[k] = (f, m)
        return RatX(self.dom, lx.xmul(self.num, other.num), den)._cancel()

    def _cancel(self):
        if not self.den or not self.num:
            if not self.num:
                self.den = {}
            return self
        num = self.num
        new_den = {}
        for k, (f, m) in self.den.items():
            while m > 0:
                q = lx.xdiv_exact(self.dom, num, f)
                if q is None:
                    break
                num = q
                m -= 1
            if m > 0:
                new_den[k] = (f, m)
        self.num = num
        self.den = new_den
        return self

    def act(self, pair):
        """Image under an extended affine Weyl element acting on x."""
        num = lx.act_pair(self.dom, pair, self.num)
        out = RatX(self.dom, num)
        for f, m in self.den.values():
            fi = lx.act_pair(self.dom, pair, f)
            c0, mins, canon = self._canon_factor(fi)
            unit_inv = lx.xmono(self.dom, vneg(mins), self.dom.one / c0)
            for _ in range(m):
                out = out.mul_poly(unit_inv)
            if len(canon) > 1:
                key = self._factor_key(canon)
                f2, m2 = out.den.get(key, (canon, 0))
                out.den[key] = (f2, m2 + m)
        return out._cancel()

    def eval_point(self, pt: Point):
        dv = self.dom.one
        for f, m in self.den.values():
            v = lx.eval_at(self.dom, f, pt)
            if not v:
                raise EvaluationPole("coefficient pole at evaluation point")
            dv = dv * v ** m
        nv = lx.eval_at(self.dom, self.num, pt)
        return nv / dv

    def to_poly(self) -> Lx:
        self._cancel()
        if self.den:
            raise InvariantViolation("operator coefficient is not polynomial")
        return self.num

    def limit_at_origin(self):
        """Limit along a curve x_i = T^{w_i} -> 0 inside the dominant chamber
        (so x_a -> 0 for every positive coroot a); EvaluationPole if unbounded."""
        dom = self.dom
        rs = dom.rs
        n = rs.rank
        supports = [self.num] + [f for f, _ in self.den.values()]
        maxabs = 1
        for s in supports:
            for e in s:
                for v in e:
                    maxabs = max(maxabs, abs(v))
        base = 2 * maxabs * n + 3
        big = n * base ** n + 1
        weights = [big * int(2 * rs.pairing(
            tuple(int(j == i) for j in range(n)), rs.rho)) + base ** i
            for i in range(n)]

        def univ(p: Lx):
            out: dict[int, object] = {}
            for e, c in p.items():
                d = sum(w * v for w, v in zip(weights, e))
                s = out.get(d)
                s = c if s is None else s + c
                if s:
                    out[d] = s
                else:
                    out.pop(d, None)
            return out

        nu = univ(self.num)
        if not nu:
            return dom.zero
        val = min(nu)
        lead = nu[val]
        for f, m in self.den.values():
            uf = univ(f)
            vf = min(uf)
            val -= m * vf
            lead = lead / uf[vf] ** m
        if val > 0:
            return dom.zero
        if val < 0:
            raise EvaluationPole("pole at the origin specialization")
        return lead


class NormalOperator:
    """Finite sum of h_{b,w}(x) * translation(b) * w."""

    def __init__(self, dom, terms: dict | None = None):
        self.dom = dom
        self.terms = terms or {}

    @classmethod
    def zero(cls, dom):
        return cls(dom, {})

    @classmethod
    def identity(cls, dom):
        n = dom.rs.rank
        return cls(dom, {((0,) * n, 0): RatX(dom, lx.xone(dom))})

    @classmethod
    def x_mult(cls, dom, b):
        n = dom.rs.rank
        return cls(dom, {((0,) * n, 0): RatX(dom, lx.xmono(dom, b))})

    @classmethod
    def from_T(cls, dom, j: int, inverse: bool = False):
        rs = dom.rs
        avec, qoff, nu = _dl_data(rs, j)
        th = dom.t_power(nu, Fraction(1, 2))
        thi = dom.t_power(nu, Fraction(-1, 2))
        xa = lx.xmono(dom, avec, dom.q_power(qoff) if qoff else dom.one)
        denom = lx.xsub(xa, lx.xone(dom))  # X_{a_j} - 1
        n = rs.rank
        if j == 0:
            b_part, w_part = rs.theta, rs.s_theta
        else:
            b_part, w_part = (0,) * n, rs.simple_refl[j - 1]
        # T_j = (t^(1/2) X - t^(-1/2))/(X-1) s_j - (t^(1/2)-t^(-1/2))/(X-1)
        num_s = lx.xadd(lx.xscale(xa, th), lx.xscale(lx.xone(dom), -thi))
        coeff_s = RatX(dom, num_s).div_poly(denom)
        coeff_id = RatX(dom, lx.xscale(lx.xone(dom), th - thi)).div_poly(denom)
        terms = {(tuple(b_part), w_part): coeff_s,
                 ((0,) * n, 0): coeff_id.scale(-dom.one)}
        op = cls(dom, terms)
        if inverse:
            op = op.add(cls(dom, {((0,) * n, 0):
                                  RatX(dom, lx.xscale(lx.xone(dom), thi - th))}))
        return op

    @classmethod
    def from_pi(cls, dom, r: int, inverse: bool = False):
        rs = dom.rs
        n = rs.rank
        if r == 0:
            return cls.identity(dom)
        br = tuple(int(j == r - 1) for j in range(n))
        om = rs.omega_r[r]
        if not inverse:
            return cls(dom, {(br, rs.w_inv[om]): RatX(dom, lx.xone(dom))})
        return cls(dom, {(vneg(rs.act(om, br)), om): RatX(dom, lx.xone(dom))})

    def add(self, other: "NormalOperator"):
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k].add(v)
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return NormalOperator(self.dom, out)

    def scale(self, c):
        return NormalOperator(self.dom,
                              {k: v.scale(c) for k, v in self.terms.items()})

    def compose(self, other: "NormalOperator"):
        """self applied after other... no: self * other as operator product."""
        rs = self.dom.rs
        out: dict = {}
        for (b1, w1), h1 in self.terms.items():
            pair = (w1, rs.act(rs.w_inv[w1], b1))  # tau_{b1} o w1 acting on x
            for (b2, w2), h2 in other.terms.items():
                h = h1.mul(h2.act(pair))
                if h.is_zero():
                    continue
                key = (vadd(b1, rs.act(w1, b2)), rs.mul(w1, w2))
                if key in out:
                    s = out[key].add(h)
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
                else:
                    out[key] = h
        return NormalOperator(self.dom, out)

    def dagger(self):
        """Drop the finite parts: sum_w h_{b,w} becomes the coefficient of b."""
        n = self.dom.rs.rank
        out: dict = {}
        for (b, _w), h in self.terms.items():
            key = (b, 0)
            if key in out:
                s = out[key].add(h)
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = h
        return NormalOperator(self.dom, out)

    def apply(self, f: Lx) -> Lx:
        """Apply to a Laurent polynomial; the result must clear denominators."""
        rs = self.dom.rs
        acc = RatX(self.dom, {})
        for (b, w), h in sorted(self.terms.items(),
                                key=lambda kv: (kv[0][0], kv[0][1])):
            g = lx.act_pair(self.dom, (w, rs.act(rs.w_inv[w], b)), f)
            acc = acc.add(h.mul_poly(g))
        return acc.to_poly()

    def bracket(self):
        """[[H]] = sum of coefficient values at t^{-rho}."""
        pt = lx.principal_point(self.dom, -1)
        total = self.dom.zero
        for key in sorted(self.terms.keys()):
            total = total + self.terms[key].eval_point(pt)
        return total

    def harish_chandra(self) -> Lx:
        """chi(H): y-polynomial of coefficient limits at the origin."""
        out: Lx = {}
        for (b, _w), h in sorted(self.terms.items()):
            v = h.limit_at_origin()
            if v:
                s = out.get(b)
                s = v if s is None else s + v
                if s:
                    out[b] = s
                else:
                    out.pop(b, None)
        return out

    def gaussian_twist(self, sign: int):
        """Conjugation by the Gaussian cocycle.

        sign=+1 gives gamma^{-1} H gamma (coefficients gain x_b^{-1} q^{(b,b)/2});
        sign=-1 gives gamma H gamma^{-1}.
        """
        rs = self.dom.rs
        out = {}
        for (b, w), h in self.terms.items():
            c = self.dom.q_power(Fraction(sign, 2) * rs.pairing(b, b))
            out[(b, w)] = h.mul_poly(lx.xmono(self.dom, vscale(-sign, b), c))
        return NormalOperator(self.dom, out)


def nf_from_atoms(dom, atoms) -> NormalOperator:
    op = NormalOperator.identity(dom)
    for atom in atoms:
        kind, arg = atom
        if kind == "T":
            nxt = NormalOperator.from_T(dom, arg)
        elif kind == "Ti":
            nxt = NormalOperator.from_T(dom, arg, inverse=True)
        elif kind == "X":
            nxt = NormalOperator.x_mult(dom, arg)
        elif kind == "pi":
            nxt = NormalOperator.from_pi(dom, arg)
        elif kind == "pii":
            nxt = NormalOperator.from_pi(dom, arg, inverse=True)
        elif kind == "Y":
            nxt = nf_Y(dom, arg)
        else:
            raise ValueError(f"unknown atom {kind}")
        op = op.compose(nxt)
    return op


def nf_expr(dom, expr) -> NormalOperator:
    total = NormalOperator.zero(dom)
    for coeff, atoms in expr:
        total = total.add(nf_from_atoms(dom, atoms).scale(coeff))
    return total


_nf_y_cache: dict = {}


def nf_Y(dom, b) -> NormalOperator:
    key = (id(dom), tuple(b))
    if key in _nf_y_cache:
        return _nf_y_cache[key]
    rs = dom.rs
    atoms = []
    for i, k in enumerate(b):
        if k == 0:
            continue
        e_i = tuple(int(j == i) for j in range(rs.rank))
        r, word = rs.translation_word(e_i)
        if k > 0:
            unit = [("pi", r)] + [("T", j) for j in word]
        else:
            unit = [("Ti", j) for j in reversed(word)] + [("pii", r)]
        atoms.extend(unit * abs(k))
    op = nf_from_atoms(dom, atoms)
    _nf_y_cache[key] = op
    return op


def nf_L(dom, fy: Lx) -> NormalOperator:
    """L_f = [f(Y)]_dagger for f a W-invariant y-polynomial."""
    total = NormalOperator.zero(dom)
    for e, c in sorted(fy.items()):
        total = total.add(nf_Y(dom, e).scale(c))
    return total.dagger()


def lead_operator_formula(dom, b) -> NormalOperator:
    """Closed form of the leading part {L_b} for anti-dominant b.

    {L_b} = sum over cosets w W_b of
            prod over positive coroots a and 0 <= j < -(b, a^vee) of
            (t_a^(1/2) X_{w(a)} q_a^j - t_a^(-1/2)) / (X_{w(a)} q_a^j - 1)
            times translation by w(b).
    """
    rs = dom.rs
    seen = set()
    total: dict = {}
    for w in range(rs.w_order):
        wb = rs.act(w, b)
        if wb in seen:
            continue
        seen.add(wb)
        coeff = RatX(dom, lx.xone(dom))
        for idx in range(rs.n_pos):
            a = rs.pos_coroots[idx]
            nu = rs.root_nu[idx]
            hi = -rs.pair_root(idx, b)  # -(b, alpha) = -(b, a^vee)
            if hi <= 0:
                continue
            th = dom.t_power(nu, Fraction(1, 2))
            thi = dom.t_power(nu, Fraction(-1, 2))
            wa = rs.act(w, a)
            qa = Fraction(2) / nu
            for j in range(hi):
                qj = dom.q_power(qa * j)
                num = lx.xadd(lx.xmono(dom, wa, th * qj),
                              lx.xscale(lx.xone(dom), -thi))
                den = lx.xadd(lx.xmono(dom, wa, qj), lx.xscale(lx.xone(dom), -dom.one))
                coeff = coeff.mul_poly(num).div_poly(den)
        total[(wb, 0)] = coeff
    return NormalOperator(dom, total)


# ---------------------------------------------------------------------------
# Fourier pairing via memoized value recursion.
# ---------------------------------------------------------------------------


class ValueEngine:
    """Evaluates words of operator atoms applied to a fixed polynomial
    at transformed principal points, memoizing (word, suffix, point)."""

    def __init__(self, dom, g: Lx):
        self.dom = dom
        self.g = g
        self.memo: dict = {}
        self.base_memo: dict = {}
        self._words: dict = {}

    def word_value(self, atoms, pt: Point):
        atoms = tuple(self._expand(atoms))
        wid = self._words.get(atoms)
        if wid is None:
            wid = len(self._words)
            self._words[atoms] = wid
        return self._value(atoms, wid, 0, pt)

    def _expand(self, atoms):
        out = []
        for kind, arg in atoms:
            if kind == "Y":
                out.extend(_y_atoms(self.dom.rs, arg))
            else:
                out.append((kind, arg))
        return out

    def _value(self, atoms, wid: int, i: int, pt: Point):
        if i == len(atoms):
            key = pt.key
            v = self.base_memo.get(key)
            if v is None:
                v = lx.eval_at(self.dom, self.g, pt)
                self.base_memo[key] = v
            return v
        key = (wid, i, pt.key)
        v = self.memo.get(key)
        if v is not None:
            return v
        dom = self.dom
        rs = dom.rs
        kind, arg = atoms[i]
        if kind in ("T", "Ti"):
            j = arg
            avec, qoff, nu = _dl_data(rs, j)
            th = dom.t_power(nu, Fraction(1, 2))
            thi = dom.t_power(nu, Fraction(-1, 2))
            ptj = pt.transform(rs.aff_simple_pair(j))
            u_r = self._value(atoms, wid, i + 1, ptj)
            u_0 = self._value(atoms, wid, i + 1, pt)
            xv = pt.mono_value(avec)
            if qoff:
                xv = xv * dom.q_power(qoff)
            denom = xv - dom.one
            if not denom:
                raise EvaluationPole("divided difference pole at point")
            cj = (th - thi) / denom
            v = th * u_r + cj * (u_r - u_0)
            if kind == "Ti":
                v = v - (th - thi) * u_0
        elif kind == "X":
            v = pt.mono_value(arg) * self._value(atoms, wid, i + 1, pt)
        elif kind == "pi":
            v = self._value(atoms, wid, i + 1, pt.transform(rs.pi_pair(arg)))
        elif kind == "pii":
            v = self._value(atoms, wid, i + 1,
                            pt.transform(rs.aff_inv(rs.pi_pair(arg))))
        else:
            raise ValueError(f"unknown atom {kind}")
        if hasattr(v, "reduce"):
            v.reduce()
        self.memo[key] = v
        return v


def _y_atoms(rs, b):
    atoms = []
    for i, k in enumerate(b):
        if k == 0:
            continue
        e_i = tuple(int(j == i) for j in range(rs.rank))
        r, word = rs.translation_word(e_i)
        if k > 0:
            unit = [("pi", r)] + [("T", j) for j in word]
        else:
            unit = [("Ti", j) for j in reversed(word)] + [("pii", r)]
        atoms.extend(unit * abs(k))
    return atoms


def fourier_pairing(dom, f: Lx, g: Lx):
    """[[f, g]] = (fbar(Y) g)(t^{-rho}) with fbar = x-inversion of f."""
    engine = ValueEngine(dom, g)
    pt0 = lx.principal_point(dom, -1)
    total = dom.zero
    fbar = lx.xbar(f)
    for e in sorted(fbar.keys()):
        total = total + fbar[e] * engine.word_value((("Y", e),), pt0)
    return total
