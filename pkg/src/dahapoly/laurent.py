"""Sparse Laurent polynomials in x_1..x_n with exact scalar coefficients.

A polynomial is a dict mapping coweight coordinate tuples to scalars of the
ambient domain; zero coefficients are never stored.  The extended affine Weyl
group acts through pairs (w, b): the translation part multiplies x_c by
q^(-(c, b)) and the finite part permutes monomials.
"""

from __future__ import annotations

from fractions import Fraction

from .rootdata import RootSystemData, AffinePair, vadd, vneg, vscale

Lx = dict  # weight tuple -> scalar


def xzero() -> Lx:
    return {}


def xone(dom) -> Lx:
    return {(0,) * dom.rs.rank: dom.one}


def xmono(dom, b, c=None) -> Lx:
    c = dom.one if c is None else c
    return {tuple(b): c} if c else {}


def xadd(a: Lx, b: Lx) -> Lx:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        s = c if s is None else s + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def xneg(a: Lx) -> Lx:
    return {e: -c for e, c in a.items()}


def xsub(a: Lx, b: Lx) -> Lx:
    return xadd(a, xneg(b))


def xscale(a: Lx, c) -> Lx:
    if not c:
        return {}
    return {e: c * v for e, v in a.items()}


def xmul(a: Lx, b: Lx) -> Lx:
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    out: Lx = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = vadd(ea, eb)
            s = out.get(e)
            s = ca * cb if s is None else s + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def xmul_mono(a: Lx, shift, c) -> Lx:
    if not a or not c:
        return {}
    return {vadd(e, shift): v * c for e, v in a.items()}


def xequal(a: Lx, b: Lx) -> bool:
    if set(a.keys()) != set(b.keys()):
        return False
    return all(a[e] == b[e] for e in a)


def constant_term(dom, f: Lx):
    return f.get((0,) * dom.rs.rank, dom.zero)


def xdiv_exact(dom, a: Lx, b: Lx):
    """Exact division in the Laurent ring; None when not divisible."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}
    n = dom.rs.rank
    for i in range(n):
        if (max(e[i] for e in a) - min(e[i] for e in a)
                < max(e[i] for e in b) - min(e[i] for e in b)):
            return None
    amin = tuple(min(e[i] for e in a) for i in range(n))
    bmin = tuple(min(e[i] for e in b) for i in range(n))
    ash = {tuple(x - m for x, m in zip(e, amin)): c for e, c in a.items()}
    bsh = {tuple(x - m for x, m in zip(e, bmin)): c for e, c in b.items()}
    lead = max(bsh)
    lead_c = bsh[lead]
    rem = ash
    quot: Lx = {}
    while rem:
        e = max(rem)
        if any(x < y for x, y in zip(e, lead)):
            return None
        qe = tuple(x - y for x, y in zip(e, lead))
        qc = rem[e] / lead_c
        quot[qe] = qc
        for eb, cb in bsh.items():
            k = vadd(qe, eb)
            s = rem.get(k)
            s = -qc * cb if s is None else s - qc * cb
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    shift = tuple(x - y for x, y in zip(amin, bmin))
    if any(shift):
        quot = {vadd(e, shift): c for e, c in quot.items()}
    return quot


# -- actions -----------------------------------------------------------------


def act_pair(dom, pair: AffinePair, f: Lx) -> Lx:
    """Action of the extended affine Weyl element (w, b) on a polynomial."""
    rs = dom.rs
    w, b = pair
    if w == 0 and not any(b):
        return dict(f)
    out: Lx = {}
    for e, c in f.items():
        img = rs.act(w, e)
        k = rs.pairing(e, b)
        if k:
            c = c * dom.q_power(-k)
        s = out.get(img)
        s = c if s is None else s + c
        if s:
            out[img] = s
        else:
            out.pop(img, None)
    return out


def act_simple(dom, j: int, f: Lx) -> Lx:
    return act_pair(dom, dom.rs.aff_simple_pair(j), f)


def act_pi(dom, r: int, f: Lx) -> Lx:
    return act_pair(dom, dom.rs.pi_pair(r), f)


def star(dom, f: Lx) -> Lx:
    """x_b -> x_{-b} together with q -> 1/q, t -> 1/t on coefficients."""
    return {vneg(e): dom.conjugate(c) for e, c in f.items()}


def xbar(f: Lx) -> Lx:
    """x_b -> x_{-b} with coefficients untouched."""
    return {vneg(e): c for e, c in f.items()}


# -- evaluation points --------------------------------------------------------


class Point:
    """The point g * (t^{sign*rho}) for an extended affine Weyl element g.

    Monomial values are x_e(pt) = (g^{-1}(x_e))(t^{sign*rho}), so that the
    contragredient action (w f)(pt) = f(w^{-1} pt) holds.
    """

    __slots__ = ("dom", "ginv", "sign", "key")

    def __init__(self, dom, sign: int = -1, ginv: AffinePair | None = None):
        self.dom = dom
        self.sign = sign
        self.ginv = ginv if ginv is not None else dom.rs.aff_identity()
        self.key = (self.ginv, sign)

    def transform(self, pair: AffinePair) -> "Point":
        """The point pair^{-1} * self (used when moving an operator past f)."""
        # new g = pair^{-1} g  =>  new g^{-1} = g^{-1} * pair
        return Point(self.dom, self.sign, self.dom.rs.aff_mul(self.ginv, pair))

    def translated(self, c) -> "Point":
        """The point q^c t^{sign*rho} (base point shifted by the translation c)."""
        rs = self.dom.rs
        return Point(self.dom, self.sign, rs.aff_mul(self.ginv, (0, vneg(tuple(c)))))

    def mono_value(self, e):
        """Value of x_e at this point."""
        dom = self.dom
        rs = dom.rs
        w, b = self.ginv
        img = rs.act(w, e)
        k = rs.pairing(e, b)  # q^{-k} from the translation part of g^{-1}
        val = dom.one
        if k:
            val = dom.q_power(-k)
        for nu in rs.nu_classes:
            r = rs.pairing(img, rs.rho_nu[nu])
            if r:
                val = val * dom.t_power(nu, self.sign * r)
        return val


def principal_point(dom, sign: int = -1, c=None) -> Point:
    """The point t^{sign*rho} q^c (c defaults to 0)."""
    p = Point(dom, sign)
    if c is not None and any(c):
        p = p.translated(c)
    return p


def eval_at(dom, f: Lx, pt: Point):
    total = dom.zero
    for e in sorted(f.keys()):
        total = total + f[e] * pt.mono_value(e)
    return total


def evaluate_spec(dom, f: Lx, sign: int, c):
    """f(t^{sign*rho} q^c) via the principal specialization of each monomial."""
    return eval_at(dom, f, principal_point(dom, sign, c))


# -- standard polynomials -----------------------------------------------------


def mono_symmetric(dom, b) -> Lx:
    """Monomial symmetric function m_b = sum over the W-orbit of b (b in B_-)."""
    rs = dom.rs
    if not rs.anti_dominant(b):
        raise ValueError(f"{b} is not anti-dominant")
    return {e: dom.one for e in rs.orbit(b)}


def mu_product(dom, k: dict) -> Lx:
    """The product mu at t_nu = q_nu^{k_nu}, a finite Laurent polynomial.

    mu = prod over positive coroots a of
         prod_{i=0}^{k_a - 1} (1 - x_a q_a^i)(1 - x_a^{-1} q_a^{i+1}).
    """
    rs = dom.rs
    k = {Fraction(nu): int(v) for nu, v in k.items()}
    out = xone(dom)
    for idx in range(rs.n_pos):
        a = rs.pos_coroots[idx]
        nu = rs.root_nu[idx]
        qa = Fraction(2) / nu  # q_a = q^{2/nu}
        for i in range(k[nu]):
            f1 = xadd(xone(dom), xmono(dom, a, -dom.q_power(qa * i)))
            f2 = xadd(xone(dom), xmono(dom, vneg(a), -dom.q_power(qa * (i + 1))))
            out = xmul(out, xmul(f1, f2))
    return out


def mu_prime(dom, k: dict) -> Lx:
    """Symmetric variant: prod (1 - x_a q_a^i)(1 - x_a^{-1} q_a^i), i < k_a."""
    rs = dom.rs
    k = {Fraction(nu): int(v) for nu, v in k.items()}
    out = xone(dom)
    for idx in range(rs.n_pos):
        a = rs.pos_coroots[idx]
        nu = rs.root_nu[idx]
        qa = Fraction(2) / nu
        for i in range(k[nu]):
            f1 = xadd(xone(dom), xmono(dom, a, -dom.q_power(qa * i)))
            f2 = xadd(xone(dom), xmono(dom, vneg(a), -dom.q_power(qa * i)))
            out = xmul(out, xmul(f1, f2))
    return out


def consterm_value(dom, k: dict):
    """Closed product for <mu> at t_nu = q_nu^{k_nu} (telescoped to finite form)."""
    rs = dom.rs
    k = {Fraction(nu): int(v) for nu, v in k.items()}
    val = dom.one
    for idx in range(rs.n_pos):
        a = rs.pos_coroots[idx]
        nu = rs.root_nu[idx]
        qa = Fraction(2) / nu
        ka = k[nu]
        # x_a(t^rho) at t = q^k is the q-power q^{sum_nu' (2 k_nu'/nu') (a, rho_nu')}
        ex = sum(Fraction(2 * k[nu2], 1) / nu2 * rs.pairing(a, rs.rho_nu[nu2])
                 for nu2 in rs.nu_classes)
        for i in range(1, ka + 1):
            val = val * (dom.one - dom.q_power(ex + qa * i))
        for i in range(0, ka):
            val = val / (dom.one - dom.q_power(ex - qa * i))
    return val


def inner_mu(dom, mu1: Lx, f: Lx, g: Lx):
    """<mu1 f g*> for a precomputed mu1 = mu/<mu>; the Macdonald inner product."""
    h = xmul(f, star(dom, g))
    total = dom.zero
    for e in sorted(h.keys()):
        c = mu1.get(vneg(e))
        if c is not None:
            total = total + h[e] * c
    return total


def render_poly(dom, f: Lx, var: str = "x") -> str:
    """Canonical text form sorted by lex weight."""
    if not f:
        return "0"
    parts = []
    for e in sorted(f.keys()):
        mono = " ".join(f"{var}{i+1}^{v}" for i, v in enumerate(e) if v)
        cs = dom.render(f[e])
        parts.append(f"({cs})" + (f" {mono}" if mono else ""))
    return " + ".join(parts)


def poly_json(dom, f: Lx) -> list:
    return [[list(e), dom.render(f[e])] for e in sorted(f.keys())]
