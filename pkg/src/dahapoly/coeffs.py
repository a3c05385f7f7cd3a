"""Exact coefficient domains carrying q and t.

Three interchangeable scalar kinds, all operator-overloaded so the rest of
the library is generic:

  * SymScalar  -- element of the rational-function field Q(q0, s_nu), kept as
    a Laurent-polynomial numerator over a *factored* denominator (a multiset
    of canonical polynomial factors).  Cancellation is exact division by a
    known factor, never a blind multivariate gcd.
  * Fraction   -- plain rationals, for fixed rational specializations.
  * CycElem    -- elements of the cyclotomic field Q(zeta_M).

The generator conventions: q0 = q^(1/(2 m̂)) and s_nu = t_nu^(1/2), where
2 m̂ is the q-exponent denominator fixed by the root system.  Every exponent
the library ever produces is integral in these generators.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

# ---------------------------------------------------------------------------
# Sparse Laurent polynomials over Q: dict[exponent tuple -> Fraction].
# The zero polynomial is the empty dict.
# ---------------------------------------------------------------------------


def pzero():
    return {}


def pconst(nvars: int, c) -> dict:
    c = Fraction(c)
    return {} if c == 0 else {(0,) * nvars: c}


def pmono(exps: tuple, c=1) -> dict:
    c = Fraction(c)
    return {} if c == 0 else {tuple(exps): c}


def padd(a: dict, b: dict) -> dict:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def pneg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def pscale(a: dict, c: Fraction) -> dict:
    if not c:
        return {}
    return {e: c * x for e, x in a.items()}


def pmul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e)
            if s is None:
                out[e] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def pmul_mono(a: dict, exps: tuple, c: Fraction) -> dict:
    if not c or not a:
        return {}
    return {tuple(x + y for x, y in zip(e, exps)): c * v for e, v in a.items()}


def ppow(a: dict, n: int, nvars: int) -> dict:
    if n < 0:
        raise ValueError("negative power of a general polynomial")
    out = pconst(nvars, 1)
    base = a
    while n:
        if n & 1:
            out = pmul(out, base)
        base = pmul(base, base) if n > 1 else base
        n >>= 1
    return out


def pshift_min(a: dict):
    """Extract the per-variable minimum exponents; returns (mins, shifted)."""
    ks = list(a.keys())
    mins = tuple(min(e[i] for e in ks) for i in range(len(ks[0])))
    if all(m == 0 for m in mins):
        return mins, a
    return mins, {tuple(x - m for x, m in zip(e, mins)): c for e, c in a.items()}


def pdiv_exact(a: dict, b: dict):
    """Exact division a / b in the Laurent ring; None if not divisible."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    # necessary condition: the exponent box of b fits inside that of a
    n = len(next(iter(a)))
    for i in range(n):
        if (max(e[i] for e in a) - min(e[i] for e in a)
                < max(e[i] for e in b) - min(e[i] for e in b)):
            return None
    amin, ash = pshift_min(a)
    bmin, bsh = pshift_min(b)
    lead = max(bsh)
    lead_c = bsh[lead]
    rem = dict(ash)
    quot: dict = {}
    while rem:
        e = max(rem)
        if any(x < y for x, y in zip(e, lead)):
            return None
        qe = tuple(x - y for x, y in zip(e, lead))
        qc = rem[e] / lead_c
        quot[qe] = qc
        for eb, cb in bsh.items():
            k = tuple(x + y for x, y in zip(qe, eb))
            s = rem.get(k, Fraction(0)) - qc * cb
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    shift = tuple(x - y for x, y in zip(amin, bmin))
    if any(shift):
        quot = {tuple(x + s for x, s in zip(e, shift)): c for e, c in quot.items()}
    return quot


def psubs_mono(a: dict, images: list) -> dict:
    """Substitute generator i by the monomial images[i] = (coeff, exps)."""
    out: dict = {}
    for e, c in a.items():
        coeff = c
        exps = [0] * len(images[0][1])
        for i, ei in enumerate(e):
            if ei == 0:
                continue
            ci, mi = images[i]
            if ci != 1:
                coeff = coeff * (ci ** ei)
            for j, mj in enumerate(mi):
                exps[j] += ei * mj
        k = tuple(exps)
        s = out.get(k, Fraction(0)) + coeff
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def peval(a: dict, values: list):
    """Evaluate at invertible values (anything with ** and *)."""
    if not a:
        return 0
    total = None
    for e, c in sorted(a.items()):
        term = None
        for v, ei in zip(values, e):
            if ei == 0:
                continue
            f = v ** ei
            term = f if term is None else term * f
        term = c if term is None else term * c
        total = term if total is None else total + term
    return total


def pnormal_factor(a: dict):
    """Canonical form of a nonzero factor.

    Returns (coeff, exps, canon) with a == coeff * x^exps * canon, where canon
    has exponent minimum 0 in each variable and its lexicographically smallest
    term has coefficient 1.
    """
    mins, sh = pshift_min(a)
    e0 = min(sh)
    c0 = sh[e0]
    if c0 != 1:
        sh = {e: c / c0 for e, c in sh.items()}
    return c0, mins, sh


def pkey(a: dict):
    return tuple(sorted((e, (c.numerator, c.denominator)) for e, c in a.items()))


# ---------------------------------------------------------------------------
# SymScalar: factored fractions num / prod(factor^mult).
# ---------------------------------------------------------------------------


class SymScalar:
    __slots__ = ("dom", "num", "den")

    def __init__(self, dom, num: dict, den: dict | None = None):
        self.dom = dom
        self.num = num
        self.den = den or {}

    # den maps factor-key -> (canonical factor poly, multiplicity >= 1)

    def _coerce(self, other):
        if isinstance(other, SymScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return SymScalar(self.dom, pconst(self.dom.nvars, other))
        return NotImplemented

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return self.num == o.num
        a = self.num
        for f, m in o.den.values():
            for _ in range(m):
                a = pmul(a, f)
        b = o.num
        for f, m in self.den.values():
            for _ in range(m):
                b = pmul(b, f)
        return a == b

    def __hash__(self):
        raise TypeError("SymScalar is unhashable; use dom.scalar_key")

    def __neg__(self):
        return SymScalar(self.dom, pneg(self.num), dict(self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            s = padd(self.num, o.num)
            if not s:
                return self.dom.zero
            return SymScalar(self.dom, s, dict(self.den))._cancel()
        merged: dict = {}
        for k, (f, m) in self.den.items():
            merged[k] = (f, m)
        for k, (f, m) in o.den.items():
            if k in merged:
                merged[k] = (f, max(merged[k][1], m))
            else:
                merged[k] = (f, m)
        a = self.num
        for k, (f, m) in merged.items():
            extra = m - (self.den[k][1] if k in self.den else 0)
            for _ in range(extra):
                a = pmul(a, f)
        b = o.num
        for k, (f, m) in merged.items():
            extra = m - (o.den[k][1] if k in o.den else 0)
            for _ in range(extra):
                b = pmul(b, f)
        s = padd(a, b)
        if not s:
            return self.dom.zero
        return SymScalar(self.dom, s, merged)._cancel()

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.num or not o.num:
            return self.dom.zero
        num = pmul(self.num, o.num)
        if not self.den and not o.den:
            return SymScalar(self.dom, num)
        den = dict(self.den)
        for k, (f, m) in o.den.items():
            if k in den:
                den[k] = (f, den[k][1] + m)
            else:
                den[k] = (f, m)
        return SymScalar(self.dom, num, den)._cancel()

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero scalar")
        c0, mins, canon = pnormal_factor(self.num)
        # numerator becomes old denominator times the extracted unit's inverse
        num = pmono(tuple(-x for x in mins), 1 / c0)
        for k, (f, m) in self.den.items():
            for _ in range(m):
                num = pmul(num, f)
        if len(canon) == 1:
            # canon is the monomial 1 after normalization
            return SymScalar(self.dom, num)
        den = {pkey(canon): (canon, 1)}
        return SymScalar(self.dom, num, den)._cancel()

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inv()

    def __pow__(self, n: int):
        if n == 0:
            return self.dom.one
        if n < 0:
            return self.inv() ** (-n)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def _cancel(self):
        if not self.den or not self.num:
            if not self.num:
                self.den = {}
            return self
        if not getattr(self.dom, "auto_cancel", True):
            return self
        num = self.num
        new_den: dict = {}
        for k, (f, m) in self.den.items():
            while m > 0:
                q = pdiv_exact(num, f)
                if q is None:
                    break
                num = q
                m -= 1
            if m > 0:
                new_den[k] = (f, m)
        self.num = num
        self.den = new_den
        return self

    def reduce(self):
        """Force factor cancellation regardless of the domain batch flag."""
        if not self.den or not self.num:
            if not self.num:
                self.den = {}
            return self
        num = self.num
        new_den: dict = {}
        for k, (f, m) in self.den.items():
            while m > 0:
                q = pdiv_exact(num, f)
                if q is None:
                    break
                num = q
                m -= 1
            if m > 0:
                new_den[k] = (f, m)
        self.num = num
        self.den = new_den
        return self

    def as_pair(self):
        """(num, den) with the denominator expanded to a single polynomial."""
        den = pconst(self.dom.nvars, 1)
        for f, m in self.den.values():
            for _ in range(m):
                den = pmul(den, f)
        return self.num, den

    def __repr__(self):
        return f"SymScalar({self.dom.render(self)})"


# ---------------------------------------------------------------------------
# Cyclotomic field elements.
# ---------------------------------------------------------------------------


def cyclotomic_poly(M: int) -> list:
    """Integer coefficient list (low to high) of the M-th cyclotomic polynomial."""
    poly = [Fraction(-1)] + [Fraction(0)] * (M - 1) + [Fraction(1)]  # x^M - 1
    for d in range(1, M):
        if M % d == 0:
            phi_d = cyclotomic_poly(d)
            poly = _poly_div_exact(poly, phi_d)
    return poly


def _poly_div_exact(a: list, b: list) -> list:
    a = list(a)
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        out[i] = c
        if c:
            for j, bc in enumerate(b):
                a[i + j] -= c * bc
    assert all(x == 0 for x in a), "non-exact cyclotomic division"
    return out


class CycElem:
    __slots__ = ("dom", "coords")

    def __init__(self, dom, coords: tuple):
        self.dom = dom
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, CycElem):
            return other
        if isinstance(other, (int, Fraction)):
            return self.dom.from_fraction(Fraction(other))
        return NotImplemented

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        raise TypeError("CycElem is unhashable; use dom.scalar_key")

    def __neg__(self):
        return CycElem(self.dom, tuple(-x for x in self.coords))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycElem(self.dom, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycElem(self.dom, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.dom.deg
        conv = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(o.coords):
                if b:
                    conv[i + j] += a * b
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                red = self.dom.reductions[k - d]
                for j in range(d):
                    out[j] += c * red[j]
        return CycElem(self.dom, tuple(out))

    __rmul__ = __mul__

    def inv(self):
        return self.dom.invert(self)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = self.dom.one
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __repr__(self):
        return f"CycElem({self.dom.render(self)})"


# ---------------------------------------------------------------------------
# Domains.
# ---------------------------------------------------------------------------


class DomainError(ValueError):
    pass


class ExponentError(DomainError):
    """q- or t-exponent off the admissible grid."""


class _BaseDomain:
    def check_q_exponent(self, r: Fraction) -> int:
        e = Fraction(r) * self.q_denom
        if e.denominator != 1:
            raise ExponentError(f"q-exponent {r} not in (1/{self.q_denom})Z")
        return int(e)

    def from_int(self, n: int):
        return self.from_fraction(Fraction(n))


class SymbolicDomain(_BaseDomain):
    """Rational functions of q0 and the unpinned s_nu over Q.

    t-classes can be pinned to q-powers (t_nu = q^(2 k_nu / nu)) or to 1; the
    remaining classes contribute one generator s_nu = t_nu^(1/2) each.
    """

    mode = "symbolic"

    def __init__(self, rs, t_pins: dict | None = None, t_ones: frozenset = frozenset()):
        self.rs = rs
        self.q_denom = rs.q_denom
        self.t_pins = dict(t_pins or {})
        self.t_ones = frozenset(t_ones)
        self.free_classes = tuple(nu for nu in rs.nu_classes
                                  if nu not in self.t_pins and nu not in self.t_ones)
        self.gens = ("q0",) + tuple(self._s_name(nu) for nu in self.free_classes)
        self.nvars = len(self.gens)
        self.auto_cancel = True
        self._s_index = {nu: 1 + i for i, nu in enumerate(self.free_classes)}
        self.zero = SymScalar(self, {})
        self.one = SymScalar(self, pconst(self.nvars, 1))

    @staticmethod
    def _s_name(nu) -> str:
        return {Fraction(2): "sL", Fraction(1): "sM", Fraction(2, 3): "sS"}[Fraction(nu)]

    def from_fraction(self, fr: Fraction):
        return SymScalar(self, pconst(self.nvars, fr))

    def q_power(self, r) -> SymScalar:
        e = self.check_q_exponent(Fraction(r))
        exps = [0] * self.nvars
        exps[0] = e
        return SymScalar(self, pmono(tuple(exps), 1))

    def t_power(self, nu, r) -> SymScalar:
        """t_nu^r for half-integral r."""
        nu = Fraction(nu)
        r = Fraction(r)
        if (2 * r).denominator != 1:
            raise ExponentError(f"t-exponent {r} is not half-integral")
        if nu in self.t_ones:
            return self.one
        if nu in self.t_pins:
            k = self.t_pins[nu]
            return self.q_power(Fraction(2 * k, 1) / nu * r)
        exps = [0] * self.nvars
        exps[self._s_index[nu]] = int(2 * r)
        return SymScalar(self, pmono(tuple(exps), 1))

    def conjugate(self, x: SymScalar) -> SymScalar:
        num = {tuple(-e for e in k): c for k, c in x.num.items()}
        out = SymScalar(self, num)
        for f, m in x.den.values():
            finv = {tuple(-e for e in k): c for k, c in f.items()}
            c0, mins, canon = pnormal_factor(finv)
            for _ in range(m):
                out = out * SymScalar(self, pmono(tuple(-x2 for x2 in mins), 1 / c0))
            if len(canon) > 1:
                den = {pkey(canon): (canon, m)}
                out = out * SymScalar(self, pconst(self.nvars, 1), den)
        return out

    def shift_t(self, classes):
        """Domain with t_nu -> t_nu * q_nu for nu in classes, plus an element map."""
        classes = frozenset(Fraction(nu) for nu in classes)
        pins = dict(self.t_pins)
        for nu in classes:
            if nu in pins:
                pins[nu] = pins[nu] + 1
        new = SymbolicDomain(self.rs, pins, self.t_ones)
        images = []
        for i, g in enumerate(self.gens):
            exps = [0] * self.nvars
            exps[i] = 1
            images.append((Fraction(1), tuple(exps)))
        for nu in classes:
            if nu in self._s_index:
                # s_nu -> s_nu * q0^(2 m_hat / nu)
                i = self._s_index[nu]
                exps = list(images[i][1])
                exps[0] += int(Fraction(self.q_denom, 1) / nu)
                images[i] = (Fraction(1), tuple(exps))

        def mapper(x: SymScalar) -> SymScalar:
            num = psubs_mono(x.num, images)
            out = SymScalar(new, num)
            for f, m in x.den.values():
                fi = psubs_mono(f, images)
                c0, mins, canon = pnormal_factor(fi)
                out = out * SymScalar(new, pmono(tuple(-e for e in mins), 1 / c0)) ** m
                if len(canon) > 1:
                    out = out * SymScalar(new, pconst(new.nvars, 1),
                                          {pkey(canon): (canon, m)})
            return out

        return new, mapper

    def shift_subst(self, classes):
        """In-domain substitution s_nu -> s_nu * q0^(2 m_hat / nu), realizing
        the parameter shift t_nu -> t_nu q_nu on free generators."""
        classes = frozenset(Fraction(nu) for nu in classes)
        bad = [nu for nu in classes if nu not in self._s_index]
        if bad:
            raise DomainError(f"classes {bad} are pinned; use shift_t instead")
        images = []
        for i in range(self.nvars):
            exps = [0] * self.nvars
            exps[i] = 1
            images.append((Fraction(1), tuple(exps)))
        for nu in classes:
            i = self._s_index[nu]
            exps = list(images[i][1])
            exps[0] += int(Fraction(self.q_denom, 1) / nu)
            images[i] = (Fraction(1), tuple(exps))

        def subs(x: SymScalar) -> SymScalar:
            num = psubs_mono(x.num, images)
            out = SymScalar(self, num)
            for f, m in x.den.values():
                fi = psubs_mono(f, images)
                c0, mins, canon = pnormal_factor(fi)
                out = out * SymScalar(self, pmono(tuple(-e for e in mins),
                                                  1 / c0)) ** m
                if len(canon) > 1:
                    out = out * SymScalar(self, pconst(self.nvars, 1),
                                          {pkey(canon): (canon, m)})
            return out

        return subs

    def scalar_key(self, x: SymScalar):
        num, den = x.as_pair()
        return (pkey(num), pkey(den))

    def render(self, x: SymScalar) -> str:
        num, den = x.as_pair()
        s = _render_poly(num, self.gens)
        if den != pconst(self.nvars, 1):
            s = f"({s})/({_render_poly(den, self.gens)})"
        return s

    def sort_key(self, x: SymScalar):
        return self.scalar_key(x)


class RationalDomain(_BaseDomain):
    """q0 and s_nu fixed to exact rationals; scalars are plain Fractions."""

    mode = "rational"

    def __init__(self, rs, q0: Fraction, s_values: dict):
        self.rs = rs
        self.q_denom = rs.q_denom
        self.q0 = Fraction(q0)
        if self.q0 == 0 or abs(self.q0) == 1:
            raise DomainError("q0 must be nonzero with |q0| != 1")
        self.s_values = {Fraction(nu): Fraction(v) for nu, v in s_values.items()}
        for nu in rs.nu_classes:
            if nu not in self.s_values:
                raise DomainError(f"missing s value for length class {nu}")
            if self.s_values[nu] == 0:
                raise DomainError("s values must be nonzero")
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.nvars = 0

    def from_fraction(self, fr: Fraction):
        return Fraction(fr)

    def q_power(self, r) -> Fraction:
        return self.q0 ** self.check_q_exponent(Fraction(r))

    def t_power(self, nu, r) -> Fraction:
        r = Fraction(r)
        if (2 * r).denominator != 1:
            raise ExponentError(f"t-exponent {r} is not half-integral")
        return self.s_values[Fraction(nu)] ** int(2 * r)

    def conjugate(self, x):
        raise DomainError(
            "conjugation q -> 1/q is not defined on a rational specialization")

    def scalar_key(self, x: Fraction):
        return (x.numerator, x.denominator)

    def render(self, x: Fraction) -> str:
        return str(x)

    sort_key = scalar_key


class CyclotomicDomain(_BaseDomain):
    """Q(zeta_M) with q0 = zeta_M and t_nu = q^(2 k_nu / nu) for integer k."""

    mode = "cyclotomic"

    def __init__(self, rs, N: int, k: dict, conductor: int | None = None):
        self.rs = rs
        self.q_denom = rs.q_denom
        self.N = N
        self.k = {Fraction(nu): int(kv) for nu, kv in k.items()}
        for nu in rs.nu_classes:
            if Fraction(nu) not in self.k:
                raise DomainError(f"missing k for length class {nu}")
        self.M = conductor if conductor is not None else rs.q_denom * N
        # q0 = zeta_M^q0_log with q0^q_denom a primitive N-th root of unity
        if self.M == rs.q_denom * N:
            self.q0_log = 1
        elif self.M == N and gcd(rs.q_denom, N) == 1:
            self.q0_log = pow(rs.q_denom, -1, N)
        else:
            raise DomainError(
                f"conductor {self.M} must be {rs.q_denom}*N or N coprime to {rs.q_denom}")
        phi = cyclotomic_poly(self.M)
        self.deg = len(phi) - 1
        self.phi = phi
        # reduction vectors for x^(deg + i), i = 0..deg-2
        reds = []
        prev = [-c for c in phi[:-1]]  # x^deg = -(lower part)
        reds.append(tuple(prev))
        for _ in range(self.deg - 2):
            nxt = [Fraction(0)] * self.deg
            # multiply prev by x and reduce
            carry = prev[self.deg - 1]
            for j in range(self.deg - 1, 0, -1):
                nxt[j] = prev[j - 1]
            nxt[0] = Fraction(0)
            if carry:
                for j in range(self.deg):
                    nxt[j] += carry * reds[0][j]
            reds.append(tuple(nxt))
            prev = nxt
        self.reductions = reds
        self.zero = CycElem(self, (Fraction(0),) * self.deg)
        self.one = CycElem(self, (Fraction(1),) + (Fraction(0),) * (self.deg - 1))
        # all powers zeta^j, j = 0..M-1
        powers = [self.one]
        zeta = CycElem(self, tuple(Fraction(int(i == 1)) for i in range(self.deg))) \
            if self.deg > 1 else CycElem(self, (Fraction(-phi[0]),))
        for _ in range(self.M - 1):
            powers.append(powers[-1] * zeta)
        self.zeta_powers = powers
        self.q0_elem = powers[self.q0_log % self.M]

    def from_fraction(self, fr: Fraction):
        return CycElem(self, (Fraction(fr),) + (Fraction(0),) * (self.deg - 1))

    def q_power(self, r) -> CycElem:
        e = self.check_q_exponent(Fraction(r))  # exponent of q0
        return self.zeta_powers[(e * self.q0_log) % self.M]

    def t_power(self, nu, r) -> CycElem:
        nu = Fraction(nu)
        r = Fraction(r)
        if (2 * r).denominator != 1:
            raise ExponentError(f"t-exponent {r} is not half-integral")
        # t_nu = q^(2 k / nu): exponent r gives q-exponent 2 k r / nu
        return self.q_power(Fraction(2 * self.k[nu], 1) / nu * r)

    def conjugate(self, x: CycElem) -> CycElem:
        out = self.zero
        for i, c in enumerate(x.coords):
            if c:
                out = out + self.zeta_powers[(-i) % self.M] * c
        return out

    def invert(self, x: CycElem) -> CycElem:
        if not x:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        # extended Euclid in Q[y] for (poly of x, Phi_M)
        a = list(x.coords)
        b = [Fraction(c) for c in self.phi]
        sa = [Fraction(1)]
        sb = [Fraction(0)]

        def strip(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        a, b = strip(a), strip(b)
        while len(b) > 0 and (len(b) > 1 or b[0] != 0):
            q, r = _poly_divmod(a, b)
            sa_new = _poly_sub(sa, _poly_mul(q, sb))
            a, sa = b, sb
            b, sb = strip(r), sa_new
        lead = a[-1] if a else None
        if lead is None or len(a) != 1:
            raise ZeroDivisionError("element not invertible (not coprime to Phi_M)")
        inv_coeffs = [c / lead for c in sa]
        inv_coeffs = inv_coeffs[:self.deg] + [Fraction(0)] * max(0, self.deg - len(inv_coeffs))
        return CycElem(self, tuple(inv_coeffs[:self.deg]))

    def scalar_key(self, x: CycElem):
        return tuple((c.numerator, c.denominator) for c in x.coords)

    def render(self, x: CycElem) -> str:
        terms = []
        for i, c in enumerate(x.coords):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        return " + ".join(terms) if terms else "0"

    sort_key = scalar_key


def _poly_divmod(a: list, b: list):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db] / lb
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return q, a[:db]


def _poly_mul(a: list, b: list):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
            for i in range(n)]


def _render_poly(p: dict, gens) -> str:
    if not p:
        return "0"
    parts = []
    for e, c in sorted(p.items()):
        factors = []
        for g, ei in zip(gens, e):
            if ei == 1:
                factors.append(g)
            elif ei != 0:
                factors.append(f"{g}^{ei}")
        mono = "*".join(factors)
        if mono:
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        else:
            parts.append(str(c))
    return " + ".join(parts)
