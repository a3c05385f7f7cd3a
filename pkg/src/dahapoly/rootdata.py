"""Exact root-system and affine Weyl group machinery for the reduced types A-G.

Weights are stored as integer tuples in the basis of fundamental coweights
b_1..b_n, so (b, alpha_j) is simply the j-th coordinate.  Roots and coroots
are kept in the same basis (roots may have rational coordinates); the
bilinear form is normalized so that (alpha, alpha) = 2 for long roots.

The extended affine Weyl group is represented by pairs (w, b) of a finite
Weyl element and a translation, acting on affine vectors [z, zeta] by
(w, b)([z, zeta]) = [w(z), zeta - (z, b)].
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import lcm

Coords = tuple[int, ...]
QCoords = tuple[Fraction, ...]

# Affine pair (index of finite Weyl element, translation in coweight coords).
AffinePair = tuple[int, Coords]


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def _mat_vec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_inv_int(m):
    """Inverse of a unimodular-over-Q integer matrix, as integer tuples."""
    inv = _mat_inv_fraction(m)
    return tuple(tuple(int(x) for x in row) for row in inv)


def _mat_inv_fraction(m):
    """Invert a square matrix of Fractions by Gaussian elimination."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(a[i][n + j] for j in range(n)) for i in range(n))


class ConfigurationError(ValueError):
    """Unsupported or inconsistent root-system request."""


class InvariantViolation(RuntimeError):
    """An internal structural guarantee failed; indicates a bug."""


def _cartan_and_lengths(label: str, rank: int):
    """Cartan matrix A[i][j] = (alpha_i, alpha_j^vee) and root lengths nu_i."""
    n = rank
    two = Fraction(2)
    one = Fraction(1)

    def chain(pairs, nu):
        a = [[2 * int(i == j) for j in range(n)] for i in range(n)]
        for (i, j, aij, aji) in pairs:
            a[i][j] = aij
            a[j][i] = aji
        return a, tuple(nu)

    if label == "A":
        if n < 1:
            raise ConfigurationError("A_n needs n >= 1")
        return chain([(i, i + 1, -1, -1) for i in range(n - 1)], [two] * n)
    if label == "B":
        if n < 2:
            raise ConfigurationError("B_n needs n >= 2 (use A1 for rank 1)")
        pairs = [(i, i + 1, -1, -1) for i in range(n - 2)] + [(n - 2, n - 1, -2, -1)]
        return chain(pairs, [two] * (n - 1) + [one])
    if label == "C":
        if n < 2:
            raise ConfigurationError("C_n needs n >= 2 (use A1 for rank 1)")
        pairs = [(i, i + 1, -1, -1) for i in range(n - 2)] + [(n - 2, n - 1, -1, -2)]
        return chain(pairs, [one] * (n - 1) + [two])
    if label == "D":
        if n < 4:
            raise ConfigurationError("D_n needs n >= 4")
        pairs = [(i, i + 1, -1, -1) for i in range(n - 3)]
        pairs += [(n - 3, n - 2, -1, -1), (n - 3, n - 1, -1, -1)]
        return chain(pairs, [two] * n)
    if label == "E":
        if n not in (6, 7, 8):
            raise ConfigurationError("E_n needs n in {6,7,8}")
        # Bourbaki numbering: chain 1-3-4-5-...-n with node 2 attached to 4.
        pairs = [(0, 2, -1, -1), (1, 3, -1, -1)]
        pairs += [(i, i + 1, -1, -1) for i in range(2, n - 1)]
        return chain(pairs, [two] * n)
    if label == "F":
        if n != 4:
            raise ConfigurationError("F requires rank 4")
        pairs = [(0, 1, -1, -1), (1, 2, -2, -1), (2, 3, -1, -1)]
        return chain(pairs, [two, two, one, one])
    if label == "G":
        if n != 2:
            raise ConfigurationError("G requires rank 2")
        # Node 1 is the long root here.
        return chain([(0, 1, -3, -1)], [two, Fraction(2, 3)])
    raise ConfigurationError(f"unknown type {label!r}")


def _paper_m(label: str, rank: int, det: int) -> int:
    """Denominator constant m for q-exponents attached to the system."""
    if label == "D":
        return 2 if rank % 2 == 0 else det
    if label == "C":
        return 2 if rank % 2 == 1 else 1
    if label == "B":
        return 1
    return det


class RootSystemData:
    """Immutable container for one reduced irreducible root system."""

    def __init__(self, label: str, rank: int, weyl_cap: int = 1200):
        label = label.upper()
        if (label, rank) in (("B", 1), ("C", 1)):
            label = "A"
        self.label = label
        self.rank = n = rank
        self.cartan, self.nu = _cartan_and_lengths(label, rank)
        self.nu_classes = tuple(sorted(set(self.nu), reverse=True))

        # Gram matrix of simple roots: S[i][j] = (alpha_i, alpha_j) = A[j][i] nu_i / 2.
        self.S = tuple(
            tuple(Fraction(self.cartan[j][i]) * self.nu[i] / 2 for j in range(n))
            for i in range(n)
        )
        # Pairing of fundamental coweights: (b_i, b_j) = (S^-1)[i][j].
        self.gram = _mat_inv_fraction(self.S)
        self.cartan_inv = _mat_inv_fraction(self.cartan)

        # Coroots a_i = alpha_i^vee have integer coweight coordinates A[. ][i].
        self.coroot = tuple(tuple(self.cartan[j][i] for j in range(n)) for i in range(n))
        # Simple roots alpha_i = (nu_i / 2) a_i, rational coordinates in general.
        self.alpha = tuple(
            tuple(Fraction(self.nu[i], 2) * self.coroot[i][j] for j in range(n))
            for i in range(n)
        )

        self._build_roots()
        self._build_weyl(weyl_cap)
        self._build_theta_and_pi()

        # rho_nu = (nu/2) sum of b_i over nu_i = nu; r_nu = sum of those b_i.
        self.r_nu = {
            nu: tuple(int(self.nu[i] == nu) for i in range(n)) for nu in self.nu_classes
        }
        self.rho_nu = {
            nu: vscale(Fraction(nu, 2), self.r_nu[nu]) for nu in self.nu_classes
        }
        self.rho = tuple(sum(self.rho_nu[nu][i] for nu in self.nu_classes)
                         for i in range(n))

        self.pi_index = _int_det(self.cartan)  # |B/A| = |Pi|
        self.m = _paper_m(label, rank, self.pi_index)
        denom = lcm(*(Fraction(self.gram[i][j]).denominator
                      for i in range(n) for j in range(n)))
        self.m_hat = lcm(2, self.m, denom)
        self.q_denom = 2 * self.m_hat  # q-exponents live in (1/q_denom) * Z

        self._minuscule()
        self._translation_word_cache: dict[Coords, tuple[int, tuple[int, ...]]] = {}

    # -- construction helpers -------------------------------------------------

    def _build_roots(self):
        n = self.rank
        seen = {self.alpha[i] for i in range(n)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(n):
                    img = self.reflect_simple(i, r)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        roots = sorted(seen)
        pos, neg = [], []
        for r in roots:
            m = _mat_vec(self.gram, r)  # simple-root coordinates of r
            if all(x >= 0 for x in m):
                pos.append((r, tuple(m)))
            else:
                neg.append((r, tuple(m)))
        if len(pos) != len(neg):
            raise InvariantViolation("positive/negative root count mismatch")
        pos.sort(key=lambda t: (sum(t[1]), t[0]))
        self.pos_roots = tuple(r for r, _ in pos)
        self.roots = self.pos_roots + tuple(vneg(r) for r in self.pos_roots)
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        self.n_pos = len(self.pos_roots)
        # Simple-root expansions (integer for every root).
        self.root_alpha_coords = tuple(
            tuple(int(x) for x in _mat_vec(self.gram, r)) for r in self.roots
        )
        if any(_mat_vec(self.gram, self.roots[i]) != self.root_alpha_coords[i]
               for i in range(len(self.roots))):
            raise InvariantViolation("non-integral simple-root coordinates")
        self.root_nu = tuple(self.pairing(r, r) for r in self.roots)
        # Positive coroots a = 2 alpha / (alpha, alpha), integer coordinates.
        self.pos_coroots = tuple(
            tuple(int(x) for x in vscale(Fraction(2) / self.root_nu[i], self.pos_roots[i]))
            for i in range(self.n_pos)
        )

    def _build_weyl(self, cap: int):
        n = self.rank
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        gens = []
        for i in range(n):
            cols = []
            for j in range(n):
                e = tuple(int(k == j) for k in range(n))
                cols.append(self.reflect_simple(i, e))
            # matrix acting on coordinate columns: entry [r][c] = image coord
            gens.append(tuple(tuple(cols[c][r] for c in range(n)) for r in range(n)))
        mats = [ident]
        index = {ident: 0}
        words: list[tuple[int, ...]] = [()]
        frontier = [0]
        while frontier:
            nxt = []
            for wi in frontier:
                for i in range(n):
                    m2 = _mat_mul(mats[wi], gens[i])  # w * s_i
                    if m2 not in index:
                        if len(mats) >= cap:
                            raise ConfigurationError(
                                f"Weyl group larger than cap {cap}; raise weyl_cap")
                        index[m2] = len(mats)
                        mats.append(m2)
                        words.append(words[wi] + (i,))
                        nxt.append(index[m2])
            frontier = nxt
        self.w_mats = tuple(mats)
        self.w_index = index
        self.w_words = tuple(words)
        self.w_len = tuple(len(w) for w in words)
        self.w_order = len(mats)
        self.simple_refl = tuple(index[g] for g in gens)
        self.w0 = max(range(self.w_order), key=lambda i: self.w_len[i])
        inv = []
        for i, m in enumerate(self.w_mats):
            inv.append(index[_mat_inv_int(m)])
        self.w_inv = tuple(inv)
        self._mul_cache: dict[tuple[int, int], int] = {}

    def _build_theta_and_pi(self):
        # theta = highest root (unique maximal height); theta^vee = theta is in B.
        heights = [sum(self.root_alpha_coords[i]) for i in range(self.n_pos)]
        it = max(range(self.n_pos), key=lambda i: heights[i])
        if self.root_nu[it] != 2:
            raise InvariantViolation("highest root is not long")
        th = self.pos_roots[it]
        self.theta = tuple(int(x) for x in th)
        self.theta_alpha = self.root_alpha_coords[it]
        self.s_theta = self.reflection_index(self.theta)

    def _minuscule(self):
        n = self.rank
        o_star = []
        for r in range(n):
            b = tuple(int(j == r) for j in range(n))
            if self.pair_theta(b) == 1:
                o_star.append(r + 1)  # 1-based node labels, 0 = affine node
        self.O_star = tuple(o_star)
        self.O = (0,) + self.O_star
        pi = {0: (0, (0,) * n)}
        omega = {}
        for r in self.O_star:
            br = tuple(int(j == r - 1) for j in range(n))
            stab = [w for w in range(self.w_order) if self.act(w, br) == br]
            w0r = max(stab, key=lambda w: self.w_len[w])
            om = self.mul(self.w0, w0r)
            omega[r] = om
            pi[r] = (self.w_inv[om], self.act(om, br))
        self.omega_r = omega
        self.pi_pairs = pi
        # pi_r as permutations of the affine Dynkin diagram nodes {0..n}.
        perm = {}
        for r in self.O:
            images = []
            for j in range(n + 1):
                img = self.aff_act(pi[r], self.aff_simple_root(j))
                jj = self._match_aff_simple(img)
                images.append(jj)
            perm[r] = tuple(images)
        self.pi_diagram_perm = perm

    # -- basic linear algebra --------------------------------------------------

    def pairing(self, b, c) -> Fraction:
        """Bilinear form (b, c); accepts integer or rational coordinate tuples."""
        g = self.gram
        n = self.rank
        return sum(b[i] * sum(g[i][j] * c[j] for j in range(n)) for i in range(n))

    def pair_theta(self, b) -> int:
        """(b, theta) via the integral simple-root expansion of theta."""
        return sum(m * x for m, x in zip(self.theta_alpha, b))

    def pair_root(self, root_idx: int, b) -> int:
        """(b, root) for a root given by index; exact integer for b in B."""
        v = sum(m * x for m, x in zip(self.root_alpha_coords[root_idx], b))
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise InvariantViolation("non-integral root pairing on B")
            v = int(v)
        return v

    def reflect_simple(self, i: int, b):
        """s_i(b) = b - (b, alpha_i) a_i; (b, alpha_i) is the i-th coordinate."""
        k = b[i]
        return tuple(x - k * a for x, a in zip(b, self.coroot[i]))

    def reflection_index(self, root: Coords) -> int:
        """Index in W of the reflection in the given root."""
        nu = self.pairing(root, root)
        cor = vscale(Fraction(2) / nu, root)
        n = self.rank
        cols = []
        for j in range(n):
            e = tuple(int(k2 == j) for k2 in range(n))
            img = tuple(e[i] - self.pairing(e, root) * cor[i] for i in range(n))
            cols.append(img)
        mat = tuple(tuple(int(cols[c][r]) for c in range(n)) for r in range(n))
        return self.w_index[mat]

    def act(self, w: int, b):
        return _mat_vec(self.w_mats[w], b)

    def mul(self, w1: int, w2: int) -> int:
        key = (w1, w2)
        r = self._mul_cache.get(key)
        if r is None:
            r = self.w_index[_mat_mul(self.w_mats[w1], self.w_mats[w2])]
            self._mul_cache[key] = r
        return r

    def det_w(self, w: int) -> int:
        return -1 if self.w_len[w] % 2 else 1

    # -- order and chambers ----------------------------------------------------

    def anti_dominant(self, b) -> bool:
        return all(x <= 0 for x in b)

    def dominant(self, b) -> bool:
        return all(x >= 0 for x in b)

    def to_anti_dominant(self, b) -> Coords:
        """The unique anti-dominant element of W(b)."""
        cur = tuple(b)
        while True:
            for i in range(self.rank):
                if cur[i] > 0:
                    cur = self.reflect_simple(i, cur)
                    break
            else:
                return cur

    def dominance_compare(self, b, c) -> str:
        """Compare in dominance order: c - b against the positive coroot cone."""
        d = vsub(c, b)
        coords = _mat_vec(self.cartan_inv, d)
        if any(x.denominator != 1 for x in coords):
            return "incomparable"
        if all(x == 0 for x in coords):
            return "equal"
        if all(x >= 0 for x in coords):
            return "greater"
        if all(x <= 0 for x in coords):
            return "less"
        return "incomparable"

    def level(self, b) -> int:
        return sum(abs(x) for x in b)

    def orbit(self, b) -> list[Coords]:
        """W-orbit of b, sorted for determinism."""
        seen = {tuple(b)}
        frontier = [tuple(b)]
        while frontier:
            nxt = []
            for x in frontier:
                for i in range(self.rank):
                    y = self.reflect_simple(i, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    # -- extended affine Weyl group ---------------------------------------------

    def aff_identity(self) -> AffinePair:
        return (0, (0,) * self.rank)

    def aff_mul(self, g1: AffinePair, g2: AffinePair) -> AffinePair:
        w1, b1 = g1
        w2, b2 = g2
        return (self.mul(w1, w2), vadd(self.act(self.w_inv[w2], b1), b2))

    def aff_inv(self, g: AffinePair) -> AffinePair:
        w, b = g
        return (self.w_inv[w], vneg(self.act(w, b)))

    def aff_simple_pair(self, j: int) -> AffinePair:
        """s_j as an affine pair; s_0 = (s_theta, -theta^vee)."""
        if j == 0:
            return (self.s_theta, vneg(self.theta))
        return (self.simple_refl[j - 1], (0,) * self.rank)

    def aff_simple_root(self, j: int):
        """Affine simple root as (root index, level k)."""
        if j == 0:
            return (self.root_index[vneg(tuple(Fraction(x) for x in self.theta))], 1)
        return (self.root_index[self.alpha[j - 1]], 0)

    def aff_act(self, g: AffinePair, aff_root):
        """(w, b)([alpha, k]) = [w(alpha), k - (alpha, b)]."""
        w, b = g
        ridx, k = aff_root
        img = self.act(w, self.roots[ridx])
        return (self.root_index[img], k - self.pair_root(ridx, b))

    def aff_root_negative(self, aff_root) -> bool:
        ridx, k = aff_root
        return k < 0 or (k == 0 and ridx >= self.n_pos)

    def _match_aff_simple(self, aff_root):
        for j in range(self.rank + 1):
            if self.aff_simple_root(j) == aff_root:
                return j
        return None

    def translation_pair(self, b) -> AffinePair:
        return (0, tuple(b))

    def pi_pair(self, r: int) -> AffinePair:
        return self.pi_pairs[r]

    def aff_lengths(self, g: AffinePair) -> dict[Fraction, int]:
        """l_nu(w hat) = number of positive affine roots of length nu made negative."""
        w, b = g
        out = {nu: 0 for nu in self.nu_classes}
        for i in range(self.n_pos):
            k = self.pair_root(i, b)
            w_neg = self.root_index[self.act(w, self.pos_roots[i])] >= self.n_pos
            # [alpha, j], j >= 0 goes negative for j < k, plus j = k when
            # w(alpha) < 0; [-alpha, j], j >= 1 for j < -k, plus j = -k when
            # w(alpha) > 0.
            if k >= 0:
                cnt = k + (1 if w_neg else 0)
            else:
                cnt = -k - (1 if w_neg else 0)
            out[self.root_nu[i]] += cnt
        return out

    def aff_length(self, g: AffinePair) -> int:
        return sum(self.aff_lengths(g).values())

    def lambda_set(self, g: AffinePair) -> list:
        """All positive affine roots sent negative by g (the set lambda(w hat))."""
        out = []
        w, b = g
        for i in range(self.n_pos):
            k = self.pair_root(i, b)
            w_neg = self.root_index[self.act(w, self.pos_roots[i])] >= self.n_pos
            # [alpha, j] for j >= 0 maps to level j - k
            top = k + 1 if w_neg else k
            for j in range(0, max(0, top)):
                out.append((i, j))
            # [-alpha, j] for j >= 1 maps to level j + k
            top2 = -k - 1 if w_neg else -k
            for j in range(1, max(0, top2) + 1):
                out.append((i + self.n_pos, j))
        return sorted(out)

    def reduced_word(self, g: AffinePair) -> tuple[int, tuple[int, ...]]:
        """Write g = pi_r s_{j_1} ... s_{j_l}; returns (r, (j_1..j_l))."""
        cur = g
        rev: list[int] = []
        total = self.aff_length(g)
        for _ in range(total):
            for j in range(self.rank + 1):
                if self.aff_root_negative(self.aff_act(cur, self.aff_simple_root(j))):
                    rev.append(j)
                    cur = self.aff_mul(cur, self.aff_simple_pair(j))
                    break
            else:
                raise InvariantViolation("no descent found for positive-length element")
        for r in self.O:
            if self.pi_pairs[r] == cur:
                return r, tuple(reversed(rev))
        raise InvariantViolation("length-zero element is not in Pi")

    def recompose(self, r: int, word) -> AffinePair:
        g = self.pi_pairs[r]
        for j in word:
            g = self.aff_mul(g, self.aff_simple_pair(j))
        return g

    def translation_word(self, b) -> tuple[int, tuple[int, ...]]:
        key = tuple(b)
        if key not in self._translation_word_cache:
            self._translation_word_cache[key] = self.reduced_word((0, key))
        return self._translation_word_cache[key]

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "type": self.label,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "simple_root_lengths": [str(nu) for nu in self.nu],
            "positive_roots": [[str(x) for x in r] for r in self.pos_roots],
            "fundamental_coweight_gram": [[str(x) for x in row] for row in self.gram],
            "theta": list(self.theta),
            "m": self.m,
            "q_exponent_denominator": self.q_denom,
            "weyl_order": self.w_order,
            "O": list(self.O),
        }


def _int_det(m) -> int:
    """Determinant of an integer matrix (fraction-free Gaussian elimination)."""
    a = [list(map(Fraction, row)) for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    assert det.denominator == 1
    return int(det)


def _det_fraction(m) -> Fraction:
    a = [list(row) for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


@lru_cache(maxsize=None)
def build_root_system(label: str, rank: int, weyl_cap: int = 1200) -> RootSystemData:
    """Construct (and cache) the root system of the given type and rank."""
    return RootSystemData(label, rank, weyl_cap)
