"""Arithmetic in R = Z[2cos(2pi/p)] and constructive lattice splitting.

The ring R is the ring of integers of the maximal real subfield of the
p-th cyclotomic field (p an odd prime), generated by beta = 2cos(2pi/p)
with monic minimal polynomial mu of degree (p-1)/2.  Everything here is
exact: elements are integer coefficient vectors in the power basis of
beta, and all module claims are certified by Smith normal forms.

Contents:

* ``real_cyclotomic``  construct R; mu is extracted from the identity
  mu(X^2 - 2) = U_{p-1}(X/2), an exact integer change of basis
* ``factor_two``       factor mu mod 2 (distinct/equal-degree splitting)
* ``idempotents_mod2`` CRT idempotents of R/2R
* ``galois``           matrices of the Galois group on the power basis
* ``lattice_split``    the constructive proof that M[G]/N[G] splits off a
  free part: M[G] = L_0 + L_1 with N[G] = 2L_0 + L_1, SNF-certified
* ``involution_split`` eigenlattice decomposition for an R-linear
  involution Y, with a Higman certificate for the projective remainder
* ``resolve_z2_module`` four-term resolutions of R[Z/2Z]-modules
* ``higman_check``     verify x = phi(x) + phi(xY)Y
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd

from .exactalg import (
    IntMatrix,
    PolyF2,
    PolyZ,
    chebyshev_t2,
    chebyshev_u,
    kernel_basis,
    smith_normal_form,
    solve_linear,
)


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class RealCyclotomic:
    """The ring Z[beta], beta = 2cos(2pi/p), in the power basis of beta.

    Elements are PolyZ of degree < (p-1)/2; reduction is exact division
    by the monic mu.
    """

    __slots__ = ("p", "mu", "degree")

    def __init__(self, p: int, mu: PolyZ):
        self.p = p
        self.mu = mu
        self.degree = mu.degree()

    def reduce(self, a: PolyZ) -> PolyZ:
        if a.degree() < self.degree:
            return a
        _, r = a.divmod_exact(self.mu)
        return r

    def mul(self, a: PolyZ, b: PolyZ) -> PolyZ:
        return self.reduce(a * b)

    def power(self, a: PolyZ, e: int) -> PolyZ:
        acc = PolyZ([1])
        for _ in range(e):
            acc = self.mul(acc, a)
        return acc

    def coeff_vector(self, a: PolyZ) -> list:
        a = self.reduce(a)
        c = list(a.coeffs)
        return c + [0] * (self.degree - len(c))

    def from_vector(self, v) -> PolyZ:
        return PolyZ(list(v))

    def mult_matrix(self, a: PolyZ) -> IntMatrix:
        """Matrix of multiplication by a on the power basis (columns)."""
        cols = []
        for i in range(self.degree):
            prod = self.mul(a, PolyZ([0] * i + [1]))
            cols.append(self.coeff_vector(prod))
        return IntMatrix.from_rows(cols).transpose()

    def beta_matrix(self) -> IntMatrix:
        return self.mult_matrix(PolyZ([0, 1]))

    def __repr__(self):
        return "RealCyclotomic(p=%d, mu=%r)" % (self.p, self.mu)


def real_cyclotomic(p: int) -> RealCyclotomic:
    """Build Z[2cos(2pi/p)] for an odd prime p.

    The even-index Chebyshev roots 2cos(2pi*a/p) are picked out exactly:
    squaring doubles the angle, (2cos t)^2 - 2 = 2cos 2t, so mu is the
    unique polynomial with mu(X^2 - 2) = U_{p-1}(X/2).  Rewriting the
    (even) Chebyshev polynomial in powers of X^2 - 2 needs only integer
    arithmetic.

    >>> real_cyclotomic(5).mu
    PolyZ([-1, 1, 1])
    """
    if not _is_odd_prime(p):
        raise ValueError("p must be an odd prime, got %r" % (p,))
    f = chebyshev_u(p - 1)
    dg = (p - 1) // 2
    # peel off c_i * (X^2-2)^i from the top
    y = PolyZ([-2, 0, 1])
    rem = f
    coeffs = [0] * (dg + 1)
    for i in range(dg, -1, -1):
        if rem.degree() < 2 * i:
            continue
        c = rem.coeffs[2 * i]
        coeffs[i] = c
        if c:
            rem = rem - _poly_pow(y, i).scale(c)
    if not rem.is_zero():
        raise ArithmeticError("Chebyshev polynomial failed to decompose")
    mu = PolyZ(coeffs)
    if not mu.is_monic() or mu.degree() != dg:
        raise ArithmeticError("unexpected minimal polynomial shape")
    if not mu.divides(f):
        raise ArithmeticError("extracted polynomial does not divide U_{p-1}(X/2)")
    return RealCyclotomic(p, mu)


def _poly_pow(p: PolyZ, e: int) -> PolyZ:
    acc = PolyZ([1])
    for _ in range(e):
        acc = acc * p
    return acc


@dataclass(frozen=True)
class PrimeFactorTwo:
    """Factorization of mu modulo 2: distinct irreducibles, equal degree."""

    p: int
    factors: tuple
    f: int
    count: int

    def __post_init__(self):
        prod = PolyF2(1)
        for g in self.factors:
            prod = prod * g
        if len(set(f.bits for f in self.factors)) != len(self.factors):
            raise ValueError("repeated factor: 2 would ramify")
        degs = {g.degree() for g in self.factors}
        if degs != {self.f}:
            raise ValueError("unequal residue degrees %r" % (degs,))


def _order_of_two_mod_p_up_to_sign(p: int) -> int:
    t = 1
    x = 2 % p
    while x != 1 and x != p - 1:
        x = (x * 2) % p
        t += 1
    return t


def factor_two(p: int) -> PrimeFactorTwo:
    """Factor mu mod 2 into distinct irreducibles of equal degree.

    Distinct-degree splitting via gcd(f, X^{2^d} - X), then equal-degree
    splitting with the characteristic-2 trace map (Cantor-Zassenhaus; see
    von zur Gathen & Gerhard, Modern Computer Algebra, 14.3).  The RNG is
    seeded from p, so output order is reproducible.
    """
    ring = real_cyclotomic(p)
    f2 = ring.mu.reduce_mod2()
    # squarefree guard: 2 is unramified, so gcd(f, f') must be 1
    der = f2.derivative()
    if der.is_zero() or not f2.gcd(der).is_one():
        raise ValueError("mu mod 2 is not squarefree: 2 ramifies?")
    x = PolyF2(0b10)
    factors = []
    rng = random.Random(0x5EED ^ p)
    rest = f2
    d = 1
    while rest.degree() >= 1:
        if d > rest.degree():
            raise ArithmeticError("distinct-degree loop overran")
        xq = x.powmod(2**d, rest)
        g = rest.gcd(xq + x)
        if not g.is_one():
            factors.extend(_equal_degree_split(g, d, rng))
            rest = rest // g
        d += 1
    factors.sort(key=lambda q: q.bits)
    degs = {g.degree() for g in factors}
    if len(degs) != 1:
        raise ArithmeticError("factors of unequal degree: %r" % (degs,))
    f = degs.pop()
    expected_f = _order_of_two_mod_p_up_to_sign(p)
    if f != expected_f:
        raise ArithmeticError(
            "residue degree %d != order of 2 in (Z/%dZ)^x/{+-1} = %d"
            % (f, p, expected_f)
        )
    return PrimeFactorTwo(p=p, factors=tuple(factors), f=f, count=len(factors))


def _equal_degree_split(g: PolyF2, d: int, rng: random.Random) -> list:
    """Split a squarefree product of irreducibles of known degree d."""
    if g.degree() == d:
        return [g]
    n = g.degree()
    while True:
        h = PolyF2(rng.getrandbits(n) | 1)
        # trace map h + h^2 + h^4 + ... over GF(2^d)
        tr = PolyF2(0)
        cur = h % g
        for _ in range(d):
            tr = tr + cur
            cur = (cur * cur) % g
        w = g.gcd(tr)
        if not w.is_one() and w.degree() < g.degree():
            return _equal_degree_split(w, d, rng) + _equal_degree_split(
                g // w, d, rng
            )


def _xgcd_f2(a: PolyF2, b: PolyF2):
    """Extended gcd over GF(2)[X]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = a, b
    s0, s1 = PolyF2(1), PolyF2(0)
    t0, t1 = PolyF2(0), PolyF2(1)
    while not r1.is_zero():
        q = r0 // r1
        r0, r1 = r1, r0 + q * r1
        s0, s1 = s1, s0 + q * s1
        t0, t1 = t1, t0 + q * t1
    return r0, s0, t0


def idempotents_mod2(p: int) -> list:
    """CRT idempotents e_1..e_n of R/2R, one per prime factor of 2.

    e_i = 1 mod factor_i and 0 mod the others; pairwise orthogonal and
    summing to 1.
    """
    fact = factor_two(p)
    f2 = real_cyclotomic(p).mu.reduce_mod2()
    out = []
    for g in fact.factors:
        m = f2 // g
        gg, s, _ = _xgcd_f2(m, g)
        if not gg.is_one():
            raise ArithmeticError("cofactor not coprime to factor")
        e = (s * m) % f2
        out.append(e)
    total = PolyF2(0)
    for e in out:
        total = total + e
    if not (total % f2 == PolyF2(1) % f2):
        raise ArithmeticError("idempotents do not sum to 1")
    for i, a in enumerate(out):
        for j, b in enumerate(out):
            prod = (a * b) % f2
            want = a if i == j else PolyF2(0)
            if prod != want:
                raise ArithmeticError("idempotent orthogonality fails")
    return out


def _canonical_rep(a: int, p: int) -> int:
    """Representative of +-a mod p inside {1..(p-1)/2}."""
    a = a % p
    if a == 0:
        raise ValueError("a must be invertible mod p")
    return min(a, p - a)


def galois(p: int, a: int) -> IntMatrix:
    """Matrix of the automorphism beta -> 2cos(2pi*a/p) on the power basis.

    sigma_a(beta) = 2*T_a(beta/2) reduced mod mu; columns are the images
    of the basis powers beta^i.  Valid indices are 1..(p-1)/2, canonical
    representatives of (Z/pZ)^x / {+-1}.
    """
    ring = real_cyclotomic(p)
    a0 = _canonical_rep(a, p)
    image = ring.reduce(chebyshev_t2(a0))
    cols = []
    acc = PolyZ([1])
    for _ in range(ring.degree):
        # image of beta^i is sigma_a(beta)^i
        cols.append(ring.coeff_vector(acc))
        acc = ring.mul(acc, image)
    return IntMatrix.from_rows(cols).transpose()


def galois_factor_permutation(p: int) -> dict:
    """Permutation action of each sigma_a on the mod-2 prime factors.

    Returns {a: mapping} where mapping[i] = j means sigma_a carries the
    i-th factor to the j-th: the image generator f_i(sigma_a(beta))
    vanishes mod (2, f_j).
    """
    ring = real_cyclotomic(p)
    fact = factor_two(p)
    f2 = ring.mu.reduce_mod2()
    perms = {}
    for a in range(1, ring.degree + 1):
        image = ring.reduce(chebyshev_t2(_canonical_rep(a, p)))
        mapping = []
        for i, fi in enumerate(fact.factors):
            val = ring.reduce(PolyZ(list(fi.coeffs())).compose(image))
            vbits = val.reduce_mod2() % f2
            hits = [
                j
                for j, fj in enumerate(fact.factors)
                if (vbits % fj).is_zero()
            ]
            if len(hits) != 1:
                raise ArithmeticError(
                    "factor image not carried to a unique factor: %r" % hits
                )
            mapping.append(hits[0])
        if sorted(mapping) != list(range(fact.count)):
            raise ArithmeticError("Galois image is not a permutation")
        perms[a] = tuple(mapping)
    return perms


# ---------------------------------------------------------------------------
# lattices and modules
#
# Conventions for everything below: module elements are integer ROW
# vectors and endomorphisms act on the right, x -> x.A, so composition
# "first A then B" is the product A @ B.  The matrix of multiplication
# by a ring element r on the power basis is mult_matrix(r).transpose().


def _row_act(A: IntMatrix, v) -> list:
    """v . A for a row vector v."""
    out = [0] * A.cols
    for i, x in enumerate(v):
        if x:
            row = A.row(i)
            for j, a in enumerate(row):
                if a:
                    out[j] += x * a
    return out


def _vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def _row_basis_rows(rows, dim: int) -> list:
    """Integer basis of the Z-span of the given row vectors."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    A = IntMatrix.from_rows(rows)
    snf = smith_normal_form(A)
    UA = snf.U @ A
    return [UA.row(i) for i in range(snf.rank())]


class _SpanChecker:
    """Membership oracle for the Z-span of a fixed set of row vectors;
    one Smith form, then each query is a single transform pass."""

    def __init__(self, basis_rows, dim: int):
        self.dim = dim
        self.rows = [list(r) for r in basis_rows]
        if self.rows:
            At = IntMatrix.from_rows(self.rows).transpose()
            self.snf = smith_normal_form(At)
            self.diag = self.snf.diagonal()
            self.nrows = At.rows
        else:
            self.snf = None

    def coords(self, v):
        """x with x . basis = v, or None."""
        if self.snf is None:
            return [] if not any(v) else None
        c = self.snf.U.apply(list(v))
        y = [0] * len(self.rows)
        for i in range(self.nrows):
            s = self.diag[i] if i < len(self.diag) else 0
            ci = c[i] if i < len(c) else 0
            if s == 0:
                if ci:
                    return None
                continue
            if ci % s:
                return None
            if i < len(y):
                y[i] = ci // s
        return self.snf.V.apply(y)

    def contains(self, v) -> bool:
        return self.coords(v) is not None


def _f2_identity(n: int) -> tuple:
    return tuple(1 << i for i in range(n))


def _f2_vec_act(v_bits: int, rows) -> int:
    out = 0
    i = 0
    while v_bits:
        if v_bits & 1:
            out ^= rows[i]
        v_bits >>= 1
        i += 1
    return out


def _f2_mat_mul(A_rows, B_rows) -> tuple:
    return tuple(_f2_vec_act(r, B_rows) for r in A_rows)


def _f2_poly_eval(poly: PolyF2, A_rows, n: int) -> tuple:
    res = (0,) * n
    ident = _f2_identity(n)
    for c in reversed(poly.coeffs()):
        res = _f2_mat_mul(res, A_rows)
        if c:
            res = tuple(r ^ e for r, e in zip(res, ident))
    return res


def _f2_rank(rows) -> int:
    table = []
    rank = 0
    for r in rows:
        for t in table:
            if r and t.bit_length() == r.bit_length():
                r ^= t
        while r:
            hit = False
            for t in table:
                if t.bit_length() == r.bit_length():
                    r ^= t
                    hit = True
                    break
            if not hit:
                table.append(r)
                rank += 1
                r = 0
    return rank


class _F2Solver:
    """Echelon form with coordinate tracking over GF(2); solves for the
    expression of a vector in the original (independent) rows."""

    def __init__(self, rows):
        self.table = {}
        for i, r in enumerate(rows):
            v, c = r, 1 << i
            while v:
                piv = v.bit_length() - 1
                if piv in self.table:
                    tv, tc = self.table[piv]
                    v ^= tv
                    c ^= tc
                else:
                    self.table[piv] = (v, c)
                    break
            else:
                raise AssertionError("solver rows are dependent")

    def solve(self, w: int):
        c = 0
        while w:
            piv = w.bit_length() - 1
            if piv not in self.table:
                return None
            tv, tc = self.table[piv]
            w ^= tv
            c ^= tc
        return c


class _Quotient:
    """M/N as an F2-space for 2M <= N <= M, with projection and lifts.

    Rows of N are echelonized mod 2; quotient coordinates are the
    non-pivot columns of the reduced form.
    """

    def __init__(self, dim: int, n_rows):
        ech = {}
        for v in n_rows:
            b = 0
            for j, x in enumerate(v):
                if x & 1:
                    b |= 1 << j
            while b:
                piv = b.bit_length() - 1
                if piv in ech:
                    b ^= ech[piv]
                else:
                    ech[piv] = b
                    break
        # back-substitute so each pivot occurs in exactly one row
        for piv in sorted(ech, reverse=True):
            row = ech[piv]
            for piv2 in ech:
                if piv2 != piv and (ech[piv2] >> piv) & 1:
                    ech[piv2] ^= row
        self.dim = dim
        self.ech = ech
        self.free_cols = [j for j in range(dim) if j not in ech]
        self.qdim = len(self.free_cols)
        self._col_pos = {j: k for k, j in enumerate(self.free_cols)}

    def project_bits(self, b: int) -> int:
        for piv, row in self.ech.items():
            if (b >> piv) & 1:
                b ^= row
        out = 0
        for j, k in self._col_pos.items():
            if (b >> j) & 1:
                out |= 1 << k
        return out

    def project_vec(self, v) -> int:
        b = 0
        for j, x in enumerate(v):
            if x & 1:
                b |= 1 << j
        return self.project_bits(b)

    def lift(self, k: int) -> list:
        v = [0] * self.dim
        v[self.free_cols[k]] = 1
        return v

    def induced_matrix(self, A: IntMatrix) -> tuple:
        """F2 matrix of the endomorphism A on the quotient."""
        return tuple(
            self.project_vec(_row_act(A, self.lift(k)))
            for k in range(self.qdim)
        )


@dataclass(frozen=True)
class RLattice:
    """Free R-module of the given rank, presented as Z^(rank*degree)
    with the integer matrix of right multiplication by beta."""

    ring: RealCyclotomic
    rank: int
    beta: IntMatrix

    def __post_init__(self):
        d = self.rank * self.ring.degree
        if self.beta.rows != d or self.beta.cols != d:
            raise ValueError("beta matrix has wrong shape")
        if not self.ring.mu.eval_matrix(self.beta).is_zero():
            raise ValueError("mu(beta) != 0: not an R-module structure")

    @property
    def dim(self) -> int:
        return self.rank * self.ring.degree

    @classmethod
    def free(cls, ring: RealCyclotomic, rank: int) -> "RLattice":
        b0 = ring.beta_matrix().transpose()
        deg = ring.degree
        d = rank * deg
        rows = []
        for s in range(rank):
            for c in range(deg):
                row = [0] * d
                for j, x in enumerate(b0.row(c)):
                    row[s * deg + j] = x
                rows.append(row)
        return cls(ring, rank, IntMatrix.from_rows(rows))


@dataclass(frozen=True)
class Z2Module:
    """An RLattice together with an R-linear involution Y."""

    lattice: RLattice
    Y: IntMatrix

    def __post_init__(self):
        d = self.lattice.dim
        if self.Y.rows != d or self.Y.cols != d:
            raise ValueError("Y has wrong shape")
        if self.Y @ self.Y != IntMatrix.identity(d):
            raise ValueError("Y is not an involution")
        if self.Y @ self.lattice.beta != self.lattice.beta @ self.Y:
            raise ValueError("Y is not R-linear (does not commute with beta)")

    @property
    def dim(self) -> int:
        return self.lattice.dim


def _block_diag(blocks) -> IntMatrix:
    blocks = list(blocks)
    n = sum(b.rows for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for i in range(b.rows):
            row = [0] * n
            for j, x in enumerate(b.row(i)):
                row[off + j] = x
            rows.append(row)
        off += b.cols
    if not rows:
        return IntMatrix.zeros(0, 0)
    return IntMatrix.from_rows(rows)


def _div2_lattice(rows, dim: int) -> list:
    """Basis of {x in Z^dim : 2x in Z-span(rows)}."""
    if not rows:
        return []
    m = len(rows)
    eqs = []
    for j in range(dim):
        row = [0] * (dim + m)
        row[j] = 2
        for i in range(m):
            row[dim + i] = -rows[i][j]
        eqs.append(row)
    ker = kernel_basis(IntMatrix.from_rows(eqs))
    return _row_basis_rows([v[:dim] for v in ker], dim)


def _free_r_basis(ring: RealCyclotomic, span_rows, beta: IntMatrix,
                  max_tries: int = 20000) -> list:
    """Greedy free R-basis of the beta-stable lattice spanned by span_rows.

    Candidates are accepted when the Smith form of the stacked beta
    orbits stays unimodular, so the result is a free basis by
    construction.  Raises RuntimeError if the greedy search stalls.
    """
    dim = beta.rows
    V = _row_basis_rows(span_rows, dim)
    m = len(V)
    deg = ring.degree
    if m % deg:
        raise ValueError("lattice Z-rank is not a multiple of the degree")
    k = m // deg
    if k == 0:
        return []
    Vcheck = _SpanChecker(V, dim)
    beta_abs = []
    for v in V:
        c = Vcheck.coords(_row_act(beta, v))
        if c is None:
            raise ValueError("lattice is not stable under beta")
        beta_abs.append(c)
    beta_abs = IntMatrix.from_rows(beta_abs)
    if deg == 1:
        return V
    rng = random.Random(0xBA5E ^ ring.p)

    def candidates():
        for i in range(m):
            e = [0] * m
            e[i] = 1
            yield e
        for i in range(m):
            for j in range(i + 1, m):
                for sj in (1, -1):
                    e = [0] * m
                    e[i] = 1
                    e[j] = sj
                    yield e
        if m <= 4:
            # exhaustive shells of growing sup-norm: a generator with
            # bounded coordinates is reached deterministically
            bound = 1
            while True:
                for v in itertools.product(range(-bound, bound + 1),
                                           repeat=m):
                    if max(abs(x) for x in v) == bound:
                        yield list(v)
                bound += 1
        else:
            count = 0
            amp = 1
            while True:
                count += 1
                if count % 300 == 0:
                    amp += 1
                yield [rng.randint(-amp, amp) for _ in range(m)]

    chosen = []
    stacked = []
    tries = 0
    for cand in candidates():
        tries += 1
        if tries > max_tries:
            raise RuntimeError(
                "free R-basis search stalled after %d candidates" % max_tries)
        orbit = []
        v = cand
        for _ in range(deg):
            orbit.append(v)
            v = _row_act(beta_abs, v)
        trial = stacked + orbit
        snf = smith_normal_form(IntMatrix.from_rows(trial))
        diag = snf.diagonal()
        if len(diag) == len(trial) and all(s == 1 for s in diag):
            chosen.append(cand)
            stacked = trial
            if len(chosen) == k:
                break
    out = []
    for cand in chosen:
        amb = [0] * dim
        for ci, row in zip(cand, V):
            if ci:
                amb = [a + ci * b for a, b in zip(amb, row)]
        out.append(amb)
    return out


class SplitCertificate:
    """Certified splitting M[G] = L_0 (+) L_1 with N[G] = 2 L_0 (+) L_1.

    Row bases of L_0 and L_1 live in Z^(dim(M) * |G|), the copies of M
    indexed by the Galois group laid out block by block.  Construction
    asserts the three Smith-form facts; verify() recomputes them from
    the stored matrices alone.
    """

    def __init__(self, p: int, base_dim: int, group_order: int,
                 basis_L0: IntMatrix, basis_L1: IntMatrix,
                 n_basis: IntMatrix):
        self.p = p
        self.base_dim = base_dim
        self.group_order = group_order
        self.basis_L0 = basis_L0
        self.basis_L1 = basis_L1
        self.n_basis = n_basis
        self.ambient_dim = base_dim * group_order

    @property
    def free_rank_rows(self) -> int:
        return self.basis_L0.rows

    def verify(self) -> bool:
        D = self.ambient_dim
        rows0 = self.basis_L0.to_rows()
        rows1 = self.basis_L1.to_rows()
        stacked = IntMatrix.from_rows(rows0 + rows1) if rows0 + rows1 \
            else IntMatrix.zeros(0, D)
        if stacked.rows != D:
            return False
        diag = smith_normal_form(stacked).diagonal()
        if len(diag) != D or any(s != 1 for s in diag):
            return False
        # 2 L_0 <= N[G] and L_1 <= N[G], exactly, one group copy at a time
        d = self.base_dim
        ncheck = _SpanChecker(self.n_basis.to_rows(), d)
        for v in rows0:
            for g in range(self.group_order):
                if not ncheck.contains([2 * a for a in v[g * d:(g + 1) * d]]):
                    return False
        for v in rows1:
            for g in range(self.group_order):
                if not ncheck.contains(v[g * d:(g + 1) * d]):
                    return False
        # N[G] <= 2 L_0 + L_1: with L_0 (+) L_1 = Z^D already certified,
        # v lies in 2 L_0 + L_1 iff v mod 2 lies in the span of L_1 mod 2
        # (any mod-2 discrepancy b has v - b in 2 Z^D = 2 L_0 + 2 L_1)
        span = {}
        for v in rows1:
            b = 0
            for j, x in enumerate(v):
                if x & 1:
                    b |= 1 << j
            res = _span_residue(span, b)
            if res:
                span[res.bit_length() - 1] = res
        for g in range(self.group_order):
            for i in range(self.n_basis.rows):
                b = 0
                for j, x in enumerate(self.n_basis.row(i)):
                    if x & 1:
                        b |= 1 << (g * d + j)
                if _span_residue(span, b):
                    return False
        return True


def _span_residue(span: dict, w: int) -> int:
    while w:
        piv = w.bit_length() - 1
        if piv in span:
            w ^= span[piv]
        else:
            break
    return w


def lattice_split(p: int, M: RLattice, n_gens) -> SplitCertificate:
    """Split M[G] = L_0 (+) L_1 with N[G] = 2 L_0 (+) L_1, G the Galois
    group of the degree-(p-1)/2 real subfield, acting by twisting the
    R-structure of the copies of M.

    N is the beta-stable sublattice generated by ``n_gens`` and must
    satisfy 2M <= N <= M.  L_0 is spanned by amplified basis vectors
    whose classes form a free R/2R-basis of (M/N)[G]; L_1 is spanned by
    the corrected complements, which land in N[G].  Everything is exact
    and the returned certificate is Smith-form checked.
    """
    ring = M.ring
    if ring.p != p:
        raise ValueError("p does not match the ring of M")
    deg = ring.degree
    d = M.dim
    r = M.rank
    beta = M.beta

    # N: beta-saturate the generators, then check 2M <= N <= M
    gens = [list(map(int, g)) for g in n_gens]
    for g in gens:
        if len(g) != d:
            raise ValueError("sublattice generator has length %d, want %d"
                             % (len(g), d))
    orbit_rows = []
    for g in gens:
        v = g
        for _ in range(deg):
            orbit_rows.append(v)
            v = _row_act(beta, v)
    H = _row_basis_rows(orbit_rows, d)
    hcheck = _SpanChecker(H, d)
    for i in range(d):
        e2 = [0] * d
        e2[i] = 2
        if not hcheck.contains(e2):
            raise ValueError("2M <= N fails at coordinate %d" % i)

    # free R-basis of M
    if beta == RLattice.free(ring, r).beta:
        A = []
        for s in range(r):
            v = [0] * d
            v[s * deg] = 1
            A.append(v)
    else:
        A = _free_r_basis(ring, [row for row in IntMatrix.identity(d).to_rows()],
                          beta)

    fac = factor_two(p)
    f = fac.f
    nprimes = fac.count
    idem = idempotents_mod2(p)

    Q = _Quotient(d, H)
    qdim = Q.qdim
    betaQ = Q.induced_matrix(beta)
    E = [_f2_poly_eval(e, betaQ, qdim) for e in idem]

    # stage 1: greedy component bases B_i inside the R-basis
    B_sets = [[] for _ in range(nprimes)]
    for i in range(nprimes):
        span = {}
        got = 0
        for idx in range(r):
            w = _f2_vec_act(Q.project_vec(A[idx]), E[i])
            if not w or not _span_residue(span, w):
                continue
            cur = w
            for _ in range(f):
                res = _span_residue(span, cur)
                if not res:
                    raise AssertionError("beta orbit collapsed inside span")
                span[res.bit_length() - 1] = res
                cur = _f2_vec_act(cur, betaQ)
            B_sets[i].append(idx)
            got += f
        if got != _f2_rank(list(E[i])):
            raise AssertionError("component %d not fully spanned" % i)

    # stage 2: correct the complement of each B_i to kill its component
    d_lift = [PolyZ([int(c) for c in e.coeffs()]) for e in idem]
    for j in range(nprimes):
        Bj = B_sets[j]
        basis_rows = []
        orb_amb = []
        for idx in Bj:
            amb = [A[idx]]
            for _ in range(deg - 1):
                amb.append(_row_act(beta, amb[-1]))
            orb_amb.append(amb)
            cur = _f2_vec_act(Q.project_vec(A[idx]), E[j])
            for _ in range(f):
                basis_rows.append(cur)
                cur = _f2_vec_act(cur, betaQ)
        solver = _F2Solver(basis_rows) if basis_rows else None
        for idx in range(r):
            if idx in Bj:
                continue
            w = _f2_vec_act(Q.project_vec(A[idx]), E[j])
            if not w:
                continue
            coords = solver.solve(w) if solver else None
            if coords is None:
                raise AssertionError("component image escaped its span")
            corr = [0] * d
            for pos in range(len(Bj)):
                bits = (coords >> (pos * f)) & ((1 << f) - 1)
                if not bits:
                    continue
                cpoly = PolyZ([(bits >> c) & 1 for c in range(f)])
                elem = ring.reduce(d_lift[j] * cpoly)
                # any lift of the class mod 2R works; take the 0/1 one
                # to keep the corrected basis entries small
                elem = PolyZ([co % 2 for co in ring.coeff_vector(elem)])
                for c, co in enumerate(ring.coeff_vector(elem)):
                    if co:
                        corr = [a + co * b
                                for a, b in zip(corr, orb_amb[pos][c])]
            A[idx] = _vec_sub(A[idx], corr)
        for idx in range(r):
            if idx not in Bj:
                if _f2_vec_act(Q.project_vec(A[idx]), E[j]):
                    raise AssertionError("component survived correction")

    # stage 3: amplify over the group and compute supports
    G = list(range(1, deg + 1))
    nG = deg
    tg = [ring.reduce(chebyshev_t2(a)) for a in G]
    beta_g = [t.eval_matrix(beta) for t in tg]
    betaQ_g = [_f2_poly_eval(t.reduce_mod2(), betaQ, qdim) for t in tg]
    E_g = [[_f2_poly_eval(e, bq, qdim) for e in idem] for bq in betaQ_g]
    # the lift of d_i acting on the copy twisted by sigma_a is any element
    # congruent to d_i mod 2R; sigma_a(e_i) = e_{perm_a(i)}, so the 0/1
    # lift of the permuted idempotent keeps entries small
    perms = galois_factor_permutation(p)
    dbase = [dl.eval_matrix(beta) for dl in d_lift]
    D_mats = [[dbase[perms[a][i]] for i in range(nprimes)] for a in G]
    Damp = d * nG

    def embed(gi, vec):
        out = [0] * Damp
        out[gi * d:(gi + 1) * d] = vec
        return out

    def amp_act(vec):
        out = []
        for gi in range(nG):
            out.extend(_row_act(beta_g[gi], vec[gi * d:(gi + 1) * d]))
        return out

    def project_amp(vec):
        bits = 0
        for gi in range(nG):
            q = Q.project_vec(vec[gi * d:(gi + 1) * d])
            bits |= q << (gi * qdim)
        return bits

    B_list = sorted({idx for Bi in B_sets for idx in Bi})
    I_y = {idx: [i for i in range(nprimes) if idx in B_sets[i]]
           for idx in B_list}

    supports = {}
    for idx in B_list:
        qy = Q.project_vec(A[idx])
        n_y = len(I_y[idx])
        per_copy = []
        for gi in range(nG):
            S = frozenset(i for i in range(nprimes)
                          if _f2_vec_act(qy, E_g[gi][i]))
            if len(S) != n_y:
                raise AssertionError("support size drifted across copies")
            per_copy.append(S)
        for i in range(nprimes):
            if sum(1 for S in per_copy if i in S) != f * n_y:
                raise AssertionError("support column count off")
        supports[idx] = per_copy

    # stage 4: deterministic borrower/lender equalization
    replaced = set()
    W = []          # amplified representatives (free part)
    for idx in B_list:
        per_copy = supports[idx]
        rho = f * len(I_y[idx])
        Gy = list(range(rho))
        pool = list(range(rho, nG))
        lenders = {}
        for i in range(nprimes):
            need = [gi for gi in Gy if i not in per_copy[gi]]
            have = [gi for gi in pool if i in per_copy[gi]]
            if len(need) != len(have):
                raise AssertionError("borrower/lender counts differ")
            for gi, h in zip(need, have):
                lenders[(gi, i)] = h
        for gi in Gy:
            w = embed(gi, A[idx])
            for i in range(nprimes):
                if i in per_copy[gi]:
                    continue
                h = lenders[(gi, i)]
                corr = embed(h, _row_act(D_mats[h][i], A[idx]))
                w = [a + b for a, b in zip(w, corr)]
            W.append(w)
            replaced.add((idx, gi))

    # the classes of the W orbits must form an F2-basis of (M/N)[G]
    orb_w = []
    rows_check = []
    for w in W:
        orbit = [w]
        for _ in range(deg - 1):
            orbit.append(amp_act(orbit[-1]))
        orb_w.append(orbit)
        rows_check.extend(project_amp(v) for v in orbit)
    if len(rows_check) != qdim * nG or \
            _f2_rank(list(rows_check)) != qdim * nG:
        raise AssertionError("amplified classes are not a free basis")

    # stage 5: correct everything else into N[G]
    solver = _F2Solver(rows_check) if rows_check else None
    L1 = []
    for gi in range(nG):
        for idx in range(r):
            if (idx, gi) in replaced:
                continue
            z = embed(gi, A[idx])
            qz = project_amp(z)
            if qz:
                coords = solver.solve(qz) if solver else None
                if coords is None:
                    raise AssertionError("class escaped the free basis span")
                pos = 0
                for s in range(len(W)):
                    for c in range(deg):
                        if (coords >> pos) & 1:
                            z = _vec_sub(z, orb_w[s][c])
                        pos += 1
                if project_amp(z):
                    raise AssertionError("correction failed to land in N[G]")
            L1.append(z)

    L0_rows = [v for orbit in orb_w for v in orbit]
    L1_rows = []
    for z in L1:
        v = z
        for _ in range(deg):
            L1_rows.append(v)
            v = amp_act(v)

    cert = SplitCertificate(
        p, d, nG,
        IntMatrix.from_rows(L0_rows) if L0_rows else IntMatrix.zeros(0, Damp),
        IntMatrix.from_rows(L1_rows) if L1_rows else IntMatrix.zeros(0, Damp),
        IntMatrix.from_rows(H))

    # construction-time certification
    stacked = IntMatrix.from_rows(L0_rows + L1_rows)
    diag = smith_normal_form(stacked).diagonal()
    if len(diag) != Damp or any(s != 1 for s in diag):
        raise AssertionError("L_0 + L_1 basis is not unimodular")
    for v in L0_rows:
        for gi in range(nG):
            if not hcheck.contains([2 * a for a in v[gi * d:(gi + 1) * d]]):
                raise AssertionError("2 L_0 escapes N[G]")
    for v in L1_rows:
        for gi in range(nG):
            if not hcheck.contains(v[gi * d:(gi + 1) * d]):
                raise AssertionError("L_1 escapes N[G]")
    # N[G] <= 2 L_0 + L_1: given unimodularity above, membership in
    # 2 L_0 + L_1 only depends on the class mod 2 L_0 + 2 L_1 = 2 Z^D,
    # so it reduces to F2-span membership against L_1 mod 2
    span = {}
    for v in L1_rows:
        b = 0
        for j, x in enumerate(v):
            if x & 1:
                b |= 1 << j
        res = _span_residue(span, b)
        if res:
            span[res.bit_length() - 1] = res
    for gi in range(nG):
        for hrow in H:
            b = 0
            for j, x in enumerate(hrow):
                if x & 1:
                    b |= 1 << (gi * d + j)
            if _span_residue(span, b):
                raise AssertionError("N[G] escapes 2 L_0 + L_1")
    return cert


class InvolutionError(RuntimeError):
    """The involution decomposition could not be completed as requested."""


def higman_check(module: Z2Module, phi: IntMatrix) -> bool:
    """Higman's projectivity criterion: x = phi(x) + phi(xY)Y for all x,
    with phi R-linear.  As matrix identities: phi + Y phi Y = 1 and
    phi beta = beta phi."""
    dmod = module.dim
    if phi.rows != dmod or phi.cols != dmod:
        raise ValueError("phi has wrong shape")
    Y = module.Y
    beta = module.lattice.beta
    if phi @ beta != beta @ phi:
        return False
    return phi + (Y @ phi @ Y) == IntMatrix.identity(dmod)


@dataclass(frozen=True)
class HigmanCertificate:
    """An explicit R-linear phi with x = phi(x) + phi(xY)Y, in the
    coordinates of the stated module."""

    module: Z2Module
    phi: IntMatrix

    def verify(self) -> bool:
        return higman_check(self.module, self.phi)


def _free_z2_blocks(ring: RealCyclotomic):
    """(beta, Y) for the regular module R[Z/2Z]: Z-basis beta^c, beta^c Y."""
    deg = ring.degree
    b0 = ring.beta_matrix().transpose()
    beta = _block_diag([b0, b0])
    rows = []
    for c in range(deg):
        row = [0] * (2 * deg)
        row[deg + c] = 1
        rows.append(row)
    for c in range(deg):
        row = [0] * (2 * deg)
        row[c] = 1
        rows.append(row)
    return beta, IntMatrix.from_rows(rows)


def free_z2_module(p: int, copies: int = 1) -> Z2Module:
    """The free module R[Z/2Z]^copies."""
    ring = real_cyclotomic(p)
    beta, Y = _free_z2_blocks(ring)
    return Z2Module(
        RLattice(ring, 2 * copies, _block_diag([beta] * copies)),
        _block_diag([Y] * copies))


def _rmat_to_z(ring: RealCyclotomic, rmat, k: int) -> IntMatrix:
    """Z-matrix (row action, power-basis layout) of a k x k matrix of
    ring elements acting on the right of R^k."""
    deg = ring.degree
    rows = []
    for s in range(k):
        for c in range(deg):
            row = []
            shift = PolyZ([0] * c + [1]) if c else PolyZ([1])
            for t in range(k):
                row.extend(ring.coeff_vector(ring.reduce(rmat[s][t] * shift)))
            rows.append(row)
    return IntMatrix.from_rows(rows) if rows else IntMatrix.zeros(0, 0)


class InvolutionSplit:
    """Decomposition (L (+) R[Z/2Z]^padding)[G] = P_+ (+) P_- (+) P_0
    where Y acts by +1 on P_+, by -1 on P_-, and P_0 carries a Higman
    certificate.  Bases are rows in the amplified padded coordinates."""

    def __init__(self, p, padding, ambient, group_order,
                 basis_plus, basis_minus, basis_zero,
                 split_plus, split_minus, higman, zero_orbit_basis):
        self.p = p
        self.padding = padding
        self.ambient = ambient          # padded Z2Module, one copy
        self.group_order = group_order
        self.basis_plus = basis_plus
        self.basis_minus = basis_minus
        self.basis_zero = basis_zero
        self.split_plus = split_plus    # SplitCertificate or None
        self.split_minus = split_minus
        self.higman = higman            # HigmanCertificate or None
        self.zero_orbit_basis = zero_orbit_basis

    def _amp_mats(self):
        ring = self.ambient.lattice.ring
        beta_t = self.ambient.lattice.beta
        G = list(range(1, self.group_order + 1))
        beta_amp = _block_diag([
            ring.reduce(chebyshev_t2(a)).eval_matrix(beta_t) for a in G])
        y_amp = _block_diag([self.ambient.Y] * self.group_order)
        return beta_amp, y_amp

    def verify(self) -> bool:
        D = self.ambient.dim * self.group_order
        beta_amp, y_amp = self._amp_mats()
        for mat, tau in ((self.basis_plus, 1), (self.basis_minus, -1)):
            for i in range(mat.rows):
                v = mat.row(i)
                if _row_act(y_amp, v) != [tau * a for a in v]:
                    return False
        rows = (self.basis_plus.to_rows() + self.basis_minus.to_rows()
                + self.basis_zero.to_rows())
        if len(rows) != D:
            return False
        stacked = IntMatrix.from_rows(rows) if rows else IntMatrix.zeros(0, D)
        diag = smith_normal_form(stacked).diagonal()
        if len(diag) != D or any(s != 1 for s in diag):
            return False
        zrows = self.basis_zero.to_rows()
        if zrows:
            zcheck = _SpanChecker(zrows, D)
            for v in zrows:
                if not zcheck.contains(_row_act(beta_amp, v)):
                    return False
                if not zcheck.contains(_row_act(y_amp, v)):
                    return False
        for cert in (self.split_plus, self.split_minus):
            if cert is not None and not cert.verify():
                return False
        if self.higman is not None and not self.higman.verify():
            return False
        if zrows and self.higman is None:
            return False
        return True


def involution_split(p: int, module: Z2Module, padding: int = 0) \
        -> InvolutionSplit:
    """Split the amplified module into Y-eigenparts and a certified
    projective rest.

    With L the given module padded by ``padding`` regular summands,
    the lattices L(1+tau Y) and L(1+tau Y)/2 n L (computed inside L x Q
    via exact two-division) are fed pairwise to lattice_split; P_tau is
    the half of the resulting L_1, and P_0 = {x : 2x in L_{+,0} + L_{-,0}}
    gets an explicit Higman endomorphism found by exact linear solving
    over R.
    """
    ring = module.lattice.ring
    if ring.p != p:
        raise ValueError("p does not match the ring of the module")
    if padding < 0:
        raise ValueError("padding must be nonnegative")
    deg = ring.degree
    nG = deg
    fb, fy = _free_z2_blocks(ring)
    beta_t = _block_diag([module.lattice.beta] + [fb] * padding)
    y_t = _block_diag([module.Y] + [fy] * padding)
    ambient = Z2Module(
        RLattice(ring, module.lattice.rank + 2 * padding, beta_t), y_t)
    Dt = ambient.dim
    Damp = Dt * nG

    G = list(range(1, nG + 1))
    tg = [ring.reduce(chebyshev_t2(a)) for a in G]
    beta_amp = _block_diag([t.eval_matrix(beta_t) for t in tg])
    y_amp = _block_diag([y_t] * nG)

    halves = {}
    certs = {}
    for tau in (1, -1):
        gen = IntMatrix.identity(Dt) + y_t.scale(tau)
        M2 = _row_basis_rows(gen.to_rows(), Dt)
        if not M2:
            halves[tau] = ([], [])
            certs[tau] = None
            continue
        Np = _div2_lattice(M2, Dt)
        N2 = [[2 * a for a in v] for v in Np]
        basisR = _free_r_basis(ring, M2, beta_t)
        k = len(basisR)
        T_rows = []
        for b in basisR:
            v = b
            for _ in range(deg):
                T_rows.append(v)
                v = _row_act(beta_t, v)
        tcheck = _SpanChecker(T_rows, Dt)
        n2_abs = []
        for v in N2:
            c = tcheck.coords(v)
            if c is None:
                raise AssertionError("2-division lattice escaped M2")
            n2_abs.append(c)
        cert = lattice_split(p, RLattice.free(ring, k), n2_abs)
        certs[tau] = cert

        def back(row):
            out = []
            kd = k * deg
            for gi in range(nG):
                block = [0] * Dt
                for jj, x in enumerate(row[gi * kd:(gi + 1) * kd]):
                    if x:
                        block = [a + x * b for a, b in zip(block, T_rows[jj])]
                out.extend(block)
            return out

        L0_amb = [back(cert.basis_L0.row(i))
                  for i in range(cert.basis_L0.rows)]
        L1_amb = [back(cert.basis_L1.row(i))
                  for i in range(cert.basis_L1.rows)]
        halves[tau] = (L0_amb, L1_amb)

    p_bases = {}
    for tau in (1, -1):
        rows = []
        for v in halves[tau][1]:
            if any(a % 2 for a in v):
                raise AssertionError("P_tau basis is not 2-divisible")
            rows.append([a // 2 for a in v])
        p_bases[tau] = rows
        for v in rows:
            if _row_act(y_amp, v) != [tau * a for a in v]:
                raise AssertionError("P_tau is not a Y-eigenlattice")

    zero_gens = halves[1][0] + halves[-1][0]
    P0 = _div2_lattice(zero_gens, Damp)

    higman = None
    T0_mat = IntMatrix.zeros(0, Damp)
    if P0:
        basis0 = _free_r_basis(ring, P0, beta_amp)
        k0 = len(basis0)
        T0_rows = []
        for b in basis0:
            v = b
            for _ in range(deg):
                T0_rows.append(v)
                v = _row_act(beta_amp, v)
        T0_mat = IntMatrix.from_rows(T0_rows)
        t0check = _SpanChecker(T0_rows, Damp)
        y_r = []
        for s in range(k0):
            c = t0check.coords(_row_act(y_amp, basis0[s]))
            if c is None:
                raise AssertionError("P_0 is not Y-stable")
            y_r.append([PolyZ(list(c[t * deg:(t + 1) * deg]))
                        for t in range(k0)])
        # solve phi + Y phi Y = 1 for phi with entries in R
        nunk = k0 * k0 * deg
        sys_rows = [[0] * nunk for _ in range(nunk)]
        rhs = [0] * nunk
        for s in range(k0):
            for t in range(k0):
                base_eq = (s * k0 + t) * deg
                if s == t:
                    rhs[base_eq] = 1
                for u in range(k0):
                    for v in range(k0):
                        base_un = (u * k0 + v) * deg
                        prod = ring.reduce(y_r[s][u] * y_r[v][t])
                        mm = ring.mult_matrix(prod)
                        for cc in range(deg):
                            for c2 in range(deg):
                                val = mm.at(cc, c2)
                                if u == s and v == t and cc == c2:
                                    val += 1
                                if val:
                                    sys_rows[base_eq + cc][base_un + c2] \
                                        += val
        sol = solve_linear(IntMatrix.from_rows(sys_rows), rhs)
        if sol is None:
            raise InvolutionError(
                "no Higman endomorphism at padding %d" % padding)
        phi_r = [[PolyZ(list(sol[(u * k0 + v) * deg:(u * k0 + v + 1) * deg]))
                  for v in range(k0)] for u in range(k0)]
        phi_z = _rmat_to_z(ring, phi_r, k0)
        y_z = _rmat_to_z(ring, y_r, k0)
        module0 = Z2Module(RLattice.free(ring, k0), y_z)
        if not higman_check(module0, phi_z):
            raise AssertionError("solved phi fails the Higman identity")
        higman = HigmanCertificate(module0, phi_z)

    def mat(rows):
        return IntMatrix.from_rows(rows) if rows else \
            IntMatrix.zeros(0, Damp)

    split = InvolutionSplit(
        p, padding, ambient, nG,
        mat(p_bases[1]), mat(p_bases[-1]), mat(P0),
        certs[1], certs[-1], higman, T0_mat)

    rows = p_bases[1] + p_bases[-1] + P0
    if len(rows) != Damp:
        raise AssertionError("eigenpart ranks do not fill the module")
    diag = smith_normal_form(IntMatrix.from_rows(rows)).diagonal()
    if len(diag) != Damp or any(x != 1 for x in diag):
        raise AssertionError("P_+ (+) P_- (+) P_0 is not all of L[G]")
    return split


def involution_split_auto(p: int, module: Z2Module, max_padding: int = 4) \
        -> InvolutionSplit:
    """involution_split with the smallest padding that succeeds."""
    last = None
    for pad in range(max_padding + 1):
        try:
            return involution_split(p, module, pad)
        except (InvolutionError, RuntimeError) as exc:
            last = exc
    raise InvolutionError(
        "no padding up to %d admits the decomposition: %s"
        % (max_padding, last))


class ResolutionError(RuntimeError):
    """The four-term resolution construction is not available."""


class Resolution:
    """Exact four-term resolution of M = R[Z/2Z]^rank / relations:

        0 -> R_+^b --f3,f2--> R_+^a (+) R[Z/2Z]^b --f1--> R[Z/2Z]^rank -> M -> 0

    where f3 is the zero-rank inclusion; maps are row matrices (rows are
    images of the domain Z-basis).  verify() replays every exactness and
    equivariance check from the stored matrices.
    """

    def __init__(self, p, rank, relations, a, b, f1, f2, f3):
        self.p = p
        self.rank = rank
        self.relations = relations
        self.a = a
        self.b = b
        self.f1 = f1
        self.f2 = f2
        self.f3 = f3

    def describe(self) -> str:
        return ("0 -> R_+^0 -> R_+^%d -> R_+^%d (+) R[Z/2Z]^%d "
                "-> R[Z/2Z]^%d -> M -> 0"
                % (self.b, self.a, self.b, self.rank))

    def _actions(self):
        ring = real_cyclotomic(self.p)
        deg = ring.degree
        b0 = ring.beta_matrix().transpose()
        fb, fy = _free_z2_blocks(ring)
        ident = IntMatrix.identity(deg)
        tgt_beta = _block_diag([fb] * self.rank)
        tgt_y = _block_diag([fy] * self.rank)
        dom1_beta = _block_diag([b0] * self.a + [fb] * self.b)
        dom1_y = _block_diag([ident] * self.a + [fy] * self.b)
        dom2_beta = _block_diag([b0] * self.b)
        dom2_y = IntMatrix.identity(self.b * deg)
        return (tgt_beta, tgt_y, dom1_beta, dom1_y, dom2_beta, dom2_y)

    def verify(self) -> bool:
        D0 = self.f1.cols
        (tgt_beta, tgt_y, dom1_beta, dom1_y,
         dom2_beta, dom2_y) = self._actions()
        # equivariance of every map
        if self.f1.rows:
            if dom1_beta @ self.f1 != self.f1 @ tgt_beta:
                return False
            if dom1_y @ self.f1 != self.f1 @ tgt_y:
                return False
        if self.f2.rows:
            if dom2_beta @ self.f2 != self.f2 @ dom1_beta:
                return False
            if dom2_y @ self.f2 != self.f2 @ dom1_y:
                return False
        # composite is zero
        if self.f2.rows and self.f1.rows:
            if not (self.f2 @ self.f1).is_zero():
                return False
        # exactness at the free cover: im f1 = relation lattice
        K_rows = _row_basis_rows(self.relations.to_rows(), D0)
        f1_rows = [self.f1.row(i) for i in range(self.f1.rows)]
        if K_rows:
            kcheck = _SpanChecker(K_rows, D0)
            if any(not kcheck.contains(v) for v in f1_rows):
                return False
        elif any(any(v) for v in f1_rows):
            return False
        if f1_rows:
            icheck = _SpanChecker(f1_rows, D0)
            if any(not icheck.contains(v) for v in K_rows):
                return False
        elif K_rows:
            return False
        # exactness in the middle: ker f1 = im f2
        mid = self.f1.rows
        ker1 = kernel_basis(self.f1.transpose()) if mid else []
        f2_rows = [self.f2.row(i) for i in range(self.f2.rows)]
        if ker1:
            kcheck = _SpanChecker(ker1, mid)
            if any(not kcheck.contains(v) for v in f2_rows):
                return False
        elif any(any(v) for v in f2_rows):
            return False
        if f2_rows:
            icheck = _SpanChecker(f2_rows, mid)
            if any(not icheck.contains(v) for v in ker1):
                return False
        elif ker1:
            return False
        # exactness at the left end: f2 injective (f3 has rank zero)
        if self.f2.rows and kernel_basis(self.f2.transpose()):
            return False
        return True


def resolve_z2_module(p: int, rank: int, relations) -> Resolution:
    """Resolve M = R[Z/2Z]^rank / (relation lattice) by the four-term
    construction: split the relation kernel into Y-eigenlattices, cover
    the +1 part by copies of R_+ and the -1 part by regular modules
    mapped through 1 - Y, and close up with the kernel of coverage.

    The relation lattice (Z-span of the given rows) must be stable
    under beta and Y; otherwise the presentation is rejected.  When the
    kernel is not the direct sum of its Y-eigenlattices the construction
    raises ResolutionError.
    """
    ring = real_cyclotomic(p)
    deg = ring.degree
    D0 = rank * 2 * deg
    if rank < 1:
        raise ValueError("rank must be positive")
    fb, fy = _free_z2_blocks(ring)
    tgt_beta = _block_diag([fb] * rank)
    tgt_y = _block_diag([fy] * rank)

    if isinstance(relations, IntMatrix):
        rel_rows = relations.to_rows()
    else:
        rel_rows = [list(map(int, rw)) for rw in relations]
    for rw in rel_rows:
        if len(rw) != D0:
            raise ValueError("relation row has length %d, want %d"
                             % (len(rw), D0))
    rel_mat = IntMatrix.from_rows(rel_rows) if rel_rows \
        else IntMatrix.zeros(0, D0)
    K_rows = _row_basis_rows(rel_rows, D0)
    if K_rows:
        kcheck = _SpanChecker(K_rows, D0)
        for v in K_rows:
            if not kcheck.contains(_row_act(tgt_beta, v)) or \
                    not kcheck.contains(_row_act(tgt_y, v)):
                raise ValueError(
                    "non-equivariant presentation: the relation lattice "
                    "is not stable under the beta and Y actions")

    if K_rows:
        Km = IntMatrix.from_rows(K_rows)
        mK = Km.rows
        diff = Km @ tgt_y + Km.scale(-1)
        summ = Km @ tgt_y + Km
        cplus = kernel_basis(diff.transpose())
        cminus = kernel_basis(summ.transpose())
        if len(cplus) + len(cminus) != mK:
            raise ResolutionError(
                "kernel does not split as U_+ (+) U_-: eigenlattice "
                "ranks %d + %d != %d"
                % (len(cplus), len(cminus), mK))
        eigd = smith_normal_form(
            IntMatrix.from_rows(cplus + cminus)).diagonal()
        if len(eigd) != mK or any(s != 1 for s in eigd):
            raise ResolutionError(
                "kernel does not split as U_+ (+) U_-: the eigenlattice "
                "sum has index > 1")
        u_plus = [_row_act(Km, c) for c in cplus]
        u_minus = [_row_act(Km, c) for c in cminus]
        base_plus = _free_r_basis(ring, u_plus, tgt_beta) if u_plus else []
        base_minus = _free_r_basis(ring, u_minus, tgt_beta) if u_minus else []
    else:
        base_plus = []
        base_minus = []
    a = len(base_plus)
    b = len(base_minus)

    f1_rows = []
    for v in base_plus:
        cur = v
        for _ in range(deg):
            f1_rows.append(cur)
            cur = _row_act(tgt_beta, cur)
    for v in base_minus:
        orbit = []
        cur = v
        for _ in range(deg):
            orbit.append(cur)
            cur = _row_act(tgt_beta, cur)
        f1_rows.extend(orbit)
        f1_rows.extend([-x for x in rw] for rw in orbit)
    f1 = IntMatrix.from_rows(f1_rows) if f1_rows \
        else IntMatrix.zeros(0, D0)

    mid = a * deg + b * 2 * deg
    f2_rows = []
    for j in range(b):
        for c in range(deg):
            row = [0] * mid
            row[a * deg + j * 2 * deg + c] = 1
            row[a * deg + j * 2 * deg + deg + c] = 1
            f2_rows.append(row)
    f2 = IntMatrix.from_rows(f2_rows) if f2_rows \
        else IntMatrix.zeros(0, mid)
    f3 = IntMatrix.zeros(0, b * deg)

    res = Resolution(p, rank, rel_mat, a, b, f1, f2, f3)
    if not res.verify():
        raise AssertionError("constructed resolution failed verification")
    return res
