"""Fusion rings at the Grothendieck level and their integer invariants.

A fusion ring is stored as its structure tensor N[tau][a][b], the
multiplicity of basis element tau in the product a*b, together with the
unit index and the duality permutation.  Nothing categorical (associators,
braidings) lives here; the twisted and untwisted variants of a category
share one ring.

The key invariant is the matrix Z = sum_pi M(pi) M(dual pi) built from the
regular representation M; its determinant controls which integers d make
the localized ring Z[1/d] act regularly, so |det Z| and its radical are
what ``global_det`` reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exactalg import (
    IntMatrix,
    PolyZ,
    charpoly_exact,
    chebyshev_u,
    det_exact,
    smith_normal_form,
)


class FusionRing:
    """Based ring with non-negative structure constants and duality."""

    __slots__ = ("labels", "unit", "dual", "N")

    def __init__(self, labels, unit, dual, N, check=True):
        self.labels = tuple(str(x) for x in labels)
        r = len(self.labels)
        self.unit = int(unit)
        self.dual = tuple(int(d) for d in dual)
        self.N = tuple(
            tuple(tuple(int(x) for x in row) for row in plane) for plane in N
        )
        if check:
            self._check_basic()
            if r <= 12:
                self._check_associative()

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index_of(self, label) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.rank:
                raise KeyError(label)
            return label
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(label) from None

    def _check_basic(self):
        r = self.rank
        if not 0 <= self.unit < r:
            raise ValueError("unit index out of range")
        if sorted(self.dual) != list(range(r)):
            raise ValueError("dual is not a permutation")
        if len(self.N) != r or any(
            len(p) != r or any(len(row) != r for row in p) for p in self.N
        ):
            raise ValueError("structure tensor has wrong shape")
        if any(x < 0 for p in self.N for row in p for x in row):
            raise ValueError("negative structure constant")
        u = self.unit
        for a in range(r):
            for t in range(r):
                if self.N[t][u][a] != int(t == a) or self.N[t][a][u] != int(t == a):
                    raise ValueError("unit law fails at (%d,%d)" % (t, a))
            if self.dual[self.dual[a]] != a:
                raise ValueError("dual is not an involution")
            for b in range(r):
                if self.N[u][a][b] != int(b == self.dual[a]):
                    raise ValueError("duality law fails at (%d,%d)" % (a, b))

    def _check_associative(self):
        r = self.rank
        N = self.N
        for a in range(r):
            for b in range(r):
                for c in range(r):
                    for d in range(r):
                        lhs = sum(N[e][a][b] * N[d][e][c] for e in range(r))
                        rhs = sum(N[d][a][f] * N[f][b][c] for f in range(r))
                        if lhs != rhs:
                            raise ValueError(
                                "associativity fails at %s" % ((a, b, c, d),)
                            )

    def validate(self) -> None:
        """Re-run every invariant check, associativity included."""
        self._check_basic()
        self._check_associative()

    def to_json_obj(self) -> dict:
        return {
            "labels": list(self.labels),
            "unit": self.unit,
            "dual": list(self.dual),
            "N": [[list(row) for row in plane] for plane in self.N],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FusionRing":
        return cls(obj["labels"], obj["unit"], obj["dual"], obj["N"])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FusionRing)
            and self.labels == other.labels
            and self.unit == other.unit
            and self.dual == other.dual
            and self.N == other.N
        )

    def __hash__(self):
        return hash((self.labels, self.unit, self.dual, self.N))

    def __repr__(self):
        return "FusionRing(rank=%d, labels=%r)" % (self.rank, list(self.labels))


class FusionModule:
    """Right module over a fusion ring, given by one action matrix per label.

    Matrices act on column coordinate vectors: action[j] applied to the
    coordinates of x gives the coordinates of x * label_j.
    """

    __slots__ = ("base", "rank", "action")

    def __init__(self, base: FusionRing, rank: int, action, check=True):
        self.base = base
        self.rank = int(rank)
        self.action = tuple(action)
        if len(self.action) != base.rank:
            raise ValueError("need one action matrix per base label")
        for m in self.action:
            if m.rows != self.rank or m.cols != self.rank:
                raise ValueError("action matrix has wrong shape")
        if check:
            self.validate()

    def validate(self) -> None:
        base = self.base
        if self.action[base.unit] != IntMatrix.identity(self.rank):
            raise ValueError("unit does not act as identity")
        r = base.rank
        for a in range(r):
            for b in range(r):
                lhs = self.action[a] @ self.action[b]
                rhs = IntMatrix.zeros(self.rank, self.rank)
                for t in range(r):
                    c = base.N[t][a][b]
                    if c:
                        rhs = rhs + self.action[t].scale(c)
                if lhs != rhs:
                    raise ValueError(
                        "module compatibility fails at (%d,%d)" % (a, b)
                    )


@dataclass(frozen=True)
class DetReport:
    """Z-matrix of a fusion ring with its determinant data."""

    ring: FusionRing
    Z: IntMatrix
    det_abs: int
    radical: int

    def __post_init__(self):
        if self.det_abs < 1:
            raise ValueError("|det Z| must be >= 1 for a fusion ring")


def tlj(k: int) -> FusionRing:
    """Level-k Temperley-Lieb-Jones fusion ring on labels pi_0..pi_k.

    Truncated Clebsch-Gordan rule: pi_i * pi_j contains pi_h once exactly
    when |i-j| <= h <= min(i+j, 2k-i-j) and h has the parity of i+j.
    The associator-twisted variant has the same ring.

    >>> tlj(1).labels
    ('pi_0', 'pi_1')
    """
    if k < 0:
        raise ValueError("level must be >= 0")
    r = k + 1
    N = [
        [
            [
                int(
                    abs(i - j) <= h <= min(i + j, 2 * k - i - j)
                    and (h - i - j) % 2 == 0
                )
                for j in range(r)
            ]
            for i in range(r)
        ]
        for h in range(r)
    ]
    labels = ["pi_%d" % i for i in range(r)]
    return FusionRing(labels, 0, list(range(r)), N)


def tlj_even(k: int) -> FusionRing:
    """Full subring of tlj(k) on the even-index labels pi_0, pi_2, ..."""
    full = tlj(k)
    even = list(range(0, k + 1, 2))
    labels = [full.labels[i] for i in even]
    N = [
        [[full.N[h][i][j] for j in even] for i in even]
        for h in even
    ]
    return FusionRing(labels, 0, list(range(len(even))), N)


def pointed_cyclic(m: int) -> FusionRing:
    """Group ring of Z/mZ as a fusion ring: basis g^0..g^{m-1}."""
    if m < 1:
        raise ValueError("order must be >= 1")
    N = [
        [[int(c == (a + b) % m) for b in range(m)] for a in range(m)]
        for c in range(m)
    ]
    labels = ["g^%d" % a for a in range(m)]
    dual = [(-a) % m for a in range(m)]
    return FusionRing(labels, 0, dual, N)


def deligne_product(A: FusionRing, B: FusionRing) -> FusionRing:
    """Product ring on pairs of labels; structure constants multiply."""
    ra, rb = A.rank, B.rank

    def idx(i, j):
        return i * rb + j

    r = ra * rb
    N = [[[0] * r for _ in range(r)] for _ in range(r)]
    for c1 in range(ra):
        for c2 in range(rb):
            plane = N[idx(c1, c2)]
            for a1 in range(ra):
                for a2 in range(rb):
                    row = plane[idx(a1, a2)]
                    for b1 in range(ra):
                        na = A.N[c1][a1][b1]
                        if not na:
                            continue
                        for b2 in range(rb):
                            row[idx(b1, b2)] = na * B.N[c2][a2][b2]
    labels = [
        "(%s,%s)" % (A.labels[i], B.labels[j])
        for i in range(ra)
        for j in range(rb)
    ]
    dual = [idx(A.dual[i], B.dual[j]) for i in range(ra) for j in range(rb)]
    return FusionRing(labels, idx(A.unit, B.unit), dual, N)


def regular_matrix(R: FusionRing, tau) -> IntMatrix:
    """Matrix of multiplication by tau in the regular representation.

    Entry (pi, w) is N[pi][tau][w]; the dual label gives the transpose.
    """
    t = R.index_of(tau)
    r = R.rank
    return IntMatrix.from_rows(
        [[R.N[p][t][w] for w in range(r)] for p in range(r)]
    )


def _radical(n: int) -> int:
    if n < 1:
        raise ValueError("radical of a non-positive integer")
    rad = 1
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            rad *= p
            while rest % p == 0:
                rest //= p
        p += 1 if p == 2 else 2
    if rest > 1:
        rad *= rest
    return rad


def global_det(R: FusionRing) -> DetReport:
    """Z = sum over labels of M(pi) M(dual pi), with |det| and its radical.

    The radical is the sharpest published upper bound for the liftability
    constant of the ring: only the prime divisors of |det Z| matter.
    """
    r = R.rank
    Z = IntMatrix.zeros(r, r)
    for p in range(r):
        Z = Z + regular_matrix(R, p) @ regular_matrix(R, R.dual[p])
    d = abs(det_exact(Z))
    return DetReport(ring=R, Z=Z, det_abs=d, radical=_radical(d))


@dataclass(frozen=True)
class ChebyshevReport:
    k: int
    powers_match: bool
    annihilated: bool
    charpoly_is_u_next: bool
    failures: tuple

    @property
    def passed(self) -> bool:
        return self.powers_match and self.annihilated and self.charpoly_is_u_next


def chebyshev_structure_check(k: int) -> ChebyshevReport:
    """Check that multiplication by pi_1 generates tlj(k) Chebyshev-style.

    (a) M(pi_i) = U_i(M/2) for the regular matrix M of pi_1, 0 <= i <= k;
    (b) U_{k+1}(X/2) annihilates M;
    (c) the characteristic polynomial of M equals U_{k+1}(X/2), so the
        annihilator in (b) is minimal.

    At level 0 the ring is Z and the truncation kills pi_1, so M = 0.
    """
    R = tlj(k)
    M = regular_matrix(R, 1) if k >= 1 else IntMatrix.zeros(1, 1)
    failures = []
    powers_match = True
    for i in range(k + 1):
        expected = regular_matrix(R, i)
        got = chebyshev_u(i).eval_matrix(M)
        if got != expected:
            powers_match = False
            failures.append("U_%d(M/2) != M(pi_%d)" % (i, i))
    ann = chebyshev_u(k + 1).eval_matrix(M)
    annihilated = ann.is_zero()
    if not annihilated:
        failures.append("U_%d(M/2) does not annihilate M" % (k + 1))
    cp_match = charpoly_exact(M) == chebyshev_u(k + 1)
    if not cp_match:
        failures.append("charpoly(M) != U_%d(X/2)" % (k + 1))
    return ChebyshevReport(
        k=k,
        powers_match=powers_match,
        annihilated=annihilated,
        charpoly_is_u_next=cp_match,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class ParityReport:
    """Exactness data for 0 -> Z^k -> Z^{k+1} -> Z -> 0 at half-level k."""

    k: int
    mult_matrix: IntMatrix
    augmentation: tuple
    injective: bool
    image_saturated: bool
    composite_zero: bool
    surjective: bool

    @property
    def exact(self) -> bool:
        return (
            self.injective
            and self.image_saturated
            and self.composite_zero
            and self.surjective
        )


def parity_sequence(k: int) -> ParityReport:
    """Decategorified index-parity sequence for the even part at level 2k.

    The middle map is left multiplication by pi_1 from the odd-label span
    into the even-label span of tlj(2k); the augmentation sends the class
    of pi_{2i} to (-1)^i.  Exactness is decided by Smith normal form:
    the multiplication matrix must have unit elementary divisors (injective
    with saturated image) and the augmentation must hit 1.
    """
    if k < 1:
        raise ValueError("half-level must be >= 1")
    R = tlj(2 * k)
    evens = list(range(0, 2 * k + 1, 2))
    odds = list(range(1, 2 * k, 2))
    A = IntMatrix.from_rows(
        [[R.N[e][1][o] for o in odds] for e in evens]
    )
    aug = tuple((-1) ** (e // 2) for e in evens)
    snf = smith_normal_form(A)
    diag = snf.diagonal()
    injective = len(diag) == k and all(d != 0 for d in diag)
    image_saturated = all(d == 1 for d in diag)
    comp = [sum(aug[i] * A.at(i, j) for i in range(k + 1)) for j in range(k)]
    composite_zero = all(c == 0 for c in comp)
    g = 0
    for a in aug:
        g = gcd(g, a)
    surjective = g == 1
    return ParityReport(
        k=k,
        mult_matrix=A,
        augmentation=aug,
        injective=injective,
        image_saturated=image_saturated,
        composite_zero=composite_zero,
        surjective=surjective,
    )


def dk_module(k: int) -> FusionModule:
    """Right tlj(k)-module on folded labels w_0..w_{floor(k/2)}.

    Fusion with pi_j is computed in tlj(k) and then indices fold through
    i -> min(i, k-i); the tie index k/2 (k even) appears once in the basis.
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    R = tlj(k)
    rank = k // 2 + 1

    def fold(i):
        return min(i, k - i)

    action = []
    for j in range(R.rank):
        rows = [[0] * rank for _ in range(rank)]
        for b in range(rank):
            for h in range(R.rank):
                c = R.N[h][b][j]
                if c:
                    rows[fold(h)][b] += c
        action.append(IntMatrix.from_rows(rows))
    return FusionModule(R, rank, action)


@dataclass(frozen=True)
class GroupRingIsoReport:
    """Witnesses that tlj(p-2) is the even subring with an adjoined
    square root of 1, i.e. a group ring over Z/2Z, with the even subring
    identified through the real cyclotomic minimal polynomial."""

    p: int
    top_label_squares_to_unit: bool
    flip_is_permutation: bool
    flip_swaps_parity: bool
    grading_multiplicative: bool
    commutative: bool
    even_charpoly_matches: bool
    doubled_charpoly_is_chebyshev: bool
    failures: tuple

    @property
    def passed(self) -> bool:
        return (
            self.top_label_squares_to_unit
            and self.flip_is_permutation
            and self.flip_swaps_parity
            and self.grading_multiplicative
            and self.commutative
            and self.even_charpoly_matches
            and self.doubled_charpoly_is_chebyshev
        )


def group_ring_iso_check(p: int) -> GroupRingIsoReport:
    """Group-ring shape of tlj(p-2) for odd prime p.

    Checks, all exactly:
      (i)   pi_{p-2} * pi_{p-2} = pi_0, so Y := pi_{p-2} is a central
            square root of 1 (the ring is commutative);
      (ii)  multiplication by Y permutes the basis through the label flip
            i -> (p-2)-i, which exchanges even and odd labels, and the
            index-parity grading is multiplicative; together these make
            the ring free of rank one over (even subring)[Z/2Z], with the
            sign-of-parity map as the order-2 ring automorphism;
      (iii) on the even-label block, multiplication by pi_1^2 - 1 has
            characteristic polynomial mu(X-1), where mu is the minimal
            polynomial of 2cos(2pi/p); equivalently that polynomial pulled
            back through X -> X^2 - 1 returns U_{p-1}(X/2).
    """
    from .numring import real_cyclotomic

    if p < 3 or not _is_prime(p) or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    k = p - 2
    R = tlj(k)
    failures = []

    squares = all(
        R.N[h][k][k] == int(h == 0) for h in range(R.rank)
    )
    if not squares:
        failures.append("pi_%d * pi_%d != pi_0" % (k, k))

    def s(i):
        return k - i

    P = regular_matrix(R, k)
    flip_perm = P @ P == IntMatrix.identity(R.rank) and all(
        R.N[c][k][b] == int(c == s(b)) for c in range(R.rank) for b in range(R.rank)
    )
    if not flip_perm:
        failures.append("pi_%d does not permute the basis by the label flip" % k)

    flip_parity = all(s(i) % 2 != i % 2 for i in range(R.rank))
    if not flip_parity:
        failures.append("label flip does not exchange parities")

    graded = all(
        R.N[c][a][b] == 0
        for c in range(R.rank)
        for a in range(R.rank)
        for b in range(R.rank)
        if (c - a - b) % 2
    )
    if not graded:
        failures.append("index parity is not a ring grading")

    commutative = all(
        R.N[c][a][b] == R.N[c][b][a]
        for c in range(R.rank)
        for a in range(R.rank)
        for b in range(R.rank)
    )
    if not commutative:
        failures.append("ring is not commutative")

    M1 = regular_matrix(R, 1) if k >= 1 else IntMatrix.identity(1)
    M2 = M1 @ M1 - IntMatrix.identity(R.rank)
    evens = list(range(0, k + 1, 2))
    block = IntMatrix.from_rows(
        [[M2.at(i, j) for j in evens] for i in evens]
    )
    q = charpoly_exact(block)
    mu = real_cyclotomic(p).mu
    even_match = q == mu.compose(PolyZ([-1, 1]))
    if not even_match:
        failures.append("even-block charpoly != mu(X-1)")
    doubled = q.compose(PolyZ([-1, 0, 1])) == chebyshev_u(p - 1)
    if not doubled:
        failures.append("q(X^2-1) != U_%d(X/2)" % (p - 1))

    return GroupRingIsoReport(
        p=p,
        top_label_squares_to_unit=squares,
        flip_is_permutation=flip_perm,
        flip_swaps_parity=flip_parity,
        grading_multiplicative=graded,
        commutative=commutative,
        even_charpoly_matches=even_match,
        doubled_charpoly_is_chebyshev=doubled,
        failures=tuple(failures),
    )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
