"""Exact linear algebra over Z and GF(2): the verification backbone.

Everything downstream (fusion determinants, coboundary solving, lattice
certificates, resolution exactness) reduces to integer matrix arithmetic.
All entries are Python ints, so nothing overflows and floats appear nowhere
in this module.

Workhorses:

* ``IntMatrix``         dense integer matrix, immutable after construction
* ``smith_normal_form`` S = U*A*V with unimodular U, V and the divisibility
  chain d_1 | d_2 | ...; the exactness oracle for all module computations
* ``det_exact``         fraction-free Bareiss determinant
* ``charpoly_exact``    division-free characteristic polynomial (Berkowitz)
* ``chebyshev_u``       U_n(X/2) as an integer polynomial
* ``solve_linear_mod``  decides A*x = b (mod L) through the SNF
* ``PolyZ`` / ``PolyF2`` dense polynomials, lowest degree first
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class IntMatrix:
    """Dense integer matrix, entries stored row-major, immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        data = tuple(int(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(
                "entry count %d does not match %dx%d" % (len(data), rows, cols)
            )
        self.rows = rows
        self.cols = cols
        self.entries = data

    @classmethod
    def from_rows(cls, rows_list) -> "IntMatrix":
        rows_list = [list(r) for r in rows_list]
        m = len(rows_list)
        n = len(rows_list[0]) if m else 0
        if any(len(r) != n for r in rows_list):
            raise ValueError("ragged rows")
        return cls(m, n, [e for r in rows_list for e in r])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def at(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        n = self.cols
        return list(self.entries[i * n : (i + 1) * n])

    def to_rows(self) -> list:
        n = self.cols
        e = self.entries
        return [list(e[i * n : (i + 1) * n]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        m, n, e = self.rows, self.cols, self.entries
        return IntMatrix(n, m, [e[i * n + j] for j in range(n) for i in range(m)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        m, k, n = self.rows, self.cols, other.cols
        a = self.to_rows()
        bt = other.transpose().to_rows()
        out = []
        for i in range(m):
            ai = a[i]
            for j in range(n):
                bj = bt[j]
                out.append(sum(x * y for x, y in zip(ai, bj)))
        return IntMatrix(m, n, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            self.rows, self.cols, [x + y for x, y in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            self.rows, self.cols, [x - y for x, y in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [-x for x in self.entries])

    def scale(self, c: int) -> "IntMatrix":
        c = int(c)
        return IntMatrix(self.rows, self.cols, [c * x for x in self.entries])

    def apply(self, vector) -> list:
        """Matrix times column vector, returned as a plain list."""
        v = list(vector)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        n = self.cols
        e = self.entries
        return [
            sum(e[i * n + j] * v[j] for j in range(n)) for i in range(self.rows)
        ]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return "IntMatrix.from_rows(%r)" % (self.to_rows(),)


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form S = U*A*V with unimodular U, V.

    Diagonal entries are non-negative and each divides the next.
    """

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list:
        return [self.S.at(i, i) for i in range(min(self.S.rows, self.S.cols))]

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)

    def verify(self, A: IntMatrix, unimodular_check: bool | None = None) -> bool:
        """Re-check every SNF invariant against the original matrix.

        The determinant test on U and V is skipped above 64 rows unless
        forced: Bareiss minors of large transforms can be huge, and U, V
        are products of elementary operations by construction.
        """
        if self.U @ A @ self.V != self.S:
            return False
        d = self.diagonal()
        if any(x < 0 for x in d):
            return False
        for a, b in zip(d, d[1:]):
            if a == 0 and b != 0:
                return False
            if a != 0 and b % a != 0:
                return False
        # off-diagonal entries must vanish
        for i in range(self.S.rows):
            for j in range(self.S.cols):
                if i != j and self.S.at(i, j) != 0:
                    return False
        if unimodular_check is None:
            unimodular_check = max(A.rows, A.cols) <= 64
        if unimodular_check:
            if abs(det_exact(self.U)) != 1 or abs(det_exact(self.V)) != 1:
                return False
        return True


def smith_normal_form(A: IntMatrix) -> SNFResult:
    """Diagonalize A over Z by unimodular row and column operations.

    Pivot choice: the entry of smallest absolute value in the trailing
    block, which keeps intermediate growth tame at the sizes used here.
    See Cohen, A Course in Computational Algebraic Number Theory, 2.4.4.
    """
    m, n = A.rows, A.cols
    S = A.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_sub(i, k, q):
        # row_i -= q * row_k on S and U
        Si, Sk = S[i], S[k]
        for j in range(n):
            Si[j] -= q * Sk[j]
        Ui, Uk = U[i], U[k]
        for j in range(m):
            Ui[j] -= q * Uk[j]

    def col_sub(j, k, q):
        # col_j -= q * col_k on S and V
        for r in range(m):
            S[r][j] -= q * S[r][k]
        for r in range(n):
            V[r][j] -= q * V[r][k]

    def row_swap(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def col_swap(j, k):
        for r in range(m):
            S[r][j], S[r][k] = S[r][k], S[r][j]
        for r in range(n):
            V[r][j], V[r][k] = V[r][k], V[r][j]

    def negate_row(i):
        Si, Ui = S[i], U[i]
        for j in range(n):
            Si[j] = -Si[j]
        for j in range(m):
            Ui[j] = -Ui[j]

    t = 0
    limit = min(m, n)
    while t < limit:
        pi = pj = -1
        best = 0
        for i in range(t, m):
            Si = S[i]
            for j in range(t, n):
                v = Si[j]
                if v and (pi < 0 or -best < v < best):
                    pi, pj = i, j
                    best = abs(v)
        if pi < 0:
            break
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            if S[t][t] < 0:
                negate_row(t)
            p = S[t][t]
            restart = False
            for i in range(t + 1, m):
                v = S[i][t]
                if v:
                    row_sub(i, t, v // p)
                    if S[i][t]:
                        # remainder is a strictly smaller pivot candidate
                        row_swap(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                v = S[t][j]
                if v:
                    col_sub(j, t, v // p)
                    if S[t][j]:
                        col_swap(t, j)
                        restart = True
                        break
            if restart:
                continue
            p = S[t][t]
            bad = -1
            for i in range(t + 1, m):
                Si = S[i]
                for j in range(t + 1, n):
                    if Si[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            # fold the offending row into the pivot row and re-eliminate,
            # so the final pivot divides the whole trailing block
            Sb, Ub = S[bad], U[bad]
            St, Ut = S[t], U[t]
            for j in range(n):
                St[j] += Sb[j]
            for j in range(m):
                Ut[j] += Ub[j]
        t += 1

    return SNFResult(
        S=IntMatrix.from_rows(S) if m else IntMatrix(0, n, []),
        U=IntMatrix.from_rows(U) if m else IntMatrix(0, 0, []),
        V=IntMatrix.from_rows(V) if n else IntMatrix(0, 0, []),
    )


def det_exact(A: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            Mi, Mk = M[i], M[k]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * pk - mik * Mk[j]) // prev
            Mi[k] = 0
        prev = pk
    return sign * M[n - 1][n - 1]


class PolyZ:
    """Integer polynomial, dense coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "PolyZ":
        return cls([0, 1])

    @classmethod
    def const(cls, c: int) -> "PolyZ":
        return cls([c])

    def degree(self) -> int:
        # degree of the zero polynomial reported as -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "PolyZ") -> "PolyZ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return PolyZ(out)

    def __sub__(self, other: "PolyZ") -> "PolyZ":
        return self + (-other)

    def __neg__(self) -> "PolyZ":
        return PolyZ([-c for c in self.coeffs])

    def __mul__(self, other: "PolyZ") -> "PolyZ":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyZ([])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyZ(out)

    def scale(self, c: int) -> "PolyZ":
        return PolyZ([c * x for x in self.coeffs])

    def shift(self, k: int) -> "PolyZ":
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return PolyZ([0] * k + list(self.coeffs))

    def divmod_exact(self, divisor: "PolyZ"):
        """Polynomial division; requires every quotient step to stay in Z.

        Works whenever the divisor is monic (the only case needed here)
        or the division happens to be exact; raises otherwise.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = list(divisor.coeffs)
        dd = len(d) - 1
        lead = d[-1]
        q = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            if rem[i] == 0:
                continue
            if rem[i] % lead:
                raise ArithmeticError("division not exact over Z")
            f = rem[i] // lead
            q[i - dd] = f
            for j in range(dd + 1):
                rem[i - dd + j] -= f * d[j]
        return PolyZ(q), PolyZ(rem)

    def divides(self, other: "PolyZ") -> bool:
        try:
            _, r = other.divmod_exact(self)
        except ArithmeticError:
            return False
        return r.is_zero()

    def __call__(self, x):
        """Evaluate at an int, Fraction, or float by Horner's rule."""
        acc = 0 * x if self.coeffs else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "PolyZ") -> "PolyZ":
        """self(inner(X)) by Horner's rule on polynomials."""
        acc = PolyZ([])
        for c in reversed(self.coeffs):
            acc = acc * inner + PolyZ([c])
        return acc

    def eval_matrix(self, M: IntMatrix) -> IntMatrix:
        """Evaluate at a square integer matrix."""
        if M.rows != M.cols:
            raise ValueError("matrix evaluation needs a square matrix")
        n = M.rows
        acc = IntMatrix.zeros(n, n)
        ident = IntMatrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ M + ident.scale(c)
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def reduce_mod2(self) -> "PolyF2":
        bits = 0
        for i, c in enumerate(self.coeffs):
            if c & 1:
                bits |= 1 << i
        return PolyF2(bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyZ) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "PolyZ(%r)" % (list(self.coeffs),)


class PolyF2:
    """Polynomial over the two-element field, packed into an int bitmask.

    Bit i is the coefficient of X^i, so normalization is automatic.
    """

    __slots__ = ("bits",)

    def __init__(self, bits: int):
        if bits < 0:
            raise ValueError("negative bitmask")
        self.bits = int(bits)

    @classmethod
    def from_coeffs(cls, coeffs) -> "PolyF2":
        bits = 0
        for i, c in enumerate(coeffs):
            if int(c) % 2:
                bits |= 1 << i
        return cls(bits)

    def coeffs(self) -> list:
        return [(self.bits >> i) & 1 for i in range(self.degree() + 1)]

    def degree(self) -> int:
        return self.bits.bit_length() - 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_one(self) -> bool:
        return self.bits == 1

    def __add__(self, other: "PolyF2") -> "PolyF2":
        return PolyF2(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "PolyF2") -> "PolyF2":
        a, b = self.bits, other.bits
        out = 0
        shift = 0
        while b:
            if b & 1:
                out ^= a << shift
            b >>= 1
            shift += 1
        return PolyF2(out)

    def __mod__(self, other: "PolyF2") -> "PolyF2":
        if other.bits == 0:
            raise ZeroDivisionError("mod by zero polynomial")
        r = self.bits
        d = other.bits
        dd = d.bit_length()
        while r.bit_length() >= dd:
            r ^= d << (r.bit_length() - dd)
        return PolyF2(r)

    def __floordiv__(self, other: "PolyF2") -> "PolyF2":
        if other.bits == 0:
            raise ZeroDivisionError("division by zero polynomial")
        r = self.bits
        d = other.bits
        dd = d.bit_length()
        q = 0
        while r.bit_length() >= dd:
            s = r.bit_length() - dd
            q ^= 1 << s
            r ^= d << s
        return PolyF2(q)

    def gcd(self, other: "PolyF2") -> "PolyF2":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a

    def powmod(self, e: int, mod: "PolyF2") -> "PolyF2":
        result = PolyF2(1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def derivative(self) -> "PolyF2":
        # only odd-degree terms survive in characteristic 2
        out = 0
        b = self.bits >> 1
        i = 0
        while b:
            if (b & 1) and i % 2 == 0:
                out |= 1 << i
            b >>= 1
            i += 1
        return PolyF2(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyF2) and self.bits == other.bits

    def __hash__(self):
        return hash(("PolyF2", self.bits))

    def __lt__(self, other: "PolyF2") -> bool:
        return self.bits < other.bits

    def __repr__(self):
        if self.bits == 0:
            return "PolyF2(0)"
        terms = []
        for i in reversed(range(self.degree() + 1)):
            if (self.bits >> i) & 1:
                terms.append("1" if i == 0 else ("X" if i == 1 else "X^%d" % i))
        return "PolyF2<%s>" % " + ".join(terms)


def chebyshev_u(n: int) -> PolyZ:
    """U_n(X/2) as an integer polynomial.

    U_0 = 1, U_1(X/2) = X, U_{n+1}(X/2) = X*U_n(X/2) - U_{n-1}(X/2).

    >>> chebyshev_u(2)
    PolyZ([-1, 0, 1])
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    prev = PolyZ([1])
    if n == 0:
        return prev
    cur = PolyZ([0, 1])
    for _ in range(n - 1):
        prev, cur = cur, cur.shift(1) - prev
    return cur


def chebyshev_t2(n: int) -> PolyZ:
    """2*T_n(X/2) as an integer polynomial (first kind, rescaled).

    2*T_0 = 2, 2*T_1(X/2) = X, and the same three-term recurrence as U.
    Sends 2cos(t) to 2cos(n*t), which is how Galois conjugation acts on
    the real cyclotomic generator.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    prev = PolyZ([2])
    if n == 0:
        return prev
    cur = PolyZ([0, 1])
    for _ in range(n - 1):
        prev, cur = cur, cur.shift(1) - prev
    return cur


def charpoly_exact(A: IntMatrix) -> PolyZ:
    """Characteristic polynomial det(X*I - A), division-free (Berkowitz)."""
    if A.rows != A.cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = A.rows
    M = A.to_rows()
    # coefficients highest degree first during the recursion
    C = [1]
    for k in range(n):
        a = M[k][k]
        R = M[k][:k]
        col = [M[i][k] for i in range(k)]
        B = [row[:k] for row in M[:k]]
        toep = [1, -a]
        v = col
        for _ in range(k):
            toep.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(B[i][j] * v[j] for j in range(k)) for i in range(k)]
        newC = [0] * (k + 2)
        for i, ti in enumerate(toep):
            if ti:
                for j, cj in enumerate(C):
                    if i + j < k + 2:
                        newC[i + j] += ti * cj
        C = newC
    return PolyZ(list(reversed(C)))


def matvec_mod(M: IntMatrix, v, L: int) -> list:
    out = M.apply(v)
    return [x % L for x in out]


def solve_linear_mod(A: IntMatrix, b, L: int, snf: SNFResult | None = None):
    """Find x with A*x = b (mod L), or None when no solution exists.

    Decided through the Smith form: with U*A*V = S diagonal, the system
    becomes s_i * y_i = (U*b)_i (mod L), solvable per coordinate iff
    gcd(s_i, L) divides the right side.  Pass a precomputed ``snf`` to
    amortize the reduction across many right-hand sides.
    """
    if L < 1:
        raise ValueError("modulus must be >= 1")
    b = [int(x) for x in b]
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    if snf is None:
        snf = smith_normal_form(A)
    c = snf.U.apply(b)
    m, n = A.rows, A.cols
    diag = snf.diagonal()
    y = [0] * n
    for i in range(m):
        s = diag[i] if i < len(diag) else 0
        ci = c[i] % L
        g = gcd(s, L)
        if g == 0:
            g = L
        if ci % g:
            return None
        if i < n and s:
            lred = L // g
            if lred > 1:
                y[i] = (ci // g) * pow(s // g, -1, lred) % lred
            else:
                y[i] = 0
    x = snf.V.apply(y)
    return [v % L for v in x]


def solve_linear(A: IntMatrix, b, snf: SNFResult | None = None):
    """Find an integer x with A*x = b exactly, or None.

    Same Smith-form mechanics as solve_linear_mod but over Z itself:
    each diagonal entry must divide its transformed coordinate.
    """
    b = [int(x) for x in b]
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    if snf is None:
        snf = smith_normal_form(A)
    c = snf.U.apply(b)
    m, n = A.rows, A.cols
    diag = snf.diagonal()
    y = [0] * n
    for i in range(m):
        s = diag[i] if i < len(diag) else 0
        if s == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % s:
                return None
            if i < n:
                y[i] = c[i] // s
    return snf.V.apply(y)


def kernel_basis(A: IntMatrix, snf: SNFResult | None = None) -> list:
    """Basis of the integer kernel {x : A*x = 0}, as a list of vectors.

    The kernel is spanned by the columns of V beyond the SNF rank; that
    span is saturated, so it is the full kernel lattice.
    """
    if snf is None:
        snf = smith_normal_form(A)
    r = snf.rank()
    n = A.cols
    V = snf.V
    return [[V.at(i, j) for i in range(n)] for j in range(r, n)]


def frac_gcd_lcm_denominator(values) -> int:
    """lcm of the denominators of an iterable of Fractions."""
    L = 1
    for v in values:
        d = Fraction(v).denominator
        L = L // gcd(L, d) * d
    return L
