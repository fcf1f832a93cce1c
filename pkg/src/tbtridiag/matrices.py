"""Dense exact matrices over any supported field.

Matrices are immutable tuples of tuples of field elements.  All operations
are exact; equality is entrywise structural equality.  The module also
provides the spectral toolkit used throughout: polynomial evaluation at a
matrix, primitive idempotents via Lagrange interpolation, and the dimension
of the unital algebra generated by a set of matrices.
"""

from collections import deque
from math import gcd

from .errors import (DimensionMismatch, DuplicateEigenvalue, FieldMismatch,
                     NotAnnihilated, Singular)
from .fields import FieldElement, PrimeField, QuadraticExtension, RationalField


class Matrix:
    """An exact matrix over a fixed field."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        coerce = field.__call__
        self.field = field
        self.rows = tuple(tuple(coerce(e) for e in row) for row in rows)
        if not self.rows or not self.rows[0]:
            raise DimensionMismatch("empty matrix")
        m = len(self.rows[0])
        if any(len(r) != m for r in self.rows):
            raise DimensionMismatch("ragged rows")

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check_same_field(self, other):
        if other.field != self.field:
            raise FieldMismatch("matrices over different fields")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"add {self.shape} vs {other.shape}")
        return _wrap(self.field,
                     [[a + b for a, b in zip(r1, r2)]
                      for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"sub {self.shape} vs {other.shape}")
        return _wrap(self.field,
                     [[a - b for a, b in zip(r1, r2)]
                      for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return _wrap(self.field, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_same_field(other)
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"mul {self.shape} vs {other.shape}")
            cols = list(zip(*other.rows))
            out = []
            for row in self.rows:
                out.append([_dot(row, col) for col in cols])
            return _wrap(self.field, out)
        # scalar
        s = self.field(other)
        return _wrap(self.field, [[a * s for a in r] for r in self.rows])

    def __rmul__(self, other):
        if isinstance(other, Matrix):
            return NotImplemented
        s = self.field(other)
        return _wrap(self.field, [[s * a for a in r] for r in self.rows])

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("matrix powers take nonnegative integer exponents")
        if self.nrows != self.ncols:
            raise DimensionMismatch("power of a non-square matrix")
        out = identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def transpose(self):
        return _wrap(self.field, list(zip(*self.rows)))

    def is_zero(self):
        return all(e.is_zero() for r in self.rows for e in r)

    def inverse(self):
        """Exact inverse by Gauss-Jordan elimination; raises Singular."""
        if self.nrows != self.ncols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        field = self.field
        work = [list(r) for r in self.rows]
        out = [list(r) for r in identity(field, n).rows]
        for i in range(n):
            piv = next((k for k in range(i, n) if not work[k][i].is_zero()), None)
            if piv is None:
                raise Singular("matrix is not invertible")
            if piv != i:
                work[i], work[piv] = work[piv], work[i]
                out[i], out[piv] = out[piv], out[i]
            inv = work[i][i].inverse()
            work[i] = [e * inv for e in work[i]]
            out[i] = [e * inv for e in out[i]]
            for k in range(n):
                if k != i and not work[k][i].is_zero():
                    f = work[k][i]
                    work[k] = [a - f * b for a, b in zip(work[k], work[i])]
                    out[k] = [a - f * b for a, b in zip(out[k], out[i])]
        return _wrap(field, out)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"Matrix({self.field}, [{body}])"


def _wrap(field, rows):
    m = Matrix.__new__(Matrix)
    m.field = field
    m.rows = tuple(tuple(r) for r in rows)
    return m


def _dot(row, col):
    it = zip(row, col)
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def identity(field, n):
    one, zero = field.one, field.zero
    return _wrap(field, [[one if i == j else zero for j in range(n)]
                         for i in range(n)])


def zeros(field, n, m=None):
    zero = field.zero
    m = n if m is None else m
    return _wrap(field, [[zero] * m for _ in range(n)])


def diagonal(field, entries):
    entries = [field(e) for e in entries]
    zero = field.zero
    n = len(entries)
    return _wrap(field, [[entries[i] if i == j else zero for j in range(n)]
                         for i in range(n)])


def column(field, entries):
    return Matrix(field, [[e] for e in entries])


def commutator(x, y):
    return x * y - y * x


def anticommutator(x, y):
    return x * y + y * x


def poly_eval(coeffs, x):
    """Evaluate sum(coeffs[k] * x**k) by Horner's scheme."""
    if x.nrows != x.ncols:
        raise DimensionMismatch("polynomial of a non-square matrix")
    field = x.field
    coeffs = [field(c) for c in coeffs]
    if not coeffs:
        return zeros(field, x.nrows)
    eye = identity(field, x.nrows)
    acc = eye * coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + eye * c
    return acc


def lagrange_idempotents(x, eigenvalues):
    """Primitive idempotents of x for the listed eigenvalues.

    E_i = prod_{j != i} (x - t_j I) / (t_i - t_j).  Requires the eigenvalues
    to be pairwise distinct and prod (x - t_i I) = 0; the output then
    satisfies E_i E_j = delta_ij E_i, sum E_i = I and sum t_i E_i = x.
    """
    if x.nrows != x.ncols:
        raise DimensionMismatch("idempotents of a non-square matrix")
    field = x.field
    thetas = [field(t) for t in eigenvalues]
    if len(set(thetas)) != len(thetas):
        raise DuplicateEigenvalue("eigenvalues must be pairwise distinct")
    n = x.nrows
    eye = identity(field, n)
    factors = [x - eye * t for t in thetas]
    k = len(factors)
    prefix = [eye]
    for f in factors:
        prefix.append(prefix[-1] * f)
    if not prefix[-1].is_zero():
        raise NotAnnihilated("matrix is not annihilated by the eigenvalue factors")
    suffix = [eye] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = factors[i] * suffix[i + 1]
    out = []
    for i, ti in enumerate(thetas):
        denom = field.one
        for j, tj in enumerate(thetas):
            if j != i:
                denom = denom * (ti - tj)
        out.append(prefix[i] * suffix[i + 1] * denom.inverse())
    return out


# ---------------------------------------------------------------------------
# dimension of a generated matrix algebra
#
# Breadth-first product closure seeded at the identity, with an incremental
# row-echelon basis over the coefficient field.  Right-multiplying accepted
# elements by the generators reaches every word, so the accepted set spans
# the full unital algebra; the dimension saturates at n^2.
# ---------------------------------------------------------------------------

_CERT_PRIME = (1 << 61) - 1


class _GFEchelon:
    """Echelon basis over a prime field; rows are residue lists."""

    def __init__(self, p):
        self.p = p
        self.pivots = {}
        self.rank = 0

    def add(self, vec):
        p = self.p
        pivots = self.pivots
        n = len(vec)
        j = 0
        while j < n:
            x = vec[j]
            if x:
                prow = pivots.get(j)
                if prow is None:
                    inv = pow(x, -1, p)
                    pivots[j] = [v * inv % p for v in vec]
                    self.rank += 1
                    return True
                vec = [(a - x * b) % p for a, b in zip(vec, prow)]
            j += 1
        return False


class _ExactIntEchelon:
    """Fraction-free echelon basis over Q; rows are content-reduced int lists."""

    def __init__(self):
        self.pivots = {}
        self.rank = 0

    @staticmethod
    def _strip_content(vec):
        g = 0
        for v in vec:
            g = gcd(g, v)
            if g == 1:
                return vec
        if g == 0:
            return None
        return [v // g for v in vec]

    def add(self, fracs):
        den = 1
        for f in fracs:
            d = f.denominator
            den = den * d // gcd(den, d)
        vec = [f.numerator * (den // f.denominator) for f in fracs]
        vec = self._strip_content(vec)
        if vec is None:
            return False
        pivots = self.pivots
        n = len(vec)
        j = 0
        while j < n:
            x = vec[j]
            if x:
                prow = pivots.get(j)
                if prow is None:
                    if x < 0:
                        vec = [-v for v in vec]
                    pivots[j] = vec
                    self.rank += 1
                    return True
                pl = prow[j]
                g = gcd(x, pl)
                m1, m2 = pl // g, x // g
                vec = [m1 * a - m2 * b for a, b in zip(vec, prow)]
                vec = self._strip_content(vec)
                if vec is None:
                    return False
            j += 1
        return False


class _FieldEchelon:
    """Generic echelon basis; rows are raw-value lists of the field."""

    def __init__(self, field):
        self.field = field
        self.pivots = {}
        self.rank = 0

    def add(self, vec):
        f = self.field
        sub, mul, zero = f._sub, f._mul, f._zero_raw
        pivots = self.pivots
        n = len(vec)
        j = 0
        while j < n:
            x = vec[j]
            if x != zero:
                prow = pivots.get(j)
                if prow is None:
                    xinv = f._inv(x)
                    pivots[j] = [mul(v, xinv) for v in vec]
                    self.rank += 1
                    return True
                vec = [sub(a, mul(x, b)) for a, b in zip(vec, prow)]
            j += 1
        return False


class _BadReduction(Exception):
    pass


def _closure_rank(field, gens, n, echelon, vectorize):
    cap = n * n
    eye = identity(field, n)
    work = deque()
    if echelon.add(vectorize(eye)):
        work.append(eye)
    while work and echelon.rank < cap:
        x = work.popleft()
        for g in gens:
            y = x * g
            if echelon.add(vectorize(y)):
                if echelon.rank >= cap:
                    return cap
                work.append(y)
    return echelon.rank


def algebra_dimension(generators, n):
    """Dimension of the unital algebra generated by the given n x n matrices."""
    gens = list(generators)
    if not gens:
        return 1 if n >= 1 else 0
    field = gens[0].field
    for g in gens:
        if g.field != field:
            raise FieldMismatch("generators over different fields")
        if g.shape != (n, n):
            raise DimensionMismatch(f"generator of shape {g.shape}, expected {(n, n)}")

    def raw_vec(m):
        return [e.value for row in m.rows for e in row]

    if isinstance(field, PrimeField):
        return _closure_rank(field, gens, n, _GFEchelon(field.p), raw_vec)

    if isinstance(field, RationalField):
        # Full rank mod a large prime certifies full rank over Q; on a
        # deficient or unreducible projection redo the closure exactly.
        p = _CERT_PRIME
        inv_cache = {1: 1}

        def mod_vec(m):
            out = []
            for row in m.rows:
                for e in row:
                    f = e.value
                    d = f.denominator
                    dinv = inv_cache.get(d)
                    if dinv is None:
                        if d % p == 0:
                            raise _BadReduction
                        dinv = pow(d, -1, p)
                        inv_cache[d] = dinv
                    out.append(f.numerator * dinv % p)
            return out

        try:
            rank = _closure_rank(field, gens, n, _GFEchelon(p), mod_vec)
            if rank == n * n:
                return rank
        except _BadReduction:
            pass
        return _closure_rank(field, gens, n, _ExactIntEchelon(), raw_vec)

    return _closure_rank(field, gens, n, _FieldEchelon(field), raw_vec)
