"""Totally bipartite tridiagonal systems in the standard basis.

From a validated eigenvalue array this module builds the tridiagonal matrix A
(zero diagonal, subdiagonal c, superdiagonal b), the diagonal matrix A*, both
primitive-idempotent families, the symmetrizing diagonal matrix K, and the
sign involutions S, S*.  Every defining identity can be re-verified
exhaustively; verification never raises on a mathematical failure but returns
a report with witnesses, so deliberately mutated inputs can be diagnosed.
"""

from dataclasses import dataclass

from .arrays import is_self_dual, relatives
from .errors import (DimensionMismatch, FieldMismatch, NotAnnihilated,
                     NotSelfDual, ZeroDenominator)
from .matrices import (Matrix, algebra_dimension, diagonal, identity,
                       lagrange_idempotents, zeros)
from .report import ReportBuilder


@dataclass(frozen=True)
class IntersectionNumbers:
    """Sub/superdiagonal entries of A and their dual counterparts.

    c[i-1] holds c_i (1 <= i <= d); b[i] holds b_i (0 <= i <= d-1).
    """

    c: tuple
    b: tuple
    c_star: tuple
    b_star: tuple


def _one_side(theta, theta_star, d):
    c = []
    for i in range(1, d):
        denom = theta_star[i - 1] - theta_star[i + 1]
        if denom.is_zero():
            raise ZeroDenominator(f"theta_star[{i - 1}] == theta_star[{i + 1}]")
        c.append((theta[1] * theta_star[i] - theta[0] * theta_star[i + 1]) / denom)
    c.append(theta[0])
    b = [theta[0]]
    for i in range(1, d):
        denom = theta_star[i + 1] - theta_star[i - 1]
        b.append((theta[1] * theta_star[i] - theta[0] * theta_star[i - 1]) / denom)
    return tuple(c), tuple(b)


def intersection_numbers(arr):
    """Intersection numbers of the array, with their defining identities checked."""
    d = arr.d
    c, b = _one_side(arr.theta, arr.theta_star, d)
    c_star, b_star = _one_side(arr.theta_star, arr.theta, d)
    theta0 = arr.theta[0]
    for seq in (c, b, c_star, b_star):
        assert all(not v.is_zero() for v in seq), "vanishing intersection number"
    assert all(c[i - 1] == b[d - i] for i in range(1, d + 1))
    assert c[d - 1] == theta0 and b[0] == theta0
    assert all(c[i - 1] + b[i] == theta0 for i in range(1, d))
    return IntersectionNumbers(c, b, c_star, b_star)


@dataclass(frozen=True)
class TBSystem:
    """A TB tridiagonal system in the standard basis.

    E may be None for systems loaded from external data whose A is not
    diagonalizable; verify_axioms reports that instead of raising.
    """

    array: object
    inters: IntersectionNumbers
    A: Matrix
    A_star: Matrix
    E: tuple | None
    E_star: tuple
    K: Matrix
    S: Matrix | None
    S_star: Matrix

    @property
    def d(self):
        return self.array.d

    @property
    def field(self):
        return self.array.field


def _tridiagonal(fld, c, b, n):
    rows = [[fld.zero] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = b[i]
        rows[i + 1][i] = c[i]
    return Matrix(fld, rows)


def build_system(arr):
    """Construct the TB tridiagonal system with eigenvalue array arr.

    All construction identities (idempotent resolution, A^t K = K A, the
    involution relations) are asserted exactly.
    """
    fld = arr.field
    d = arr.d
    n = d + 1
    inters = intersection_numbers(arr)
    A = _tridiagonal(fld, inters.c, inters.b, n)
    A_star = diagonal(fld, arr.theta_star)
    E_star = tuple(diagonal(fld, [fld.one if j == i else fld.zero for j in range(n)])
                   for i in range(n))
    E = tuple(lagrange_idempotents(A, arr.theta))

    k = [fld.one]
    for i in range(1, n):
        k.append(k[-1] * inters.b[i - 1] / inters.c[i - 1])
    K = diagonal(fld, k)

    S = _signed_sum(E)
    S_star = _signed_sum(E_star)

    eye = identity(fld, n)
    acc_e, acc_te = zeros(fld, n), zeros(fld, n)
    for i in range(n):
        for j in range(n):
            prod = E[i] * E[j]
            assert prod == (E[i] if i == j else zeros(fld, n))
        acc_e = acc_e + E[i]
        acc_te = acc_te + E[i] * arr.theta[i]
    assert acc_e == eye and acc_te == A
    assert A.transpose() * K == K * A
    assert S * S == eye and S_star * S_star == eye
    assert S * S_star == S_star * S * fld(-1) ** d

    return TBSystem(arr, inters, A, A_star, E, E_star, K, S, S_star)


def _signed_sum(mats):
    acc = mats[0]
    for i, m in enumerate(mats[1:], start=1):
        acc = acc + m * ((-1) ** i)
    return acc


def raising_lowering(sys):
    """The raising map R (subdiagonal c) and lowering map L (superdiagonal b)."""
    fld = sys.field
    n = sys.d + 1
    zero = zeros(fld, n)
    R = _tridiagonal(fld, sys.inters.c, [fld.zero] * (n - 1), n)
    L = _tridiagonal(fld, [fld.zero] * (n - 1), sys.inters.b, n)
    assert R + L == sys.A
    Es = sys.E_star
    for i in range(1, n):
        assert Es[i] * R == Es[i] * sys.A * Es[i - 1] == R * Es[i - 1]
        assert Es[i - 1] * L == Es[i - 1] * sys.A * Es[i] == L * Es[i]
    assert Es[0] * R == zero and R * Es[n - 1] == zero
    assert Es[n - 1] * L == zero and L * Es[0] == zero
    return R, L


def verify_axioms(sys):
    """Re-verify the defining axioms from scratch; returns a report.

    Checks: (a) A is annihilated by its eigenvalue factors, (b) the
    nearest-neighbour sandwich patterns for both idempotent families,
    (c) irreducibility of A, (d) A and A* generate the full matrix algebra,
    (e) the zero/nonzero pattern of the powers A^r for 0 <= r <= d.
    """
    rb = ReportBuilder()
    fld = sys.field
    d = sys.d
    n = d + 1
    theta = sys.array.theta
    A, A_star = sys.A, sys.A_star
    eye = identity(fld, n)

    prod = eye
    for t in theta:
        prod = prod * (A - eye * t)
    rb.matrix_zero("diagonalizable: product of eigenvalue factors vanishes", prod)

    ok, witness = True, None
    for i in range(n):
        for j in range(n):
            entry = A[i, j]
            if abs(i - j) == 1 and entry.is_zero():
                ok, witness = False, f"A[{i},{j}] = 0 on the off-diagonal"
            elif abs(i - j) != 1 and not entry.is_zero():
                ok, witness = False, f"A[{i},{j}] = {entry} off the tridiagonal band"
            if not ok:
                break
        if not ok:
            break
    rb.record("sandwich pattern: E*_i A E*_j", ok, witness)

    try:
        E = tuple(lagrange_idempotents(A, theta))
    except NotAnnihilated:
        E = None
    if E is None:
        rb.record("sandwich pattern: E_i A* E_j", False,
                  "primitive idempotents of A unavailable (not annihilated)")
    else:
        ok, witness = True, None
        for i in range(n):
            for j in range(n):
                m = E[i] * A_star * E[j]
                if abs(i - j) == 1 and m.is_zero():
                    ok, witness = False, f"E_{i} A* E_{j} = 0"
                elif abs(i - j) != 1 and not m.is_zero():
                    ok, witness = False, f"E_{i} A* E_{j} != 0"
                if not ok:
                    break
            if not ok:
                break
        rb.record("sandwich pattern: E_i A* E_j", ok, witness)

    ok, witness = True, None
    for i in range(1, n):
        if A[i, i - 1].is_zero() or A[i - 1, i].is_zero():
            ok, witness = False, f"c_{i} * b_{i - 1} = 0"
            break
    rb.record("irreducible: c_i b_{i-1} != 0", ok, witness)

    dim = algebra_dimension([A, A_star], n)
    rb.record("A, A* generate the full matrix algebra", dim == n * n,
              None if dim == n * n else f"algebra dimension {dim} != {n * n}")

    ok, witness = True, None
    power = eye
    for r in range(n):
        if not ok:
            break
        for i in range(n):
            for j in range(n):
                entry = power[i, j]
                if abs(i - j) > r and not entry.is_zero():
                    ok, witness = False, f"(A^{r})[{i},{j}] = {entry} != 0"
                elif abs(i - j) == r and entry.is_zero():
                    ok, witness = False, f"(A^{r})[{i},{j}] = 0"
                if not ok:
                    break
            if not ok:
                break
        power = power * A
    rb.record("power pattern: E*_i A^r E*_j", ok, witness)

    return rb.build()


def verify_aw_relations(sys, seq):
    """Check both Askey-Wilson relations, plus the d = 1 and d = 2 degenerations."""
    rb = ReportBuilder()
    A, B = sys.A, sys.A_star
    beta, rho, rho_star = seq.beta, seq.rho, seq.rho_star
    rb.matrices_equal("A^2 A* - beta A A* A + A* A^2 = rho A*",
                      A * A * B - beta * (A * B * A) + B * A * A, B * rho)
    rb.matrices_equal("A*^2 A - beta A* A A* + A A*^2 = rho* A",
                      B * B * A - beta * (B * A * B) + A * B * B, A * rho_star)
    if sys.d == 1:
        fld = sys.field
        eye = identity(fld, 2)
        rb.matrices_equal("A A* = -A* A", A * B, -(B * A))
        rb.matrices_equal("A^2 = theta_0^2 I", A * A, eye * sys.array.theta[0] ** 2)
        rb.matrices_equal("A*^2 = theta*_0^2 I", B * B,
                          eye * sys.array.theta_star[0] ** 2)
    if sys.d == 2:
        rb.matrix_zero("A A* A = 0", A * B * A)
        rb.matrix_zero("A* A A* = 0", B * A * B)
    return rb.build()


def dagger(sys, x):
    """The antiautomorphism X -> K^{-1} X^t K fixing A, A* and all idempotents."""
    n = sys.d + 1
    if x.shape != (n, n):
        raise DimensionMismatch(f"expected {(n, n)}, got {x.shape}")
    if x.field != sys.field:
        raise FieldMismatch("matrix over a different field")
    k = [sys.K[i, i] for i in range(n)]
    return Matrix(sys.field,
                  [[x[j, i] * k[j] / k[i] for j in range(n)] for i in range(n)])


def dagger_report(sys, pairs=20, seed=0):
    """Spot-check the antiautomorphism: fixes A, A*, all idempotents, is an
    involution, and reverses products on pseudo-random matrix pairs."""
    import random

    rb = ReportBuilder()
    fld = sys.field
    n = sys.d + 1
    rb.matrices_equal("dagger(A) = A", dagger(sys, sys.A), sys.A)
    rb.matrices_equal("dagger(A*) = A*", dagger(sys, sys.A_star), sys.A_star)
    ok = all(dagger(sys, e) == e for e in sys.E_star)
    if sys.E is not None:
        ok = ok and all(dagger(sys, e) == e for e in sys.E)
    rb.record("dagger fixes every idempotent", ok)
    rng = random.Random(seed)

    def rand_matrix():
        return Matrix(fld, [[rng.randint(-9, 9) for _ in range(n)]
                            for _ in range(n)])

    ok_inv, ok_anti = True, True
    for _ in range(pairs):
        x, y = rand_matrix(), rand_matrix()
        if dagger(sys, dagger(sys, x)) != x:
            ok_inv = False
        if dagger(sys, x * y) != dagger(sys, y) * dagger(sys, x):
            ok_anti = False
    rb.record(f"dagger is an involution on {pairs} random matrices", ok_inv)
    rb.record(f"dagger reverses products on {pairs} random pairs", ok_anti)
    return rb.build()


def involutions_check(sys):
    """Verify the commutation table of the sign involutions S and S*."""
    rb = ReportBuilder()
    fld = sys.field
    n = sys.d + 1
    A, B, S, Ss = sys.A, sys.A_star, sys.S, sys.S_star
    rb.matrices_equal("S^2 = I", S * S, identity(fld, n))
    rb.matrices_equal("S*^2 = I", Ss * Ss, identity(fld, n))
    rb.matrices_equal("S A = A S", S * A, A * S)
    rb.matrices_equal("S A* = -A* S", S * B, -(B * S))
    rb.matrices_equal("S* A* = A* S*", Ss * B, B * Ss)
    rb.matrices_equal("S* A = -A S*", Ss * A, -(A * Ss))
    ok = all(S * sys.E_star[i] == sys.E_star[sys.d - i] * S for i in range(n))
    rb.record("S E*_i = E*_{d-i} S", ok)
    ok = all(Ss * sys.E[i] == sys.E[sys.d - i] * Ss for i in range(n))
    rb.record("S* E_i = E_{d-i} S*", ok)
    rb.matrices_equal("S S* = (-1)^d S* S", S * Ss, Ss * S * fld(-1) ** sys.d)
    acc = zeros(fld, n)
    for i in range(n):
        term = sys.E[i] * B + B * sys.E[i]
        acc = acc + term * ((-1) ** i)
    rb.matrix_zero("sum (-1)^i (E_i A* + A* E_i) = 0", acc)
    down = build_system(relatives(sys.array)["down"])
    rb.matrices_equal("S A S = A of the reversed-dual relative", S * A * S, down.A)
    rb.matrices_equal("S A* S = A* of the reversed-dual relative",
                      S * B * S, down.A_star)
    return rb.build()


def _poly_chain(x, roots, eye):
    """chain[i] = (x - roots[0] I) ... (x - roots[i-1] I)."""
    chain = [eye]
    for t in roots:
        chain.append(chain[-1] * (x - eye * t))
    return chain


def sd_isomorphism(sys):
    """The canonical intertwiner Psi with Psi A = A* Psi and Psi A* = A Psi.

    Requires a self-dual system.  Computes all four polynomial sums
    independently, asserts their equality and nonzeroness, and returns the
    common value.
    """
    if not is_self_dual(sys.array):
        raise NotSelfDual("sd_isomorphism needs theta == theta_star")
    fld = sys.field
    d = sys.d
    n = d + 1
    eye = identity(fld, n)
    theta, theta_star = sys.array.theta, sys.array.theta_star
    A, B = sys.A, sys.A_star
    tau = _poly_chain(A, theta, eye)
    eta = _poly_chain(A, tuple(reversed(theta)), eye)
    tau_s = _poly_chain(B, theta_star, eye)
    eta_s = _poly_chain(B, tuple(reversed(theta_star)), eye)

    e0_esd = sys.E_star[0] * sys.E[d]
    e0s_ed = sys.E[0] * sys.E_star[d]
    ed_es0 = sys.E[d] * sys.E_star[0]
    esd_e0 = sys.E_star[d] * sys.E[0]

    sums = [zeros(fld, n) for _ in range(4)]
    for i in range(n):
        sums[0] = sums[0] + eta[d - i] * e0_esd * tau_s[i]
        sums[1] = sums[1] + eta_s[d - i] * e0s_ed * tau[i]
        sums[2] = sums[2] + tau_s[i] * ed_es0 * eta[d - i]
        sums[3] = sums[3] + tau[i] * esd_e0 * eta_s[d - i]
    psi = sums[0]
    assert sums[1] == psi and sums[2] == psi and sums[3] == psi, \
        "the four intertwiner sums disagree"
    assert not psi.is_zero(), "intertwiner vanishes"
    assert psi * A == B * psi and psi * B == A * psi
    return psi


def isomorphic(sys1, sys2):
    """Systems are isomorphic iff their eigenvalue arrays coincide."""
    if sys1.field != sys2.field:
        raise FieldMismatch("systems over different fields")
    return (sys1.array.theta == sys2.array.theta
            and sys1.array.theta_star == sys2.array.theta_star)
