"""Self-dual Leonard-triple completion of a TB tridiagonal system.

Adjoining a third element C to a self-dual pair (A, B = A*) puts the
Askey-Wilson relations into cyclic three-element form.  The spectral elements
W, W', W'' built from a shared eigenvalue-dependent weight sequence t_i give
an order-3 inner automorphism rho (conjugation by P = W'W, with P^3 = kappa I),
an order-2 automorphism sigma, a family of six antiautomorphisms, and through
rho, sigma an action of the modular group PSL2(Z).
"""

from dataclasses import dataclass

from .arrays import aw_sequence, fundamental_parameter, is_self_dual, ANY_BETA
from .errors import (BetaInvalid, KappaMismatch, NoSquareRootInField,
                     NotSelfDual, RelationViolation)
from .matrices import Matrix, identity, lagrange_idempotents, zeros
from .recurrences import solve_q
from .report import ReportBuilder
from .system import dagger


@dataclass(frozen=True)
class TripleScalars:
    """Case data for the completion: beta, rho, the normalization h of the
    eigenvalues, the cyclic-relation scalar z, and q when beta != +-2."""

    beta: object
    rho: object
    h: object
    z: object
    q: object = None

    @property
    def case(self):
        fld = self.beta.field
        if self.beta == fld(2):
            return "beta=2"
        if self.beta == fld(-2):
            return "beta=-2"
        return "beta!=+-2"


@dataclass(frozen=True)
class LeonardTriple:
    A: Matrix
    B: Matrix
    C: Matrix
    E: tuple
    E_prime: tuple
    E_dprime: tuple
    scalars: TripleScalars

    @property
    def field(self):
        return self.A.field

    @property
    def d(self):
        return self.A.nrows - 1


@dataclass(frozen=True)
class WData:
    W: Matrix
    W_prime: Matrix
    W_dprime: Matrix
    P: Matrix
    t: tuple
    kappa: object


def triple_scalars(sys, beta=None, q=None):
    """Extract (beta, rho, h, z, q) for a self-dual system.

    For d <= 2 every scalar is a fundamental parameter; the case is chosen by
    the optional beta argument (default 2).  z solves z^2 = -rho, rho, or
    rho/(4 - beta^2) by case, taking the canonical square root; a missing root
    raises NoSquareRootInField with the extension to add.
    """
    if not is_self_dual(sys.array):
        raise NotSelfDual("triple completion needs theta == theta_star")
    fld = sys.field
    d = sys.d
    unique = fundamental_parameter(sys.array)
    if unique is ANY_BETA:
        beta = fld(2) if beta is None else fld(beta)
    elif beta is not None and fld(beta) != unique:
        raise BetaInvalid(f"array has fundamental parameter {unique}, got {beta}")
    else:
        beta = unique
    rho = aw_sequence(sys.array, beta).rho
    theta = sys.array.theta

    if beta == fld(2):
        h = theta[0] / d
        assert all(theta[i] == h * (d - 2 * i) for i in range(d + 1))
        assert rho == 4 * h * h
        zsq = -rho
        q = None
    elif beta == fld(-2):
        h = theta[0] / d
        assert all(theta[i] == h * (d - 2 * i) * (-1) ** i for i in range(d + 1))
        assert rho == 4 * h * h
        zsq = rho
        q = None
    else:
        if q is None:
            q = solve_q(beta)
            if q is None:
                raise NoSquareRootInField(
                    f"no q in {fld} with q^2 + q^-2 = {beta}; extend the field "
                    "by a root of t^2 - beta*t + 1 and its square root")
        else:
            q = fld(q)
            if q * q + (q * q).inverse() != beta:
                raise BetaInvalid(f"q = {q} does not match beta = {beta}")
        h = theta[0] / (q ** d - q ** (-d))
        assert all(theta[i] == h * (q ** (d - 2 * i) - q ** (2 * i - d))
                   for i in range(d + 1))
        assert rho == h * h * (q * q - (q * q).inverse()) ** 2
        zsq = rho / (4 - beta * beta)
    z = fld.sqrt(zsq)
    if z is None:
        hint = f"sqrt({zsq})"
        if fld.sqrt(-zsq) is not None:
            hint = "Q(i)" if fld.characteristic == 0 else "an extension by sqrt(-1)"
        raise NoSquareRootInField(
            f"z^2 = {zsq} has no square root in {fld}; extend the field, "
            f"e.g. to {hint}")
    return TripleScalars(beta, rho, h, z, q)


def build_C(sys, sc):
    """Adjoin the third element C and both remaining idempotent families.

    C is defined from the A,B relation of the case and the other two cyclic
    relations are then verified exactly.
    """
    fld = sys.field
    A, B = sys.A, sys.A_star
    z = sc.z
    if sc.case == "beta=2":
        C = (A * B - B * A) * z.inverse()
        rel1 = (B * C - C * B, A * z)
        rel2 = (C * A - A * C, B * z)
    elif sc.case == "beta=-2":
        C = (A * B + B * A) * z.inverse()
        rel1 = (B * C + C * B, A * z)
        rel2 = (C * A + A * C, B * z)
    else:
        q = sc.q
        scale = ((q * q - (q * q).inverse()) * z).inverse()
        C = (q * (A * B) - q.inverse() * (B * A)) * scale
        rel1 = (q * (B * C) - q.inverse() * (C * B), A * (z * (q * q - (q * q).inverse())))
        rel2 = (q * (C * A) - q.inverse() * (A * C), B * (z * (q * q - (q * q).inverse())))
    for k, (lhs, rhs) in enumerate((rel1, rel2), start=1):
        if lhs != rhs:
            raise RelationViolation(f"cyclic relation {k} failed for case {sc.case}")
    theta = sys.array.theta
    E_prime = tuple(lagrange_idempotents(B, theta))
    E_dprime = tuple(lagrange_idempotents(C, theta))
    return LeonardTriple(A, B, C, tuple(sys.E), E_prime, E_dprime, sc)


def _weights(sc, d):
    fld = sc.beta.field
    h, z = sc.h, sc.z
    zinv = z.inverse()
    if sc.case == "beta=2":
        return tuple((2 * h * zinv) ** i for i in range(d + 1))
    if sc.case == "beta=-2":
        return tuple(fld(-1) ** (i // 2) * (2 * h * zinv) ** i for i in range(d + 1))
    q = sc.q
    return tuple(h ** i * zinv ** i * q ** (i * (d - i)) for i in range(d + 1))


def _spectral_sum(idems, weights):
    acc = idems[0] * weights[0]
    for e, t in zip(idems[1:], weights[1:]):
        acc = acc + e * t
    return acc


def expected_kappa(sc, d):
    """The predicted scalar with P^3 = kappa I."""
    fld = sc.beta.field
    h, z = sc.h, sc.z
    if sc.case == "beta=2":
        return fld(-1) ** d * (2 * h) ** (-d) * z ** d
    if sc.case == "beta=-2":
        return fld.one
    return fld(-1) ** d * h ** (-d) * z ** d * sc.q ** (d * (d - 1))


def build_W(tri):
    """The spectral elements W, W', W'' and P = W'W, with P^3 = kappa I.

    The intertwining identities A W = W A, B W' = W' B, B W = W C, C W' = W' A
    and the three factorizations of P are asserted; a wrong kappa raises
    KappaMismatch.
    """
    sc = tri.scalars
    d = tri.d
    t = _weights(sc, d)
    W = _spectral_sum(tri.E, t)
    W_prime = _spectral_sum(tri.E_prime, t)
    W_dprime = _spectral_sum(tri.E_dprime, t)
    P = W_prime * W
    A, B, C = tri.A, tri.B, tri.C
    assert A * W == W * A and B * W_prime == W_prime * B
    assert B * W == W * C and C * W_prime == W_prime * A
    assert P == W_dprime * W_prime == W * W_dprime
    kappa = expected_kappa(sc, d)
    if P * P * P != identity(tri.field, d + 1) * kappa:
        raise KappaMismatch(f"P^3 != {kappa} I for case {sc.case}")
    return WData(W, W_prime, W_dprime, P, t, kappa)


def rho_automorphism(w, x):
    """The order-3 automorphism X -> P^{-1} X P cycling A -> B -> C -> A."""
    return w.P.inverse() * x * w.P


def braid_check(w):
    """Braid relations among W, W', W'' and the three factorizations of P."""
    rb = ReportBuilder()
    a, b, c = w.W, w.W_prime, w.W_dprime
    rb.matrices_equal("W W' W = W' W W'", a * b * a, b * a * b)
    rb.matrices_equal("W' W'' W' = W'' W' W''", b * c * b, c * b * c)
    rb.matrices_equal("W W'' W = W'' W W''", a * c * a, c * a * c)
    rb.matrices_equal("P = W' W", w.P, b * a)
    rb.matrices_equal("P = W'' W'", w.P, c * b)
    rb.matrices_equal("P = W W''", w.P, a * c)
    return rb.build()


def _conjugation(t):
    tinv = t.inverse()
    return lambda x: tinv * x * t


def _dagger_conjugation(sys, t):
    tinv = t.inverse()
    return lambda x: tinv * dagger(sys, x) * t


@dataclass(frozen=True)
class AntiAutomorphisms:
    """The six antiautomorphisms as callables on matrices."""

    dagger: object
    dagger_p: object
    dagger_pp: object
    ddagger: object
    ddagger_p: object
    ddagger_pp: object


def antiautomorphisms(sys, tri, w):
    """The maps X -> T^{-1} X^dagger T for T = I, P^dagger P, (P P^dagger)^{-1},
    W, W'^{-1}, W W' W."""
    P = w.P
    P_dag = dagger(sys, P)
    return AntiAutomorphisms(
        dagger=lambda x: dagger(sys, x),
        dagger_p=_dagger_conjugation(sys, P_dag * P),
        dagger_pp=_dagger_conjugation(sys, (P * P_dag).inverse()),
        ddagger=_dagger_conjugation(sys, w.W),
        ddagger_p=_dagger_conjugation(sys, w.W_prime.inverse()),
        ddagger_pp=_dagger_conjugation(sys, w.W * w.W_prime * w.W),
    )


def _is_scalar(m):
    n = m.nrows
    lead = m[0, 0]
    for i in range(n):
        for j in range(n):
            if i == j:
                if m[i, j] != lead:
                    return False
            elif not m[i, j].is_zero():
                return False
    return not lead.is_zero()


def _conjugation_fixes_units(m):
    """Whether X -> M^{-1} X M is the identity on all matrix units."""
    n = m.nrows
    minv = m.inverse()
    fld = m.field
    one, zero = fld.one, fld.zero
    for a in range(n):
        for b in range(n):
            # (M^{-1} e_ab M)[i][j] = Minv[i][a] * M[b][j]
            for i in range(n):
                for j in range(n):
                    want = one if (i, j) == (a, b) else zero
                    if minv[i, a] * m[b, j] != want:
                        return False
    return True


def antiautomorphism_report(sys, tri, w):
    """Action tables and involutivity of the six antiautomorphisms."""
    rb = ReportBuilder()
    maps = antiautomorphisms(sys, tri, w)
    A, B, C = tri.A, tri.B, tri.C
    sc = tri.scalars
    dag, dag_p, dag_pp = maps.dagger, maps.dagger_p, maps.dagger_pp
    dd, dd_p, dd_pp = maps.ddagger, maps.ddagger_p, maps.ddagger_pp

    rb.matrices_equal("dagger fixes W", dag(w.W), w.W)
    rb.matrices_equal("dagger fixes W'", dag(w.W_prime), w.W_prime)

    if sc.case == "beta=2":
        table = [("dagger", dag, A, B, -C), ("dagger'", dag_p, -A, B, C),
                 ("dagger''", dag_pp, A, -B, C)]
    elif sc.case == "beta=-2":
        table = [("dagger", dag, A, B, C), ("dagger'", dag_p, A, B, C),
                 ("dagger''", dag_pp, A, B, C)]
    else:
        shear = (sc.z * (sc.q - sc.q.inverse())).inverse()
        table = [("dagger", dag, A, B, C - (A * B - B * A) * shear),
                 ("dagger'", dag_p, A - (B * C - C * B) * shear, B, C),
                 ("dagger''", dag_pp, A, B - (C * A - A * C) * shear, C)]
    for name, f, ea, eb, ec in table:
        rb.matrices_equal(f"{name}(A)", f(A), ea)
        rb.matrices_equal(f"{name}(B)", f(B), eb)
        rb.matrices_equal(f"{name}(C)", f(C), ec)

    if sc.case == "beta=-2":
        # dagger' = dagger'' = dagger as maps: their twists are central
        P_dag = dagger(sys, w.P)
        rb.record("dagger' = dagger as maps", _is_scalar(P_dag * w.P))
        rb.record("dagger'' = dagger as maps", _is_scalar(w.P * P_dag))

    for name, f, fa, fb, fc in (("ddagger", dd, A, C, B),
                                ("ddagger'", dd_p, C, B, A),
                                ("ddagger''", dd_pp, B, A, C)):
        rb.matrices_equal(f"{name}(A)", f(A), fa)
        rb.matrices_equal(f"{name}(B)", f(B), fb)
        rb.matrices_equal(f"{name}(C)", f(C), fc)

    # xi^2(X) = M^{-1} X M with M = (T^dagger)^{-1} T; identity iff M central
    for name, t in (("ddagger", w.W), ("ddagger'", w.W_prime.inverse()),
                    ("ddagger''", w.W * w.W_prime * w.W)):
        m = dagger(sys, t).inverse() * t
        rb.record(f"{name}^2 = id", _is_scalar(m))

    # Composing the antiautomorphisms with twists T2 then T1 conjugates by
    # M = (T2^dagger)^{-1} T1; rho itself conjugates by P, so each variant
    # must agree with P up to a central factor.
    P = w.P
    braid_t = w.W * w.W_prime * w.W
    comp1 = dagger(sys, w.W_prime.inverse()).inverse() * w.W
    comp2 = dagger(sys, braid_t).inverse() * w.W_prime.inverse()
    comp3 = dagger(sys, w.W).inverse() * braid_t
    for name, m in (("rho = ddagger o ddagger'", comp1),
                    ("rho = ddagger' o ddagger''", comp2),
                    ("rho = ddagger'' o ddagger", comp3)):
        rb.record(name, _is_scalar(m * P.inverse()))

    # The primed maps are the rho-conjugates of the unprimed ones:
    # rho o xi_T o rho^-1 twists by P^dagger T P, rho^-1 o xi_T o rho by
    # (P^dagger)^{-1} T P^{-1}; two twists give the same antiautomorphism
    # iff they differ by a central factor.
    P_dag = dagger(sys, P)
    P_dag_inv = P_dag.inverse()
    Pinv = P.inverse()
    for name, m, t in (
            ("dagger' = rho o dagger o rho^-1", P_dag * P, P_dag * P),
            ("dagger'' = rho^-1 o dagger o rho",
             P_dag_inv * Pinv, (P * P_dag).inverse()),
            ("ddagger' = rho o ddagger o rho^-1",
             P_dag * w.W * P, w.W_prime.inverse()),
            ("ddagger'' = rho^-1 o ddagger o rho",
             P_dag_inv * w.W * Pinv, braid_t)):
        rb.record(name, _is_scalar(m * t.inverse()))
    return rb.build()


def _normal_form(word):
    while True:
        reduced = word.replace("rrr", "").replace("ss", "")
        if reduced == word:
            return word
        word = reduced


def sigma_and_psl2z(sys, tri, w, word_maxlen=4):
    """The order-2 automorphism sigma and the modular-group action.

    sigma conjugates by W W' W and swaps A, B while sending C to its dagger
    image.  rho^3 and sigma^2 are checked on every matrix unit, and a sample
    of words in the two generators is compared against its normal form under
    r^3 = s^2 = 1.
    """
    rb = ReportBuilder()
    A, B, C = tri.A, tri.B, tri.C
    T = w.W * w.W_prime * w.W
    Tinv = T.inverse()
    sigma = lambda x: T * x * Tinv

    rb.matrices_equal("sigma(A) = B", sigma(A), B)
    rb.matrices_equal("sigma(B) = A", sigma(B), A)
    rb.matrices_equal("sigma(C) = dagger(C)", sigma(C), dagger(sys, C))

    P = w.P
    Pinv = P.inverse()
    rho = lambda x: Pinv * x * P
    rb.matrices_equal("rho(A) = B", rho(A), B)
    rb.matrices_equal("rho(B) = C", rho(B), C)
    rb.matrices_equal("rho(C) = A", rho(C), A)
    rb.matrices_equal("rho(P) = P", rho(P), P)
    ok = all(rho(tri.E[i]) == tri.E_prime[i]
             and rho(tri.E_prime[i]) == tri.E_dprime[i]
             and rho(tri.E_dprime[i]) == tri.E[i] for i in range(tri.d + 1))
    rb.record("rho cycles the idempotent families", ok)
    rb.matrices_equal("rho(W) = W'", rho(w.W), w.W_prime)
    rb.matrices_equal("rho(W') = W''", rho(w.W_prime), w.W_dprime)
    rb.matrices_equal("rho(W'') = W", rho(w.W_dprime), w.W)

    rb.record("rho^3 = id on all matrix units",
              _conjugation_fixes_units(P * P * P))
    rb.record("sigma^2 = id on all matrix units",
              _conjugation_fixes_units(Tinv * Tinv))

    # Words act by conjugation; g_r = P^{-1}, g_s = T^{-1} give
    # phi_w(X) = g_w X g_w^{-1} with g_w the left-to-right product.
    gens = {"r": Pinv, "s": Tinv}
    eye = identity(tri.field, tri.d + 1)
    conj = {"": eye}

    def conjugator(word):
        m = conj.get(word)
        if m is None:
            m = conjugator(word[:-1]) * gens[word[-1]]
            conj[word] = m
        return m

    inv_cache = {}
    ok, witness = True, None
    words = [""]
    for _ in range(word_maxlen):
        words = [base + letter for base in words for letter in "rs"]
        for word in words:
            nf = _normal_form(word)
            gw = conjugator(word)
            gn_inv = inv_cache.get(nf)
            if gn_inv is None:
                gn_inv = conjugator(nf).inverse()
                inv_cache[nf] = gn_inv
            if not _is_scalar(gw * gn_inv):
                ok, witness = False, f"word {word} != its normal form {nf or '1'}"
                break
        if not ok:
            break
    rb.record("sampled words agree with their r^3 = s^2 = 1 normal forms", ok, witness)
    return rb.build()
