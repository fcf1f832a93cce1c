"""Exact field arithmetic: rationals, prime fields, and one quadratic extension layer.

Every element is an immutable value in canonical form, so ``==`` is structural
equality and results are reproducible byte for byte.  Supported fields:

* ``QQ`` -- the rational numbers (reduced fractions),
* ``PrimeField(p)`` -- integers mod a prime, canonical residue in ``[0, p)``,
* ``QuadraticExtension(base, d)`` -- ``base(sqrt(d))`` for a nonsquare ``d``.

Text encodings (used by all JSON I/O): rationals ``"p/q"`` or ``"n"``, prime
fields ``"n mod p"``, quadratic extensions ``"a+b*sqrt(d)"`` with ``a``, ``b``,
``d`` in the base encoding.  Field descriptors use the mini-language
``Q``, ``Q(i)``, ``Q(sqrt:D)``, ``Fp:p``, ``Fp2:p``.
"""

from fractions import Fraction
from math import gcd, isqrt

from .errors import DivisionByZero, FieldMismatch, NoSquareRootInField, ParseError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldElement:
    """An element of an exact field.  Immutable; arithmetic via operators."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerced(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} element used in {self.field}")
            return other.value
        if isinstance(other, int):
            return self.field._from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(v, self.value))

    def __mul__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, self.field._inv(v)))

    def __rtruediv__(self, other):
        v = self._coerced(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(v, self.field._inv(self.value)))

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        f = self.field
        if n < 0:
            return FieldElement(f, f._powraw(f._inv(self.value), -n))
        return FieldElement(f, f._powraw(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field._from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self):
        return self.value == self.field._zero_raw

    def is_one(self):
        return self.value == self.field._one_raw

    def inverse(self):
        return FieldElement(self.field, self.field._inv(self.value))

    def conjugate(self):
        """Galois conjugate a + b*sqrt(d) -> a - b*sqrt(d); identity on base fields."""
        return FieldElement(self.field, self.field._conj(self.value))

    def sqrt(self):
        """Canonical square root in the field, or None if no root exists."""
        return self.field.sqrt(self)

    def __repr__(self):
        return f"<{self.field.encode(self)}>"

    def __str__(self):
        return self.field.encode(self)


class Field:
    """Common interface for the supported exact fields."""

    characteristic = None

    def __call__(self, x):
        """Coerce an int, string, or element of this field."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field} element used in {self}")
            return x
        if isinstance(x, int):
            return FieldElement(self, self._from_int(x))
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    @property
    def zero(self):
        return FieldElement(self, self._zero_raw)

    @property
    def one(self):
        return FieldElement(self, self._one_raw)

    def parse(self, text):
        return FieldElement(self, self._parse_raw(text.strip()))

    def encode(self, elem):
        if elem.field != self:
            raise FieldMismatch("element of a different field")
        return self._encode_raw(elem.value)

    def sqrt(self, elem):
        """Canonical square root of elem, or None.

        Both roots r, -r are valid; the canonical one has "nonnegative"
        leading coordinate (positive rational / least residue up to (p-1)/2 /
        recursively on the extension coordinates).  This makes downstream
        scalar choices deterministic.
        """
        elem = self(elem)
        r = self._sqrt_raw(elem.value)
        if r is None:
            return None
        if not self._nonneg_raw(r):
            r = self._neg(r)
        return FieldElement(self, r)

    def require_sqrt(self, elem, what="value"):
        r = self.sqrt(elem)
        if r is None:
            raise NoSquareRootInField(
                f"{what} {self.encode(self(elem))} has no square root in {self}; "
                f"extend the field (e.g. by sqrt of that value)")
        return r

    def _powraw(self, v, n):
        out = self._one_raw
        while n:
            if n & 1:
                out = self._mul(out, v)
            v = self._mul(v, v)
            n >>= 1
        return out

    def _conj(self, v):
        return v

    def __repr__(self):
        return self.descriptor()


class RationalField(Field):
    """The field of rational numbers; raw values are Fractions."""

    characteristic = 0
    _zero_raw = Fraction(0)
    _one_raw = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return FieldElement(self, x)
        return super().__call__(x)

    def _from_int(self, n):
        return Fraction(n)

    def _add(self, u, v):
        return u + v

    def _sub(self, u, v):
        return u - v

    def _mul(self, u, v):
        return u * v

    def _neg(self, u):
        return -u

    def _inv(self, u):
        if u == 0:
            raise DivisionByZero("1/0 in Q")
        return 1 / u

    def _encode_raw(self, v):
        return str(v)

    def _parse_raw(self, text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}: {exc}") from None

    def _sqrt_raw(self, v):
        if v < 0:
            return None
        n, d = v.numerator, v.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def _nonneg_raw(self, v):
        return v >= 0

    def descriptor(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


class PrimeField(Field):
    """Integers modulo a prime p; raw values are canonical residues."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self._zero_raw = 0
        self._one_raw = 1 % p

    def _from_int(self, n):
        return n % self.p

    def _add(self, u, v):
        return (u + v) % self.p

    def _sub(self, u, v):
        return (u - v) % self.p

    def _mul(self, u, v):
        return u * v % self.p

    def _neg(self, u):
        return -u % self.p

    def _inv(self, u):
        if u == 0:
            raise DivisionByZero(f"1/0 in F{self.p}")
        return pow(u, -1, self.p)

    def _encode_raw(self, v):
        return f"{v} mod {self.p}"

    def _parse_raw(self, text):
        body = text
        if "mod" in text:
            head, _, tail = text.partition("mod")
            body = head.strip()
            try:
                if int(tail.strip()) != self.p:
                    raise ParseError(f"{text!r} is not an element of F{self.p}")
            except ValueError:
                raise ParseError(f"bad modulus in {text!r}") from None
        try:
            return int(body) % self.p
        except ValueError:
            raise ParseError(f"bad residue {body!r}") from None

    def is_square(self, v):
        return v == 0 or pow(v, (self.p - 1) // 2, self.p) == 1

    def _sqrt_raw(self, v):
        # Tonelli-Shanks
        p = self.p
        if v == 0:
            return 0
        if p == 2:
            return v
        if not self.is_square(v):
            return None
        if p % 4 == 3:
            return pow(v, (p + 1) // 4, p)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while self.is_square(z):
            z += 1
        m, c = s, pow(z, q, p)
        t, r = pow(v, q, p), pow(v, (q + 1) // 2, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def _nonneg_raw(self, v):
        return v <= (self.p - 1) // 2

    def descriptor(self):
        return f"Fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class QuadraticExtension(Field):
    """base(sqrt(d)) for a nonsquare d; raw values are (a, b) base-raw pairs."""

    def __init__(self, base, d):
        if isinstance(base, QuadraticExtension):
            raise ValueError("only one extension layer is supported")
        self.base = base
        self.d = base(d)
        if self.d.is_zero() or base.sqrt(self.d) is not None:
            raise ValueError(f"{self.d} is a square in {base}; the extension is not a field")
        self.characteristic = base.characteristic
        self._zero_raw = (base._zero_raw, base._zero_raw)
        self._one_raw = (base._one_raw, base._zero_raw)
        self._draw = self.d.value

    def gen(self):
        """The adjoined square root of d."""
        return FieldElement(self, (self.base._zero_raw, self.base._one_raw))

    def embed(self, x):
        """Embed a base-field element (or int/str of the base)."""
        return FieldElement(self, (self.base(x).value, self.base._zero_raw))

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field == self.base:
                return self.embed(x)
            return super().__call__(x)
        if isinstance(x, (int, str)):
            return super().__call__(x)
        return self.embed(self.base(x))

    def _from_int(self, n):
        return (self.base._from_int(n), self.base._zero_raw)

    def _add(self, u, v):
        ba = self.base._add
        return (ba(u[0], v[0]), ba(u[1], v[1]))

    def _sub(self, u, v):
        bs = self.base._sub
        return (bs(u[0], v[0]), bs(u[1], v[1]))

    def _mul(self, u, v):
        bm, ba = self.base._mul, self.base._add
        a, b = u
        c, e = v
        return (ba(bm(a, c), bm(bm(b, e), self._draw)), ba(bm(a, e), bm(b, c)))

    def _neg(self, u):
        bn = self.base._neg
        return (bn(u[0]), bn(u[1]))

    def _conj(self, u):
        return (u[0], self.base._neg(u[1]))

    def _inv(self, u):
        # 1/(a+b*s) = (a-b*s)/(a^2 - d b^2); the norm vanishes only at zero
        # because d is a nonsquare.
        if u == self._zero_raw:
            raise DivisionByZero(f"1/0 in {self}")
        a, b = u
        bm, bs = self.base._mul, self.base._sub
        norm = bs(bm(a, a), bm(self._draw, bm(b, b)))
        ninv = self.base._inv(norm)
        return (bm(a, ninv), self.base._neg(bm(b, ninv)))

    def _encode_raw(self, v):
        enc = self.base._encode_raw
        return f"{enc(v[0])}+{enc(v[1])}*sqrt({enc(self._draw)})"

    def _parse_raw(self, text):
        if "sqrt" not in text:
            return (self.base._parse_raw(text), self.base._zero_raw)
        head, sep, tail = text.partition("+")
        if not sep:
            raise ParseError(f"bad extension element {text!r}")
        try:
            a = self.base._parse_raw(head.strip())
        except ParseError:
            raise ParseError(f"bad extension element {text!r}") from None
        tail = tail.strip()
        if not tail.endswith(")"):
            raise ParseError(f"bad extension element {text!r}")
        coeff, sep, dpart = tail[:-1].partition("*sqrt(")
        if not sep:
            raise ParseError(f"bad extension element {text!r}")
        b = self.base._parse_raw(coeff.strip())
        if self.base._parse_raw(dpart.strip()) != self._draw:
            raise ParseError(f"{text!r} does not live in {self}")
        return (a, b)

    def _sqrt_raw(self, v):
        x, y = v
        base = self.base
        if v == self._zero_raw:
            return self._zero_raw
        if y == base._zero_raw:
            # sqrt of a base element: either in the base, or b*sqrt(d)
            r = base._sqrt_raw(x)
            if r is not None:
                return (r, base._zero_raw)
            r = base._sqrt_raw(base._mul(x, base._inv(self._draw)))
            if r is not None:
                return (base._zero_raw, r)
            return None
        # (a+b s)^2 = x + y s  =>  a^2 is a root of t(x - t) = d y^2 / 4
        bm, bs = base._mul, base._sub
        disc = bs(bm(x, x), bm(self._draw, bm(y, y)))
        rdisc = base._sqrt_raw(disc)
        if rdisc is None:
            return None
        half = base._inv(base._from_int(2))
        for sgn in (rdisc, base._neg(rdisc)):
            t = bm(base._add(x, sgn), half)
            a = base._sqrt_raw(t)
            if a is None or a == base._zero_raw:
                continue
            b = bm(y, base._inv(bm(base._from_int(2), a)))
            cand = (a, b)
            if self._mul(cand, cand) == v:
                return cand
        return None

    def _nonneg_raw(self, v):
        a, b = v
        if a != self.base._zero_raw:
            return self.base._nonneg_raw(a)
        return self.base._nonneg_raw(b)

    def descriptor(self):
        if isinstance(self.base, RationalField):
            if self.d.value == Fraction(-1):
                return "Q(i)"
            return f"Q(sqrt:{self.base._encode_raw(self.d.value)})"
        if isinstance(self.base, PrimeField):
            if self.d.value == least_nonresidue(self.base.p):
                return f"Fp2:{self.base.p}"
        raise ParseError(f"no descriptor for extension of {self.base} by sqrt({self.d})")

    def __eq__(self, other):
        return (isinstance(other, QuadraticExtension)
                and other.base == self.base and other.d == self.d)

    def __hash__(self):
        return hash(("ext", self.base, self.d.value))


def least_nonresidue(p):
    """Smallest positive quadratic nonresidue mod an odd prime."""
    if p == 2:
        raise ValueError("every element of F2 is a square")
    f = PrimeField(p)
    n = 2
    while f.is_square(n % p):
        n += 1
    return n


def QQi():
    """The Gaussian rationals Q(i)."""
    return QuadraticExtension(QQ, -1)


def parse_field(spec):
    """Parse a field descriptor: Q, Q(i), Q(sqrt:D), Fp:p, Fp2:p."""
    spec = spec.strip()
    if spec == "Q":
        return QQ
    if spec == "Q(i)":
        return QQi()
    if spec.startswith("Q(sqrt:") and spec.endswith(")"):
        try:
            return QuadraticExtension(QQ, QQ.parse(spec[7:-1]))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if spec.startswith("Fp:"):
        try:
            return PrimeField(int(spec[3:]))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if spec.startswith("Fp2:"):
        try:
            p = int(spec[4:])
            return QuadraticExtension(PrimeField(p), least_nonresidue(p))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown field descriptor {spec!r}")


def sort_key(elem):
    """Deterministic total order used to pick canonical representatives."""
    neg = 0 if elem.field._nonneg_raw(elem.value) else 1
    enc = elem.field.encode(elem)
    return (neg, len(enc), enc)
