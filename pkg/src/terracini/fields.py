"""Exact coefficient fields: the rationals and prime fields Z/p.

Rational numbers are stdlib ``fractions.Fraction`` values (always stored
normalized, positive denominator).  Prime field elements are plain ints in
the canonical residue range 0..p-1; the field object carries the modulus.
Keeping elements as builtin types keeps the polynomial kernels free of
wrapper overhead.
"""

from fractions import Fraction
from math import gcd

from .errors import (
    FieldMismatchError,
    InputError,
    NonInvertibleError,
    NotPrimeError,
    ZeroDenominatorError,
)

DEFAULT_PRIME = 32003

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# Witnesses that make Miller-Rabin deterministic below 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic primality test for 0 <= n < 2**64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rat_normalize(num, den):
    """Reduce num/den to lowest terms with a positive denominator."""
    if den == 0:
        raise ZeroDenominatorError("denominator is zero")
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return num, den


def fp_inv(a, p):
    """Inverse of a modulo the prime p."""
    a %= p
    if a == 0:
        raise NonInvertibleError("0 is not invertible modulo %d" % p)
    return pow(a, p - 2, p)


class Field:
    """Common interface of the two coefficient fields."""

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return "Field(%s)" % self.tag

    def check_same(self, other):
        if self != other:
            raise FieldMismatchError(
                "mixed fields %s and %s" % (self.tag, other.tag)
            )


class RationalField(Field):
    tag = "q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def element(self, num, den=1):
        if den == 0:
            raise ZeroDenominatorError("denominator is zero")
        return Fraction(num, den)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise NonInvertibleError("0 is not invertible")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise NonInvertibleError("division by zero")
        return a / b

    def is_zero(self, a):
        return a == 0

    def format(self, a):
        return str(a)

    def parse(self, text):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self.element(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDenominatorError) as exc:
            raise InputError("bad rational literal %r" % text) from exc

    def random(self, rng, bound=20, nonzero=False):
        while True:
            a = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            if not nonzero or a != 0:
                return a


class PrimeField(Field):
    characteristic = None  # set per instance
    zero = 0
    one = 1

    def __init__(self, p):
        if not is_prime(p):
            raise NotPrimeError("%d is not prime" % p)
        self.p = p
        self.characteristic = p
        self.tag = "fp:%d" % p

    def element(self, num, den=1):
        a = num % self.p
        if den != 1:
            a = a * fp_inv(den, self.p) % self.p
        return a

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        return self.element(q.numerator, q.denominator)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return fp_inv(a, self.p)

    def div(self, a, b):
        return a * fp_inv(b, self.p) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def format(self, a):
        return str(a % self.p)

    def parse(self, text):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self.element(int(num), int(den))
            return int(text) % self.p
        except (ValueError, NonInvertibleError) as exc:
            raise InputError("bad field literal %r" % text) from exc

    def random(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return rng.randint(lo, self.p - 1)


QQ = RationalField()

_PRIME_FIELDS = {}


def prime_field(p):
    """Shared PrimeField instance for the modulus p."""
    field = _PRIME_FIELDS.get(p)
    if field is None:
        field = _PRIME_FIELDS[p] = PrimeField(p)
    return field


GF32003 = prime_field(DEFAULT_PRIME)


def field_from_tag(tag):
    """Parse a field tag: "q" or "fp:<prime>"."""
    if tag == "q":
        return QQ
    if tag.startswith("fp:"):
        try:
            p = int(tag[3:])
        except ValueError as exc:
            raise InputError("bad field tag %r" % tag) from exc
        try:
            return prime_field(p)
        except NotPrimeError as exc:
            raise InputError(str(exc)) from exc
    raise InputError("unknown field tag %r" % tag)
