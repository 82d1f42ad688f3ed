"""Exact scalar arithmetic: the rationals and machine-word prime fields.

Scalars are plain Python objects: ``Fraction`` over Q, ``int`` in [0, p)
over F_p.  A ``Field`` instance bundles the operations; algebra objects
carry a field reference and never mix fields within one computation.
"""

from fractions import Fraction

from .errors import SchemaError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    # Deterministic Miller-Rabin, valid far beyond machine-word size.
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


class Field:
    """F_p for a verified prime p, or Q when p is None."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None:
            if not isinstance(p, int) or not _is_prime(p):
                raise SchemaError(f"not a prime: {p!r}")
            if p >= 1 << 62:
                raise SchemaError(f"prime too large for a machine word: {p}")
        self.p = p

    @property
    def is_prime_field(self):
        return self.p is not None

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def of(self, n):
        """Coerce an int, Fraction, or string like '3' / '-2/5'."""
        if isinstance(n, str):
            n = Fraction(n)
        if self.p is None:
            return Fraction(n)
        if isinstance(n, Fraction):
            return self.of(n.numerator) * self.inv(self.of(n.denominator)) % self.p
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("division by zero in exact field")
        return pow(a, -1, self.p) if self.p is not None else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == 0

    def fmt(self, a):
        return str(a)

    def name(self):
        return "q" if self.p is None else f"fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p):
    return Field(p)


def field_from_name(name):
    """Parse a field selector: 'q' or 'fp:P'."""
    if name == "q":
        return QQ
    if name.startswith("fp:"):
        try:
            return GF(int(name[3:]))
        except ValueError as exc:
            raise SchemaError(f"bad field selector {name!r}") from exc
    raise SchemaError(f"bad field selector {name!r}")
