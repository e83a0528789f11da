"""Exact arithmetic in GF(q) and its quadratic extension GF(q^2), q prime.

Elements are identified with their index in a canonical enumeration:
residues 0..q-1 for the prime field, and c1*q + c0 for the extension
element c1*x + c0 (so enumeration order is 0, 1, ..., q-1, x, x+1, ...).
The extension modulus is the lexicographically smallest monic irreducible
quadratic x^2 + b*x + c over GF(q).

Extension arithmetic is driven by discrete log/antilog tables whenever the
field has at most 2^16 elements and falls back to direct polynomial
arithmetic beyond that.  Fields and elements are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

_TABLE_LIMIT = 1 << 16


class FieldMismatchError(ValueError):
    """An operation mixed elements of different fields."""


def is_prime(n: int) -> bool:
    """Trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class FieldElement:
    """An immutable element of a :class:`PrimeField` or :class:`QuadExtField`."""

    __slots__ = ("field", "index")

    def __init__(self, field, index: int):
        self.field = field
        self.index = index

    @property
    def coords(self) -> tuple[int, ...]:
        """Reduced coordinates: ``(residue,)`` or ``(c0, c1)`` for c1*x + c0."""
        return self.field.coords_of(self.index)

    def _other(self, other: "FieldElement") -> "FieldElement":
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldMismatchError("field mismatch")
        return other

    def __add__(self, other):
        other = self._other(other)
        return FieldElement(self.field, self.field.add_i(self.index, other.index))

    def __sub__(self, other):
        other = self._other(other)
        return FieldElement(self.field, self.field.sub_i(self.index, other.index))

    def __mul__(self, other):
        other = self._other(other)
        return FieldElement(self.field, self.field.mul_i(self.index, other.index))

    def __truediv__(self, other):
        other = self._other(other)
        return FieldElement(self.field, self.field.mul_i(self.index, self.field.inv_i(other.index)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_i(self.index))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow_i(self.index, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_i(self.index))

    def frobenius(self) -> "FieldElement":
        """The map a -> a^q.  Defined on the extension field only."""
        return self.field.frobenius(self)

    def norm(self) -> "FieldElement":
        """The map a -> a^(q+1); the result is an element of the base field."""
        return self.field.norm(self)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.index == other.index
        )

    def __hash__(self):
        return hash((self.field, self.index))

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return self.field.format_element(self.index)


class PrimeField:
    """GF(q) for prime q; elements are residues 0..q-1."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        self.q = q
        self.order = q

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value % self.q)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def enumerate(self) -> list[FieldElement]:
        """All elements in canonical order (0 first, 1 second)."""
        return [FieldElement(self, i) for i in range(self.q)]

    def coords_of(self, index: int) -> tuple[int, ...]:
        return (index,)

    # index-level arithmetic

    def add_i(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub_i(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg_i(self, a: int) -> int:
        return (-a) % self.q

    def mul_i(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def inv_i(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.q - 2, self.q)

    def pow_i(self, a: int, n: int) -> int:
        if n < 0:
            return pow(self.inv_i(a), -n, self.q)
        return pow(a, n, self.q)

    def frobenius(self, a: FieldElement) -> FieldElement:
        raise ValueError("frobenius requires an element of the quadratic extension")

    def norm(self, a: FieldElement) -> FieldElement:
        raise ValueError("norm requires an element of the quadratic extension")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __repr__(self):
        return f"GF({self.q})"

    def format_element(self, index: int) -> str:
        return f"GF({self.q}):{index}"


class QuadExtField:
    """GF(q^2) realized as GF(q)[x] / (x^2 + b*x + c).

    The modulus is the lexicographically smallest irreducible monic
    quadratic, scanning (b, c) in order, so the field is reproducible
    from q alone.
    """

    def __init__(self, base):
        if isinstance(base, int):
            base = PrimeField(base)
        self.base = base
        self.q = base.q
        self.order = base.q * base.q
        self.modulus = self._smallest_irreducible()
        if self.order <= _TABLE_LIMIT:
            self._build_tables()
        else:
            self._exp = self._log = self._frob_t = self._normext_t = None

    def _smallest_irreducible(self) -> tuple[int, int]:
        q = self.q
        for b in range(q):
            for c in range(q):
                if all((t * t + b * t + c) % q for t in range(q)):
                    return (b, c)
        raise AssertionError("no irreducible quadratic over GF(q)")

    # construction / conversion

    def coords_of(self, index: int) -> tuple[int, int]:
        return (index % self.q, index // self.q)

    def index_of(self, c0: int, c1: int = 0) -> int:
        return (c1 % self.q) * self.q + (c0 % self.q)

    def element(self, c0: int, c1: int = 0) -> FieldElement:
        return FieldElement(self, self.index_of(c0, c1))

    def from_index(self, index: int) -> FieldElement:
        return FieldElement(self, index % self.order)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def x(self) -> FieldElement:
        """The adjoined root of the modulus."""
        return FieldElement(self, self.q)

    def embed(self, a) -> FieldElement:
        """Lift a base-field element (or residue) into the extension."""
        if isinstance(a, FieldElement):
            if a.field != self.base:
                raise FieldMismatchError("field mismatch")
            a = a.index
        return FieldElement(self, a % self.q)

    def enumerate(self) -> list[FieldElement]:
        """All q^2 elements in canonical (c1, c0) lexicographic order."""
        return [FieldElement(self, i) for i in range(self.order)]

    # index-level arithmetic

    def add_i(self, a: int, b: int) -> int:
        q = self.q
        return ((a // q + b // q) % q) * q + ((a + b) % q)

    def sub_i(self, a: int, b: int) -> int:
        q = self.q
        return ((a // q - b // q) % q) * q + ((a - b) % q)

    def neg_i(self, a: int) -> int:
        q = self.q
        return ((-(a // q)) % q) * q + ((-a) % q)

    def _mul_direct(self, a: int, b: int) -> int:
        q = self.q
        mb, mc = self.modulus
        a0, a1 = a % q, a // q
        b0, b1 = b % q, b // q
        t2 = a1 * b1
        return ((a0 * b1 + a1 * b0 - t2 * mb) % q) * q + ((a0 * b0 - t2 * mc) % q)

    def _pow_direct(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul_direct(result, base)
            base = self._mul_direct(base, base)
            n >>= 1
        return result

    def _find_generator(self) -> int:
        n1 = self.order - 1
        checks = [n1 // p for p in _prime_factors(n1)]
        for g in range(1, self.order):
            if all(self._pow_direct(g, e) != 1 for e in checks):
                return g
        raise AssertionError("multiplicative group has no generator")

    def _build_tables(self):
        n = self.order
        g = self._find_generator()
        exp = [0] * (n - 1)
        log = [0] * n
        acc = 1
        for i in range(n - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_direct(acc, g)
        assert acc == 1, "generator order mismatch"
        self._exp, self._log = exp, log
        q = self.q
        self._frob_t = [0] + [exp[(log[a] * q) % (n - 1)] for a in range(1, n)]
        self._normext_t = [0] + [exp[(log[a] * (q + 1)) % (n - 1)] for a in range(1, n)]

    def mul_i(self, a: int, b: int) -> int:
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_direct(a, b)

    def inv_i(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self._pow_direct(a, self.order - 2)

    def pow_i(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        if n < 0:
            return self._pow_direct(self.inv_i(a), -n)
        return self._pow_direct(a, n)

    def frob_i(self, a: int) -> int:
        """a^q on indices."""
        if self._frob_t is not None:
            return self._frob_t[a]
        return self._pow_direct(a, self.q)

    def normext_i(self, a: int) -> int:
        """a^(q+1) on indices, kept in the extension field."""
        if self._normext_t is not None:
            return self._normext_t[a]
        return self._pow_direct(a, self.q + 1)

    def norm_i(self, a: int) -> int:
        """a^(q+1) as a base-field residue.

        The value of the norm always lies in the base field; a nonzero
        x-coefficient would mean the arithmetic is broken.
        """
        c0, c1 = self.coords_of(self.normext_i(a))
        if c1 != 0:
            raise AssertionError("norm value left the base field")
        return c0

    def frobenius(self, a: FieldElement) -> FieldElement:
        if not isinstance(a, FieldElement) or a.field != self:
            raise ValueError("frobenius requires an element of the quadratic extension")
        return FieldElement(self, self.frob_i(a.index))

    def norm(self, a: FieldElement) -> FieldElement:
        if not isinstance(a, FieldElement) or a.field != self:
            raise ValueError("norm requires an element of the quadratic extension")
        return FieldElement(self.base, self.norm_i(a.index))

    def __eq__(self, other):
        return (
            isinstance(other, QuadExtField)
            and other.q == self.q
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("GF2", self.q, self.modulus))

    def __repr__(self):
        return f"GF({self.q}^2)"

    def format_element(self, index: int) -> str:
        c0, c1 = self.coords_of(index)
        if c1 == 0:
            return f"GF({self.q}^2):{c0}"
        if c0 == 0:
            return f"GF({self.q}^2):{c1}x"
        return f"GF({self.q}^2):{c1}x+{c0}"
