"""Exact coefficient fields: the rationals and prime fields.

Scalars are stored raw (Fraction for Q, canonical residue int for F_p);
the field object supplies arithmetic, parsing and canonical formatting.
No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class Rationals:
    kind = "Q"
    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def of_int(self, n):
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
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def fmt(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return "%d/%d" % (a.numerator, a.denominator)

    def parse(self, s: str):
        return Fraction(s)

    def lattice(self, bound: int):
        """Deterministic finite scalar enumeration: 0, 1, -1, ..., bound, -bound."""
        out = [Fraction(0)]
        for k in range(1, bound + 1):
            out.append(Fraction(k))
            out.append(Fraction(-k))
        return out

    def sample(self, rng, bound: int = 2):
        return Fraction(rng.randint(-bound, bound))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    kind = "Fp"

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError("p must be prime, got %r" % (p,))
        self.p = p
        self.name = "Fp:%d" % p
        self.zero = 0
        self.one = 1 % p

    def of_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def fmt(self, a) -> str:
        return str(a % self.p)

    def parse(self, s: str):
        return int(s) % self.p

    def lattice(self, bound: int):
        # all residues; bound is ignored (the field is already finite)
        return list(range(self.p))

    def sample(self, rng, bound: int = 2):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = Rationals()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_from_tag(tag: str):
    """Parse a field tag: "Q" or "Fp:<p>"."""
    if tag == "Q":
        return QQ
    if tag.startswith("Fp:"):
        return GF(int(tag[3:]))
    raise ValueError("unknown field tag %r" % (tag,))
