"""Small finite fields GF(q) as addition/multiplication tables.

Elements are integers ``0..q-1``; for ``q = p**e`` with ``e > 1`` the
base-``p`` digits of an element are its polynomial coefficients, lowest
degree first.
"""

from __future__ import annotations

from .errors import DomainError

# monic irreducible moduli, coefficients lowest degree first
IRREDUCIBLE = {
    4: (2, (1, 1, 1)),  # x^2 + x + 1 over GF(2)
    8: (2, (1, 1, 0, 1)),  # x^3 + x + 1 over GF(2)
    9: (3, (1, 0, 1)),  # x^2 + 1 over GF(3)
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``n == p**e``, or None."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


class GF:
    def __init__(self, q: int):
        pe = prime_power(q)
        if pe is None:
            raise DomainError(f"{q} is not a prime power")
        p, e = pe
        if e > 1 and q not in IRREDUCIBLE:
            raise DomainError(f"GF({q}) needs a modulus; supported extension fields: {sorted(IRREDUCIBLE)}")
        self.q, self.p, self.e = q, p, e
        digits = [self._digits(a) for a in range(q)]
        self.add_table = [[self._undigits([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)] for a in range(q)]
        if e == 1:
            self.mul_table = [[a * b % p for b in range(q)] for a in range(q)]
        else:
            modulus = IRREDUCIBLE[q][1]
            self.mul_table = [[self._polymul(digits[a], digits[b], modulus) for b in range(q)] for a in range(q)]
        self.neg_table = [self.add_table[a].index(0) for a in range(q)]
        self.inv_table = [None] + [self.mul_table[a].index(1) for a in range(1, q)]

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def _polymul(self, x, y, modulus) -> int:
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                prod[i + j] = (prod[i + j] + a * b) % p
        for deg in range(len(prod) - 1, e - 1, -1):
            c = prod[deg]
            if c:
                for k, m in enumerate(modulus):
                    prod[deg - e + k] = (prod[deg - e + k] - c * m) % p
        return self._undigits(prod[:e])

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.inv_table[a]

    def __len__(self) -> int:
        return self.q
