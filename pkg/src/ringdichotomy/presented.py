"""Presented (possibly infinite) rings with decidable normal forms.

Three kinds: the integers, the integers mod n, and Z/n[x] modulo a monic
polynomial.  Elements are ints (first two) or coefficient tuples.  These
carry exact unit / zero-divisor tests, which is what witness verification
needs; nothing here tries to be a general symbolic ring.
"""

from __future__ import annotations

import math

from .rings import ShapeError, zmod, poly_quot


class ZRing:
    kind = "Z"
    name = "Z"

    def normalize(self, a):
        return int(a)

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a in (1, -1)

    def is_zero_divisor(self, a):
        return a == 0

    def to_finite(self):
        return None

    def parse_element(self, text):
        return int(text)

    def format_element(self, a):
        return str(a)

    def to_json(self):
        return {"kind": "Z"}


class ZmodRing:
    kind = "Zmod"

    def __init__(self, n):
        if n < 1:
            raise ShapeError("modulus must be >= 1")
        self.n = n
        self.name = f"Z/{n}"

    def normalize(self, a):
        return int(a) % self.n

    def zero(self):
        return 0

    def one(self):
        return 1 % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def is_unit(self, a):
        return math.gcd(a % self.n, self.n) == 1

    def is_zero_divisor(self, a):
        a = a % self.n
        return a == 0 or math.gcd(a, self.n) > 1

    def to_finite(self):
        return zmod(self.n)

    def parse_element(self, text):
        return self.normalize(int(text))

    def format_element(self, a):
        return str(a)

    def to_json(self):
        return {"kind": "Zmod", "n": self.n}


class PolyQuotRing:
    kind = "polyquot"

    def __init__(self, n, modulus):
        modulus = [c % n for c in modulus]
        if not modulus or modulus[-1] != 1:
            raise ShapeError("modulus must be monic")
        self.n = n
        self.modulus = list(modulus)
        self.degree = len(modulus) - 1
        self.name = f"Z/{n}[x]/(deg {self.degree})"
        self._finite = None

    def normalize(self, coeffs):
        coeffs = [c % self.n for c in coeffs]
        d = self.degree
        while len(coeffs) > d:
            lead = coeffs.pop()
            if lead:
                for i in range(d):
                    coeffs[len(coeffs) - d + i] = (
                        coeffs[len(coeffs) - d + i]
                        - lead * self.modulus[i]) % self.n
        coeffs += [0] * (d - len(coeffs))
        return tuple(coeffs)

    def zero(self):
        return (0,) * self.degree

    def one(self):
        return self.normalize([1])

    def add(self, a, b):
        return tuple((x + y) % self.n for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.n for x in a)

    def mul(self, a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % self.n
        return self.normalize(prod)

    def to_finite(self):
        if self._finite is None:
            self._finite = poly_quot(self.n, self.modulus, name=self.name)
        return self._finite

    def element_index(self, coeffs):
        """Index of a normal form in the finite table ring."""
        coeffs = self.normalize(coeffs)
        i = 0
        for c in reversed(coeffs):
            i = i * self.n + c
        return i

    def is_unit(self, a):
        fin = self.to_finite()
        return fin.is_unit(self.element_index(a))

    def is_zero_divisor(self, a):
        fin = self.to_finite()
        return fin.is_zero_divisor(self.element_index(a))

    def parse_element(self, text):
        return self.normalize([int(t) for t in text.split(",")])

    def format_element(self, a):
        return ",".join(str(c) for c in a)

    def to_json(self):
        return {"kind": "polyquot", "n": self.n, "modulus": self.modulus}


def presented_from_json(obj):
    kind = obj.get("kind")
    if kind == "Z":
        return ZRing()
    if kind == "Zmod":
        return ZmodRing(obj["n"])
    if kind == "polyquot":
        return PolyQuotRing(obj["n"], obj["modulus"])
    raise ShapeError(f"unknown presented ring kind {kind!r}")
