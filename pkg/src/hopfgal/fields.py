"""Exact scalar fields: rationals, Gaussian rationals and prime fields.

Rationals are plain :class:`fractions.Fraction` values.  Gaussian rationals
and prime-field residues get small immutable classes.  Python ints are
accepted by every field and act as the prime-ring image of Z; any other mix
of element types raises :class:`FieldMismatchError`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .errors import FieldMismatchError, InputError


def _mismatch(a, b):
    return FieldMismatchError(
        f"cannot combine {type(a).__name__} and {type(b).__name__} scalars"
    )


class GaussRational:
    """re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def _lift(self, other):
        if isinstance(other, GaussRational):
            return other
        if isinstance(other, int):
            return GaussRational(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (Fraction, FpElem)):
                raise _mismatch(self, other)
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (Fraction, FpElem)):
                raise _mismatch(self, other)
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (Fraction, FpElem)):
                raise _mismatch(self, other)
            return NotImplemented
        return GaussRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (Fraction, FpElem)):
                raise _mismatch(self, other)
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, (Fraction, FpElem)):
                raise _mismatch(self, other)
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = GaussRational(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        return QQi.format(self)


class FpElem:
    """Residue class modulo a prime p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, (Fraction, GaussRational)):
            raise _mismatch(self, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElem(self.v + o, self.p)

    __radd__ = __add__

    def __neg__(self):
        return FpElem(-self.v, self.p)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElem(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElem(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElem(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FpElem(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * FpElem(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FpElem(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElem(pow(self.v, n, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return f"FpElem({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


_RAT = r"[+-]?\d+(?:/\d+)?"


class Field:
    """Common interface. Subclasses implement coerce/parse/format."""

    tag: str = ""

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        return self.coerce(x)

    def json_key(self):
        return self.tag

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.json_key() == other.json_key()

    def __hash__(self):
        return hash(str(self.json_key()))


class RationalField(Field):
    tag = "Q"
    name = "Q"
    characteristic = 0

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise FieldMismatchError(f"{x!r} is not a rational")

    def contains(self, x):
        return isinstance(x, (Fraction, int))

    def parse(self, s: str):
        s = s.strip()
        if not re.fullmatch(_RAT, s):
            raise InputError(f"bad rational literal {s!r}")
        return Fraction(s)

    def format(self, x):
        x = self.coerce(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class GaussianField(Field):
    tag = "Qi"
    name = "Q(i)"
    characteristic = 0

    @property
    def i(self):
        return GaussRational(0, 1)

    def coerce(self, x):
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRational(x, 0)
        raise FieldMismatchError(f"{x!r} is not a Gaussian rational")

    def contains(self, x):
        return isinstance(x, (GaussRational, int))

    def parse(self, s: str):
        t = s.replace(" ", "")
        if not t:
            raise InputError("empty scalar literal")
        if not t.endswith("i"):
            return GaussRational(RationalField.parse(QQ, t), 0)
        body = t[:-1]
        if body.endswith("*"):
            body = body[:-1]
        # split off the imaginary coefficient at the last sign that is not leading
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            real_s, imag_s = body[:cut], body[cut:]
        else:
            real_s, imag_s = "", body
        if imag_s in ("", "+"):
            im = Fraction(1)
        elif imag_s == "-":
            im = Fraction(-1)
        else:
            if not re.fullmatch(_RAT, imag_s):
                raise InputError(f"bad Gaussian literal {s!r}")
            im = Fraction(imag_s)
        re_ = Fraction(0)
        if real_s:
            if not re.fullmatch(_RAT, real_s):
                raise InputError(f"bad Gaussian literal {s!r}")
            re_ = Fraction(real_s)
        return GaussRational(re_, im)

    def format(self, x):
        x = self.coerce(x)
        r = QQ.format(x.re)
        if x.im == 0:
            return r
        if x.im == 1:
            im = "i"
        elif x.im == -1:
            im = "-i"
        else:
            im = QQ.format(x.im) + "*i"
        if x.re == 0:
            return im
        return r + ("" if im.startswith("-") else "+") + im


class PrimeField(Field):
    tag = "Fp"

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.characteristic = p

    def json_key(self):
        return {"Fp": self.p}

    def coerce(self, x):
        if isinstance(x, FpElem):
            if x.p != self.p:
                raise FieldMismatchError(f"GF({x.p}) element in GF({self.p})")
            return x
        if isinstance(x, int):
            return FpElem(x, self.p)
        if isinstance(x, Fraction):
            return FpElem(x.numerator, self.p) / FpElem(x.denominator, self.p)
        raise FieldMismatchError(f"{x!r} is not in GF({self.p})")

    def contains(self, x):
        return isinstance(x, int) or (isinstance(x, FpElem) and x.p == self.p)

    def parse(self, s: str):
        s = s.strip()
        if not re.fullmatch(_RAT, s):
            raise InputError(f"bad GF({self.p}) literal {s!r}")
        return self.coerce(Fraction(s))

    def format(self, x):
        return str(self.coerce(x).v)

    def elements(self):
        return [FpElem(v, self.p) for v in range(self.p)]


QQ = RationalField()
QQi = GaussianField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_key(key) -> Field:
    """Inverse of ``Field.json_key``; also accepts the CLI form ``Fp:7``."""
    if key == "Q":
        return QQ
    if key == "Qi":
        return QQi
    if isinstance(key, dict) and set(key) == {"Fp"}:
        return GF(int(key["Fp"]))
    if isinstance(key, str) and key.startswith("Fp:"):
        return GF(int(key[3:]))
    raise InputError(f"unknown field {key!r}")


def field_of(values) -> Field | None:
    """Field shared by ``values`` (ints are neutral), or None if only ints."""
    found = None
    for v in values:
        if isinstance(v, int):
            continue
        if isinstance(v, Fraction):
            f = QQ
        elif isinstance(v, GaussRational):
            f = QQi
        elif isinstance(v, FpElem):
            f = GF(v.p)
        else:
            raise FieldMismatchError(f"not an exact scalar: {v!r}")
        if found is None:
            found = f
        elif found != f:
            raise FieldMismatchError(f"mixed fields {found} and {f}")
    return found
