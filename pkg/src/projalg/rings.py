"""Exact involutive rings.

Every ring works on canonical, hashable *payloads* (ints, Fractions, tuples)
through methods such as ``add``/``mul``/``inv``/``star``; :class:`Elem` wraps a
payload together with its ring for interactive use.  No floating point is
used anywhere.

Composite constructions (dual numbers, matrices, functions on a finite set,
polynomials) nest arbitrarily over the base rings.
"""

from __future__ import annotations

import itertools
import math
import operator
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional


class RingError(ValueError):
    """Invalid ring construction or unsupported operation."""


class CharacteristicTwoError(RingError):
    """A construction needs 1/2 but 2 is not invertible in the base."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class Involution:
    """A parsed involution: ``kind`` plus integer ``args`` and an optional inner involution."""

    kind: str
    args: tuple = ()
    inner: Optional["Involution"] = None

    KINDS = ("id", "conj", "transpose", "conjtranspose", "sign", "dualflip", "pointwise")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise RingError(f"unknown involution {self.kind!r}")
        if self.kind == "sign" and len(self.args) != 2:
            raise RingError("sign(p,q) needs two integers")
        if self.kind == "pointwise" and self.inner is None:
            raise RingError("pointwise(...) needs an inner involution")

    def __str__(self):
        if self.kind == "sign":
            return "sign(%d,%d)" % self.args
        if self.kind == "pointwise":
            return f"pointwise({self.inner})"
        return self.kind


def as_involution(inv) -> Optional[Involution]:
    if inv is None or isinstance(inv, Involution):
        return inv
    if isinstance(inv, str):
        from .ringspec import parse_involution

        return parse_involution(inv)
    raise TypeError(f"not an involution: {inv!r}")


class Ring:
    """Base class.  Subclasses fill in the payload arithmetic."""

    commutative = True
    finite = False
    is_field = False
    characteristic = 0
    #: field over which ``coords`` expresses elements, or None
    scalars: Optional["Ring"] = None
    dim: Optional[int] = None
    involution: Involution = Involution("id")

    # -- identity -------------------------------------------------------
    spec = "?"

    def _key(self):
        return (type(self).__name__, self.spec, str(self.involution))

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{self.spec} [{self.involution}]"

    # -- arithmetic on payloads ----------------------------------------
    zero = 0
    one = 1

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        """Two-sided inverse of ``a`` or None."""
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        return self.inv(a) is not None

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, e: int):
        if e < 0:
            a = self.inv(a)
            if a is None:
                raise ZeroDivisionError("not a unit")
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def bar(self, a):
        """Natural conjugation (complex conjugation / Frobenius); identity on real-type rings."""
        return a

    def star(self, a):
        """The declared involution."""
        kind = self.involution.kind
        if kind == "id":
            return a
        if kind in ("conj", "conjtranspose"):
            return self.bar(a)
        raise RingError(f"involution {self.involution} not available on {self.spec}")

    def embed(self, b):
        """Embed a payload of the innermost base ring as a scalar."""
        return b

    @property
    def base(self) -> "Ring":
        return self

    def half(self):
        """Payload of 1/2, raising CharacteristicTwoError if 2 is not a unit."""
        h = self.inv(self.from_int(2))
        if h is None:
            raise CharacteristicTwoError(f"2 is not invertible in {self.spec}")
        return h

    # -- coordinates over self.scalars ----------------------------------
    def coords(self, a) -> tuple:
        raise RingError(f"{self.spec} is not a finite-dimensional algebra over a field")

    def from_coords(self, c):
        raise RingError(f"{self.spec} is not a finite-dimensional algebra over a field")

    # -- finite rings ----------------------------------------------------
    def elements(self) -> Iterator:
        raise RingError(f"{self.spec} is infinite; cannot enumerate")

    @cached_property
    def element_list(self) -> list:
        return list(self.elements())

    @cached_property
    def units(self) -> list:
        return [a for a in self.element_list if self.inv(a) is not None]

    def size(self) -> int:
        if not self.finite:
            raise RingError(f"{self.spec} is infinite")
        return len(self.element_list)

    def random(self, rng: random.Random):
        if self.finite:
            return rng.choice(self.element_list)
        raise RingError(f"no sampler for {self.spec}")

    # -- literals ----------------------------------------------------------
    def fmt(self, a) -> str:
        return str(a)

    def from_literal(self, obj):
        raise NotImplementedError

    def canon(self, a):
        """Canonicalize a raw payload."""
        return a

    # -- convenience -------------------------------------------------------
    def elem(self, a) -> "Elem":
        return Elem(self, self.canon(a))

    def coerce(self, x):
        """Payload from an Elem, an int, or a payload."""
        if isinstance(x, Elem):
            if x.ring != self:
                raise RingError(f"element of {x.ring!r} used in {self!r}")
            return x.value
        if isinstance(x, int) and not isinstance(x, bool):
            return self.from_int(x)
        return self.canon(x)

    def sqrt(self, a):
        """A square root of ``a`` or None (finite rings and Q only)."""
        if self.finite:
            for x in self.element_list:
                if self.mul(x, x) == a:
                    return x
            return None
        raise RingError(f"no square roots in {self.spec}")

    def complex_unit(self):
        """A central scalar i with i*i = -1 and star(i) = -i, or None."""
        base = self.base
        minus_one = base.neg(base.one)
        if isinstance(base, GaussianRationals):
            candidates = [(Fraction(0), Fraction(1))]
        elif base.finite:
            candidates = [x for x in base.element_list if base.mul(x, x) == minus_one]
        else:
            return None
        for c in candidates:
            i = self.embed(c)
            if self.star(i) == self.neg(i):
                return i
        return None


def _scalar_atom(obj):
    while isinstance(obj, (list, tuple)) and len(obj) == 1:
        obj = obj[0]
    if isinstance(obj, (list, tuple)):
        raise RingError(f"expected a scalar literal, got {obj!r}")
    return obj


def _check_id_involution(ring: Ring):
    inv = ring.involution
    if inv.kind == "id" and not ring.commutative:
        raise RingError(f"identity involution needs a commutative ring, not {ring.spec}")


# ---------------------------------------------------------------------------
# base rings


class Integers(Ring):
    spec = "Z"
    is_pid = True

    def __init__(self, involution=None):
        self.involution = as_involution(involution) or Involution("id")
        if self.involution.kind not in ("id", "conj", "conjtranspose"):
            raise RingError(f"involution {self.involution} not valid on Z")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a if a in (1, -1) else None

    def from_int(self, n):
        return n

    def canon(self, a):
        return int(a)

    def random(self, rng):
        return rng.randint(-20, 20)

    def from_literal(self, obj):
        return int(_scalar_atom(obj))

    # Euclidean structure
    def divmod(self, a, b):
        return divmod(a, b)

    def degree(self, a):
        return abs(a)

    def normal_unit(self, a):
        """Unit u with a*u canonical (nonnegative)."""
        return -1 if a < 0 else 1


class Rationals(Ring):
    spec = "Q"
    is_field = True

    def __init__(self, involution=None):
        self.involution = as_involution(involution) or Involution("id")
        if self.involution.kind not in ("id", "conj", "conjtranspose"):
            raise RingError(f"involution {self.involution} not valid on Q")

    zero = Fraction(0)
    one = Fraction(1)
    is_zero = staticmethod(operator.not_)

    @property
    def scalars(self):
        return self

    dim = 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a if a else None

    def from_int(self, n):
        return Fraction(n)

    def canon(self, a):
        return Fraction(a)

    def coords(self, a):
        return (a,)

    def from_coords(self, c):
        return c[0]

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    def fmt(self, a):
        return str(a)

    def from_literal(self, obj):
        return Fraction(_scalar_atom(obj))

    def sqrt(self, a):
        if a < 0:
            return None
        n, d = a.numerator, a.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None


def _parse_gaussian(text: str):
    s = text.replace(" ", "")
    if not s:
        raise RingError("empty literal")
    if not s.endswith("i"):
        return Fraction(s), Fraction(0)
    body = s[:-1]
    # split at the last sign that is not at position 0 and not inside a/b exponent
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut <= 0:
        re_part, im_part = "0", body
    else:
        re_part, im_part = body[:cut], body[cut:]
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    elif im_part.endswith("*"):
        im_part = im_part[:-1]
    return Fraction(re_part), Fraction(im_part)


class GaussianRationals(Ring):
    """Q(i); payload (re, im) of Fractions; ``bar`` is complex conjugation."""

    spec = "Qi"
    is_field = True
    dim = 2

    def __init__(self, involution=None):
        self.involution = as_involution(involution) or Involution("id")
        if self.involution.kind not in ("id", "conj", "conjtranspose"):
            raise RingError(f"involution {self.involution} not valid on Qi")

    zero = (Fraction(0), Fraction(0))
    one = (Fraction(1), Fraction(0))

    @cached_property
    def scalars(self):
        return Rationals()

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def mul(self, a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def inv(self, a):
        n = a[0] * a[0] + a[1] * a[1]
        if not n:
            return None
        return (a[0] / n, -a[1] / n)

    def bar(self, a):
        return (a[0], -a[1])

    def from_int(self, n):
        return (Fraction(n), Fraction(0))

    def canon(self, a):
        if isinstance(a, (int, Fraction)):
            return (Fraction(a), Fraction(0))
        return (Fraction(a[0]), Fraction(a[1]))

    def coords(self, a):
        return a

    def from_coords(self, c):
        return (c[0], c[1])

    def random(self, rng):
        return (Fraction(rng.randint(-5, 5), rng.randint(1, 3)), Fraction(rng.randint(-5, 5), rng.randint(1, 3)))

    def fmt(self, a):
        re, im = a
        if not im:
            return str(re)
        im_s = "" if im == 1 else "-" if im == -1 else str(im) + "*"
        if not re:
            return f"{im_s}i"
        sign = "" if im_s.startswith("-") else "+"
        return f"{re}{sign}{im_s}i"

    def from_literal(self, obj):
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return (Fraction(_scalar_atom(obj[0])), Fraction(_scalar_atom(obj[1])))
        return _parse_gaussian(_scalar_atom(obj))


class _ResidueRing(Ring):
    finite = True
    is_zero = staticmethod(operator.not_)

    def __init__(self, n, involution=None):
        self.n = n
        self.characteristic = n
        self.involution = as_involution(involution) or Involution("id")
        if self.involution.kind not in ("id", "conj", "conjtranspose"):
            raise RingError(f"involution {self.involution} not valid on {self.spec}")

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return -a % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return a * b % self.n

    def inv(self, a):
        if math.gcd(a, self.n) != 1:
            return None
        return pow(a, -1, self.n)

    def from_int(self, n):
        return n % self.n

    def canon(self, a):
        return int(a) % self.n

    def elements(self):
        return iter(range(self.n))

    def size(self):
        return self.n

    def random(self, rng):
        return rng.randrange(self.n)

    def from_literal(self, obj):
        q = Fraction(_scalar_atom(obj))
        d = self.inv(q.denominator % self.n)
        if d is None:
            raise RingError(f"denominator {q.denominator} not invertible in {self.spec}")
        return q.numerator * d % self.n


class PrimeField(_ResidueRing):
    is_field = True
    dim = 1

    def __init__(self, p, involution=None):
        if not is_prime(p):
            raise RingError(f"F{p}: {p} is not prime")
        self.spec = f"F{p}"
        super().__init__(p, involution)

    @property
    def scalars(self):
        return self

    def coords(self, a):
        return (a,)

    def from_coords(self, c):
        return c[0]


class ModularRing(_ResidueRing):
    def __init__(self, n, involution=None):
        if n < 2:
            raise RingError("Zmod(n) needs n >= 2")
        self.spec = f"Zmod({n})"
        super().__init__(n, involution)
        self.is_field = is_prime(n)
        if self.is_field:
            self.scalars = self
            self.dim = 1

    def coords(self, a):
        if not self.is_field:
            return super().coords(a)
        return (a,)

    def from_coords(self, c):
        if not self.is_field:
            return super().from_coords(c)
        return c[0]


def _polymulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    # modulus is monic: x^k = -sum(modulus[:k] x^i)
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(k):
                prod[d - k + i] -= c * modulus[i]
        prod[d] = 0
    return tuple(c % p for c in prod[:k])


def _is_irreducible(coeffs, p):
    """Monic polynomial (low-to-high coeffs incl. leading 1) irreducible over F_p?"""
    k = len(coeffs) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            rem = list(coeffs)
            for top in range(k, d - 1, -1):
                c = rem[top] % p
                if c:
                    for i in range(d + 1):
                        rem[top - d + i] -= c * divisor[i]
            if all(r % p == 0 for r in rem[:d]):
                return False
    return True


class FiniteFieldExt(Ring):
    """F_{p^k} as F_p[a]/(f), f the first monic irreducible in lexicographic order.

    ``bar`` is the Frobenius power x -> x^(p^(k/2)) when k is even (an
    involution of the second kind) and the identity otherwise.
    """

    finite = True
    is_field = True

    def __init__(self, p, k, involution=None):
        if not is_prime(p):
            raise RingError(f"Fq({p},{k}): {p} is not prime")
        if k < 1:
            raise RingError(f"Fq({p},{k}): k must be >= 1")
        self.p, self.k = p, k
        self.spec = f"Fq({p},{k})"
        self.characteristic = p
        self.dim = k
        self.involution = as_involution(involution) or Involution("id")
        if self.involution.kind not in ("id", "conj", "conjtranspose"):
            raise RingError(f"involution {self.involution} not valid on {self.spec}")
        if k == 1:
            self.modulus = (0, 1)
        else:
            for low in itertools.product(range(p), repeat=k):
                cand = low + (1,)
                if _is_irreducible(cand, p):
                    self.modulus = cand
                    break
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    @cached_property
    def scalars(self):
        return PrimeField(self.p)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return ((a[0] * b[0]) % self.p,)
        return _polymulmod(a, b, self.modulus, self.p)

    def inv(self, a):
        if a == self.zero:
            return None
        return self.pow(a, self.p ** self.k - 2)

    @cached_property
    def _frobenius_table(self):
        e = self.p ** (self.k // 2)
        return {a: self.pow(a, e) for a in self.elements()}

    def bar(self, a):
        if self.k % 2:
            return a
        return self._frobenius_table[a]

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def embed(self, b):
        return b

    def canon(self, a):
        if isinstance(a, int):
            return self.from_int(a)
        a = tuple(int(x) % self.p for x in a)
        return a + (0,) * (self.k - len(a))

    def coords(self, a):
        return a

    def from_coords(self, c):
        return tuple(c)

    def elements(self):
        return itertools.product(range(self.p), repeat=self.k)

    def fmt(self, a):
        if all(x == 0 for x in a[1:]):
            return str(a[0])
        return "(" + ",".join(map(str, a)) + ")"

    def from_literal(self, obj):
        if isinstance(obj, (list, tuple)) and len(obj) > 1:
            if len(obj) > self.k:
                raise RingError(f"too many coefficients for {self.spec}")
            return self.canon([int(_scalar_atom(x)) for x in obj])
        q = Fraction(_scalar_atom(obj))
        num = self.from_int(q.numerator)
        den = self.inv(self.from_int(q.denominator))
        if den is None:
            raise RingError(f"denominator not invertible in {self.spec}")
        return self.mul(num, den)


# ---------------------------------------------------------------------------
# constructions


class DualRing(Ring):
    """R[e]/(e^2), e central; payload (a, b) for a + b e."""

    def __init__(self, inner: Ring, involution=None):
        self.inner = inner
        self.spec = f"Dual({inner.spec})"
        self.commutative = inner.commutative
        self.finite = inner.finite
        self.characteristic = inner.characteristic
        self.scalars = inner.scalars
        self.dim = None if inner.dim is None else 2 * inner.dim
        self.zero = (inner.zero, inner.zero)
        self.one = (inner.one, inner.zero)
        inv = as_involution(involution)
        if inv is None:
            inv = Involution("id") if self.commutative else Involution("pointwise", inner=inner.involution)
        self.involution = inv
        if inv.kind == "pointwise":
            if str(inv.inner) != str(inner.involution):
                raise RingError("pointwise involution must match the inner ring's involution")
        elif inv.kind == "dualflip":
            if not inner.commutative:
                raise RingError("dualflip needs a commutative inner ring")
        elif inv.kind == "id":
            _check_id_involution(self)
        elif inv.kind != "conj":
            raise RingError(f"involution {inv} not valid on {self.spec}")

    @property
    def base(self):
        return self.inner.base

    def add(self, a, b):
        R = self.inner
        return (R.add(a[0], b[0]), R.add(a[1], b[1]))

    def neg(self, a):
        R = self.inner
        return (R.neg(a[0]), R.neg(a[1]))

    def mul(self, a, b):
        R = self.inner
        return (R.mul(a[0], b[0]), R.add(R.mul(a[0], b[1]), R.mul(a[1], b[0])))

    def inv(self, a):
        R = self.inner
        u = R.inv(a[0])
        if u is None:
            return None
        return (u, R.neg(R.mul(R.mul(u, a[1]), u)))

    def bar(self, a):
        return (self.inner.bar(a[0]), self.inner.bar(a[1]))

    def star(self, a):
        kind = self.involution.kind
        if kind == "dualflip":
            return (a[0], self.inner.neg(a[1]))
        if kind == "pointwise":
            return (self.inner.star(a[0]), self.inner.star(a[1]))
        return super().star(a)

    def from_int(self, n):
        return (self.inner.from_int(n), self.inner.zero)

    def embed(self, b):
        return (self.inner.embed(b), self.inner.zero)

    def canon(self, a):
        if isinstance(a, int):
            return self.from_int(a)
        return (self.inner.canon(a[0]), self.inner.canon(a[1]))

    def coords(self, a):
        return self.inner.coords(a[0]) + self.inner.coords(a[1])

    def from_coords(self, c):
        d = self.inner.dim
        return (self.inner.from_coords(c[:d]), self.inner.from_coords(c[d:]))

    def elements(self):
        els = self.inner.element_list
        return itertools.product(els, els)

    def random(self, rng):
        return (self.inner.random(rng), self.inner.random(rng))

    def fmt(self, a):
        return f"({self.inner.fmt(a[0])},{self.inner.fmt(a[1])})"

    def from_literal(self, obj):
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return (self.inner.from_literal(obj[0]), self.inner.from_literal(obj[1]))
        return (self.inner.from_literal(obj), self.inner.zero)

    def complex_unit(self):
        return Ring.complex_unit(self)


class FuncRing(Ring):
    """Functions from an m-element set to R with pointwise operations."""

    def __init__(self, m: int, inner: Ring, involution=None):
        if m < 1:
            raise RingError("Func(m, R) needs m >= 1")
        self.m = m
        self.inner = inner
        self.spec = f"Func({m},{inner.spec})"
        self.commutative = inner.commutative
        self.finite = inner.finite
        self.characteristic = inner.characteristic
        self.scalars = inner.scalars
        self.dim = None if inner.dim is None else m * inner.dim
        self.zero = (inner.zero,) * m
        self.one = (inner.one,) * m
        inv = as_involution(involution)
        if inv is None:
            inv = Involution("id") if self.commutative else Involution("pointwise", inner=inner.involution)
        self.involution = inv
        if inv.kind == "pointwise":
            if str(inv.inner) != str(inner.involution):
                raise RingError("pointwise involution must match the inner ring's involution")
        elif inv.kind == "id":
            _check_id_involution(self)
        elif inv.kind not in ("conj", "conjtranspose"):
            raise RingError(f"involution {inv} not valid on {self.spec}")

    @property
    def base(self):
        return self.inner.base

    def add(self, a, b):
        add = self.inner.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.inner.neg
        return tuple(neg(x) for x in a)

    def mul(self, a, b):
        mul = self.inner.mul
        return tuple(mul(x, y) for x, y in zip(a, b))

    def inv(self, a):
        out = []
        for x in a:
            y = self.inner.inv(x)
            if y is None:
                return None
            out.append(y)
        return tuple(out)

    def bar(self, a):
        return tuple(self.inner.bar(x) for x in a)

    def star(self, a):
        if self.involution.kind == "pointwise":
            return tuple(self.inner.star(x) for x in a)
        return super().star(a)

    def from_int(self, n):
        return (self.inner.from_int(n),) * self.m

    def embed(self, b):
        return (self.inner.embed(b),) * self.m

    def canon(self, a):
        if isinstance(a, int):
            return self.from_int(a)
        return tuple(self.inner.canon(x) for x in a)

    def coords(self, a):
        return tuple(c for x in a for c in self.inner.coords(x))

    def from_coords(self, c):
        d = self.inner.dim
        return tuple(self.inner.from_coords(c[i * d:(i + 1) * d]) for i in range(self.m))

    def elements(self):
        return itertools.product(self.inner.element_list, repeat=self.m)

    def random(self, rng):
        return tuple(self.inner.random(rng) for _ in range(self.m))

    def fmt(self, a):
        return "(" + ",".join(self.inner.fmt(x) for x in a) + ")"

    def from_literal(self, obj):
        if isinstance(obj, (list, tuple)) and len(obj) == self.m and self.m > 1:
            return tuple(self.inner.from_literal(x) for x in obj)
        return self.embed(self.inner.from_literal(obj))


class MatrixRing(Ring):
    """n x n matrices over R, payload a row-major tuple of n*n inner payloads."""

    def __init__(self, n: int, inner: Ring, involution=None):
        if n < 1:
            raise RingError("Mat(n, R) needs n >= 1")
        self.n = n
        self.inner = inner
        self.spec = f"Mat({n},{inner.spec})"
        self.commutative = n == 1 and inner.commutative
        self.finite = inner.finite
        self.characteristic = inner.characteristic
        self.scalars = inner.scalars
        self.dim = None if inner.dim is None else n * n * inner.dim
        z, o = inner.zero, inner.one
        self.zero = (z,) * (n * n)
        self.one = tuple(o if i == j else z for i in range(n) for j in range(n))
        inv = as_involution(involution)
        if inv is None:
            inv = Involution("transpose") if inner.commutative else None
        self.involution = inv or Involution("id")
        if inv is None:
            # no declared involution (internal frame rings over noncommutative A)
            self._no_involution = True
            return
        self._no_involution = False
        kind = inv.kind
        if kind in ("transpose", "conjtranspose"):
            if not inner.commutative:
                raise RingError(f"{kind} on {self.spec} needs a commutative inner ring")
        elif kind == "sign":
            p, q = inv.args
            if p < 0 or q < 0 or p + q != n:
                raise RingError(f"sign({p},{q}) needs Mat({p + q}, R)")
            if not inner.commutative:
                raise RingError(f"sign(p,q) on {self.spec} needs a commutative inner ring")
        elif kind == "id":
            _check_id_involution(self)
        elif kind == "conj":
            if n != 1:
                raise RingError(f"conj on {self.spec} is not an anti-automorphism; use conjtranspose")
        else:
            raise RingError(f"involution {inv} not valid on {self.spec}")

    @property
    def base(self):
        return self.inner.base

    def add(self, a, b):
        add = self.inner.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.inner.neg
        return tuple(neg(x) for x in a)

    def sub(self, a, b):
        sub = self.inner.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        n, R = self.n, self.inner
        add, mul = R.add, R.mul
        out = []
        for i in range(n):
            row = a[i * n:(i + 1) * n]
            for j in range(n):
                s = mul(row[0], b[j])
                for k in range(1, n):
                    s = add(s, mul(row[k], b[k * n + j]))
                out.append(s)
        return tuple(out)

    def entry(self, a, i, j):
        return a[i * self.n + j]

    def transpose(self, a):
        n = self.n
        return tuple(a[j * n + i] for i in range(n) for j in range(n))

    def bar(self, a):
        return tuple(self.inner.bar(x) for x in a)

    def star(self, a):
        if self._no_involution:
            raise RingError(f"{self.spec} carries no involution")
        kind = self.involution.kind
        if kind == "transpose":
            return self.transpose(a)
        if kind in ("conjtranspose", "conj"):
            return self.transpose(self.bar(a))
        if kind == "sign":
            p, _ = self.involution.args
            n, R = self.n, self.inner
            t = self.transpose(self.bar(a))
            # I_{p,q} X I_{p,q}: entry (i,j) flips sign when exactly one index is >= p
            return tuple(R.neg(t[i * n + j]) if (i < p) != (j < p) else t[i * n + j]
                         for i in range(n) for j in range(n))
        return a  # id on 1x1 commutative

    def from_int(self, n):
        return self._scalar(self.inner.from_int(n))

    def _scalar(self, c):
        z, n = self.inner.zero, self.n
        return tuple(c if i == j else z for i in range(n) for j in range(n))

    def embed(self, b):
        return self._scalar(self.inner.embed(b))

    def canon(self, a):
        if isinstance(a, int):
            return self.from_int(a)
        flat = []
        if len(a) == self.n and all(isinstance(r, (list, tuple)) and len(r) == self.n for r in a) and self.n > 1:
            for r in a:
                flat.extend(r)
        elif len(a) == self.n * self.n:
            flat = list(a)
        else:
            flat = [x for r in a for x in r]
        return tuple(self.inner.canon(x) for x in flat)

    def coords(self, a):
        return tuple(c for x in a for c in self.inner.coords(x))

    def from_coords(self, c):
        d = self.inner.dim
        return tuple(self.inner.from_coords(c[i * d:(i + 1) * d]) for i in range(self.n * self.n))

    def elements(self):
        return itertools.product(self.inner.element_list, repeat=self.n * self.n)

    def random(self, rng):
        return tuple(self.inner.random(rng) for _ in range(self.n * self.n))

    def fmt(self, a):
        n = self.n
        rows = ("[" + ",".join(self.inner.fmt(x) for x in a[i * n:(i + 1) * n]) + "]" for i in range(n))
        return "[" + ",".join(rows) + "]"

    def from_literal(self, obj):
        n = self.n
        if isinstance(obj, (list, tuple)) and len(obj) == n and all(isinstance(r, (list, tuple)) and len(r) == n for r in obj):
            if n > 1 or isinstance(obj[0], (list, tuple)):
                return tuple(self.inner.from_literal(x) for r in obj for x in r)
        if isinstance(obj, (list, tuple)) and len(obj) == 1:
            return self.from_literal(obj[0])
        if isinstance(obj, (list, tuple)):
            raise RingError(f"bad matrix literal for {self.spec}")
        return self._scalar(self.inner.from_literal(obj))

    # -- inversion -------------------------------------------------------
    def inv(self, a):
        R = self.inner
        if self.n == 1:
            u = R.inv(a[0])
            return None if u is None else (u,)
        if R.is_field:
            return _gauss_inverse(R, self.n, a)
        if R.commutative:
            return self._inv_commutative(a)
        if isinstance(R, MatrixRing) and R.inner.is_field:
            return self._inv_blocks(a)
        if R.scalars is not None:
            return self._inv_regular(a)
        if self.finite:
            for b in self.element_list:
                if self.mul(a, b) == self.one and self.mul(b, a) == self.one:
                    return b
            return None
        raise RingError(f"cannot decide invertibility in {self.spec}")

    def det(self, a):
        """Determinant; only defined over a commutative inner ring."""
        if not self.inner.commutative:
            raise RingError("determinant needs a commutative inner ring")
        return _det(self.inner, self.n, list(a))

    def _inv_commutative(self, a):
        R, n = self.inner, self.n
        d = _det(R, n, list(a))
        dinv = R.inv(d)
        if dinv is None:
            return None
        if n == 2:
            p, q, r, s = a
            adj = (s, R.neg(q), R.neg(r), p)
        else:
            adj = [None] * (n * n)
            for i in range(n):
                for j in range(n):
                    minor = [a[k * n + l] for k in range(n) if k != i for l in range(n) if l != j]
                    c = _det(R, n - 1, minor)
                    adj[j * n + i] = c if (i + j) % 2 == 0 else R.neg(c)
        return tuple(R.mul(dinv, x) for x in adj)

    def _inv_blocks(self, a):
        R = self.inner
        K, m, n = R.inner, R.n, self.n
        N = n * m
        flat = [K.zero] * (N * N)
        for bi in range(n):
            for bj in range(n):
                blk = a[bi * n + bj]
                for i in range(m):
                    for j in range(m):
                        flat[(bi * m + i) * N + bj * m + j] = blk[i * m + j]
        res = _gauss_inverse(K, N, flat)
        if res is None:
            return None
        out = []
        for bi in range(n):
            for bj in range(n):
                out.append(tuple(res[(bi * m + i) * N + bj * m + j] for i in range(m) for j in range(m)))
        return tuple(out)

    def _inv_regular(self, a):
        """Solve a x = 1 in the left-regular representation over the scalar field."""
        from . import linalg

        K, N = self.scalars, self.dim
        basis = [self.from_coords(tuple(K.one if i == j else K.zero for i in range(N))) for j in range(N)]
        cols = [self.coords(self.mul(a, b)) for b in basis]
        mat = [[cols[j][i] for j in range(N)] for i in range(N)]
        x = linalg.solve(K, mat, list(self.coords(self.one)))
        if x is None:
            return None
        b = self.from_coords(tuple(x))
        if self.mul(a, b) != self.one or self.mul(b, a) != self.one:
            return None
        return b


def _det(R, n, a):
    if n == 1:
        return a[0]
    if n == 2:
        return R.sub(R.mul(a[0], a[3]), R.mul(a[1], a[2]))
    total = R.zero
    for j in range(n):
        minor = [a[k * n + l] for k in range(1, n) for l in range(n) if l != j]
        term = R.mul(a[j], _det(R, n - 1, minor))
        total = R.add(total, term) if j % 2 == 0 else R.sub(total, term)
    return total


def _gauss_inverse(K, n, a):
    """Gauss-Jordan inverse of a row-major n x n matrix over a field, or None."""
    zero, one = K.zero, K.one
    rows = [list(a[i * n:(i + 1) * n]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != zero), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        prow = rows[col]
        pinv = K.inv(prow[col])
        if pinv != one:
            prow = rows[col] = [K.mul(pinv, x) for x in prow]
        for r in range(n):
            if r != col:
                f = rows[r][col]
                if f != zero:
                    rr = rows[r]
                    rows[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(rr, prow)]
    return tuple(x for r in rows for x in r[n:])


class PolyRing(Ring):
    """R[X], payload a tuple of coefficients (low to high) without trailing zeros."""

    def __init__(self, inner: Ring, involution=None):
        self.inner = inner
        self.spec = f"Poly({inner.spec})"
        self.commutative = inner.commutative
        self.characteristic = inner.characteristic
        self.is_pid = inner.is_field
        self.zero = ()
        self.one = (inner.one,)
        inv = as_involution(involution) or Involution("id")
        self.involution = inv
        if inv.kind == "id":
            _check_id_involution(self)
        elif inv.kind not in ("conj", "conjtranspose"):
            raise RingError(f"involution {inv} not valid on {self.spec}")

    @property
    def base(self):
        return self.inner.base

    def _trim(self, c):
        z = self.inner.zero
        c = list(c)
        while c and c[-1] == z:
            c.pop()
        return tuple(c)

    def add(self, a, b):
        R = self.inner
        if len(a) < len(b):
            a, b = b, a
        return self._trim([R.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    def neg(self, a):
        return tuple(self.inner.neg(x) for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        R = self.inner
        out = [R.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = R.add(out[i + j], R.mul(x, y))
        return self._trim(out)

    def inv(self, a):
        if len(a) != 1:
            return None  # exact for domains
        u = self.inner.inv(a[0])
        return None if u is None else (u,)

    def bar(self, a):
        return tuple(self.inner.bar(x) for x in a)

    def from_int(self, n):
        return self._trim([self.inner.from_int(n)])

    def embed(self, b):
        return self._trim([self.inner.embed(b)])

    def canon(self, a):
        if isinstance(a, int):
            return self.from_int(a)
        return self._trim(self.inner.canon(x) for x in a)

    def random(self, rng, degree=3):
        return self._trim(self.inner.random(rng) for _ in range(rng.randint(0, degree) + 1))

    def fmt(self, a):
        if not a:
            return "0"
        return "(" + ",".join(self.inner.fmt(x) for x in a) + ")"

    def from_literal(self, obj):
        if isinstance(obj, (list, tuple)):
            return self._trim(self.inner.from_literal(x) for x in obj)
        return self.embed(self.inner.from_literal(obj))

    def degree(self, a):
        return len(a) - 1

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        R = self.inner
        lead = R.inv(b[-1])
        if lead is None:
            raise RingError("leading coefficient not invertible")
        q = [R.zero] * max(len(a) - len(b) + 1, 1)
        r = list(a)
        while len(r) >= len(b) and r:
            c = R.mul(r[-1], lead)
            shift = len(r) - len(b)
            q[shift] = c
            for i, y in enumerate(b):
                r[shift + i] = R.sub(r[shift + i], R.mul(c, y))
            r = list(self._trim(r))
        return self._trim(q), self._trim(r)

    def normal_unit(self, a):
        """Unit u with a*u monic."""
        if not a:
            return self.one
        return (self.inner.inv(a[-1]),)


class QuadraticRing(Ring):
    """K[X]/(X^2 - c) with i = [X]; payload (a, b) for a + i b; star is a + ib -> a - ib."""

    def __init__(self, field: Ring, c):
        if not field.is_field:
            raise RingError("quadratic extension needs a field")
        self.field = field
        self.c = c
        self.spec = f"{field.spec}[X]/(X^2-({field.fmt(c)}))"
        self.characteristic = field.characteristic
        self.finite = field.finite
        self.scalars = field
        self.dim = 2
        self.zero = (field.zero, field.zero)
        self.one = (field.one, field.zero)
        self.i = (field.zero, field.one)
        self.involution = Involution("conj")

    def add(self, a, b):
        K = self.field
        return (K.add(a[0], b[0]), K.add(a[1], b[1]))

    def neg(self, a):
        K = self.field
        return (K.neg(a[0]), K.neg(a[1]))

    def mul(self, a, b):
        K = self.field
        re = K.add(K.mul(a[0], b[0]), K.mul(self.c, K.mul(a[1], b[1])))
        im = K.add(K.mul(a[0], b[1]), K.mul(a[1], b[0]))
        return (re, im)

    def inv(self, a):
        K = self.field
        n = K.sub(K.mul(a[0], a[0]), K.mul(self.c, K.mul(a[1], a[1])))
        ninv = K.inv(n)
        if ninv is None:
            return None
        return (K.mul(a[0], ninv), K.neg(K.mul(a[1], ninv)))

    def bar(self, a):
        return (a[0], self.field.neg(a[1]))

    def from_int(self, n):
        return (self.field.from_int(n), self.field.zero)

    def embed(self, b):
        return (b, self.field.zero)

    def coords(self, a):
        return a

    def from_coords(self, c):
        return (c[0], c[1])

    def elements(self):
        els = self.field.element_list
        return itertools.product(els, els)

    def fmt(self, a):
        return f"({self.field.fmt(a[0])},{self.field.fmt(a[1])})"


# ---------------------------------------------------------------------------
# element wrapper and module-level operations


class Elem:
    """A payload bound to its ring, with arithmetic operators."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other):
        return self.ring.coerce(other)

    def __add__(self, other):
        return Elem(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Elem(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Elem(self.ring, self.ring.mul(self.value, self._other(other)))

    def __rmul__(self, other):
        return Elem(self.ring, self.ring.mul(self._other(other), self.value))

    def __neg__(self):
        return Elem(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int):
        return Elem(self.ring, self.ring.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, Elem):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"Elem({self.ring.fmt(self.value)} @ {self.ring.spec})"

    def __str__(self):
        return self.ring.fmt(self.value)

    def inverse(self) -> Optional["Elem"]:
        return invert(self)

    def star(self) -> "Elem":
        return involve(self)


def invert(a: Elem) -> Optional[Elem]:
    """Two-sided inverse of ``a``, or None when ``a`` is not a unit."""
    b = a.ring.inv(a.value)
    return None if b is None else Elem(a.ring, b)


def involve(a: Elem) -> Elem:
    return Elem(a.ring, a.ring.star(a.value))


def _xgcd_payload(ring: Ring, r, s):
    """(g, a, b) payloads with a*r - b*s = g, g canonical."""
    if not getattr(ring, "is_pid", False):
        raise RingError(f"extended_gcd is not supported on {ring.spec}")
    zero = ring.zero
    if r == zero and s == zero:
        raise RingError("extended_gcd(0, 0) is undefined")
    # invariant: old_r = old_a*r + old_c*s
    old_r, cur_r = r, s
    old_a, cur_a = ring.one, zero
    old_c, cur_c = zero, ring.one
    while cur_r != zero:
        q, rem = ring.divmod(old_r, cur_r)
        old_r, cur_r = cur_r, rem
        old_a, cur_a = cur_a, ring.sub(old_a, ring.mul(q, cur_a))
        old_c, cur_c = cur_c, ring.sub(old_c, ring.mul(q, cur_c))
    u = ring.normal_unit(old_r)
    g = ring.mul(old_r, u)
    a = ring.mul(old_a, u)
    b = ring.neg(ring.mul(old_c, u))
    return g, a, b


def extended_gcd(r: Elem, s: Elem):
    """Return (g, a, b) with ``a*r - b*s = g`` and g the canonical gcd.

    Supported over Z (g > 0) and over polynomials over a field (g monic).
    """
    ring = r.ring
    if s.ring != ring:
        raise RingError("extended_gcd needs elements of one ring")
    g, a, b = _xgcd_payload(ring, r.value, s.value)
    return Elem(ring, g), Elem(ring, a), Elem(ring, b)


def enumerate_elements(ring: Ring) -> Iterator[Elem]:
    if not ring.finite:
        raise RingError(f"{ring.spec} is infinite; cannot enumerate")
    for a in ring.elements():
        yield Elem(ring, a)
