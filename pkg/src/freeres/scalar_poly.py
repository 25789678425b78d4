"""Prime fields, monomial orders and sparse multivariate polynomials.

Polynomials are immutable.  Internally a polynomial is a dict from exponent
tuples to coefficients in ``[1, p-1]``; the sorted term sequence is produced
on demand and cached, so two polynomials built in different orders expose
identical ``terms``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping

from sympy import isprime

DEFAULT_PRIME = 32003
ORDERS = ("grevlex", "lex")


class RingMismatchError(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


@lru_cache(maxsize=None)
def _grevlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _lex_key(exps: tuple[int, ...]) -> tuple:
    return exps


@dataclass(frozen=True)
class RingSpec:
    """The ring F_p[x_1, ..., x_d] with a fixed monomial order."""

    characteristic: int = DEFAULT_PRIME
    variables: tuple[str, ...] = ("x", "y", "z")
    order: str = "grevlex"
    _key: object = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.characteristic < 2 or not isprime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        for name in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"bad variable name {name!r}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        key = _grevlex_key if self.order == "grevlex" else _lex_key
        object.__setattr__(self, "_key", key)

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def ngens(self) -> int:
        return len(self.variables)

    def monomial_key(self, exps: tuple[int, ...]):
        """Sort key: larger key means larger monomial."""
        return self._key(exps)

    # constructors -------------------------------------------------------

    def poly(self, data: Mapping[tuple[int, ...], int]) -> "Polynomial":
        p = self.characteristic
        clean = {}
        for m, c in data.items():
            c %= p
            if c:
                clean[tuple(m)] = c
        return Polynomial._raw(self, clean)

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.characteristic
        return Polynomial._raw(self, {(0,) * self.ngens: c} if c else {})

    def gen(self, i: int | str) -> "Polynomial":
        if isinstance(i, str):
            i = self.variables.index(i)
        exps = [0] * self.ngens
        exps[i] = 1
        return Polynomial._raw(self, {tuple(exps): 1})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.ngens))

    def monomials_of_degree(self, degree: int) -> list[tuple[int, ...]]:
        """All exponent vectors of the given total degree, largest first."""
        out = []
        for combo in combinations_with_replacement(range(self.ngens), degree):
            exps = [0] * self.ngens
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
        out.sort(key=self._key, reverse=True)
        return out

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __str__(self):
        return f"F_{self.characteristic}[{','.join(self.variables)}] ({self.order})"


class Polynomial:
    __slots__ = ("ring", "_d", "_terms", "_hash")

    def __init__(self, ring: RingSpec, data: Mapping[tuple[int, ...], int] = ()):
        other = ring.poly(dict(data))
        self.ring = ring
        self._d = other._d
        self._terms = None
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingSpec, d: dict) -> "Polynomial":
        obj = object.__new__(cls)
        obj.ring = ring
        obj._d = d
        obj._terms = None
        obj._hash = None
        return obj

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """(coefficient, exponents) pairs, monomials strictly decreasing."""
        if self._terms is None:
            key = self.ring.monomial_key
            self._terms = tuple(
                (self._d[m], m) for m in sorted(self._d, key=key, reverse=True)
            )
        return self._terms

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and not any(next(iter(self._d))))

    def constant_term(self) -> int:
        return self._d.get((0,) * self.ring.ngens, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._d), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._d}) <= 1

    def leading_term(self) -> tuple[int, tuple[int, ...]]:
        if not self._d:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._d, key=self.ring.monomial_key)
        return self._d[m], m

    def leading_monomial(self) -> tuple[int, ...]:
        return self.leading_term()[1]

    def evaluate(self, point: Iterable[int]) -> int:
        point = tuple(point)
        p = self.ring.characteristic
        total = 0
        for m, c in self._d.items():
            t = c
            for v, e in zip(point, m):
                if e:
                    t = t * pow(v, e, p) % p
            total += t
        return total % p

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.characteristic
        if len(self._d) < len(other._d):
            small, big = self._d, other._d
        else:
            small, big = other._d, self._d
        d = dict(big)
        for m, c in small.items():
            s = (d.get(m, 0) + c) % p
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial._raw(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        return Polynomial._raw(self.ring, {m: p - c for m, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.characteristic
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c % p for m, v in self._d.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.characteristic
        d: dict = {}
        get = d.get
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = (get(m, 0) + c1 * c2) % p
        return Polynomial._raw(self.ring, {m: c for m, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, c: int, exps: tuple[int, ...]) -> "Polynomial":
        p = self.ring.characteristic
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(m, exps)): v * c % p for m, v in self._d.items()},
        )

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        c, _ = self.leading_term()
        return self.scale(pow(c, -1, self.ring.characteristic))

    def divexact(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        self._check(divisor)
        if not divisor._d:
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.ring.characteristic
        key = self.ring.monomial_key
        lc, lm = divisor.leading_term()
        inv = pow(lc, -1, p)
        rest = dict(self._d)
        q: dict = {}
        while rest:
            m = max(rest, key=key)
            shift = tuple(a - b for a, b in zip(m, lm))
            if min(shift) < 0:
                raise ArithmeticError("division is not exact")
            c = rest[m] * inv % p
            q[shift] = c
            for dm, dc in divisor._d.items():
                t = tuple(a + b for a, b in zip(dm, shift))
                v = (rest.get(t, 0) - c * dc) % p
                if v:
                    rest[t] = v
                else:
                    rest.pop(t, None)
        return Polynomial._raw(self.ring, q)

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.characteristic, frozenset(self._d.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)


# text syntax ------------------------------------------------------------


def _format_monomial(ring: RingSpec, exps: tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(ring.variables, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: terms in decreasing order, symmetric coefficients."""
    if f.is_zero():
        return "0"
    p = f.ring.characteristic
    out = []
    for c, m in f.terms:
        neg = c > p // 2
        mag = p - c if neg else c
        mono = _format_monomial(f.ring, m)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if neg:
            out.append("-" + body)
        else:
            out.append(("+" if out else "") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-])|(\S))")


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    n = len(text)
    while pos < n:
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        col = mt.start(mt.lastindex) + 1
        kind = ("int", "name", "pow", "mul", "sign", "bad")[mt.lastindex - 1]
        yield kind, mt.group(mt.lastindex), col
        pos = mt.end()
    yield "end", "", n + 1


def parse_polynomial(ring: RingSpec, text: str, column_offset: int = 0) -> Polynomial:
    """Parse ``coef*x^e*y^f ± ...``; coefficients are reduced mod p."""
    p = ring.characteristic
    index = {name: i for i, name in enumerate(ring.variables)}
    toks = list(_tokenize(text))
    i = 0
    acc: dict = {}

    def err(msg, col):
        raise PolynomialSyntaxError(msg, col + column_offset)

    if toks[0][0] == "end":
        err("empty polynomial", 1)
    first = True
    while True:
        kind, val, col = toks[i]
        sign = 1
        if kind == "sign":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            err(f"expected '+' or '-', got {val!r}", col)
        first = False
        coef = 1
        exps = [0] * ring.ngens
        expect_factor = True
        while expect_factor:
            kind, val, col = toks[i]
            if kind == "int":
                coef *= int(val)
                i += 1
            elif kind == "name":
                if val not in index:
                    err(f"unknown variable {val!r}", col)
                i += 1
                e = 1
                if toks[i][0] == "pow":
                    i += 1
                    if toks[i][0] != "int":
                        err("expected exponent", toks[i][2])
                    e = int(toks[i][1])
                    i += 1
                exps[index[val]] += e
            else:
                err(f"expected a factor, got {val or 'end of input'!r}", col)
            if toks[i][0] == "mul":
                i += 1
            else:
                expect_factor = False
        m = tuple(exps)
        acc[m] = (acc.get(m, 0) + sign * coef) % p
        if toks[i][0] == "end":
            break
    return ring.poly(acc)


# randomness -------------------------------------------------------------


def random_form(ring: RingSpec, degree: int, rng, nonzero: bool = True) -> Polynomial:
    """Homogeneous polynomial with uniform coefficients in F_p.

    ``rng`` is a ``random.Random``.  With ``nonzero`` (the default) a
    degree-0 draw is a uniform nonzero scalar and higher degrees are redrawn
    until some coefficient is nonzero.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    p = ring.characteristic
    if degree == 0:
        c = rng.randrange(1, p) if nonzero else rng.randrange(p)
        return ring.constant(c)
    monos = ring.monomials_of_degree(degree)
    while True:
        f = ring.poly({m: rng.randrange(p) for m in monos})
        if f or not nonzero:
            return f
