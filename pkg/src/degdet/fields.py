"""Exact scalars and univariate objects in the indeterminate ``t``.

Field elements are plain Python values: ``int`` in ``range(p)`` for GF(p) and
``fractions.Fraction`` for the rationals.  Matrices over a field are numpy
arrays (``int64`` for small primes, ``object`` otherwise), and every field
object knows how to reduce such arrays back to canonical form.  This keeps
the elimination kernels in ``linalg`` generic over GF(p), Q and K(t).
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .errors import FieldMismatch, NotProper, ParseError


class MinusInfinity:
    """Degree of the zero element.  Smaller than every integer."""

    _instance: "MinusInfinity | None" = None

    def __new__(cls) -> "MinusInfinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "MINUS_INF"

    def __str__(self) -> str:
        return "-inf"

    def __lt__(self, other) -> bool:
        return other is not self

    def __le__(self, other) -> bool:
        return True

    def __gt__(self, other) -> bool:
        return False

    def __ge__(self, other) -> bool:
        return other is self

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("MINUS_INF")

    def __add__(self, other):
        if isinstance(other, (int, MinusInfinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    def __reduce__(self):
        return (MinusInfinity, ())


MINUS_INF = MinusInfinity()
Degree = "int | MinusInfinity"


def is_finite(d) -> bool:
    return d is not MINUS_INF


# ---------------------------------------------------------------- fields


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


_COEFF_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


class Field:
    """Common interface of GF(p), Q and K(t)."""

    order: int | None = None
    dtype: object = object

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_zero(self, x) -> bool:
        return x == 0

    def inv(self, x):
        raise NotImplementedError

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def nonzero(self, arr: np.ndarray) -> np.ndarray:
        return np.asarray(arr != 0, dtype=bool)

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.zero)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def array(self, data) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype == np.dtype(self.dtype) and self.dtype is not object:
            return self.reduce(data.copy())
        raw = np.array(data, dtype=object)
        out = np.empty(raw.shape, dtype=object)
        for idx, v in np.ndenumerate(raw):
            out[idx] = self(v)
        if self.dtype is object:
            return out
        return out.astype(self.dtype)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.dtype is object:
            return _object_matmul(self, a, b)
        return self.reduce(a @ b)

    def random(self, rng: np.random.Generator, size=None):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        m = _COEFF_RE.match(text.strip())
        if not m:
            raise ParseError(f"bad coefficient {text!r}")
        sign, num, den = m.groups()
        value = Fraction(int(num), int(den) if den else 1)
        if den and int(den) == 0:
            raise ParseError("zero denominator")
        return self(-value if sign == "-" else value)


def _object_matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, k = a.shape
    k2, m = b.shape
    if k != k2:
        raise ValueError("shape mismatch in matmul")
    out = field.zeros((n, m))
    for i in range(n):
        for j in range(m):
            acc = field.zero
            for l in range(k):
                x = a[i, l]
                if not field.is_zero(x):
                    y = b[l, j]
                    if not field.is_zero(y):
                        acc = acc + x * y
            out[i, j] = acc
    return out


class GF(Field):
    """The prime field with ``p`` elements."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.order = p
        # int64 products stay exact while n * p**2 fits comfortably
        self.dtype = np.int64 if p < (1 << 26) else object

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __call__(self, x):
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        return int(x) % self.p

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def random(self, rng: np.random.Generator, size=None):
        if size is None:
            return int(rng.integers(0, self.p))
        vals = rng.integers(0, self.p, size=size)
        return vals.astype(self.dtype) if self.dtype is not object else vals.astype(object)

    def random_nonzero(self, rng: np.random.Generator) -> int:
        return int(rng.integers(1, self.p))

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def format(self, x) -> str:
        return str(int(x))

    def signed(self, x) -> int:
        """Representative in ``(-p/2, p/2]``; handy for display."""
        x = int(x) % self.p
        return x - self.p if x > self.p // 2 else x


class Rationals(Field):
    """The field Q, elements stored as ``Fraction``."""

    order = None
    dtype = object

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("QQ")

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (np.integer,)):
            x = int(x)
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def random(self, rng: np.random.Generator, size=None):
        if size is None:
            return Fraction(int(rng.integers(-9, 10)))
        vals = rng.integers(-9, 10, size=size)
        out = np.empty(vals.shape, dtype=object)
        for idx, v in np.ndenumerate(vals):
            out[idx] = Fraction(int(v))
        return out

    def random_nonzero(self, rng: np.random.Generator) -> Fraction:
        v = 0
        while v == 0:
            v = int(rng.integers(-9, 10))
        return Fraction(v)

    def elements(self):
        raise TypeError("Q is infinite")

    def format(self, x) -> str:
        return str(Fraction(x))


QQ = Rationals()


def field_from_spec(spec: dict) -> Field:
    kind = spec.get("kind")
    if kind == "gfp":
        return GF(int(spec["p"]))
    if kind == "rational":
        return QQ
    raise ParseError(f"unknown field kind {kind!r}")


def field_to_spec(field: Field) -> dict:
    if isinstance(field, GF):
        return {"kind": "gfp", "p": field.p}
    if isinstance(field, Rationals):
        return {"kind": "rational"}
    raise TypeError(f"cannot serialise {field!r}")


def _check_same(a: Field, b: Field) -> None:
    if a != b:
        raise FieldMismatch(f"{a!r} vs {b!r}")


# ------------------------------------------------------------ polynomials


def _binop(fn):
    """Let numpy broadcast when the other operand is an array."""

    def wrapper(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        return fn(self, other)

    wrapper.__name__ = fn.__name__
    return wrapper


class Polynomial:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``t**k``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, field: Field, k: int, c=1) -> "Polynomial":
        return cls(field, [0] * k + [c])

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            _check_same(self.field, other.field)
            return other
        return Polynomial(self.field, [other])

    @_binop
    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(self.field, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, [-c for c in self.coeffs])

    @_binop
    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    @_binop
    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    @_binop
    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if self.field.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.field, [c * a for a in self.coeffs])

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(f), self
        quo = [f.zero] * (dq + 1)
        inv_lc = f.inv(other.lc)
        m = len(other.coeffs)
        for k in range(dq, -1, -1):
            c = f(rem[k + m - 1] * inv_lc)
            quo[k] = c
            if not f.is_zero(c):
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = f(rem[k + j] - c * b)
        return Polynomial(f, quo), Polynomial(f, rem[: m - 1])

    def __floordiv__(self, other) -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other) -> "Polynomial":
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial(self.field, [other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("poly", self.coeffs))

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = self.field(acc * x + c)
        return acc

    def __repr__(self) -> str:
        return f"Polynomial({format_terms(self.field, 0, self.coeffs)})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# -------------------------------------------------------- Laurent objects


def format_terms(field: Field, lo: int, coeffs) -> str:
    """Render ``sum coeffs[k] t**(lo+k)`` in the textual Laurent grammar."""
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if field.is_zero(c):
            continue
        e = lo + k
        v = field.signed(c) if isinstance(field, GF) else Fraction(c)
        neg = v < 0
        mag = -v if neg else v
        if e == 0:
            body = str(mag)
        else:
            mono = "t" if e == 1 else f"t^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


_TERM_RE = re.compile(
    r"^(?:(?P<c>\d+(?:/\d+)?)(?:\*t(?:\^(?P<e1>-?\d+))?)?|t(?:\^(?P<e2>-?\d+))?)$"
)


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split on top-level signs, keeping the sign of ``t^-k`` exponents."""
    pieces: list[tuple[int, str]] = []
    start = 0
    for i, ch in enumerate(text):
        if ch in "+-" and i > start and text[i - 1] != "^":
            pieces.append((start, text[start:i]))
            start = i
    pieces.append((start, text[start:]))
    return pieces


def parse_laurent(text: str, field: Field) -> "LaurentPoly":
    """Parse strings like ``3*t^2 - 1 + 2*t^-1``; whitespace is ignored."""
    compact = "".join(text.split())
    if not compact:
        raise ParseError("empty Laurent expression", 0)
    terms: dict[int, object] = {}
    for pos, piece in _split_terms(compact):
        sign = 1
        body = piece
        if body[:1] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        m = _TERM_RE.match(body)
        if not body or not m:
            raise ParseError(f"malformed term {piece!r}", pos)
        if m.group("c") is not None:
            coeff = field.parse(m.group("c"))
            if "*t" in body:
                e = int(m.group("e1")) if m.group("e1") is not None else 1
            else:
                e = 0
        else:
            coeff = field.one
            e = int(m.group("e2")) if m.group("e2") is not None else 1
        if sign < 0:
            coeff = field(-coeff)
        terms[e] = field(terms.get(e, field.zero) + coeff)
    return LaurentPoly.from_dict(field, terms)


class LaurentPoly:
    """Finite Laurent polynomial ``sum coeffs[k] t**(lo+k)``."""

    __slots__ = ("field", "lo", "coeffs")

    def __init__(self, field: Field, lo: int, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        k = 0
        while k < len(cs) and field.is_zero(cs[k]):
            k += 1
        self.field = field
        if k == len(cs):
            self.lo, self.coeffs = 0, ()
        else:
            self.lo, self.coeffs = lo + k, tuple(cs[k:])

    @classmethod
    def from_dict(cls, field: Field, terms: dict) -> "LaurentPoly":
        live = {e: c for e, c in terms.items() if not field.is_zero(field(c))}
        if not live:
            return cls(field, 0)
        lo, hi = min(live), max(live)
        return cls(field, lo, [live.get(e, 0) for e in range(lo, hi + 1)])

    @classmethod
    def monomial(cls, field: Field, e: int, c=1) -> "LaurentPoly":
        return cls(field, e, [c])

    @classmethod
    def parse(cls, text: str, field: Field) -> "LaurentPoly":
        return parse_laurent(text, field)

    @property
    def deg(self):
        return self.lo + len(self.coeffs) - 1 if self.coeffs else MINUS_INF

    @property
    def low(self):
        return self.lo if self.coeffs else MINUS_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, e: int):
        k = e - self.lo
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            _check_same(self.field, other.field)
            return other
        return LaurentPoly(self.field, 0, [other])

    @_binop
    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.deg, other.deg)
        f = self.field
        return LaurentPoly(f, lo, [f(self.coefficient(e) + other.coefficient(e)) for e in range(lo, hi + 1)])

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.field, self.lo, [self.field(-c) for c in self.coeffs])

    @_binop
    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    @_binop
    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    @_binop
    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly(self.field, 0)
        f = self.field
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = f(out[i + j] + a * b)
        return LaurentPoly(f, self.lo + other.lo, out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.field, self.lo + k, self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.field == other.field and self.lo == other.lo and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly(self.field, 0, [other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("laurent", self.lo, self.coeffs))

    def __str__(self) -> str:
        return format_terms(self.field, self.lo, self.coeffs)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_rational(self) -> "RationalFunction":
        f = self.field
        if self.is_zero():
            return RationalFunction(Polynomial(f), Polynomial(f, [1]))
        if self.lo >= 0:
            return RationalFunction(Polynomial(f, [0] * self.lo + list(self.coeffs)), Polynomial(f, [1]))
        return RationalFunction(Polynomial(f, self.coeffs), Polynomial.monomial(f, -self.lo))


def laurent_arith(a: LaurentPoly, b, op: str) -> LaurentPoly:
    """``op`` is ``"add"``, ``"sub"``, ``"mul"`` or ``"shift"`` (``b`` an int)."""
    if op == "shift":
        return a.shift(int(b))
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------- rational functions


class RationalFunction:
    """Element of K(t) in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, reduced: bool = False):
        f = num.field
        if den is None:
            den = Polynomial(f, [1])
        _check_same(f, den.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Polynomial(f), Polynomial(f, [1])
        elif not reduced:
            g = poly_gcd(num, den)
            if g.deg != 0:
                num, den = num // g, den // g
            c = f.inv(den.lc)
            num, den = num.scale(c), den.scale(c)
        self.num = num
        self.den = den

    @property
    def field(self) -> Field:
        return self.num.field

    @classmethod
    def constant(cls, field: Field, c) -> "RationalFunction":
        return cls(Polynomial(field, [c]), Polynomial(field, [1]), reduced=True)

    @classmethod
    def monomial(cls, field: Field, e: int, c=1) -> "RationalFunction":
        return LaurentPoly.monomial(field, e, c).to_rational()

    @classmethod
    def parse(cls, text: str, field: Field) -> "RationalFunction":
        return parse_rational(text, field)

    @property
    def deg(self):
        if self.num.is_zero():
            return MINUS_INF
        return self.num.deg - self.den.deg

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_proper(self) -> bool:
        return self.deg <= 0

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            _check_same(self.field, other.field)
            return other
        if isinstance(other, LaurentPoly):
            return other.to_rational()
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction.constant(self.field, other)

    @_binop
    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, reduced=True)

    @_binop
    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._coerce(other))

    @_binop
    def __rsub__(self, other) -> "RationalFunction":
        return self._coerce(other) - self

    @_binop
    def __mul__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalFunction(Polynomial(self.field))
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    @_binop
    def __truediv__(self, other) -> "RationalFunction":
        return self * self._coerce(other).inverse()

    @_binop
    def __rtruediv__(self, other) -> "RationalFunction":
        return self._coerce(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, LaurentPoly, Polynomial)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("ratfun", self.num.coeffs, self.den.coeffs))

    def __str__(self) -> str:
        num = format_terms(self.field, 0, self.num.coeffs)
        if self.den.deg == 0:
            return num
        return f"({num})/({format_terms(self.field, 0, self.den.coeffs)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def times_t(self, e: int) -> "RationalFunction":
        if e >= 0:
            return RationalFunction(self.num * Polynomial.monomial(self.field, e), self.den)
        return RationalFunction(self.num, self.den * Polynomial.monomial(self.field, -e))


def parse_rational(text: str, field: Field) -> RationalFunction:
    """Accepts a Laurent expression or ``(num)/(den)`` with Laurent parts."""
    s = "".join(text.split())
    depth = 0
    split_at = None
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parenthesis", i)
        elif ch == "/" and depth == 0 and i > 0 and s[i - 1] == ")":
            split_at = i
    if depth != 0:
        raise ParseError("unbalanced parenthesis", len(s))
    if split_at is None:
        body = s[1:-1] if s.startswith("(") and s.endswith(")") else s
        return parse_laurent(body, field).to_rational()
    num_txt, den_txt = s[:split_at], s[split_at + 1:]
    if not (den_txt.startswith("(") and den_txt.endswith(")")):
        raise ParseError("denominator must be parenthesised", split_at + 1)
    num = parse_laurent(num_txt[1:-1], field).to_rational()
    den = parse_laurent(den_txt[1:-1], field).to_rational()
    if den.is_zero():
        raise ParseError("zero denominator", split_at + 1)
    return num / den


def deg(x):
    """Degree of a polynomial, Laurent polynomial or rational function."""
    if isinstance(x, (Polynomial, LaurentPoly, RationalFunction)):
        return x.deg
    raise TypeError(f"no degree for {type(x).__name__}")


def proper_leading(r: RationalFunction):
    """Coefficient of ``t**0`` in the expansion at infinity of a proper ``r``."""
    d = r.deg
    if d is MINUS_INF or d < 0:
        return r.field.zero
    if d > 0:
        raise NotProper(f"degree {d} > 0")
    return r.field(r.num.lc * r.field.inv(r.den.lc))


class RationalFunctionField(Field):
    """K(t) presented through the same array interface as K."""

    dtype = object
    order = None

    def __init__(self, base: Field):
        self.base = base

    def __repr__(self) -> str:
        return f"{self.base!r}(t)"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalFunctionField) and other.base == self.base

    def __hash__(self) -> int:
        return hash(("ratfield", self.base))

    def __call__(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            _check_same(x.field, self.base)
            return x
        if isinstance(x, LaurentPoly):
            return x.to_rational()
        if isinstance(x, Polynomial):
            return RationalFunction(x)
        if isinstance(x, str):
            return parse_rational(x, self.base)
        return RationalFunction.constant(self.base, x)

    def is_zero(self, x) -> bool:
        return x.is_zero() if isinstance(x, RationalFunction) else x == 0

    def nonzero(self, arr: np.ndarray) -> np.ndarray:
        out = np.zeros(arr.shape, dtype=bool)
        for idx, x in np.ndenumerate(arr):
            out[idx] = not self.is_zero(x)
        return out

    def inv(self, x) -> RationalFunction:
        return self(x).inverse()

    def random(self, rng: np.random.Generator, size=None):
        raise NotImplementedError("use random_rational in tests")
