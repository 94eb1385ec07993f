"""Exact arithmetic substrate: rational scalars, polynomials, rational functions.

Everything downstream certifies identities by reducing a residual to the
literal zero polynomial, so no floating point is allowed here.  Scalars are
arbitrary-precision rationals (``fractions.Fraction``), which are always kept
in lowest terms with a positive denominator; ``str()`` of a scalar is already
the canonical "num/den" (or "num") serialization.

Polynomial flavours:

* ``UniPoly``          dense univariate polynomials in t, low degree first;
* ``LaurentPoly``      finite Laurent polynomials in t (negative powers are
                       first-class: the t-specialization of a tau function can
                       produce them before any normalization);
* ``TriPoly``          polynomials in the three first times, keyed by
                       exponent triples;
* ``RationalFunction`` quotients of ``UniPoly``, eagerly gcd-reduced with a
                       monic denominator, so equality is decidable by ==.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""


def as_scalar(x) -> Fraction:
    """Coerce ints, strings like "3/4", and Fractions to a Scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------

class UniPoly:
    """Polynomial in t over the rationals, coefficients indexed by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((as_scalar(c),))

    @classmethod
    def t(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("UniPoly exponents are nonnegative; use LaurentPoly")
        return cls((0,) * n + (as_scalar(c),))

    @classmethod
    def from_degree_map(cls, m: Mapping) -> "UniPoly":
        if not m:
            return cls.zero()
        top = max(int(k) for k in m)
        cs = [ZERO] * (top + 1)
        for k, v in m.items():
            cs[int(k)] = as_scalar(v)
        return cls(cs)

    def to_degree_map(self) -> dict[str, str]:
        return {str(i): str(c) for i, c in enumerate(self.coeffs) if c != 0}

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 as the sentinel for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return ZERO

    def leading(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return UniPoly.zero()
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = UniPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x) -> Fraction:
        """Exact evaluation at a rational point (Horner)."""
        x = as_scalar(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        lead = other.leading()
        q = [ZERO] * max(0, len(r) - d)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c == 0:
                continue
            f = c / lead
            q[i - d] = f
            for j, b in enumerate(other.coeffs):
                r[i - d + j] -= f * b
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        return UniPoly(c / lead for c in self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                mag = "t" if i == 1 else f"t^{i}"
                term = mag if c == 1 else (f"-{mag}" if c == -1 else f"{c}*{mag}")
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    while not b.is_zero():
        a, b = b, (a % b)
    return a.monic()


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Finite Laurent polynomial in t: coefficients starting at min_degree."""

    __slots__ = ("min_degree", "coeffs")

    def __init__(self, min_degree: int = 0, coeffs: Iterable = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        while cs and cs[0] == 0:
            cs.pop(0)
            min_degree += 1
        if not cs:
            min_degree = 0
        self.min_degree = min_degree
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls(0, (as_scalar(c),))

    @classmethod
    def monomial(cls, c, n: int) -> "LaurentPoly":
        return cls(n, (as_scalar(c),))

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> "LaurentPoly":
        return cls(0, p.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Top degree; meaningless (min_degree - 1) only for the zero polynomial."""
        return self.min_degree + len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        i = n - self.min_degree
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    def split(self) -> tuple[int, UniPoly]:
        """Write self = t^m * P with P an ordinary polynomial, P(0) != 0."""
        if self.is_zero():
            return 0, UniPoly.zero()
        return self.min_degree, UniPoly(self.coeffs)

    def to_unipoly(self) -> UniPoly:
        if self.is_zero():
            return UniPoly.zero()
        if self.min_degree < 0:
            raise ValueError("Laurent polynomial has negative powers")
        return UniPoly((ZERO,) * self.min_degree + self.coeffs)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, UniPoly):
            return LaurentPoly.from_unipoly(other)
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        lo = min(self.min_degree, o.min_degree)
        hi = max(self.degree, o.degree)
        return LaurentPoly(lo, (self.coeff(n) + o.coeff(n) for n in range(lo, hi + 1)))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.min_degree, (-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return LaurentPoly.zero()
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return LaurentPoly(self.min_degree + o.min_degree, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power; use exact_divide")
        out = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> "LaurentPoly":
        if self.is_zero():
            return self
        return LaurentPoly(
            self.min_degree - 1,
            ((self.min_degree + i) * c for i, c in enumerate(self.coeffs)),
        )

    def exact_divide(self, other: "LaurentPoly") -> "LaurentPoly":
        """Return q with self = q * other, or raise NotDivisible."""
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero():
            return LaurentPoly.zero()
        ma, num = self.split()
        mb, den = o.split()
        q, r = divmod(num, den)
        if not r.is_zero():
            raise NotDivisible(f"({self}) is not a multiple of ({o})")
        return LaurentPoly(ma - mb, q.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.min_degree == o.min_degree and self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("LaurentPoly", self.min_degree, self.coeffs))

    def __repr__(self):
        return f"LaurentPoly({self.min_degree}, {list(self.coeffs)!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for n in range(self.degree, self.min_degree - 1, -1):
            c = self.coeff(n)
            if c == 0:
                continue
            if n == 0:
                term = str(c)
            else:
                mag = "t" if n == 1 else f"t^{n}"
                term = mag if c == 1 else (f"-{mag}" if c == -1 else f"{c}*{mag}")
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def to_json(self) -> dict:
        return {"min_degree": self.min_degree, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, d: Mapping) -> "LaurentPoly":
        return cls(int(d["min_degree"]), [as_scalar(c) for c in d["coeffs"]])


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Quotient of polynomials in t, gcd-reduced, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None):
        if den is None:
            den = UniPoly.constant(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = UniPoly.zero()
            self.den = UniPoly.constant(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lead = den.leading()
        if lead != 1:
            num = num * (1 / lead)
            den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(UniPoly.zero())

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls(UniPoly.constant(c))

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalFunction":
        m, poly = p.split()
        if m >= 0:
            return cls(poly * UniPoly.monomial(1, m))
        return cls(poly, UniPoly.monomial(1, -m))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, UniPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # canonical forms make equality structural
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(("RationalFunction", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == UniPoly.constant(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_degree_map(), "den": self.den.to_degree_map()}


# ---------------------------------------------------------------------------
# polynomials in the three first times
# ---------------------------------------------------------------------------

class TriPoly:
    """Polynomial in three variables, stored as exponent-triple -> scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        out: dict[tuple[int, int, int], Fraction] = {}
        if terms:
            for key, val in terms.items():
                k = tuple(int(e) for e in key)
                if len(k) != 3 or any(e < 0 for e in k):
                    raise ValueError(f"bad exponent triple {key!r}")
                v = as_scalar(val)
                if v != 0:
                    out[k] = out.get(k, ZERO) + v
                    if out[k] == 0:
                        del out[k]
        self.terms = out

    @classmethod
    def zero(cls) -> "TriPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "TriPoly":
        return cls({(0, 0, 0): as_scalar(c)})

    @classmethod
    def monomial(cls, c, exps: tuple[int, int, int]) -> "TriPoly":
        return cls({tuple(exps): as_scalar(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, TriPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return TriPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            s = out.get(k, ZERO) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        res = TriPoly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = TriPoly()
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple[int, int, int], Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                s = out.get(k, ZERO) + v1 * v2
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        res = TriPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def partial(self, axis: int) -> "TriPoly":
        """Formal partial derivative along axis 0, 1 or 2."""
        out: dict[tuple[int, int, int], Fraction] = {}
        for k, v in self.terms.items():
            e = k[axis]
            if e == 0:
                continue
            nk = list(k)
            nk[axis] = e - 1
            out[tuple(nk)] = v * e
        res = TriPoly()
        res.terms = out
        return res

    def homogeneous_degree(self) -> int | None:
        """Total degree when homogeneous, None otherwise (zero counts as any)."""
        degs = {sum(k) for k in self.terms}
        if not degs:
            return None
        if len(degs) == 1:
            return degs.pop()
        return -2  # sentinel: inhomogeneous

    def permute_vars(self, perm: tuple[int, int, int]) -> "TriPoly":
        """Relabel variables: new exponent of axis a is the old one of perm[a]."""
        res = TriPoly()
        res.terms = {
            (k[perm[0]], k[perm[1]], k[perm[2]]): v for k, v in self.terms.items()
        }
        return res

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(("TriPoly", tuple(sorted(self.terms.items()))))

    def __repr__(self):
        items = ", ".join(f"{k}: {str(v)!r}" for k, v in sorted(self.terms.items()))
        return f"TriPoly({{{items}}})"


# ---------------------------------------------------------------------------
# free-function surface (mirrors the operation names used by callers)
# ---------------------------------------------------------------------------

def derivative(p):
    """Formal d/dt for UniPoly, LaurentPoly and RationalFunction alike."""
    return p.derivative()


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact Laurent quotient a/b; NotDivisible when the remainder is nonzero."""
    return a.exact_divide(b)
