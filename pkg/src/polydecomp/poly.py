"""Dense univariate polynomials over pluggable exact coefficient domains.

A polynomial stores its coefficients low-to-high: ``coeffs[i]`` is the
coefficient of ``var**i``.  The coefficient domain is any object exposing
``zero``, ``one``, ``coerce`` and whose elements support ``+ - *`` and ``==``
exactly (no floating point is involved anywhere).
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence


class DomainMismatchError(TypeError):
    """Operands live over different coefficient domains (or variables)."""


class _MinusInfinity:
    """Degree of the zero polynomial: strictly below every integer."""

    __slots__ = ()
    _instance = None

    def __new__(cls) -> "_MinusInfinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other: object) -> bool:
        return other is not self

    def __le__(self, other: object) -> bool:
        return True

    def __gt__(self, other: object) -> bool:
        return False

    def __ge__(self, other: object) -> bool:
        return other is self

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("polydecomp.MINUS_INFINITY")

    def __repr__(self) -> str:
        return "MINUS_INFINITY"


#: Degree of the zero polynomial.
MINUS_INFINITY = _MinusInfinity()


class Polynomial:
    """Immutable dense univariate polynomial over an exact domain.

    The stored coefficient list is normalized: the last entry is nonzero,
    and the zero polynomial stores no coefficients at all.
    """

    __slots__ = ("domain", "coeffs", "var")

    def __init__(self, domain: Any, coeffs: Iterable[Any] = (), var: str = "x"):
        cs = [domain.coerce(c) for c in coeffs]
        while cs and cs[-1] == domain.zero:
            cs.pop()
        self.domain = domain
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, domain: Any, var: str = "x") -> "Polynomial":
        return cls(domain, (), var)

    @classmethod
    def constant(cls, domain: Any, c: Any, var: str = "x") -> "Polynomial":
        return cls(domain, (c,), var)

    @classmethod
    def monomial(cls, domain: Any, c: Any, k: int, var: str = "x") -> "Polynomial":
        """c * var**k"""
        if k < 0:
            raise ValueError("monomial exponent must be nonnegative")
        return cls(domain, [domain.zero] * k + [c], var)

    @classmethod
    def identity(cls, domain: Any, var: str = "x") -> "Polynomial":
        """The polynomial ``var``."""
        return cls(domain, (domain.zero, domain.one), var)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        """Degree, or :data:`MINUS_INFINITY` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.domain.one

    @property
    def leading_coefficient(self) -> Any:
        if not self.coeffs:
            return self.domain.zero
        return self.coeffs[-1]

    @property
    def constant_term(self) -> Any:
        if not self.coeffs:
            return self.domain.zero
        return self.coeffs[0]

    def coefficient(self, k: int) -> Any:
        """Coefficient of ``var**k`` (zero when k exceeds the degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.domain.zero

    def map_coefficients(self, func, domain: Any = None, var: str | None = None) -> "Polynomial":
        """Apply ``func`` to every coefficient, optionally changing domain."""
        target = domain if domain is not None else self.domain
        return Polynomial(target, [func(c) for c in self.coeffs],
                          var if var is not None else self.var)

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.domain != other.domain or self.var != other.var:
            raise DomainMismatchError(
                f"polynomials over {self.domain!r} in {self.var!r} and "
                f"{other.domain!r} in {other.var!r} cannot be combined")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Any) -> "Polynomial":
        if not isinstance(other, Polynomial) or _is_element_of(other, self.domain):
            other = Polynomial.constant(self.domain, self.domain.coerce(other), self.var)
        self._check_compatible(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.domain.zero
        return Polynomial(self.domain,
                          [self.coefficient(i) + other.coefficient(i) for i in range(n)],
                          self.var)

    def __radd__(self, other: Any) -> "Polynomial":
        return self + other

    def __sub__(self, other: Any) -> "Polynomial":
        return self + (-other if isinstance(other, Polynomial) else -self.domain.coerce(other))

    def __rsub__(self, other: Any) -> "Polynomial":
        return (-self) + other

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.domain, [-c for c in self.coeffs], self.var)

    def __mul__(self, other: Any) -> "Polynomial":
        if not isinstance(other, Polynomial) or _is_element_of(other, self.domain):
            return self.scale(self.domain.coerce(other))
        self._check_compatible(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(self.domain, self.var)
        z = self.domain.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == z:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.domain, out, self.var)

    def __rmul__(self, other: Any) -> "Polynomial":
        return self * other

    def scale(self, c: Any) -> "Polynomial":
        c = self.domain.coerce(c)
        return Polynomial(self.domain, [a * c for a in self.coeffs], self.var)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(self.domain, self.domain.one, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "Polynomial":
        """Multiply by var**k."""
        if not self.coeffs:
            return self
        return Polynomial(self.domain, (self.domain.zero,) * k + self.coeffs, self.var)

    # -- evaluation / composition -----------------------------------------

    def evaluate(self, x0: Any) -> Any:
        """Horner evaluation at an element of the coefficient domain."""
        x0 = self.domain.coerce(x0)
        acc = self.domain.zero
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def __call__(self, x0: Any) -> Any:
        return self.evaluate(x0)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            if other == 0 or _is_element_of(other, self.domain):
                try:
                    other = Polynomial.constant(self.domain, self.domain.coerce(other), self.var)
                except (TypeError, ValueError):
                    return NotImplemented
            else:
                return NotImplemented
        return (self.domain == other.domain and self.var == other.var
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.domain, self.var, self.coeffs))

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == self.domain.zero:
                continue
            pieces.append(_format_term(self.domain, c, i, self.var))
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-") and "(" not in piece.split("*")[0]:
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.domain!r}, {list(self.coeffs)!r}, var={self.var!r})"


def _is_element_of(value: Any, domain: Any) -> bool:
    checker = getattr(domain, "is_element", None)
    return bool(checker and checker(value))


def _format_term(domain: Any, c: Any, i: int, var: str) -> str:
    cstr = domain.format_element(c) if hasattr(domain, "format_element") else str(c)
    # parenthesize coefficients with interior + or - so the output reparses
    needs_parens = any(s in cstr[1:] for s in "+-")
    if i == 0:
        return f"({cstr})" if needs_parens else cstr
    xpow = var if i == 1 else f"{var}^{i}"
    if cstr == "1":
        return xpow
    if cstr == "-1":
        return "-" + xpow
    if needs_parens:
        return f"({cstr})*{xpow}"
    return f"{cstr}*{xpow}"


# -- free functions for the core operations --------------------------------

def compose(g: Polynomial, h: Polynomial) -> Polynomial:
    """g(h(x)), computed by Horner over the shared coefficient domain."""
    g._check_compatible(h)
    acc = Polynomial.zero(g.domain, g.var)
    for c in reversed(g.coeffs):
        acc = acc * h + c
    return acc


def derivative(p: Polynomial) -> Polynomial:
    """Formal derivative."""
    return Polynomial(p.domain,
                      [p.coeffs[i] * i for i in range(1, len(p.coeffs))],
                      p.var)


def divrem_monic(f: Polynomial, h: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Quotient and remainder of ``f`` by a monic nonconstant ``h``.

    Exact over any ring because the division only ever divides by the
    leading coefficient 1 of ``h``.
    """
    f._check_compatible(h)
    m = h.degree
    if m is MINUS_INFINITY or m < 1 or not h.is_monic():
        raise ValueError("divisor must be monic of degree >= 1")
    z = f.domain.zero
    rem = list(f.coeffs)
    if len(rem) <= m:
        return Polynomial.zero(f.domain, f.var), f
    q = [z] * (len(rem) - m)
    for k in range(len(rem) - 1, m - 1, -1):
        c = rem[k]
        if c == z:
            continue
        q[k - m] = c
        for j in range(m + 1):
            rem[k - m + j] = rem[k - m + j] - c * h.coeffs[j]
    return (Polynomial(f.domain, q, f.var),
            Polynomial(f.domain, rem[:m], f.var))


def hadic_digits(f: Polynomial, h: Polynomial) -> list[Polynomial]:
    """Digits a_0..a_k of the unique expansion f = sum a_i * h**i.

    Every digit has degree < deg h.  Recomposing the digits reproduces
    ``f`` exactly; ``f`` factors through ``h`` iff all digits are constant.
    """
    digits = []
    current = f
    while not current.is_zero():
        current, r = divrem_monic(current, h)
        digits.append(r)
    return digits
