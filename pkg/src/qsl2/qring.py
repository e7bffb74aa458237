"""Exact arithmetic in Z[q^(1/2), q^(-1/2)] plus quantum combinatorics.

Elements are sparse Laurent polynomials in the formal square root of q,
stored as a map from half-exponents to arbitrary-precision integers.  A
half-exponent h stands for q^(h/2), so the subring A = Z[q, q^-1] is
exactly the set of elements with every h even.  Keeping the square root
in one ring lets the Cartan factor q^((1/2) H tensor H) of the R-matrix
act without a field extension; a predicate gates re-entry into A.

The quantum integer [n] = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3)
+ ... + q^(1-n), the factorial [n]! and the binomial are computed here
exactly; the binomial uses the product formula with iterated exact
division, so a failed division is always a bug, never rounding.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import NonDivisibleError

__all__ = [
    "Laurent",
    "ZERO",
    "ONE",
    "Q",
    "QINV",
    "q_power",
    "q_half",
    "quantum_integer",
    "quantum_factorial",
    "quantum_binomial",
    "exact_div",
]


class Laurent:
    """An element of Z[q^(1/2), q^(-1/2)] in canonical (zero-free) form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        data: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for h, c in items:
            if not isinstance(h, int) or not isinstance(c, int):
                raise TypeError("half-exponents and coefficients must be int")
            if c:
                nc = data.get(h, 0) + c
                if nc:
                    data[h] = nc
                elif h in data:
                    del data[h]
        self._terms = data
        self._hash: int | None = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "Laurent":
        return cls({0: n})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, str]]) -> "Laurent":
        """Inverse of to_pairs; coefficients arrive as decimal strings."""
        return cls({int(h): int(c) for h, c in pairs})

    # -- canonical views ------------------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        """Terms as (half_exponent, coefficient), ascending in the exponent."""
        return iter(sorted(self._terms.items()))

    def to_pairs(self) -> list[list]:
        """JSON form: sorted [half_exponent, coefficient-as-decimal-string]."""
        return [[h, str(c)] for h, c in self.items()]

    def coefficient(self, h: int) -> int:
        return self._terms.get(h, 0)

    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_half_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero element has no exponents")
        return min(self._terms)

    def max_half_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero element has no exponents")
        return max(self._terms)

    # -- ring operations ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Laurent | None":
        if isinstance(other, Laurent):
            return other
        if isinstance(other, int):
            return Laurent({0: other})
        return None

    def __add__(self, other) -> "Laurent":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        data = dict(self._terms)
        for h, c in o._terms.items():
            nc = data.get(h, 0) + c
            if nc:
                data[h] = nc
            elif h in data:
                del data[h]
        out = Laurent.__new__(Laurent)
        out._terms = data
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        out = Laurent.__new__(Laurent)
        out._terms = {h: -c for h, c in self._terms.items()}
        out._hash = None
        return out

    def __sub__(self, other) -> "Laurent":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Laurent":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "Laurent":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        data: dict[int, int] = {}
        for h1, c1 in self._terms.items():
            for h2, c2 in o._terms.items():
                h = h1 + h2
                nc = data.get(h, 0) + c1 * c2
                if nc:
                    data[h] = nc
                elif h in data:
                    del data[h]
        out = Laurent.__new__(Laurent)
        out._terms = data
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- the bar map and membership predicates --------------------------------

    def bar(self) -> "Laurent":
        """The involution q^(1/2) -> q^(-1/2): every exponent is negated."""
        out = Laurent.__new__(Laurent)
        out._terms = {-h: c for h, c in self._terms.items()}
        out._hash = None
        return out

    def is_in_a(self) -> bool:
        """Membership in A = Z[q, q^-1]: all half-exponents even."""
        return all(h % 2 == 0 for h in self._terms)

    def is_in_qinv_z_nonneg(self) -> bool:
        """Membership in q^-1 Z_{>=0}[q^-1]: zero, or all exponents strictly
        negative and even with positive coefficients."""
        return all(h < 0 and h % 2 == 0 and c > 0 for h, c in self._terms.items())

    def has_zero_constant_term(self) -> bool:
        return 0 not in self._terms

    def is_bar_antisymmetric(self) -> bool:
        return self.bar() == -self

    def negative_half(self) -> "Laurent":
        """The part supported on strictly negative exponents."""
        out = Laurent.__new__(Laurent)
        out._terms = {h: c for h, c in self._terms.items() if h < 0}
        out._hash = None
        return out

    # -- display --------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for h in sorted(self._terms, reverse=True):
            c = self._terms[h]
            mag = abs(c)
            if h == 0:
                body = str(mag)
            else:
                if h == 2:
                    power = "q"
                elif h % 2 == 0:
                    power = f"q^{h // 2}"
                else:
                    power = f"q^({h}/2)"
                body = power if mag == 1 else f"{mag}{power}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"Laurent[{self}]"


ZERO = Laurent()
ONE = Laurent({0: 1})
Q = Laurent({2: 1})
QINV = Laurent({-2: 1})


def q_power(k: int) -> Laurent:
    """q^k for an integer k."""
    return Laurent({2 * k: 1})


def q_half(h: int) -> Laurent:
    """q^(h/2) for an integer h, odd half-powers included."""
    return Laurent({h: 1})


def quantum_integer(n: int) -> Laurent:
    """[n] = q^(n-1) + q^(n-3) + ... + q^(1-n); [0] = 0."""
    if n < 0:
        raise ValueError(f"quantum integer needs n >= 0, got {n}")
    return Laurent({2 * (n - 1 - 2 * i): 1 for i in range(n)})


def quantum_factorial(n: int) -> Laurent:
    """[n]! = [1][2]...[n]; [0]! = 1."""
    if n < 0:
        raise ValueError(f"quantum factorial needs n >= 0, got {n}")
    out = ONE
    for k in range(2, n + 1):
        out = out * quantum_integer(k)
    return out


def quantum_binomial(n: int, r: int) -> Laurent:
    """The quantum binomial via the product formula, one exact division
    per factor so integrality is checked at every step."""
    if not 0 <= r <= n:
        raise ValueError(f"quantum binomial needs 0 <= r <= n, got n={n}, r={r}")
    out = ONE
    for t in range(1, r + 1):
        out = exact_div(out * quantum_integer(n - r + t), quantum_integer(t))
    return out


def exact_div(a: Laurent, d: Laurent) -> Laurent:
    """The unique c with c * d = a, when it exists in the ring.

    Polynomial long division after shifting both operands to valuation
    zero; any nonzero remainder or non-integer leading quotient raises
    NonDivisibleError, which always signals an upstream bug.
    """
    if d.is_zero():
        raise ZeroDivisionError("exact division by the zero element")
    if a.is_zero():
        return ZERO

    a_lo, a_hi = a.min_half_exponent(), a.max_half_exponent()
    d_lo, d_hi = d.min_half_exponent(), d.max_half_exponent()
    deg_a = a_hi - a_lo
    deg_d = d_hi - d_lo
    if deg_a < deg_d:
        raise NonDivisibleError(f"({a}) is not divisible by ({d})")

    # Dense coefficient lists for x = q^(1/2), lowest degree first.
    num = [0] * (deg_a + 1)
    for h, c in a.items():
        num[h - a_lo] = c
    den = [0] * (deg_d + 1)
    for h, c in d.items():
        den[h - d_lo] = c

    quot = [0] * (deg_a - deg_d + 1)
    lead = den[deg_d]
    for i in range(deg_a - deg_d, -1, -1):
        top = num[i + deg_d]
        if top == 0:
            continue
        if top % lead:
            raise NonDivisibleError(f"({a}) is not divisible by ({d})")
        quot[i] = top // lead
        for j, dc in enumerate(den):
            num[i + j] -= quot[i] * dc
    if any(num):
        raise NonDivisibleError(f"({a}) is not divisible by ({d})")

    shift = a_lo - d_lo
    return Laurent({shift + i: c for i, c in enumerate(quot)})
