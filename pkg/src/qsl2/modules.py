"""Tensor modules over the integral quantum sl2 and their standard bases.

Lambda_d for a single part d has basis v_0, ..., v_d with

    K v_r = q^(d-2r) v_r,   E v_r = [d-r+1] v_(r-1),   F v_r = [r+1] v_(r+1)

and v_(-1) = v_(d+1) = 0.  For a composition d = (d_1, ..., d_l) the
module Lambda_d is the tensor product of the Lambda_(d_k); the standard
basis v_r is indexed by orbit indices r = (r_1, ..., r_l).  E and F act
through the comultiplication: E picks up a K on every factor to the left
of the slot it lowers, F picks up a K^-1 on every factor to the right.
Divided powers iterate the action and then divide every coefficient by
the quantum factorial; a failed division is an integrality bug and is
surfaced as such rather than repaired.

The twisted adjoint rho (rho(K) = K, rho(E) = qKF, rho(F) = qK^-1 E)
makes the inner product contravariant: (x u, w) = (u, rho(x) w).  On
standard basis vectors the inner product is the product over factors of
binom(d_k, r_k)_q * q^(-r_k (d_k - r_k)), extended bilinearly with no
bar twist.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from . import orbits
from .errors import AmbientMismatchError, IntegralityViolationError, NonDivisibleError
from .qring import Laurent, ONE, ZERO, exact_div, q_power, quantum_binomial, quantum_factorial, quantum_integer

__all__ = [
    "ModuleVector",
    "LinMap",
    "enumerate_basis",
    "tensor",
    "act_K",
    "act_E",
    "act_F",
    "act_divided",
    "inner_product",
    "gram_entry",
    "rho_twist",
    "operator_linmap",
    "format_index",
]

Composition = orbits.Composition
OrbitIndex = orbits.OrbitIndex


def format_index(idx: OrbitIndex) -> str:
    return "(" + ",".join(map(str, idx)) + ")"


def _accumulate(data: dict[OrbitIndex, Laurent], idx: OrbitIndex, c: Laurent) -> None:
    prev = data.get(idx)
    total = c if prev is None else prev + c
    if total.is_zero():
        data.pop(idx, None)
    else:
        data[idx] = total


class ModuleVector:
    """A finite linear combination of standard basis vectors of Lambda_d.

    Canonical form stores no zero coefficients.  Vectors are immutable;
    all operations return fresh instances.
    """

    __slots__ = ("d", "_terms")

    def __init__(
        self,
        d: Composition,
        terms: Mapping[OrbitIndex, Laurent] | Iterable[tuple[OrbitIndex, Laurent]] = (),
    ):
        self.d = orbits.check_composition(d)
        data: dict[OrbitIndex, Laurent] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for idx, c in items:
            idx = orbits.check_index(self.d, idx)
            if not isinstance(c, Laurent):
                raise TypeError(f"coefficient of {idx} is not a ring element")
            if not c.is_zero():
                _accumulate(data, idx, c)
        self._terms = data

    @classmethod
    def _make(cls, d: Composition, data: dict[OrbitIndex, Laurent]) -> "ModuleVector":
        out = cls.__new__(cls)
        out.d = d
        out._terms = data
        return out

    @classmethod
    def zero(cls, d: Composition) -> "ModuleVector":
        return cls._make(orbits.check_composition(d), {})

    @classmethod
    def basis(cls, d: Composition, idx: OrbitIndex) -> "ModuleVector":
        d = orbits.check_composition(d)
        idx = orbits.check_index(d, idx)
        return cls._make(d, {idx: ONE})

    # -- views ----------------------------------------------------------------

    def _order_key(self, idx: OrbitIndex):
        return (sum(idx), orbits.orbit_dim(self.d, idx), idx)

    def items(self) -> list[tuple[OrbitIndex, Laurent]]:
        """Terms in canonical order: level, then the linear extension."""
        return sorted(self._terms.items(), key=lambda kv: self._order_key(kv[0]))

    def coeff(self, idx: OrbitIndex) -> Laurent:
        return self._terms.get(tuple(idx), ZERO)

    def support(self) -> set[OrbitIndex]:
        return set(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def levels(self) -> set[int]:
        return {sum(idx) for idx in self._terms}

    def level(self) -> int | None:
        """The common weight level, or None if mixed or zero."""
        seen = self.levels()
        return seen.pop() if len(seen) == 1 else None

    # -- linear structure -------------------------------------------------------

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if not isinstance(other, ModuleVector):
            return NotImplemented
        if other.d != self.d:
            raise AmbientMismatchError(f"cannot add vectors over {self.d} and {other.d}")
        data = dict(self._terms)
        for idx, c in other._terms.items():
            _accumulate(data, idx, c)
        return ModuleVector._make(self.d, data)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector._make(self.d, {idx: -c for idx, c in self._terms.items()})

    def scale(self, c: Laurent | int) -> "ModuleVector":
        if isinstance(c, int):
            c = Laurent.from_int(c)
        if c.is_zero():
            return ModuleVector.zero(self.d)
        return ModuleVector._make(self.d, {idx: x * c for idx, x in self._terms.items()})

    def map_coefficients(self, f: Callable[[Laurent], Laurent]) -> "ModuleVector":
        data: dict[OrbitIndex, Laurent] = {}
        for idx, c in self._terms.items():
            fc = f(c)
            if not fc.is_zero():
                data[idx] = fc
        return ModuleVector._make(self.d, data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    def __hash__(self):
        return hash((self.d, frozenset(self._terms.items())))

    # -- serialization -----------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "d": list(self.d),
            "terms": [{"r": list(idx), "coeff": c.to_pairs()} for idx, c in self.items()],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ModuleVector":
        d = tuple(obj["d"])
        terms = [(tuple(t["r"]), Laurent.from_pairs(t["coeff"])) for t in obj["terms"]]
        return cls(d, terms)

    # -- display -----------------------------------------------------------------

    def _render(self, symbol: str) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for idx, c in reversed(self.items()):
            pairs = list(c.items())
            if len(pairs) == 1:
                h, n = pairs[0]
                negative = n < 0
                mono = Laurent({h: abs(n)})
                body = "" if mono == ONE else f"{mono} "
            else:
                negative = False
                body = f"({c}) "
            term = f"{body}{symbol}{format_index(idx)}"
            if not chunks:
                chunks.append(f"-{term}" if negative else term)
            else:
                chunks.append(f"- {term}" if negative else f"+ {term}")
        return " ".join(chunks)

    def __str__(self) -> str:
        return self._render("v")

    def __repr__(self) -> str:
        return f"ModuleVector[{self}]"


def enumerate_basis(d: Composition, r: int) -> list[OrbitIndex]:
    """Standard basis indices of weight level r in the fixed linear order;
    empty outside 0 <= r <= total."""
    return orbits.linear_extension(d, r)


def tensor(u: ModuleVector, w: ModuleVector) -> ModuleVector:
    """The product vector in Lambda_(d_u + d_w), indices concatenated."""
    d = u.d + w.d
    data: dict[OrbitIndex, Laurent] = {}
    for iu, cu in u._terms.items():
        for iw, cw in w._terms.items():
            _accumulate(data, iu + iw, cu * cw)
    return ModuleVector._make(d, data)


# -- the integral quantum sl2 action ------------------------------------------


def act_K(u: ModuleVector, sign: int = 1) -> ModuleVector:
    """K (sign +1) or K^-1 (sign -1): v_r gets q^(+-(d - 2r))."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    total = sum(u.d)
    data = {
        idx: c * q_power(sign * (total - 2 * sum(idx)))
        for idx, c in u._terms.items()
    }
    return ModuleVector._make(u.d, data)


def _act_e_range(u: ModuleVector, lo: int, hi: int) -> ModuleVector:
    """E through the comultiplication, restricted to slots lo..hi-1.
    The slot being lowered contributes [d_k - r_k + 1]; slots before it
    inside the range contribute their K-weight."""
    d = u.d
    data: dict[OrbitIndex, Laurent] = {}
    for idx, c in u._terms.items():
        kweight = 0
        for k in range(lo, hi):
            rk = idx[k]
            if rk > 0:
                scalar = c * quantum_integer(d[k] - rk + 1) * q_power(kweight)
                _accumulate(data, idx[:k] + (rk - 1,) + idx[k + 1 :], scalar)
            kweight += d[k] - 2 * rk
    return ModuleVector._make(d, data)


def _act_f_range(u: ModuleVector, lo: int, hi: int) -> ModuleVector:
    """F through the comultiplication on slots lo..hi-1; slots after the
    raised one inside the range contribute their inverse K-weight."""
    d = u.d
    data: dict[OrbitIndex, Laurent] = {}
    for idx, c in u._terms.items():
        tail = sum(d[i] - 2 * idx[i] for i in range(lo, hi))
        for k in range(lo, hi):
            rk = idx[k]
            tail -= d[k] - 2 * rk
            if rk < d[k]:
                scalar = c * quantum_integer(rk + 1) * q_power(-tail)
                _accumulate(data, idx[:k] + (rk + 1,) + idx[k + 1 :], scalar)
    return ModuleVector._make(d, data)


def act_E(u: ModuleVector) -> ModuleVector:
    return _act_e_range(u, 0, len(u.d))


def act_F(u: ModuleVector) -> ModuleVector:
    return _act_f_range(u, 0, len(u.d))


def _act_divided_range(
    u: ModuleVector, gen: str, n: int, lo: int, hi: int
) -> ModuleVector:
    if n < 0:
        raise ValueError("divided power needs n >= 0")
    step = {"E": _act_e_range, "F": _act_f_range}[gen]
    v = u
    for _ in range(n):
        v = step(v, lo, hi)
    if n <= 1 or v.is_zero():
        return v
    fact = quantum_factorial(n)
    try:
        return v.map_coefficients(lambda c: exact_div(c, fact))
    except NonDivisibleError as e:
        raise IntegralityViolationError(
            f"{gen}^({n}) image not divisible by [{n}]! on Lambda_{u.d}"
        ) from e


def act_divided(u: ModuleVector, gen: str, n: int) -> ModuleVector:
    """E^(n) or F^(n): iterate, then exactly divide by [n]!."""
    if gen not in ("E", "F"):
        raise ValueError(f"unknown generator {gen!r}")
    return _act_divided_range(u, gen, n, 0, len(u.d))


# -- inner product and the adjoint twist ---------------------------------------


def gram_entry(d: Composition, idx: OrbitIndex) -> Laurent:
    """(v_idx, v_idx) = product over factors of binom(d_k, r_k)_q q^(-r_k(d_k-r_k))."""
    d = orbits.check_composition(d)
    idx = orbits.check_index(d, idx)
    out = ONE
    for dk, rk in zip(d, idx):
        out = out * quantum_binomial(dk, rk) * q_power(-rk * (dk - rk))
    return out


def inner_product(u: ModuleVector, w: ModuleVector) -> Laurent:
    """Bilinear, symmetric, standard basis orthogonal with gram_entry on
    the diagonal.  No bar twist on either argument."""
    if u.d != w.d:
        raise AmbientMismatchError(f"inner product across {u.d} and {w.d}")
    out = ZERO
    small, large = (u, w) if len(u._terms) <= len(w._terms) else (w, u)
    for idx, c in small._terms.items():
        cw = large._terms.get(idx)
        if cw is not None:
            out = out + c * cw * gram_entry(u.d, idx)
    return out


def rho_twist(gen: str) -> Callable[[ModuleVector], ModuleVector]:
    """The adjoint of gen for inner_product: (x u, w) = (u, rho(x) w).
    rho(K) = K, rho(E) = qKF, rho(F) = qK^-1 E, as composite operators."""
    if gen == "K":
        return act_K
    if gen == "E":
        return lambda u: act_K(act_F(u)).scale(q_power(1))
    if gen == "F":
        return lambda u: act_K(act_E(u), -1).scale(q_power(1))
    raise ValueError(f"unknown generator {gen!r}")


# -- exact linear maps ----------------------------------------------------------


@dataclass(frozen=True, eq=True)
class LinMap:
    """A column map between standard bases: domain index -> image vector.

    Columns may span several weight levels; apply is linear over every
    stored column and raises on indices outside the column set.
    """

    source: Composition
    target: Composition
    columns: dict[OrbitIndex, ModuleVector]

    def apply(self, u: ModuleVector) -> ModuleVector:
        if u.d != self.source:
            raise AmbientMismatchError(f"map on {self.source} applied to {u.d}")
        out = ModuleVector.zero(self.target)
        for idx, c in u._terms.items():
            out = out + self.columns[idx].scale(c)
        return out

    def compose(self, inner: "LinMap") -> "LinMap":
        """self after inner."""
        if inner.target != self.source:
            raise AmbientMismatchError(
                f"cannot compose {self.source}<-... after ...->{inner.target}"
            )
        cols = {idx: self.apply(v) for idx, v in inner.columns.items()}
        return LinMap(inner.source, self.target, cols)

    @classmethod
    def identity(cls, d: Composition, levels: Iterable[int] | None = None) -> "LinMap":
        d = orbits.check_composition(d)
        if levels is None:
            levels = range(sum(d) + 1)
        cols = {
            idx: ModuleVector.basis(d, idx)
            for r in levels
            for idx in enumerate_basis(d, r)
        }
        return cls(d, d, cols)


def operator_linmap(
    op: Callable[[ModuleVector], ModuleVector],
    d: Composition,
    levels: Iterable[int] | None = None,
    target: Composition | None = None,
) -> LinMap:
    """Materialize an operator into a LinMap by applying it columnwise."""
    d = orbits.check_composition(d)
    if levels is None:
        levels = range(sum(d) + 1)
    cols = {
        idx: op(ModuleVector.basis(d, idx))
        for r in levels
        for idx in enumerate_basis(d, r)
    }
    return LinMap(d, tuple(target) if target is not None else d, cols)
