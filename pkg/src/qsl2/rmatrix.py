"""Braiding maps on tensor modules.

The positive braiding of a pair Lambda_(d1,d2) -> Lambda_(d2,d1) is the
universal formula read right to left: first the quasi-R style operator
Theta_R = sum_n q^(n(n-1)/2) (q - q^-1)^n [n]! F^(n) tensor E^(n), then
the Cartan correction v_a tensor v_b -> q^((d1-2a)(d2-2b)/2) on weight
lines, then the slot transposition, and finally the global scalar
(-q^(3/2))^(d1 d2).  Half powers of q appear in the middle two steps
and must cancel; any odd half-exponent surviving to a matrix entry
raises HalfPowerLeakError, which is how a mis-ordered composition
announces itself.

The negative braiding is the entrywise bar of the canonical-basis
matrix of the positive one, and is checked to be its exact two-sided
inverse on construction.  Longer moves compose pair braidings letter by
letter along a reduced word, tracking the evolving composition; the
result depends only on the permutation, which the verification suite
confirms by comparing reduced words.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import orbits
from .canonical import CanonicalTable, canonical_basis, canonical_coords
from .errors import (
    HalfPowerLeakError,
    InverseCheckFailedError,
    NonReducedWordError,
)
from .modules import (
    LinMap,
    ModuleVector,
    _act_divided_range,
    enumerate_basis,
)
from .qring import Laurent, ZERO, q_half, q_power, quantum_factorial

__all__ = [
    "PermWord",
    "RMap",
    "r_plus_pair",
    "r_minus_pair",
    "r_move",
    "matrix_in_basis",
    "lift_word",
]

Composition = orbits.Composition
OrbitIndex = orbits.OrbitIndex

_Q_MINUS_QINV = Laurent({2: 1, -2: -1})


@dataclass(frozen=True, eq=True)
class PermWord:
    """A word in the adjacent transpositions s_1 .. s_(slots-1), letters
    1-based and applied left to right."""

    slots: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.slots < 1:
            raise ValueError("a word needs at least one slot")
        for a in self.letters:
            if not 1 <= a <= self.slots - 1:
                raise ValueError(
                    f"letter {a} out of range for {self.slots} slots"
                )

    def permutation(self) -> tuple[int, ...]:
        """arrangement[pos] = the original slot now sitting at pos."""
        arr = list(range(self.slots))
        for a in self.letters:
            arr[a - 1], arr[a] = arr[a], arr[a - 1]
        return tuple(arr)

    def inversions(self) -> int:
        arr = self.permutation()
        return sum(
            1
            for i in range(len(arr))
            for j in range(i + 1, len(arr))
            if arr[i] > arr[j]
        )

    def is_reduced(self) -> bool:
        return len(self.letters) == self.inversions()

    def apply_to(self, d: Composition) -> Composition:
        if len(d) != self.slots:
            raise ValueError(f"word on {self.slots} slots applied to {d}")
        arr = self.permutation()
        return tuple(d[arr[pos]] for pos in range(self.slots))


@dataclass(frozen=True, eq=True)
class RMap:
    """A braiding move: sign, source and target compositions, and the
    underlying standard-basis column map."""

    sign: str
    source: Composition
    target: Composition
    map: LinMap

    def apply(self, u: ModuleVector) -> ModuleVector:
        return self.map.apply(u)


# -- the pair braiding ---------------------------------------------------------


def _theta_r_step(u: ModuleVector) -> ModuleVector:
    out = ModuleVector.zero(u.d)
    n = 0
    while True:
        f_part = _act_divided_range(u, "F", n, 0, 1)
        if f_part.is_zero():
            break
        term = _act_divided_range(f_part, "E", n, 1, 2)
        if term.is_zero():
            break
        coeff = (
            q_power(n * (n - 1) // 2)
            * _Q_MINUS_QINV ** n
            * quantum_factorial(n)
        )
        out = out + term.scale(coeff)
        n += 1
    return out


def _cartan_step(u: ModuleVector) -> ModuleVector:
    c1, c2 = u.d
    data = {
        (a, b): coeff * q_half((c1 - 2 * a) * (c2 - 2 * b))
        for (a, b), coeff in u.items()
    }
    return ModuleVector._make(u.d, data)


def _swap_step(u: ModuleVector) -> ModuleVector:
    c1, c2 = u.d
    data = {(b, a): coeff for (a, b), coeff in u.items()}
    return ModuleVector._make((c2, c1), data)


_PAIR_STEPS = {
    "theta": _theta_r_step,
    "cartan": _cartan_step,
    "swap": _swap_step,
}


def _r_plus_columns(
    d1: int,
    d2: int,
    *,
    step_order: tuple[str, ...] = ("theta", "cartan", "swap"),
    with_scalar: bool = True,
) -> dict[OrbitIndex, ModuleVector]:
    """Standard-basis columns of the positive pair braiding.  The
    keyword hooks exist so tests can inject a wrong composition order or
    drop the scalar and watch the advertised failures appear."""
    scalar = Laurent({3 * d1 * d2: (-1) ** (d1 * d2)})
    columns: dict[OrbitIndex, ModuleVector] = {}
    for r in range(d1 + d2 + 1):
        for idx in enumerate_basis((d1, d2), r):
            u = ModuleVector.basis((d1, d2), idx)
            for step in step_order:
                u = _PAIR_STEPS[step](u)
            if with_scalar:
                u = u.scale(scalar)
            columns[idx] = u
    return columns


_PAIR_MEMO: dict[tuple[int, int, str], RMap] = {}


def r_plus_pair(d1: int, d2: int) -> RMap:
    """The positive braiding Lambda_(d1,d2) -> Lambda_(d2,d1); every
    matrix entry must land in Z[q, q^-1]."""
    if d1 < 0 or d2 < 0:
        raise ValueError("factor dimensions must be nonnegative")
    key = (d1, d2, "plus")
    cached = _PAIR_MEMO.get(key)
    if cached is not None:
        return cached
    columns = _r_plus_columns(d1, d2)
    for idx, image in columns.items():
        for s, c in image.items():
            if not c.is_in_a():
                raise HalfPowerLeakError(
                    f"entry ({c}) of R_+ on ({d1},{d2}) at {idx} -> {s} "
                    f"has a half power of q"
                )
    out = RMap("plus", (d1, d2), (d2, d1), LinMap((d1, d2), (d2, d1), columns))
    _PAIR_MEMO[key] = out
    return out


def _canonical_action(
    m: LinMap, s_table: CanonicalTable, t_table: CanonicalTable
) -> dict[OrbitIndex, list[tuple[OrbitIndex, Laurent]]]:
    return {
        idx: canonical_coords(t_table, m.apply(s_table.rows[idx]))
        for idx in s_table.order
    }


def r_minus_pair(d1: int, d2: int) -> RMap:
    """The negative braiding: entrywise bar of the canonical matrix of
    the positive one.  Checked to invert r_plus_pair(d2, d1) on both
    sides before being returned."""
    if d1 < 0 or d2 < 0:
        raise ValueError("factor dimensions must be nonnegative")
    key = (d1, d2, "minus")
    cached = _PAIR_MEMO.get(key)
    if cached is not None:
        return cached
    plus = r_plus_pair(d1, d2)
    src, tgt = (d1, d2), (d2, d1)
    columns: dict[OrbitIndex, ModuleVector] = {}
    for r in range(d1 + d2 + 1):
        s_table = canonical_basis(src, r)
        t_table = canonical_basis(tgt, r)
        on_b = _canonical_action(plus.map, s_table, t_table)
        minus_on_b = {
            idx: _combine(t_table, [(s, c.bar()) for s, c in coords])
            for idx, coords in on_b.items()
        }
        for idx in s_table.order:
            image = ModuleVector.zero(tgt)
            for s, c in canonical_coords(
                s_table, ModuleVector.basis(src, idx)
            ):
                image = image + minus_on_b[s].scale(c)
            columns[idx] = image
    out = RMap("minus", src, tgt, LinMap(src, tgt, columns))

    partner = r_plus_pair(d2, d1)
    ident_src = LinMap.identity(src)
    ident_tgt = LinMap.identity(tgt)
    if partner.map.compose(out.map) != ident_src:
        raise InverseCheckFailedError(
            f"R_+({d2},{d1}) after R_-({d1},{d2}) is not the identity"
        )
    if out.map.compose(partner.map) != ident_tgt:
        raise InverseCheckFailedError(
            f"R_-({d1},{d2}) after R_+({d2},{d1}) is not the identity"
        )
    _PAIR_MEMO[key] = out
    return out


def _combine(
    table: CanonicalTable, coords: list[tuple[OrbitIndex, Laurent]]
) -> ModuleVector:
    out = ModuleVector.zero(table.d)
    for idx, c in coords:
        out = out + table.rows[idx].scale(c)
    return out


# -- moves along reduced words ----------------------------------------------------


def _extend_pair(pair: LinMap, c: Composition, a: int) -> LinMap:
    """id (x) pair (x) id, the pair map eating slots a-1 and a of
    Lambda_c (letters are 1-based)."""
    new_c = c[: a - 1] + (c[a], c[a - 1]) + c[a + 1 :]
    columns: dict[OrbitIndex, ModuleVector] = {}
    for r in range(sum(c) + 1):
        for idx in enumerate_basis(c, r):
            pair_image = pair.apply(
                ModuleVector.basis((c[a - 1], c[a]), (idx[a - 1], idx[a]))
            )
            data = {
                idx[: a - 1] + pidx + idx[a + 1 :]: coeff
                for pidx, coeff in pair_image.items()
            }
            columns[idx] = ModuleVector._make(new_c, data)
    return LinMap(c, new_c, columns)


def r_move(
    d: Composition, word: PermWord | tuple[int, ...] | list[int], sign: str = "plus"
) -> RMap:
    """Compose pair braidings along a reduced word, one letter at a
    time, left to right.  The result depends only on the permutation;
    a non-reduced word is rejected rather than silently normalized."""
    d = orbits.check_composition(d)
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be plus or minus, got {sign!r}")
    if not isinstance(word, PermWord):
        word = PermWord(len(d), tuple(word))
    elif word.slots != len(d):
        raise ValueError(f"word on {word.slots} slots against {d}")
    if not word.is_reduced():
        raise NonReducedWordError(
            f"word {list(word.letters)} has length {len(word.letters)} "
            f"but only {word.inversions()} inversions"
        )
    current = d
    total = LinMap.identity(d)
    for a in word.letters:
        pair = (
            r_plus_pair(current[a - 1], current[a])
            if sign == "plus"
            else r_minus_pair(current[a - 1], current[a])
        )
        step = _extend_pair(pair.map, current, a)
        total = step.compose(total)
        current = step.target
    return RMap(sign, d, current, total)


def lift_word(
    d: Composition, word: PermWord | tuple[int, ...] | list[int]
) -> list[int]:
    """Refine a word on the slots of d to a word on the sum(d) strands
    of the dense refinement: each letter becomes the block shuffle
    moving d_a strands past d_(a+1) strands."""
    d = orbits.check_composition(d)
    letters = word.letters if isinstance(word, PermWord) else tuple(word)
    current = list(d)
    out: list[int] = []
    for a in letters:
        if not 1 <= a <= len(current) - 1:
            raise ValueError(f"letter {a} out of range for {len(current)} slots")
        m, n = current[a - 1], current[a]
        offset = sum(current[: a - 1])
        out.extend(offset + m - i + j for j in range(n) for i in range(m))
        current[a - 1], current[a] = n, m
    return out


# -- matrices ----------------------------------------------------------------------


def matrix_in_basis(
    m: RMap | LinMap, basis: str = "standard"
) -> dict[int, list[list[Laurent]]]:
    """Per-level matrices of a weight-preserving map; rows run over the
    target linear extension, columns over the source one.  Levels are
    the blocks of the weight decomposition, so the full map is the
    direct sum of the returned matrices.  Accepts a braiding move or
    any bare column map (the refinement embedding, for instance)."""
    if basis not in ("standard", "canonical"):
        raise ValueError(f"basis must be standard or canonical, got {basis!r}")
    linmap = m.map if isinstance(m, RMap) else m
    out: dict[int, list[list[Laurent]]] = {}
    for r in range(sum(linmap.source) + 1):
        src_order = enumerate_basis(linmap.source, r)
        tgt_order = enumerate_basis(linmap.target, r)
        if basis == "standard":
            images = {
                j: linmap.apply(ModuleVector.basis(linmap.source, j))
                for j in src_order
            }
            entry = lambda i, j: images[j].coeff(i)
        else:
            s_table = canonical_basis(linmap.source, r)
            t_table = canonical_basis(linmap.target, r)
            coords = {
                j: dict(canonical_coords(t_table, linmap.apply(s_table.rows[j])))
                for j in src_order
            }
            entry = lambda i, j: coords[j].get(i, ZERO)
        out[r] = [[entry(i, j) for j in src_order] for i in tgt_order]
    return out
