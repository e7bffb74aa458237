"""Bar involution, canonical bases, split expansion, refinement embedding.

The bar involution Psi on Lambda_d is anti-linear (coefficients are
barred), fixes every standard basis vector of a single factor, and on a
tensor product is the naive factorwise bar corrected by the quasi-R
operator Theta = sum_n kappa_n F^(n) tensor E^(n), applied with F^(n)
on the left block and E^(n) on the right block of a chosen cut.  The
recursion nests left to right by default; coassociativity makes the
result independent of the nesting, which the verification suite checks
rather than assumes.

The coefficients kappa_n are not hard-coded.  kappa_0 = 1, and each
kappa_n is the unique solution of the intertwining condition
Psi(x u) = bar(x) Psi(u), x in {E, F}, on the pair module Lambda_(n,n),
solved level by level; conventions in the literature differ by signs
and q-powers, so the solve anchors the convention to the module action
itself and raises ConventionUnderdeterminedError on any ambiguity.

Canonical basis elements b_r are computed by the standard triangular
algorithm: walk the level in closure order, and repair beta = v_r by
subtracting bar-self-corrections p b_s, where p is the strictly
negative-exponent half of the obstruction coefficient g, the unique
member p of q^-1 Z[q^-1] with bar(p) - p = -g.  Each b_r is fixed by
Psi, is unitriangular over the standard basis, and the off-diagonal
coefficients land in q^-1 Z_{>=0}[q^-1] (a checked property, not an
input).
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass

from . import orbits
from .errors import (
    ConventionUnderdeterminedError,
    EmbeddingCheckFailedError,
    NonzeroConstantTermError,
    ObstructionNotAntisymmetricError,
    TriangularityViolationError,
)
from .modules import (
    ModuleVector,
    LinMap,
    _act_divided_range,
    act_E,
    act_F,
    act_K,
    enumerate_basis,
    gram_entry,
    inner_product,
    tensor,
)
from .qring import Laurent, ONE, ZERO, exact_div

__all__ = [
    "compute_quasi_r",
    "bar_involution",
    "CanonicalTable",
    "canonical_basis",
    "canonical_coords",
    "SplitTable",
    "split_expand",
    "embed_refine",
    "CACHE_FORMAT_VERSION",
]

Composition = orbits.Composition
OrbitIndex = orbits.OrbitIndex

CACHE_FORMAT_VERSION = 1

# Solved quasi-R coefficients, kappa_0 first.  Extended on demand and
# never mutated otherwise, so shared reads are safe.
_KAPPA: list[Laurent] = [ONE]

# Memoized Psi images of standard basis vectors, keyed by (d, cut).
# Only populated for the solved (default) coefficients.
_PSI_MEMO: dict[tuple[Composition, int], dict[OrbitIndex, ModuleVector]] = {}

_TABLE_MEMO: dict[tuple[Composition, int], "CanonicalTable"] = {}
_EMBED_MEMO: dict[Composition, LinMap] = {}


# -- the quasi-R coefficients ----------------------------------------------------


def _theta_apply(u: ModuleVector, cut: int, kappa: list[Laurent]) -> ModuleVector:
    """Theta = sum_n kappa_n F^(n) (left block) E^(n) (right block)."""
    l = len(u.d)
    out = ModuleVector.zero(u.d)
    n = 0
    while True:
        f_part = _act_divided_range(u, "F", n, 0, cut)
        if f_part.is_zero():
            break
        term = _act_divided_range(f_part, "E", n, cut, l)
        if term.is_zero():
            break
        if n >= len(kappa):
            raise ValueError(
                f"kappa sequence of length {len(kappa)} too short for Lambda_{u.d}"
            )
        out = out + term.scale(kappa[n])
        n += 1
    return out


def _psi_basis(
    d: Composition, idx: OrbitIndex, kappa: list[Laurent], cut: int, memo_ok: bool
) -> ModuleVector:
    if len(d) == 1:
        return ModuleVector.basis(d, idx)
    memo = _PSI_MEMO.setdefault((d, cut), {}) if memo_ok else None
    if memo is not None and idx in memo:
        return memo[idx]
    left = _psi_vector(
        ModuleVector.basis(d[:cut], idx[:cut]), kappa, 1, memo_ok
    )
    right = _psi_vector(
        ModuleVector.basis(d[cut:], idx[cut:]), kappa, 1, memo_ok
    )
    out = _theta_apply(tensor(left, right), cut, kappa)
    if memo is not None:
        memo[idx] = out
    return out


def _psi_vector(
    u: ModuleVector, kappa: list[Laurent], cut: int, memo_ok: bool
) -> ModuleVector:
    out = ModuleVector.zero(u.d)
    for idx, c in u.items():
        out = out + _psi_basis(u.d, idx, kappa, cut, memo_ok).scale(c.bar())
    return out


def _solve_next_kappa() -> None:
    """Determine kappa_n for n = len(_KAPPA) from the intertwining
    condition on Lambda_(n,n).  Psi depends affinely on the unknown, so
    two evaluations (kappa_n = 0 and kappa_n = 1) give every linear
    equation; the first equation with a unit coefficient pins the value
    and all remaining equations must agree."""
    n = len(_KAPPA)
    d = (n, n)
    trial0 = _KAPPA + [ZERO]
    trial1 = _KAPPA + [ONE]

    equations: list[tuple[Laurent, Laurent]] = []
    for level in range(2 * n + 1):
        for idx in enumerate_basis(d, level):
            u = ModuleVector.basis(d, idx)
            for op in (act_F, act_E):
                xu = op(u)
                lhs0 = _psi_vector(xu, trial0, 1, False)
                lhs1 = _psi_vector(xu, trial1, 1, False)
                rhs0 = op(_psi_vector(u, trial0, 1, False))
                rhs1 = op(_psi_vector(u, trial1, 1, False))
                zero_part = lhs0 - rhs0
                slope = (lhs1 - rhs1) - zero_part
                for s in zero_part.support() | slope.support():
                    equations.append((slope.coeff(s), -zero_part.coeff(s)))

    value: Laurent | None = None
    for a, b in equations:
        if len(list(a.items())) == 1 and abs(list(a.items())[0][1]) == 1:
            value = exact_div(b, a)
            break
    if value is None:
        raise ConventionUnderdeterminedError(
            f"no unit-coefficient equation determines kappa_{n}"
        )
    for a, b in equations:
        if value * a != b:
            raise ConventionUnderdeterminedError(
                f"inconsistent equations for kappa_{n}: ({a}) k = ({b}) vs k = {value}"
            )
    if not value.is_in_a():
        raise ConventionUnderdeterminedError(
            f"kappa_{n} = {value} escaped Z[q, q^-1]"
        )
    _KAPPA.append(value)


def compute_quasi_r(n_max: int) -> list[Laurent]:
    """kappa_0 .. kappa_(n_max); kappa_0 = 1 and the rest are solved
    once and cached for the process."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    while len(_KAPPA) <= n_max:
        _solve_next_kappa()
    return list(_KAPPA[: n_max + 1])


# -- the bar involution -----------------------------------------------------------


def bar_involution(
    u: ModuleVector,
    *,
    cut: int = 1,
    kappa: list[Laurent] | None = None,
) -> ModuleVector:
    """Psi(u).  cut chooses where the top-level Theta splits the slots
    (the result is nesting independent for the solved coefficients);
    kappa overrides the solved coefficients, for fault injection in
    tests, and bypasses all memoization."""
    l = len(u.d)
    if l > 1 and not 1 <= cut < l:
        raise ValueError(f"cut {cut} out of range for {l} slots")
    memo_ok = kappa is None
    if kappa is None:
        kappa = compute_quasi_r(sum(u.d) // 2)
    return _psi_vector(u, kappa, cut if l > 1 else 1, memo_ok)


# -- canonical bases ----------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class CanonicalTable:
    """For fixed (d, r): b_idx = v_idx + sum over lower s of c_{idx,s} v_s.

    rows maps each index to the full standard-basis expansion of b_idx,
    in the linear-extension order of `order`.
    """

    d: Composition
    r: int
    order: tuple[OrbitIndex, ...]
    rows: dict[OrbitIndex, ModuleVector]

    def coefficient(self, r_idx: OrbitIndex, s_idx: OrbitIndex) -> Laurent:
        return self.rows[tuple(r_idx)].coeff(s_idx)

    def to_json_obj(self) -> dict:
        return {
            "d": list(self.d),
            "r": self.r,
            "rows": [
                {
                    "r_index": list(idx),
                    "terms": self.rows[idx].to_json_obj()["terms"],
                }
                for idx in self.order
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CanonicalTable":
        d = tuple(obj["d"])
        r = obj["r"]
        order = tuple(tuple(row["r_index"]) for row in obj["rows"])
        rows = {
            tuple(row["r_index"]): ModuleVector.from_json_obj(
                {"d": obj["d"], "terms": row["terms"]}
            )
            for row in obj["rows"]
        }
        return cls(d, r, order, rows)

    def render(self) -> str:
        from .modules import format_index

        lines = [f"canonical basis d={format_index(self.d)} r={self.r}"]
        for idx in self.order:
            lines.append(f"b{format_index(idx)} = {self.rows[idx]}")
        return "\n".join(lines) + "\n"


def _compute_table(
    d: Composition, r: int, kappa: list[Laurent] | None
) -> CanonicalTable:
    order = tuple(orbits.linear_extension(d, r))
    position = {idx: i for i, idx in enumerate(order)}
    rows: dict[OrbitIndex, ModuleVector] = {}
    for r_idx in order:
        beta = ModuleVector.basis(d, r_idx)
        for _ in range(len(order) + 1):
            delta = bar_involution(beta, kappa=kappa) - beta
            if delta.is_zero():
                break
            for s in delta.support():
                if s == r_idx or not orbits.closure_leq(d, s, r_idx):
                    raise TriangularityViolationError(
                        f"obstruction for b{s} vs {r_idx} on Lambda_{d} "
                        f"is supported outside the strict lower closure"
                    )
            s = max(delta.support(), key=position.get)
            g = delta.coeff(s)
            if not g.is_bar_antisymmetric():
                raise ObstructionNotAntisymmetricError(
                    f"obstruction ({g}) at {s} for b{r_idx} on Lambda_{d}"
                )
            if not g.has_zero_constant_term():
                raise NonzeroConstantTermError(
                    f"obstruction ({g}) at {s} for b{r_idx} on Lambda_{d}"
                )
            beta = beta + rows[s].scale(g.negative_half())
        else:
            raise TriangularityViolationError(
                f"correction loop for b{r_idx} on Lambda_{d} failed to terminate"
            )
        rows[r_idx] = beta
    return CanonicalTable(d, r, order, rows)


def _cache_path(cache_dir: str, d: Composition, r: int) -> str:
    name = f"canonical_v{CACHE_FORMAT_VERSION}_d{'-'.join(map(str, d))}_r{r}.json"
    return os.path.join(cache_dir, name)


def _cache_load(cache_dir: str, d: Composition, r: int) -> CanonicalTable | None:
    try:
        with open(_cache_path(cache_dir, d, r), "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        if obj.get("version") != CACHE_FORMAT_VERSION:
            return None
        if tuple(obj.get("d", ())) != d or obj.get("r") != r:
            return None
        return CanonicalTable.from_json_obj(obj)
    except (OSError, ValueError, KeyError, TypeError):
        return None


def _cache_store(cache_dir: str, table: CanonicalTable) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    obj = {"version": CACHE_FORMAT_VERSION, **table.to_json_obj()}
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, _cache_path(cache_dir, table.d, table.r))
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


def canonical_basis(
    d: Composition,
    r: int,
    *,
    cache_dir: str | None = None,
    kappa: list[Laurent] | None = None,
) -> CanonicalTable:
    """The canonical basis table of Lambda_d at level r.

    Results are memoized per process; cache_dir adds an advisory disk
    cache (versioned, unreadable or mismatched files are recomputed).
    A kappa override disables every cache, so injected faults cannot
    poison real tables.
    """
    d = orbits.check_composition(d)
    if not 0 <= r <= sum(d):
        raise ValueError(f"level {r} out of range for {d}")
    if kappa is not None:
        return _compute_table(d, r, kappa)
    key = (d, r)
    table = _TABLE_MEMO.get(key)
    if table is not None:
        return table
    if cache_dir is not None:
        table = _cache_load(cache_dir, d, r)
        if table is not None:
            _TABLE_MEMO[key] = table
            return table
    table = _compute_table(d, r, None)
    _TABLE_MEMO[key] = table
    if cache_dir is not None:
        _cache_store(cache_dir, table)
    return table


def canonical_coords(
    table: CanonicalTable, u: ModuleVector
) -> list[tuple[OrbitIndex, Laurent]]:
    """Expand u over the canonical basis of its level by unitriangular
    back-substitution; returns (index, coefficient) pairs in the table
    order, zeros omitted."""
    remainder = u
    coords: dict[OrbitIndex, Laurent] = {}
    for idx in reversed(table.order):
        c = remainder.coeff(idx)
        if not c.is_zero():
            coords[idx] = c
            remainder = remainder - table.rows[idx].scale(c)
    if not remainder.is_zero():
        raise TriangularityViolationError(
            f"vector over Lambda_{u.d} escaped the level-{table.r} table"
        )
    return [(idx, coords[idx]) for idx in table.order if idx in coords]


# -- split expansion -----------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class SplitTable:
    """Rows re-express b_r over the product basis b_{s'} tensor b_{s''}
    after cutting the slots at `cut`; keys are full concatenated s."""

    d: Composition
    cut: int
    r: int
    order: tuple[OrbitIndex, ...]
    rows: dict[OrbitIndex, dict[OrbitIndex, Laurent]]

    def to_json_obj(self) -> dict:
        position = {idx: i for i, idx in enumerate(self.order)}
        return {
            "d": list(self.d),
            "cut": self.cut,
            "r": self.r,
            "rows": [
                {
                    "r_index": list(idx),
                    "terms": [
                        {"s_index": list(s), "coeff": c.to_pairs()}
                        for s, c in sorted(
                            self.rows[idx].items(), key=lambda kv: position[kv[0]]
                        )
                    ],
                }
                for idx in self.order
            ],
        }

    def render(self) -> str:
        from .modules import format_index

        position = {idx: i for i, idx in enumerate(self.order)}
        lines = [f"split expansion d={format_index(self.d)} cut={self.cut} r={self.r}"]
        for idx in self.order:
            chunks = []
            for s, c in sorted(
                self.rows[idx].items(), key=lambda kv: -position[kv[0]]
            ):
                body = f"b{format_index(s[: self.cut])}*b{format_index(s[self.cut :])}"
                pairs = list(c.items())
                if len(pairs) == 1:
                    h, n_ = pairs[0]
                    mono = Laurent({h: abs(n_)})
                    coeff_txt = "" if mono == ONE else f"{mono} "
                    negative = n_ < 0
                else:
                    coeff_txt = f"({c}) "
                    negative = False
                term = f"{coeff_txt}{body}"
                if not chunks:
                    chunks.append(f"-{term}" if negative else term)
                else:
                    chunks.append(f"- {term}" if negative else f"+ {term}")
            lines.append(f"b{format_index(idx)} = {' '.join(chunks)}")
        return "\n".join(lines) + "\n"


def split_expand(
    d: Composition,
    cut: int,
    r: int,
    *,
    cache_dir: str | None = None,
) -> SplitTable:
    """Expand each b_r of Lambda_d over the tensor products of the two
    canonical bases after the cut.  Unitriangular back-substitution
    against the concatenated-index products; the leading coefficient is
    exactly 1 by construction."""
    d = orbits.check_composition(d)
    if not 1 <= cut < len(d):
        raise ValueError(f"cut {cut} out of range for {len(d)} slots")
    if not 0 <= r <= sum(d):
        raise ValueError(f"level {r} out of range for {d}")
    left_d, right_d = d[:cut], d[cut:]

    table = canonical_basis(d, r, cache_dir=cache_dir)
    products: dict[OrbitIndex, ModuleVector] = {}
    for a in range(max(0, r - sum(right_d)), min(r, sum(left_d)) + 1):
        left_t = canonical_basis(left_d, a, cache_dir=cache_dir)
        right_t = canonical_basis(right_d, r - a, cache_dir=cache_dir)
        for ls in left_t.order:
            for rs in right_t.order:
                products[ls + rs] = tensor(left_t.rows[ls], right_t.rows[rs])

    rows: dict[OrbitIndex, dict[OrbitIndex, Laurent]] = {}
    for idx in table.order:
        remainder = table.rows[idx]
        coords: dict[OrbitIndex, Laurent] = {}
        for s in reversed(table.order):
            c = remainder.coeff(s)
            if not c.is_zero():
                coords[s] = c
                remainder = remainder - products[s].scale(c)
        if not remainder.is_zero():
            raise TriangularityViolationError(
                f"split of b{idx} on Lambda_{d} escaped the product basis"
            )
        rows[idx] = coords
    return SplitTable(d, cut, r, table.order, rows)


# -- refinement embedding --------------------------------------------------------------


def _assert_embedding(m: LinMap) -> None:
    src, tgt = m.source, m.target
    for idx, image in m.columns.items():
        u = ModuleVector.basis(src, idx)
        for name, op in (("K", act_K), ("E", act_E), ("F", act_F)):
            lhs = m.apply(op(u))
            rhs = op(image)
            if lhs != rhs:
                raise EmbeddingCheckFailedError(
                    f"embedding of Lambda_{src} fails to intertwine {name} at {idx}"
                )
    cols = list(m.columns)
    for i in cols:
        for j in cols:
            lhs = inner_product(m.columns[i], m.columns[j])
            rhs = gram_entry(src, i) if i == j else ZERO
            if lhs != rhs:
                raise EmbeddingCheckFailedError(
                    f"embedding of Lambda_{src} is not an isometry at ({i}, {j})"
                )


def embed_refine(d: Composition, *, cache_dir: str | None = None) -> LinMap:
    """The canonical embedding Lambda_d -> Lambda_(1,...,1) sending each
    b_r to the b at the dense binary refinement of r.  Intertwining and
    isometry are asserted on construction, not assumed."""
    d = orbits.check_composition(d)
    cached = _EMBED_MEMO.get(d)
    if cached is not None:
        return cached
    total = sum(d)
    if total == 0:
        raise ValueError("refinement of a zero composition has no slots")
    target = (1,) * total
    columns: dict[OrbitIndex, ModuleVector] = {}
    for r in range(total + 1):
        table = canonical_basis(d, r, cache_dir=cache_dir)
        fine = canonical_basis(target, r, cache_dir=cache_dir)
        for idx in table.order:
            image = ModuleVector.zero(target)
            for s, c in canonical_coords(table, ModuleVector.basis(d, idx)):
                image = image + fine.rows[orbits.dense_cell(d, s)].scale(c)
            columns[idx] = image
    m = LinMap(d, target, columns)
    _assert_embedding(m)
    _EMBED_MEMO[d] = m
    return m
