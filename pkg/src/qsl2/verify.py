"""Property suites behind the `verify` subcommand.

Each suite sweeps every composition with positive parts and total at
most max_total, counts individual checks, and collects a short witness
string for each failure instead of stopping at the first one.  Sampled
checks draw from a fixed-seed generator so two runs of the same scope
see the same cases.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from . import orbits
from .canonical import (
    bar_involution,
    canonical_basis,
    embed_refine,
    split_expand,
)
from .errors import AlgebraError
from .modules import (
    LinMap,
    ModuleVector,
    act_divided,
    act_E,
    act_F,
    act_K,
    enumerate_basis,
    inner_product,
    rho_twist,
)
from .qring import (
    Laurent,
    ONE,
    ZERO,
    exact_div,
    q_power,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
)
from .rmatrix import PermWord, lift_word, r_move

__all__ = ["SuiteResult", "compositions", "run_all", "SUITES"]

Composition = orbits.Composition

_FAILURE_CAP = 25
_SEED = 58214


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    truncated: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures and not self.truncated

    def check(self, ok: bool, witness: str) -> None:
        self.checks += 1
        if not ok:
            if len(self.failures) < _FAILURE_CAP:
                self.failures.append(witness)
            else:
                self.truncated = True


def compositions(max_total: int) -> list[Composition]:
    """All compositions with positive parts and 1 <= total <= max_total,
    in a deterministic order."""
    out: list[Composition] = []
    for total in range(1, max_total + 1):
        for l in range(1, total + 1):
            for parts in itertools.product(range(1, total + 1), repeat=l):
                if sum(parts) == total:
                    out.append(parts)
    return out


def _random_laurent(rng: random.Random) -> Laurent:
    return Laurent(
        {
            rng.randrange(-8, 9): rng.randrange(-9, 10)
            for _ in range(rng.randrange(0, 5))
        }
    )


def _random_vector(rng: random.Random, d: Composition) -> ModuleVector:
    out = ModuleVector.zero(d)
    r = rng.randrange(0, sum(d) + 1)
    for idx in enumerate_basis(d, r):
        if rng.random() < 0.6:
            out = out + ModuleVector.basis(d, idx).scale(_random_laurent(rng))
    return out


# -- suites ---------------------------------------------------------------------


def suite_ring(max_total: int) -> SuiteResult:
    res = SuiteResult("ring")
    rng = random.Random(_SEED)
    for trial in range(60):
        a, b, c = (_random_laurent(rng) for _ in range(3))
        res.check((a + b) - b == a, f"(a+b)-b != a at trial {trial}")
        res.check((a * b) * c == a * (b * c), f"associativity at trial {trial}")
        res.check(
            (a * b).bar() == a.bar() * b.bar(),
            f"bar not multiplicative at trial {trial}",
        )
        res.check(a.bar().bar() == a, f"bar not involutive at trial {trial}")
        if not b.is_zero():
            res.check(
                exact_div(a * b, b) == a, f"exact_div round trip at trial {trial}"
            )
    for n in range(13):
        qi = quantum_integer(n)
        res.check(qi.bar() == qi, f"[{n}] not bar invariant")
        for r in range(n + 1):
            lhs = quantum_binomial(n, r)
            res.check(
                lhs == quantum_binomial(n, n - r),
                f"binomial symmetry at ({n},{r})",
            )
            quotient = exact_div(
                quantum_factorial(n),
                quantum_factorial(r) * quantum_factorial(n - r),
            )
            res.check(lhs == quotient, f"binomial vs factorial quotient ({n},{r})")
            res.check(lhs.bar() == lhs, f"binomial bar invariance ({n},{r})")
    return res


def suite_orbits(max_total: int) -> SuiteResult:
    res = SuiteResult("orbits")
    for d in compositions(max_total):
        total = sum(d)
        for r in range(total + 1):
            idxs = enumerate_basis(d, r)
            res.check(
                sum(orbits.cell_count(d, i) for i in idxs) == math.comb(total, r),
                f"cell counts at d={d} r={r}",
            )
            for s, t in itertools.product(idxs, repeat=2):
                if orbits.closure_leq(d, s, t) and orbits.closure_leq(d, t, s):
                    res.check(s == t, f"antisymmetry {s},{t} in {d}")
                if s != t and orbits.closure_leq(d, s, t):
                    res.check(
                        orbits.orbit_dim(d, s) < orbits.orbit_dim(d, t),
                        f"dim not strictly monotone {s} < {t} in {d}",
                    )
            for s, t, u in itertools.product(idxs, repeat=3):
                if orbits.closure_leq(d, s, t) and orbits.closure_leq(d, t, u):
                    res.check(
                        orbits.closure_leq(d, s, u),
                        f"transitivity {s},{t},{u} in {d}",
                    )
            fine = (1,) * total
            for idx in idxs:
                dense = orbits.dense_cell(d, idx)
                refinements = _binary_refinements(d, idx)
                res.check(
                    all(
                        orbits.closure_leq(fine, ref, dense)
                        for ref in refinements
                    ),
                    f"dense_cell not maximal for {idx} in {d}",
                )
                for s in idxs:
                    if s != idx and orbits.closure_leq(d, s, idx):
                        res.check(
                            all(
                                not orbits.closure_leq(fine, dense, ref)
                                for ref in _binary_refinements(d, s)
                            ),
                            f"refinement of {s} above dense_cell({idx}) in {d}",
                        )
    return res


def _binary_refinements(d: Composition, idx: tuple[int, ...]) -> list[tuple[int, ...]]:
    per_block = [
        [
            tuple(1 if i in ones else 0 for i in range(dk))
            for ones in itertools.combinations(range(dk), rk)
        ]
        for dk, rk in zip(d, idx)
    ]
    return [
        tuple(itertools.chain.from_iterable(blocks))
        for blocks in itertools.product(*per_block)
    ]


def suite_modules(max_total: int) -> SuiteResult:
    res = SuiteResult("modules")
    qm = Laurent({2: 1, -2: -1})
    for d in compositions(max_total):
        total = sum(d)
        dim = 0
        for r in range(total + 1):
            idxs = enumerate_basis(d, r)
            dim += len(idxs)
            for idx in idxs:
                u = ModuleVector.basis(d, idx)
                res.check(
                    act_K(act_E(u)) == act_E(act_K(u)).scale(q_power(2)),
                    f"KE != q^2 EK at {idx} in {d}",
                )
                res.check(
                    act_K(act_F(u)) == act_F(act_K(u)).scale(q_power(-2)),
                    f"KF != q^-2 FK at {idx} in {d}",
                )
                w = total - 2 * r
                commutator = act_E(act_F(u)) - act_F(act_E(u))
                scalar = (
                    exact_div(q_power(w) - q_power(-w), qm)
                    if w != 0
                    else ZERO
                )
                res.check(
                    commutator == u.scale(scalar),
                    f"EF-FE at {idx} in {d}",
                )
                for gen in ("E", "F"):
                    for n in range(3):
                        for m in range(3 - n):
                            lhs = act_divided(act_divided(u, gen, m), gen, n)
                            rhs = act_divided(u, gen, n + m).scale(
                                quantum_binomial(n + m, n)
                            )
                            res.check(
                                lhs == rhs,
                                f"{gen}^({n}){gen}^({m}) at {idx} in {d}",
                            )
            for x, shift in (("K", 0), ("E", -1), ("F", 1)):
                op = {"K": act_K, "E": act_E, "F": act_F}[x]
                rho = rho_twist(x)
                if not 0 <= r + shift <= total:
                    continue
                for idx in idxs:
                    u = ModuleVector.basis(d, idx)
                    for jdx in enumerate_basis(d, r + shift):
                        w_vec = ModuleVector.basis(d, jdx)
                        res.check(
                            inner_product(op(u), w_vec)
                            == inner_product(u, rho(w_vec)),
                            f"adjointness of {x} at ({idx},{jdx}) in {d}",
                        )
        res.check(
            dim == math.prod(dk + 1 for dk in d),
            f"total dimension of Lambda_{d}",
        )
    return res


def suite_bar(max_total: int) -> SuiteResult:
    res = SuiteResult("bar")
    rng = random.Random(_SEED + 1)
    for d in compositions(max_total):
        total = sum(d)
        for r in range(total + 1):
            for idx in enumerate_basis(d, r):
                u = ModuleVector.basis(d, idx)
                pu = bar_involution(u)
                res.check(
                    bar_involution(pu) == u, f"Psi^2 at {idx} in {d}"
                )
                delta = pu - u
                res.check(
                    all(
                        s != idx and orbits.closure_leq(d, s, idx)
                        for s in delta.support()
                    ),
                    f"bar matrix not unitriangular at {idx} in {d}",
                )
                for x, op in (("K", act_K), ("E", act_E), ("F", act_F)):
                    lhs = bar_involution(op(u))
                    rhs = (
                        act_K(bar_involution(u), -1)
                        if x == "K"
                        else op(bar_involution(u))
                    )
                    res.check(lhs == rhs, f"Psi {x} at {idx} in {d}")
        v = _random_vector(rng, d)
        c = _random_laurent(rng)
        res.check(
            bar_involution(v.scale(c)) == bar_involution(v).scale(c.bar()),
            f"anti-linearity on {d}",
        )
        if len(d) == 3:
            for r in range(total + 1):
                for idx in enumerate_basis(d, r):
                    u = ModuleVector.basis(d, idx)
                    res.check(
                        bar_involution(u, cut=1) == bar_involution(u, cut=2),
                        f"nesting dependence at {idx} in {d}",
                    )
    return res


def suite_canonical(max_total: int) -> SuiteResult:
    res = SuiteResult("canonical")
    for d in compositions(max_total):
        total = sum(d)
        for r in range(total + 1):
            table = canonical_basis(d, r)
            for idx in table.order:
                row = table.rows[idx]
                res.check(
                    row.coeff(idx) == ONE, f"diagonal at {idx} level {r} in {d}"
                )
                res.check(
                    bar_involution(row) == row,
                    f"b{idx} not bar fixed in {d}",
                )
                for s, c in row.items():
                    if s == idx:
                        continue
                    res.check(
                        orbits.closure_leq(d, s, idx)
                        and c.is_in_qinv_z_nonneg(),
                        f"coefficient ({c}) at {s} in b{idx} of {d}",
                    )
                for jdx in table.order:
                    pairing = inner_product(row, table.rows[jdx])
                    expected_delta = ONE if idx == jdx else ZERO
                    res.check(
                        (pairing - expected_delta).is_in_qinv_z_nonneg(),
                        f"(b{idx}, b{jdx}) = {pairing} in {d}",
                    )
            if r in (0, total):
                res.check(
                    len(table.order) == 1
                    and table.rows[table.order[0]]
                    == ModuleVector.basis(d, table.order[0]),
                    f"degenerate level {r} in {d}",
                )
        for cut in range(1, len(d)):
            left_d, right_d = d[:cut], d[cut:]
            for r in range(total + 1):
                table = canonical_basis(d, r)
                split = split_expand(d, cut, r)
                for idx in split.order:
                    coords = split.rows[idx]
                    res.check(
                        coords.get(idx) == ONE,
                        f"split leading coefficient at {idx} in {d} cut {cut}",
                    )
                    res.check(
                        all(
                            orbits.closure_leq(d, s, idx)
                            and (s == idx or c.is_in_qinv_z_nonneg())
                            for s, c in coords.items()
                        ),
                        f"split coefficients at {idx} in {d} cut {cut}",
                    )
                for idx in split.order:
                    for jdx in split.order:
                        direct = inner_product(
                            table.rows[idx], table.rows[jdx]
                        )
                        paired = ZERO
                        for s, c in split.rows[idx].items():
                            for t, e in split.rows[jdx].items():
                                lt = canonical_basis(left_d, sum(s[:cut]))
                                rt = canonical_basis(right_d, sum(s[cut:]))
                                if sum(s[:cut]) != sum(t[:cut]):
                                    continue
                                paired = paired + c * e * inner_product(
                                    lt.rows[s[:cut]], lt.rows[t[:cut]]
                                ) * inner_product(
                                    rt.rows[s[cut:]], rt.rows[t[cut:]]
                                )
                        res.check(
                            direct == paired,
                            f"split pairing ({idx},{jdx}) in {d} cut {cut}",
                        )
    return res


def _reduced_words(l: int) -> list[tuple[int, ...]]:
    """Every reduced word of every element of S_l, grown letter by
    letter; practical for the l <= 3 scope of the sweep."""
    out: list[tuple[int, ...]] = []
    max_len = l * (l - 1) // 2
    frontier: list[tuple[int, ...]] = [()]
    while frontier:
        new: list[tuple[int, ...]] = []
        for w in frontier:
            pw = PermWord(l, w)
            if pw.is_reduced():
                out.append(w)
                if len(w) < max_len:
                    new.extend(w + (a,) for a in range(1, l))
        frontier = new
    return out


def suite_rmatrix(max_total: int) -> SuiteResult:
    res = SuiteResult("rmatrix")
    for d in compositions(max_total):
        if len(d) > 3:
            continue
        total = sum(d)
        words = _reduced_words(len(d))
        by_perm: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for w in words:
            by_perm.setdefault(PermWord(len(d), w).permutation(), []).append(w)
        for perm, ws in by_perm.items():
            moves = [r_move(d, w) for w in ws]
            for other in moves[1:]:
                res.check(
                    other.map == moves[0].map,
                    f"word dependence for {perm} on {d}",
                )
            move = moves[0]
            res.check(
                move.apply(ModuleVector.basis(d, (0,) * len(d)))
                == ModuleVector.basis(move.target, (0,) * len(d)).scale(
                    _highest_weight_scalar(d, perm)
                ),
                f"highest-weight scalar for {perm} on {d}",
            )
            inverse_word = tuple(reversed(ws[0]))
            minus = r_move(move.target, inverse_word, "minus")
            res.check(
                minus.map.compose(move.map) == _identity_map(d),
                f"R_- R_+ != Id for {perm} on {d}",
            )
            plus_back = r_move(move.target, inverse_word, "plus")
            minus_fwd = r_move(d, ws[0], "minus")
            res.check(
                plus_back.map.compose(minus_fwd.map) == _identity_map(d),
                f"R_+ R_- != Id for {perm} on {d}",
            )
            for r in range(total + 1):
                for idx in enumerate_basis(d, r):
                    u = ModuleVector.basis(d, idx)
                    img = move.apply(u)
                    res.check(
                        all(sum(s) == r for s in img.support()),
                        f"weight broken at {idx} for {perm} on {d}",
                    )
                    for x, op in (("K", act_K), ("E", act_E), ("F", act_F)):
                        res.check(
                            move.apply(op(u)) == op(move.apply(u)),
                            f"intertwining {x} at {idx} for {perm} on {d}",
                        )
                    res.check(
                        all(
                            c.is_in_a()
                            for s, c in img.items()
                        ),
                        f"half power leak at {idx} for {perm} on {d}",
                    )
    return res


def _identity_map(d: Composition) -> LinMap:
    return LinMap.identity(d)


def _highest_weight_scalar(d: Composition, perm: tuple[int, ...]) -> Laurent:
    exponent = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                exponent += d[perm[i]] * d[perm[j]]
    return Laurent({4 * exponent: (-1) ** exponent})


def suite_embed(max_total: int) -> SuiteResult:
    res = SuiteResult("embed")
    for d in compositions(max_total):
        try:
            m = embed_refine(d)
        except AlgebraError as e:
            res.check(False, f"embed_refine({d}) raised {type(e).__name__}")
            continue
        total = sum(d)
        fine = (1,) * total
        for r in range(total + 1):
            table = canonical_basis(d, r)
            fine_table = canonical_basis(fine, r)
            for idx in table.order:
                res.check(
                    m.apply(table.rows[idx])
                    == fine_table.rows[orbits.dense_cell(d, idx)],
                    f"b{idx} not sent to its dense refinement in {d}",
                )
        res.check(True, f"construction checks of embed_refine({d})")
        if len(d) == 2 and max(d) <= 2:
            for sign in ("plus", "minus"):
                move = r_move(d, [1], sign)
                lifted = r_move(fine, lift_word(d, [1]), sign)
                lhs = embed_refine(move.target).compose(move.map)
                rhs = lifted.map.compose(m)
                res.check(
                    lhs == rhs,
                    f"refinement compatibility of R_{sign} on {d}",
                )
    return res


SUITES = {
    "ring": suite_ring,
    "orbits": suite_orbits,
    "modules": suite_modules,
    "bar": suite_bar,
    "canonical": suite_canonical,
    "rmatrix": suite_rmatrix,
    "embed": suite_embed,
}


def run_all(max_total: int = 5) -> list[SuiteResult]:
    if max_total < 1:
        raise ValueError("max_total must be at least 1")
    return [SUITES[name](max_total) for name in sorted(SUITES)]
