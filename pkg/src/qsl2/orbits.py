"""Parabolic orbit combinatorics on Grassmannians.

A composition d = (d_1, ..., d_l) determines a flag-stabilizer subgroup
acting on the Grassmannian of r-planes in C^d; the orbits at level r are
indexed by integer tuples (r_1, ..., r_l) with 0 <= r_k <= d_k summing
to r.  Closure of orbits is prefix-sum dominance: s lies in the closure
of r exactly when every prefix of s sums to at least the corresponding
prefix of r, because intersection dimensions with the reference flag can
only jump up under specialization.

orbit_dim comes from the iterated fibration of an orbit over a product
of Grassmannians: sum r_k (d_k - r_k) for the fibers within blocks, plus
sum over i < j of r_j (d_i - r_i) for the relative positions.  Every
vector and matrix in the package is ordered by linear_extension, which
sorts by this dimension and breaks ties lexicographically; it refines
the closure order since a proper closure drops the dimension.
"""

from __future__ import annotations

import math
from itertools import product

from .errors import AmbientMismatchError, TotalMismatchError

__all__ = [
    "Composition",
    "OrbitIndex",
    "check_composition",
    "check_index",
    "closure_leq",
    "orbit_dim",
    "cell_count",
    "dense_cell",
    "linear_extension",
    "covering_relations",
    "poset_json_obj",
    "poset_dot",
]

Composition = tuple[int, ...]
OrbitIndex = tuple[int, ...]


def check_composition(d: Composition) -> Composition:
    d = tuple(d)
    if len(d) < 1 or any(not isinstance(x, int) or x < 0 for x in d):
        raise ValueError(f"not a composition: {d!r}")
    return d


def check_index(d: Composition, r: OrbitIndex) -> OrbitIndex:
    r = tuple(r)
    if len(r) != len(d):
        raise AmbientMismatchError(f"index {r} has wrong length for ambient {d}")
    if any(not isinstance(x, int) or not 0 <= x <= dk for x, dk in zip(r, d)):
        raise ValueError(f"index {r} out of range for ambient {d}")
    return r


def closure_leq(d: Composition, s: OrbitIndex, r: OrbitIndex) -> bool:
    """True when the orbit of s is contained in the closure of the orbit
    of r: every prefix sum of s is at least that of r."""
    d = check_composition(d)
    s = check_index(d, s)
    r = check_index(d, r)
    if sum(s) != sum(r):
        raise TotalMismatchError(f"indices {s} and {r} have different totals")
    acc_s = 0
    acc_r = 0
    for sk, rk in zip(s, r):
        acc_s += sk
        acc_r += rk
        if acc_s < acc_r:
            return False
    return True


def orbit_dim(d: Composition, r: OrbitIndex) -> int:
    d = check_composition(d)
    r = check_index(d, r)
    within = sum(rk * (dk - rk) for rk, dk in zip(r, d))
    across = sum(r[j] * (d[i] - r[i]) for j in range(len(d)) for i in range(j))
    return within + across


def cell_count(d: Composition, r: OrbitIndex) -> int:
    """Number of Borel orbits inside the parabolic orbit of r."""
    d = check_composition(d)
    r = check_index(d, r)
    out = 1
    for rk, dk in zip(r, d):
        out *= math.comb(dk, rk)
    return out


def dense_cell(d: Composition, r: OrbitIndex) -> OrbitIndex:
    """The binary refinement of r that is open dense in its orbit: within
    block k, d_k - r_k zeros then r_k ones.  It is the unique dimension
    maximizer among binary refinements of r."""
    d = check_composition(d)
    r = check_index(d, r)
    out: list[int] = []
    for rk, dk in zip(r, d):
        out.extend([0] * (dk - rk))
        out.extend([1] * rk)
    return tuple(out)


def _indices_at_level(d: Composition, r: int) -> list[OrbitIndex]:
    if r < 0 or r > sum(d):
        return []
    return [idx for idx in product(*(range(dk + 1) for dk in d)) if sum(idx) == r]


def linear_extension(d: Composition, r: int) -> list[OrbitIndex]:
    """All level-r indices, smallest closure first: sorted by orbit_dim
    ascending with lexicographic tie-break.  Deterministic, and a linear
    extension of closure_leq."""
    d = check_composition(d)
    return sorted(_indices_at_level(d, r), key=lambda idx: (orbit_dim(d, idx), idx))


def covering_relations(d: Composition, r: int) -> list[tuple[OrbitIndex, OrbitIndex]]:
    """Pairs (s, t) with s strictly below t and nothing strictly between."""
    elems = linear_extension(d, r)
    strict = {
        (s, t)
        for s in elems
        for t in elems
        if s != t and closure_leq(d, s, t)
    }
    covers = [
        (s, t)
        for (s, t) in strict
        if not any((s, m) in strict and (m, t) in strict for m in elems)
    ]
    pos = {idx: i for i, idx in enumerate(elems)}
    covers.sort(key=lambda st: (pos[st[0]], pos[st[1]]))
    return covers


def poset_json_obj(d: Composition, r: int) -> dict:
    elems = linear_extension(d, r)
    return {
        "d": list(d),
        "r": r,
        "elements": [list(idx) for idx in elems],
        "orbit_dim": [orbit_dim(d, idx) for idx in elems],
        "cell_count": [cell_count(d, idx) for idx in elems],
        "covers": [[list(s), list(t)] for s, t in covering_relations(d, r)],
    }


def _node(idx: OrbitIndex) -> str:
    return "(" + ",".join(map(str, idx)) + ")"


def poset_dot(d: Composition, r: int) -> str:
    lines = [f"digraph closure_d{'_'.join(map(str, d))}_r{r} {{"]
    for idx in linear_extension(d, r):
        lines.append(f'  "{_node(idx)}" [label="{_node(idx)} dim={orbit_dim(d, idx)}"];')
    for s, t in covering_relations(d, r):
        lines.append(f'  "{_node(s)}" -> "{_node(t)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
