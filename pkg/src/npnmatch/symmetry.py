"""Nonskew variable-symmetry detection and symmetry classes.

Two variables are symmetric when swapping them (possibly with one side
complemented) leaves the function invariant. Classes are built once on the
unrestricted function and frozen for the lifetime of a matching run.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .boolfn import (
    NPTransformation,
    TruthTable,
    apply_np_transform,
    count_minterms,
    cofactor,
    cube_of,
    equal,
    full_mask,
    var_mask,
)


class SymmetryKind(enum.Enum):
    NOT_SYMMETRIC = 0
    IDENTICAL = 1
    OPPOSITE = 2


@dataclass(frozen=True)
class SymmetryClass:
    """A maximal set of mutually swappable variables.

    relative_pol[m] is 0 when member m swaps with the first member in
    identical phase and 1 when it swaps with the first member complemented.
    """

    members: tuple[int, ...]
    relative_pol: tuple[int, ...]
    # True when every member pair satisfies both swap conditions. The function
    # is then invariant under jointly negating any two members, so mapping
    # polarities matter only through their parity.
    double: bool = False

    @property
    def first(self) -> int:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)


def symmetry_flags(f: TruthTable, i: int, j: int) -> tuple[bool, bool]:
    """(identical, opposite) results of the two nonskew swap conditions."""
    n = f.n
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"bad variable pair ({i}, {j}) for n={n}")
    mi = var_mask(n, i)
    mj = var_mask(n, j)
    full = full_mask(n)
    si, sj = 1 << i, 1 << j
    # swap x_i <-> x_j: f restricted to (x_i=1, x_j=0) equals (x_i=0, x_j=1)
    identical = (f.bits & mi & ~mj & full) >> si == (f.bits & mj & ~mi & full) >> sj
    # swap x_i <-> complement of x_j: (x_i=1, x_j=1) equals (x_i=0, x_j=0)
    opposite = (f.bits & mi & mj) >> (si + sj) == f.bits & ~mi & ~mj & full
    return identical, opposite


def are_symmetric(f: TruthTable, i: int, j: int) -> SymmetryKind:
    """Symmetry kind of a pair; IDENTICAL is reported when both swap
    conditions hold (degenerate variables)."""
    identical, opposite = symmetry_flags(f, i, j)
    if identical:
        return SymmetryKind.IDENTICAL
    if opposite:
        return SymmetryKind.OPPOSITE
    return SymmetryKind.NOT_SYMMETRIC


def swap_transform(n: int, i: int, j: int, opposite: bool) -> NPTransformation:
    """The NP transformation exchanging x_i and x_j (complemented if opposite)."""
    perm = list(range(n))
    perm[i], perm[j] = j, i
    pol = [1] * n
    if opposite:
        pol[i] = pol[j] = 0
    return NPTransformation(tuple(perm), tuple(pol))


def first_order_pairs(f: TruthTable) -> list[tuple[int, int]]:
    total = count_minterms(f)
    out = []
    for i in range(f.n):
        pos = count_minterms(cofactor(f, cube_of((i, True))))
        out.append((pos, total - pos))
    return out


def build_symmetry_classes(
    f: TruthTable, sig: list[tuple[int, int]] | None = None
) -> list[SymmetryClass]:
    """Partition variables into symmetry classes.

    Pairs are only tested within buckets of equal canonical first-order value
    (the swap conditions force equal counts up to mirroring). Transitivity is
    assumed when merging; a swap-test afterwards evicts pathological members.
    """
    n = f.n
    if sig is None:
        sig = first_order_pairs(f)

    parent = list(range(n))
    parity = [0] * n  # polarity relative to the union-find root

    def find(v):
        path = []
        while parent[v] != v:
            path.append(v)
            v = parent[v]
        p = 0
        for u in reversed(path):
            p ^= parity[u]
            parent[u] = v
            parity[u] = p
        return v

    buckets: dict[tuple[int, int], list[int]] = {}
    for i in range(n):
        p, q = sig[i]
        buckets.setdefault((max(p, q), min(p, q)), []).append(i)

    for members in buckets.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                i, j = members[a], members[b]
                if find(i) == find(j):
                    continue
                kind = are_symmetric(f, i, j)
                if kind is SymmetryKind.NOT_SYMMETRIC:
                    continue
                rel = 0 if kind is SymmetryKind.IDENTICAL else 1
                ri, rj = find(i), find(j)
                parent[rj] = ri
                parity[rj] = parity[i] ^ parity[j] ^ rel

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)

    classes = []
    for members in groups.values():
        if len(members) < 2:
            continue
        members.sort()
        first = members[0]
        base = parity[first]
        pols = [parity[m] ^ base for m in members]
        kept_m, kept_p = [first], [0]
        for m, p in zip(members[1:], pols[1:]):
            t = swap_transform(n, first, m, bool(p))
            if equal(apply_np_transform(f, t), f):
                kept_m.append(m)
                kept_p.append(p)
        if len(kept_m) >= 2:
            double = all(
                all(symmetry_flags(f, kept_m[0], m)) for m in kept_m[1:]
            )
            classes.append(SymmetryClass(tuple(kept_m), tuple(kept_p), double))
    classes.sort(key=lambda c: c.first)
    return classes
