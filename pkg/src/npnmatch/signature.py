"""Structural signature vectors.

Per variable: the first-order value (cofactor minterm counts) under the
current cube restriction, frozen symmetry marks, and a group serial number.
Groups partition variables that have ever shown distinct first-order values;
refinement never merges groups, so stale-signature mappings are ruled out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .boolfn import Cube, TruthTable, cofactor, count_minterms, cube_of, var_mask
from .symmetry import SymmetryClass

PHASE_POSITIVE = 0
PHASE_NEGATIVE = 1
PHASE_UNDETERMINED = -1


class SSValue(NamedTuple):
    pos_count: int
    neg_count: int
    sym_size: int  # -1 when asymmetric
    sym_first: int  # -1 when asymmetric
    group: int

    @property
    def canonical(self) -> tuple[int, int]:
        p, q = self.pos_count, self.neg_count
        return (p, q) if p >= q else (q, p)


@dataclass(frozen=True)
class SSVector:
    values: tuple[SSValue, ...]
    identified: tuple[bool, ...]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i) -> SSValue:
        return self.values[i]

    def dump(self) -> str:
        """Debug rendering: one (pos, neg, symSize, symFirst, group) per variable."""
        return "{" + ",".join(
            f"({v.pos_count}, {v.neg_count}, {v.sym_size}, {v.sym_first}, {v.group})"
            for v in self.values
        ) + "}"


def dump_first_order(pairs: Sequence[tuple[int, int]]) -> str:
    return "{" + ",".join(f"({p},{q})" for p, q in pairs) + "}"


def first_order_value(f: TruthTable, c: Cube, i: int) -> tuple[int, int]:
    """(|f_{c.x_i}|, |f_{c.~x_i}|) for a variable not in the cube."""
    if i in c.vars():
        raise ValueError(f"variable x{i} is restricted by the cube")
    fc = cofactor(f, c)
    pos = count_minterms(cofactor(fc, cube_of((i, True))))
    return pos, count_minterms(fc) - pos


def compute_ss_vector(
    f: TruthTable,
    c: Cube,
    sym: Sequence[SymmetryClass],
    identified: Optional[Sequence[bool]] = None,
    prev: Optional[SSVector] = None,
) -> SSVector:
    """Fill first-order values, frozen symmetry marks, and group marks.

    Without a previous vector, group serials are assigned by canonical
    first-order pair (max, min) in descending order. With one, each previous
    group is refined: the sub-group with the largest canonical pair keeps the
    old serial, the rest take fresh serials past the current maximum.
    Identified variables read (0, 0) and keep their frozen group.
    """
    n = f.n
    if identified is None:
        identified = [False] * n

    restricted = f.bits & c.mask(n)
    total = restricted.bit_count()
    pairs: list[tuple[int, int]] = []
    for i in range(n):
        if identified[i]:
            pairs.append((0, 0))
        else:
            pos = (restricted & var_mask(n, i)).bit_count()
            pairs.append((pos, total - pos))

    sym_size = [-1] * n
    sym_first = [-1] * n
    for cls in sym:
        for m in cls.members:
            sym_size[m] = cls.size
            sym_first[m] = cls.first

    canon = [(max(p, q), min(p, q)) for p, q in pairs]
    group = [0] * n
    if prev is None:
        order = sorted({canon[i] for i in range(n)}, reverse=True)
        rank = {key: g for g, key in enumerate(order)}
        for i in range(n):
            group[i] = rank[canon[i]]
    else:
        next_id = max((v.group for v in prev.values), default=-1) + 1
        old_groups: dict[int, list[int]] = {}
        for i in range(n):
            if identified[i]:
                group[i] = prev[i].group
            else:
                old_groups.setdefault(prev[i].group, []).append(i)
        for gid in sorted(old_groups):
            members = old_groups[gid]
            keys = sorted({canon[i] for i in members}, reverse=True)
            assign = {keys[0]: gid}
            for key in keys[1:]:
                assign[key] = next_id
                next_id += 1
            for i in members:
                group[i] = assign[canon[i]]

    values = tuple(
        SSValue(pairs[i][0], pairs[i][1], sym_size[i], sym_first[i], group[i])
        for i in range(n)
    )
    return SSVector(values, tuple(bool(b) for b in identified))


def determine_phases(
    v: SSVector, recorded: Optional[Sequence[int]] = None
) -> list[int]:
    """Three-way phase per variable; identified variables keep their record."""
    phases = []
    for i, val in enumerate(v.values):
        if v.identified[i]:
            phases.append(recorded[i] if recorded is not None else PHASE_UNDETERMINED)
        elif val.pos_count > val.neg_count:
            phases.append(PHASE_POSITIVE)
        elif val.pos_count < val.neg_count:
            phases.append(PHASE_NEGATIVE)
        else:
            phases.append(PHASE_UNDETERMINED)
    return phases


def vectors_compatible(vf: SSVector, vg: SSVector) -> bool:
    """Necessary condition for a mapping to exist under the current cubes.

    Per group, the multisets of (canonical first-order pair, symmetry size)
    over unidentified variables must agree; the canonical pair admits the
    opposite-phase mapping. Identified counts per group must agree too.
    """
    if len(vf) != len(vg):
        raise ValueError("arity mismatch")

    def profile(v: SSVector):
        live: dict[int, list] = {}
        frozen: dict[int, int] = {}
        for i, val in enumerate(v.values):
            if v.identified[i]:
                frozen[val.group] = frozen.get(val.group, 0) + 1
            else:
                live.setdefault(val.group, []).append((val.canonical, val.sym_size))
        return {g: sorted(items) for g, items in live.items()}, frozen

    return profile(vf) == profile(vg)


def update(state) -> bool:
    """Recompute both SS vectors under the current cubes, refresh phases and
    first-determination records, and report cross-function compatibility.

    ``state`` carries f, g, cube_f, cube_g, symmetry classes, identification
    flags, vectors, and phase records (see the matcher's MatchState).
    """
    state.vf = compute_ss_vector(
        state.f, state.cube_f, state.sym_f, state.identified_f, prev=state.vf
    )
    state.vg = compute_ss_vector(
        state.g, state.cube_g, state.sym_g, state.identified_g, prev=state.vg
    )
    for v, identified, record in (
        (state.vf, state.identified_f, state.phase_record_f),
        (state.vg, state.identified_g, state.phase_record_g),
    ):
        fresh = determine_phases(v, record)
        for i, ph in enumerate(fresh):
            if not identified[i] and record[i] == PHASE_UNDETERMINED:
                record[i] = ph
    return vectors_compatible(state.vf, state.vg)
