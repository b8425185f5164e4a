"""Transformation search: mapping sets, pruned DFS, and top-level matching.

The search maintains a pair of cube-restricted functions, their structural
signature vectors, and an ordered mapping list (one tree branch). Each
recursion either commits every forced (singleton) mapping set, or branches
over the smallest multiple set. Branches are pruned on vector incompatibility
and on phase collisions. A complete branch is verified bit-exactly before it
is reported.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import signature as sig
from .boolfn import (
    Cube,
    Literal,
    NPTransformation,
    TruthTable,
    apply_np_transform,
    count_minterms,
    equal,
    full_mask,
    negate,
)
from .signature import PHASE_NEGATIVE, PHASE_UNDETERMINED, SSVector
from .symmetry import SymmetryClass, build_symmetry_classes


class BudgetExceededError(RuntimeError):
    """Raised when the search visits more nodes than the configured cap."""

    def __init__(self, nodes: int):
        super().__init__(f"node budget exceeded after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class VarMapping:
    """Correspondence i -> j - k between a variable of f and one of g."""

    frm: int
    to: int
    pol: int  # 0 identical phase, 1 opposite phase

    def __str__(self):
        return f"{self.frm}->{self.to}-{self.pol}"


@dataclass(frozen=True)
class MappingSet:
    """Candidates for one subject: a variable or a symmetry class of f.

    Each candidate is the tuple of variable mappings it would commit
    (a single mapping for plain variables, one per member for classes).
    """

    subject: int
    is_class: bool
    candidates: tuple[tuple[VarMapping, ...], ...]

    @property
    def cardinality(self) -> int:
        return len(self.candidates)


@dataclass
class SearchStats:
    nodes_visited: int = 0
    verify_calls: int = 0


class Observer:
    """No-op hooks for tracing the search; subclass what you need."""

    def on_arm(self, output_negated: bool):
        pass

    def on_vectors(self, depth: int, state: "MatchState"):
        pass

    def on_incompatible(self, depth: int, state: "MatchState"):
        pass

    def on_collision(self, mapping: VarMapping):
        pass

    def on_commit(self, mapping: VarMapping):
        pass

    def on_cubes(self, cube_f: Cube, cube_g: Cube):
        pass

    def on_branch(self, chosen: MappingSet, candidate: tuple[VarMapping, ...]):
        pass

    def on_complete(self, map_list: tuple[VarMapping, ...], verified: bool):
        pass


_NULL_OBSERVER = Observer()


@dataclass
class MatchState:
    """Live state of one transformation search."""

    f: TruthTable
    g: TruthTable
    sym_f: Sequence[SymmetryClass]
    sym_g: Sequence[SymmetryClass]
    cube_f: Cube = field(default_factory=Cube)
    cube_g: Cube = field(default_factory=Cube)
    vf: Optional[SSVector] = None
    vg: Optional[SSVector] = None
    identified_f: list[bool] = field(default_factory=list)
    identified_g: list[bool] = field(default_factory=list)
    phase_record_f: list[int] = field(default_factory=list)
    phase_record_g: list[int] = field(default_factory=list)
    map_list: list[VarMapping] = field(default_factory=list)
    split_queue: deque = field(default_factory=deque)
    stats: SearchStats = field(default_factory=SearchStats)
    node_cap: Optional[int] = None

    @staticmethod
    def initial(f, g, sym_f, sym_g, stats=None, node_cap=None) -> "MatchState":
        n = f.n
        return MatchState(
            f=f,
            g=g,
            sym_f=sym_f,
            sym_g=sym_g,
            identified_f=[False] * n,
            identified_g=[False] * n,
            phase_record_f=[PHASE_UNDETERMINED] * n,
            phase_record_g=[PHASE_UNDETERMINED] * n,
            stats=stats or SearchStats(),
            node_cap=node_cap,
        )

    def snapshot(self):
        return (
            self.cube_f,
            self.cube_g,
            self.vf,
            self.vg,
            tuple(self.identified_f),
            tuple(self.identified_g),
            tuple(self.phase_record_f),
            tuple(self.phase_record_g),
            tuple(self.map_list),
            tuple(self.split_queue),
        )

    def restore(self, snap):
        (
            self.cube_f,
            self.cube_g,
            self.vf,
            self.vg,
            idf,
            idg,
            prf,
            prg,
            ml,
            q,
        ) = snap
        self.identified_f[:] = idf
        self.identified_g[:] = idg
        self.phase_record_f[:] = prf
        self.phase_record_g[:] = prg
        self.map_list[:] = ml
        self.split_queue.clear()
        self.split_queue.extend(q)


def check_phase_collision(state: MatchState, m: VarMapping) -> bool:
    """True when both recorded phases are determined and contradict m's polarity."""
    rf = state.phase_record_f[m.frm]
    rg = state.phase_record_g[m.to]
    if rf == PHASE_UNDETERMINED or rg == PHASE_UNDETERMINED:
        return False
    return m.pol != (0 if rf == rg else 1)


def _case_pols(sf, sg) -> set[int]:
    pols = set()
    if (sf.pos_count, sf.neg_count) == (sg.pos_count, sg.neg_count):
        pols.add(0)
    if (sf.pos_count, sf.neg_count) == (sg.neg_count, sg.pos_count):
        pols.add(1)
    return pols


def _record_constraint(state, i, j) -> Optional[int]:
    rf = state.phase_record_f[i]
    rg = state.phase_record_g[j]
    if rf == PHASE_UNDETERMINED or rg == PHASE_UNDETERMINED:
        return None
    return 0 if rf == rg else 1


def _class_relative_pols(cls: SymmetryClass, active: list[int]) -> list[int]:
    by_member = dict(zip(cls.members, cls.relative_pol))
    base = by_member[active[0]]
    return [by_member[m] ^ base for m in active]


def build_mapping_sets(state: MatchState, observer: Observer = _NULL_OBSERVER):
    """Mapping sets for every unidentified variable and live symmetry class.

    Candidates must agree on group mark and symmetry marks and satisfy one of
    the two first-order cases; candidates contradicting the phase records are
    excluded here (a collision the observer gets to see).
    """
    vf, vg = state.vf, state.vg
    n = state.f.n
    in_class_f = {m for cls in state.sym_f for m in cls.members}
    in_class_g = {m for cls in state.sym_g for m in cls.members}

    sets: list[MappingSet] = []

    for i in range(n):
        if state.identified_f[i] or i in in_class_f:
            continue
        cands = []
        for j in range(n):
            if state.identified_g[j] or j in in_class_g:
                continue
            if vf[i].group != vg[j].group:
                continue
            pols = _case_pols(vf[i], vg[j])
            need = _record_constraint(state, i, j)
            if need is not None and pols:
                if need in pols:
                    pols = {need}
                else:
                    for k in sorted(pols):
                        observer.on_collision(VarMapping(i, j, k))
                    pols = set()
            for k in sorted(pols):
                cands.append((VarMapping(i, j, k),))
        sets.append(MappingSet(i, False, tuple(cands)))

    live_g = []
    for cls in state.sym_g:
        active = [m for m in cls.members if not state.identified_g[m]]
        if active:
            live_g.append((cls, active))

    for cls_f in state.sym_f:
        active_f = [m for m in cls_f.members if not state.identified_f[m]]
        if not active_f:
            continue
        rel_f = _class_relative_pols(cls_f, active_f)
        cands = []
        for cls_g, active_g in live_g:
            if cls_g.size != cls_f.size or len(active_g) != len(active_f):
                continue
            rel_g = _class_relative_pols(cls_g, active_g)
            pair_pols: list[set[int]] = []
            feasible = True
            for a, b in zip(active_f, active_g):
                if vf[a].group != vg[b].group:
                    feasible = False
                    break
                pols = _case_pols(vf[a], vg[b])
                need = _record_constraint(state, a, b)
                if need is not None and pols:
                    if need in pols:
                        pols = {need}
                    else:
                        for k in sorted(pols):
                            observer.on_collision(VarMapping(a, b, k))
                        pols = set()
                if not pols:
                    feasible = False
                    break
                pair_pols.append(pols)
            if not feasible:
                continue
            pairs = list(zip(active_f, active_g))
            if cls_f.double and cls_g.double and len(pairs) > 1:
                # jointly negating two members is an invariance of both
                # functions, so only the polarity parity matters: one
                # candidate per achievable parity
                base = [min(p) for p in pair_pols]
                patterns = [base]
                free = [t for t, p in enumerate(pair_pols) if len(p) == 2]
                if free:
                    other = base.copy()
                    other[free[0]] ^= 1
                    patterns.append(other)
                for ks in patterns:
                    cands.append(
                        tuple(
                            VarMapping(a, b, k) for (a, b), k in zip(pairs, ks)
                        )
                    )
            else:
                base_pols = {0, 1}
                for t, pols in enumerate(pair_pols):
                    base_pols &= {p ^ rel_f[t] ^ rel_g[t] for p in pols}
                for base in sorted(base_pols):
                    cands.append(
                        tuple(
                            VarMapping(a, b, base ^ rel_f[t] ^ rel_g[t])
                            for t, (a, b) in enumerate(pairs)
                        )
                    )
        sets.append(MappingSet(cls_f.first, True, tuple(cands)))

    sets.sort(key=lambda s: s.subject)
    return sets


def select_min_set(sets: Sequence[MappingSet]) -> MappingSet:
    """First set of minimum cardinality (lowest subject index on ties)."""
    if not sets:
        raise ValueError("no mapping sets to select from")
    return min(sets, key=lambda s: (s.cardinality, s.subject))


def commit_mapping(state: MatchState, m: VarMapping) -> None:
    state.map_list.append(m)
    state.identified_f[m.frm] = True
    state.identified_g[m.to] = True
    state.split_queue.append(m)


def extend_cubes(state: MatchState) -> None:
    """Shannon-split on the oldest committed mapping not yet used."""
    m = state.split_queue.popleft()
    side_f = state.phase_record_f[m.frm] != PHASE_NEGATIVE
    side_g = side_f ^ (m.pol == 1)
    state.cube_f = state.cube_f.extended(Literal(m.frm, side_f))
    state.cube_g = state.cube_g.extended(Literal(m.to, side_g))


def transformation_from_map_list(
    map_list: Sequence[VarMapping], n: int, output_negated: bool = False
) -> NPTransformation:
    if len(map_list) != n:
        raise ValueError(f"map list has {len(map_list)} of {n} mappings")
    perm = [0] * n
    pol = [0] * n
    for m in map_list:
        perm[m.frm] = m.to
        pol[m.frm] = 1 - m.pol
    return NPTransformation(tuple(perm), tuple(pol), output_negated)


def verify(f: TruthTable, g: TruthTable, map_list: Sequence[VarMapping]) -> bool:
    t = transformation_from_map_list(map_list, f.n)
    return equal(apply_np_transform(f, t), g)


def detect(
    state: MatchState,
    observer: Observer = _NULL_OBSERVER,
    collect_all: Optional[list] = None,
    _depth: int = 0,
) -> Optional[tuple[VarMapping, ...]]:
    """Procedure-2 style DFS. Returns a verified complete mapping list, or
    None when no transformation exists on this branch. The state is restored
    to its entry value before returning.

    With collect_all, every complete branch is recorded as (map_list,
    verified) and the search exhausts the whole tree.
    """
    state.stats.nodes_visited += 1
    if state.node_cap is not None and state.stats.nodes_visited > state.node_cap:
        raise BudgetExceededError(state.stats.nodes_visited)

    n = state.f.n
    if len(state.map_list) == n:
        state.stats.verify_calls += 1
        branch = tuple(state.map_list)
        ok = verify(state.f, state.g, branch)
        observer.on_complete(branch, ok)
        if collect_all is not None:
            collect_all.append((branch, ok))
            return None
        return branch if ok else None

    snap = state.snapshot()
    try:
        if not sig.update(state):
            observer.on_incompatible(_depth, state)
            return None
        observer.on_vectors(_depth, state)

        sets = build_mapping_sets(state, observer)
        if any(s.cardinality == 0 for s in sets):
            return None

        singles = [s for s in sets if s.cardinality == 1]
        if singles:
            for s in singles:
                for m in s.candidates[0]:
                    if state.identified_f[m.frm] or state.identified_g[m.to]:
                        return None
                    commit_mapping(state, m)
                    observer.on_commit(m)
            extend_cubes(state)
            observer.on_cubes(state.cube_f, state.cube_g)
            return detect(state, observer, collect_all, _depth + 1)

        chosen = select_min_set(sets)
        inner = state.snapshot()
        for cand in chosen.candidates:
            observer.on_branch(chosen, cand)
            usable = True
            for m in cand:
                if state.identified_f[m.frm] or state.identified_g[m.to]:
                    usable = False
                    break
                commit_mapping(state, m)
                observer.on_commit(m)
            if usable:
                extend_cubes(state)
                observer.on_cubes(state.cube_f, state.cube_g)
                found = detect(state, observer, collect_all, _depth + 1)
                if found is not None:
                    return found
            state.restore(inner)
        return None
    finally:
        state.restore(snap)


class Verdict(enum.Enum):
    EQUIVALENT = "equivalent"
    NON_EQUIVALENT = "non_equivalent"


@dataclass
class MatchResult:
    verdict: Verdict
    witness: Optional[NPTransformation]
    witness_mappings: Optional[tuple[VarMapping, ...]]
    stats: SearchStats

    @property
    def equivalent(self) -> bool:
        return self.verdict is Verdict.EQUIVALENT

    def witness_text(self) -> str:
        if self.witness is None:
            return "no transformation"
        body = ", ".join(str(m) for m in self.witness_mappings)
        out = "neg" if self.witness.output_negated else "pos"
        return f"T = {{{body}}}; output={out}"


def match_npn(
    f: TruthTable,
    g: TruthTable,
    node_cap: Optional[int] = None,
    observer: Observer = _NULL_OBSERVER,
) -> MatchResult:
    """Decide NPN equivalence of f and g and produce a witness if equivalent.

    The zeroth-order signatures pick the output polarity: detection runs
    against g, against its complement, or (for balanced functions) both.
    """
    if f.n != g.n:
        raise ValueError(f"arity mismatch: {f.n} vs {g.n}")
    n = f.n
    total = 1 << n
    cf, cg = count_minterms(f), count_minterms(g)

    arms: list[bool] = []  # output polarity of each detection arm
    if cf == cg:
        arms.append(False)
    if cf == total - cg:
        arms.append(True)
    stats = SearchStats()
    if not arms:
        return MatchResult(Verdict.NON_EQUIVALENT, None, None, stats)

    sym_f = build_symmetry_classes(f)
    sym_g = build_symmetry_classes(g)
    g_neg = None
    for output_negated in arms:
        observer.on_arm(output_negated)
        if output_negated:
            g_neg = negate(g)
        target = g_neg if output_negated else g
        state = MatchState.initial(f, target, sym_f, sym_g, stats, node_cap)
        found = detect(state, observer)
        if found is not None:
            witness = transformation_from_map_list(found, n, output_negated)
            return MatchResult(Verdict.EQUIVALENT, witness, found, stats)
    return MatchResult(Verdict.NON_EQUIVALENT, None, None, stats)


def enumerate_complete_transformations(
    f: TruthTable, g: TruthTable
) -> list[tuple[tuple[VarMapping, ...], bool, bool]]:
    """Exhaust the search tree; each entry is (map_list, output_negated,
    verified). Diagnostic companion to match_npn."""
    if f.n != g.n:
        raise ValueError("arity mismatch")
    total = 1 << f.n
    cf, cg = count_minterms(f), count_minterms(g)
    sym_f = build_symmetry_classes(f)
    sym_g = build_symmetry_classes(g)
    out = []
    for output_negated in (False, True):
        if cf != (total - cg if output_negated else cg):
            continue
        target = negate(g) if output_negated else g
        state = MatchState.initial(f, target, sym_f, sym_g)
        collected: list = []
        detect(state, collect_all=collected)
        out.extend((ml, output_negated, ok) for ml, ok in collected)
    return out
