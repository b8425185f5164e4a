"""Ground-truth machinery: brute-force matching, NPN class enumeration,
and seeded random-instance generators.

Everything here is deliberately independent of the search engine so the two
can check each other.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .boolfn import (
    NPTransformation,
    TruthTable,
    apply_np_transform,
    equal,
    full_mask,
)

EXHAUSTIVE_MAX_VARS = 8
ENUMERATE_MAX_VARS = 4

KIND_TYPE1 = "type1_random"
KIND_TYPE2 = "type2_balanced"
_KIND_ALIASES = {
    "type1": KIND_TYPE1,
    "type2": KIND_TYPE2,
    KIND_TYPE1: KIND_TYPE1,
    KIND_TYPE2: KIND_TYPE2,
}


def all_transformations(n: int) -> Iterator[NPTransformation]:
    """Every NPN transformation, in the reference enumeration order:
    permutations lexicographic, input polarities as ascending n-bit integers
    (bit i = polarity of input i), positive output before negative."""
    for perm in itertools.permutations(range(n)):
        for pol_bits in range(1 << n):
            pol = tuple((pol_bits >> i) & 1 for i in range(n))
            yield NPTransformation(perm, pol, False)
            yield NPTransformation(perm, pol, True)


def exhaustive_match(f: TruthTable, g: TruthTable) -> Optional[NPTransformation]:
    """First transformation (in reference order) carrying f onto g, if any."""
    if f.n != g.n:
        raise ValueError(f"arity mismatch: {f.n} vs {g.n}")
    if f.n > EXHAUSTIVE_MAX_VARS:
        raise ValueError(f"n={f.n} exceeds brute-force budget (n <= {EXHAUSTIVE_MAX_VARS})")
    for t in all_transformations(f.n):
        if equal(apply_np_transform(f, t), g):
            return t
    return None


@dataclass(frozen=True)
class NPNClasses:
    """NPN partition of all n-variable functions.

    canonical[v] is the smallest truth-table integer in v's orbit;
    representatives holds each such minimum once, ascending.
    """

    n: int
    representatives: tuple[TruthTable, ...]
    canonical: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.representatives)


def enumerate_npn_classes(n: int) -> NPNClasses:
    if n > ENUMERATE_MAX_VARS:
        raise ValueError(f"n={n} exceeds enumeration budget (n <= {ENUMERATE_MAX_VARS})")
    total = 1 << (1 << n)
    transforms = list(all_transformations(n))
    canonical = [-1] * total
    reps = []
    for v in range(total):
        if canonical[v] != -1:
            continue
        f = TruthTable(n, v)
        for t in transforms:
            canonical[apply_np_transform(f, t).bits] = v
        reps.append(f)
    return NPNClasses(n, tuple(reps), tuple(canonical))


def _random_table(rng: random.Random, n: int, kind: str) -> TruthTable:
    kind = _KIND_ALIASES[kind]
    size = 1 << n
    if kind == KIND_TYPE1:
        return TruthTable(n, rng.getrandbits(size) & full_mask(n))
    bits = 0
    for m in rng.sample(range(size), size // 2):
        bits |= 1 << m
    return TruthTable(n, bits)


def _random_np_transform(rng: random.Random, n: int) -> NPTransformation:
    perm = list(range(n))
    rng.shuffle(perm)
    pol = tuple(rng.getrandbits(1) for _ in range(n))
    return NPTransformation(tuple(perm), pol, bool(rng.getrandbits(1)))


def random_function(n: int, kind: str, seed: int) -> TruthTable:
    """type1_random: each minterm present with probability 1/2.
    type2_balanced: exactly 2^(n-1) minterms, uniformly chosen."""
    if kind not in _KIND_ALIASES:
        raise ValueError(f"unknown kind {kind!r}")
    return _random_table(random.Random(seed), n, kind)


def random_equivalent_pair(
    n: int, kind: str, seed: int
) -> tuple[TruthTable, TruthTable, NPTransformation]:
    """(f, g, t_hidden) with g = f transformed by a random t_hidden."""
    if kind not in _KIND_ALIASES:
        raise ValueError(f"unknown kind {kind!r}")
    rng = random.Random(seed)
    f = _random_table(rng, n, kind)
    t_hidden = _random_np_transform(rng, n)
    return f, apply_np_transform(f, t_hidden), t_hidden
