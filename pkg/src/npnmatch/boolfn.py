"""Immutable Boolean-function kernel over dense truth tables.

A function of n variables (0 <= n <= 22) is a 2^n-bit integer: bit m is
f(m), where input x_i is bit i of the minterm index m (x_0 is the least
significant bit). All operations are pure; values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

MAX_VARS = 22


@lru_cache(maxsize=None)
def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def var_mask(n: int, i: int) -> int:
    """Bit mask over 2^n positions selecting minterms with bit i set."""
    width = 1 << (i + 1)
    block = ((1 << (1 << i)) - 1) << (1 << i)
    while width < (1 << n):
        block |= block << width
        width <<= 1
    return block


@dataclass(frozen=True)
class Literal:
    var: int
    positive: bool

    def __str__(self):
        return f"x{self.var}" if self.positive else f"~x{self.var}"


@dataclass(frozen=True)
class Cube:
    """Conjunction of literals over distinct variables.

    The empty cube is the constant-true restriction.
    """

    literals: tuple[Literal, ...] = ()

    def __post_init__(self):
        seen = set()
        for lit in self.literals:
            if lit.var in seen:
                raise ValueError(f"duplicate variable x{lit.var} in cube")
            seen.add(lit.var)

    def vars(self) -> set[int]:
        return {lit.var for lit in self.literals}

    def extended(self, lit: Literal) -> "Cube":
        return Cube(self.literals + (lit,))

    def mask(self, n: int) -> int:
        m = full_mask(n)
        for lit in self.literals:
            vm = var_mask(n, lit.var)
            m &= vm if lit.positive else (full_mask(n) & ~vm)
        return m

    def __str__(self):
        if not self.literals:
            return "true"
        return "".join(str(lit) for lit in self.literals)


def cube_of(*lits: tuple[int, bool]) -> Cube:
    return Cube(tuple(Literal(v, p) for v, p in lits))


@dataclass(frozen=True)
class NPTransformation:
    """Input permutation + per-input polarity + output polarity.

    perm[i] = sigma(i): variable x_i of the transformed function reads
    x_{sigma(i)}. input_pol[i] = alpha_i, with alpha_i = 1 meaning the
    positive literal (x^1 = x, x^0 = complement). output_negated
    complements the result.
    """

    perm: tuple[int, ...]
    input_pol: tuple[int, ...]
    output_negated: bool = False

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError("perm is not a permutation")
        if len(self.input_pol) != n:
            raise ValueError("input_pol length mismatch")

    @staticmethod
    def identity(n: int) -> "NPTransformation":
        return NPTransformation(tuple(range(n)), (1,) * n, False)

    def inverse(self) -> "NPTransformation":
        n = len(self.perm)
        inv_perm = [0] * n
        inv_pol = [1] * n
        for i in range(n):
            inv_perm[self.perm[i]] = i
            inv_pol[self.perm[i]] = self.input_pol[i]
        return NPTransformation(tuple(inv_perm), tuple(inv_pol), self.output_negated)


@dataclass(frozen=True)
class TruthTable:
    """A complete single-output Boolean function over n variables."""

    n: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VARS:
            raise ValueError(f"variable count {self.n} out of range [0, {MAX_VARS}]")
        if not 0 <= self.bits <= full_mask(self.n):
            raise ValueError("bit vector does not fit 2^n bits")

    @staticmethod
    def constant(n: int, value: bool) -> "TruthTable":
        return TruthTable(n, full_mask(n) if value else 0)

    @staticmethod
    def from_minterms(n: int, minterms: Iterable[int]) -> "TruthTable":
        bits = 0
        for m in minterms:
            bits |= 1 << m
        return TruthTable(n, bits)

    @staticmethod
    def from_cover(n: int, cover: Sequence[Sequence[tuple[int, bool]]]) -> "TruthTable":
        """Disjunction of cubes, each cube a sequence of (var, positive)."""
        bits = 0
        for cube in cover:
            bits |= Cube(tuple(Literal(v, p) for v, p in cube)).mask(n)
        return TruthTable(n, bits)

    def evaluate(self, minterm: int) -> int:
        return (self.bits >> minterm) & 1

    def minterms(self) -> list[int]:
        return [m for m in range(1 << self.n) if (self.bits >> m) & 1]


def count_minterms(f: TruthTable) -> int:
    return f.bits.bit_count()


def cofactor(f: TruthTable, c: Cube) -> TruthTable:
    """Restriction of f to the cube: the product c*f over the same n variables.

    Minterm positions stay stable across recursions, and counting the result
    counts each surviving minterm once.
    """
    for lit in c.literals:
        if lit.var >= f.n:
            raise ValueError(f"cube variable x{lit.var} out of range for n={f.n}")
    if not c.literals:
        return f
    return TruthTable(f.n, f.bits & c.mask(f.n))


def negate(f: TruthTable) -> TruthTable:
    return TruthTable(f.n, f.bits ^ full_mask(f.n))


def equal(f: TruthTable, g: TruthTable) -> bool:
    if f.n != g.n:
        raise ValueError(f"arity mismatch: {f.n} vs {g.n}")
    return f.bits == g.bits


def _negate_var(bits: int, n: int, i: int) -> int:
    vm = var_mask(n, i)
    shift = 1 << i
    return ((bits & vm) >> shift) | ((bits & ~vm & full_mask(n)) << shift)


def _swap_vars(bits: int, n: int, i: int, j: int) -> int:
    if i == j:
        return bits
    if i < j:
        i, j = j, i
    mi = var_mask(n, i)
    mj = var_mask(n, j)
    hi = bits & mi & ~mj  # i set, j clear: moves down
    lo = bits & mj & ~mi  # j set, i clear: moves up
    d = (1 << i) - (1 << j)
    return (bits & ~(hi | lo)) | (hi >> d) | (lo << d)


def apply_np_transform(f: TruthTable, t: NPTransformation) -> TruthTable:
    """h with h(X) = f(TX), complemented when the output polarity is negative.

    Variable x_i of f is substituted by x_{perm[i]} when input_pol[i] = 1 and
    by its complement when input_pol[i] = 0.
    """
    n = f.n
    if len(t.perm) != n:
        raise ValueError(f"permutation length {len(t.perm)} != n={n}")
    bits = f.bits
    # h(m) = f(a) with a_i = m[perm[i]] xor (1 - pol[i]): first fold the
    # negations into f, then relabel variable i of the result as perm[i].
    for i in range(n):
        if t.input_pol[i] == 0:
            bits = _negate_var(bits, n, i)
    perm = list(t.perm)
    for i in range(n):
        while perm[i] != i:
            j = perm[i]
            bits = _swap_vars(bits, n, i, j)
            perm[i], perm[j] = perm[j], perm[i]
    if t.output_negated:
        bits ^= full_mask(n)
    return TruthTable(n, bits)


def compose(first: NPTransformation, second: NPTransformation) -> NPTransformation:
    """Transformation t with apply(f, t) = apply(apply(f, first), second)."""
    n = len(first.perm)
    perm = tuple(second.perm[first.perm[i]] for i in range(n))
    pol = tuple(
        1 ^ first.input_pol[i] ^ second.input_pol[first.perm[i]] for i in range(n)
    )
    return NPTransformation(perm, pol, first.output_negated ^ second.output_negated)
