"""Function file formats, benchmark harness, and command-line front end."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .boolfn import (
    Cube,
    Literal,
    MAX_VARS,
    TruthTable,
    apply_np_transform,
    count_minterms,
    equal,
)
from .matcher import BudgetExceededError, Observer, match_npn
from .oracle import (
    EXHAUSTIVE_MAX_VARS,
    _KIND_ALIASES,
    _random_np_transform,
    _random_table,
    enumerate_npn_classes,
    exhaustive_match,
    random_equivalent_pair,
)

import random


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


def _hex_digits(n: int) -> int:
    return (1 << max(n, 2)) // 4


def parse_function(text: str) -> TruthTable:
    """Read either the hex form (vars=N / tt=HEX) or the PLA subset
    (.i/.o/.p/.e directives plus cover lines; leftmost input column is x0,
    '1' outputs only)."""
    lines = text.splitlines()
    stripped = [
        (no, raw.strip())
        for no, raw in enumerate(lines, start=1)
        if raw.strip() and not raw.strip().startswith("#")
    ]
    if not stripped:
        raise ParseError("empty function file", 1)
    if stripped[0][1].startswith(".i") or stripped[0][1].startswith(".o"):
        return _parse_pla(stripped)
    return _parse_hex(stripped)


def _parse_hex(lines: list[tuple[int, str]]) -> TruthTable:
    fields = {}
    for no, line in lines:
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", no)
        key, _, value = line.partition("=")
        fields[key.strip()] = (no, value.strip())
    if "vars" not in fields:
        raise ParseError("missing vars= line", lines[0][0])
    no, raw_n = fields["vars"]
    try:
        n = int(raw_n)
    except ValueError:
        raise ParseError(f"bad variable count {raw_n!r}", no) from None
    if not 0 <= n <= MAX_VARS:
        raise ParseError(f"variable count {n} out of range [0, {MAX_VARS}]", no)
    if "tt" not in fields:
        raise ParseError("missing tt= line", lines[-1][0])
    no, digits = fields["tt"]
    want = _hex_digits(n)
    if len(digits) != want:
        raise ParseError(
            f"tt needs {want} hex digits for vars={n}, got {len(digits)}", no,
            len("tt=") + 1,
        )
    try:
        bits = int(digits, 16)
    except ValueError:
        bad = next(i for i, c in enumerate(digits) if c not in "0123456789abcdefABCDEF")
        raise ParseError(f"bad hex digit {digits[bad]!r}", no, len("tt=") + 1 + bad)
    try:
        return TruthTable(n, bits)
    except ValueError as exc:
        raise ParseError(str(exc), no) from None


def _parse_pla(lines: list[tuple[int, str]]) -> TruthTable:
    n: Optional[int] = None
    cover: list[Sequence[tuple[int, bool]]] = []
    for no, line in lines:
        if line.startswith(".i "):
            try:
                n = int(line[3:])
            except ValueError:
                raise ParseError(f"bad .i count {line[3:]!r}", no, 4) from None
            if not 0 <= n <= MAX_VARS:
                raise ParseError(f".i {n} out of range [0, {MAX_VARS}]", no, 4)
        elif line.startswith(".o "):
            if line[3:].strip() != "1":
                raise ParseError("only single-output PLA is supported", no, 4)
        elif line.startswith(".p ") or line == ".e":
            continue
        elif line.startswith("."):
            raise ParseError(f"unsupported directive {line.split()[0]!r}", no)
        else:
            if n is None:
                raise ParseError("cover line before .i", no)
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("cover line needs input and output columns", no)
            inp, out = parts
            if len(inp) != n:
                raise ParseError(f"expected {n} input columns, got {len(inp)}", no)
            if out != "1":
                raise ParseError("only '1' output rows are supported", no, len(inp) + 2)
            cube = []
            for col, ch in enumerate(inp):  # leftmost column is x0
                if ch == "1":
                    cube.append((col, True))
                elif ch == "0":
                    cube.append((col, False))
                elif ch != "-":
                    raise ParseError(f"bad input character {ch!r}", no, col + 1)
            cover.append(cube)
    if n is None:
        raise ParseError("missing .i directive", lines[0][0])
    return TruthTable.from_cover(n, cover)


def serialize_function(f: TruthTable, form: str = "hex") -> str:
    if form == "hex":
        return f"vars={f.n}\ntt={f.bits:0{_hex_digits(f.n)}x}\n"
    if form == "pla":
        rows = []
        for m in f.minterms():
            rows.append(
                "".join("1" if (m >> i) & 1 else "0" for i in range(f.n)) + " 1"
            )
        body = "\n".join(rows)
        return f".i {f.n}\n.o 1\n.p {len(rows)}\n{body}\n.e\n"
    raise ValueError(f"unknown form {form!r}")


@dataclass(frozen=True)
class BenchRow:
    n: int
    mode: str
    kind: str
    pairs: int
    min_s: float
    max_s: float
    avg_s: float


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]

    def to_csv(self) -> str:
        out = ["n,mode,kind,pairs,min_s,max_s,avg_s"]
        for r in sorted(self.rows, key=lambda r: r.n):
            out.append(
                f"{r.n},{r.mode},{r.kind},{r.pairs},"
                f"{r.min_s:.6f},{r.max_s:.6f},{r.avg_s:.6f}"
            )
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class BenchConfig:
    vars_lo: int
    vars_hi: int
    pairs: int
    mode: str  # "equiv" | "nonequiv"
    kind: str
    seed: int

    def __post_init__(self):
        if not 2 <= self.vars_lo <= self.vars_hi <= MAX_VARS:
            raise ValueError(f"variable range {self.vars_lo}..{self.vars_hi} invalid")
        if self.pairs < 1:
            raise ValueError("pair count must be positive")
        if self.mode not in ("equiv", "nonequiv"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.kind not in _KIND_ALIASES:
            raise ValueError(f"unknown kind {self.kind!r}")


def _nonequivalent_pair(rng: random.Random, n: int, kind: str):
    """Independent random functions, rejection-sampled so the zeroth-order
    signatures are equal or complementary, and genuinely non-equivalent."""
    while True:
        f = _random_table(rng, n, kind)
        g = _random_table(rng, n, kind)
        cf, cg = count_minterms(f), count_minterms(g)
        if cf != cg and cf != (1 << n) - cg:
            continue
        if n <= EXHAUSTIVE_MAX_VARS:
            if exhaustive_match(f, g) is None:
                return f, g
        elif not match_npn(f, g).equivalent:
            return f, g


def generate_bench_pairs(config: BenchConfig, n: int) -> list:
    rng = random.Random(config.seed * 1_000_003 + n)
    out = []
    for i in range(config.pairs + 1):  # extra pair used as warm-up
        if config.mode == "equiv":
            f, g, _ = random_equivalent_pair(
                n, config.kind, rng.randrange(1 << 62)
            )
        else:
            f, g = _nonequivalent_pair(rng, n, config.kind)
        out.append((f, g))
    return out


def run_benchmark(config: BenchConfig) -> BenchReport:
    rows = []
    for n in range(config.vars_lo, config.vars_hi + 1):
        pairs = generate_bench_pairs(config, n)
        times = []
        for i, (f, g) in enumerate(pairs):
            start = time.perf_counter()
            match_npn(f, g)
            elapsed = time.perf_counter() - start
            if i > 0:  # first pair warms caches; excluded from stats
                times.append(elapsed)
        rows.append(
            BenchRow(
                n,
                config.mode,
                config.kind,
                len(times),
                min(times),
                max(times),
                sum(times) / len(times),
            )
        )
    return BenchReport(tuple(rows))


class TraceObserver(Observer):
    """Prints the per-recursion search narrative in dump notation."""

    def __init__(self, out):
        self.out = out

    def on_arm(self, output_negated):
        which = "negated" if output_negated else "positive"
        print(f"-- detecting against {which} target --", file=self.out)

    def on_vectors(self, depth, state):
        print(f"[{depth}] V_f={state.vf.dump()}", file=self.out)
        print(f"[{depth}] V_g={state.vg.dump()}", file=self.out)

    def on_incompatible(self, depth, state):
        print(f"[{depth}] vectors incompatible; prune", file=self.out)

    def on_collision(self, m):
        print(f"phase collision on {m}", file=self.out)

    def on_commit(self, m):
        print(f"commit {m}", file=self.out)

    def on_cubes(self, cube_f, cube_g):
        print(f"cube_f={cube_f} cube_g={cube_g}", file=self.out)

    def on_branch(self, chosen, candidate):
        body = ", ".join(str(m) for m in candidate)
        print(f"branch on subject {chosen.subject}: {{{body}}}", file=self.out)

    def on_complete(self, map_list, verified):
        verdict = "verified" if verified else "rejected"
        body = ", ".join(str(m) for m in map_list)
        print(f"complete branch {{{body}}}: {verdict}", file=self.out)


def _load(path: str) -> TruthTable:
    with open(path) as fh:
        return parse_function(fh.read())


def _witness_json(result) -> dict:
    payload = {
        "verdict": result.verdict.value,
        "witness": None,
        "nodes_visited": result.stats.nodes_visited,
        "verify_calls": result.stats.verify_calls,
    }
    if result.witness is not None:
        payload["witness"] = {
            "perm": list(result.witness.perm),
            "input_pol": list(result.witness.input_pol),
            "output_pol": int(result.witness.output_negated),
        }
    return payload


def _cmd_match(args) -> int:
    f, g = _load(args.f), _load(args.g)
    observer = TraceObserver(sys.stdout) if args.trace else Observer()
    start = time.perf_counter()
    result = match_npn(f, g, node_cap=args.node_cap, observer=observer)
    elapsed = time.perf_counter() - start
    if args.json:
        payload = _witness_json(result)
        payload["elapsed_s"] = elapsed
        print(json.dumps(payload))
    elif result.equivalent:
        print(result.witness_text())
    else:
        print("non-equivalent")
    return 0 if result.equivalent else 1


def _cmd_oracle(args) -> int:
    f, g = _load(args.f), _load(args.g)
    t = exhaustive_match(f, g)
    if t is None:
        print("non-equivalent")
        return 1
    pol = "".join(str(p) for p in t.input_pol)
    out = "neg" if t.output_negated else "pos"
    print(f"perm={list(t.perm)} input_pol={pol} output={out}")
    return 0


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    for _ in range(args.count):
        if args.equivalent_pair:
            f = _random_table(rng, args.vars, args.kind)
            g = apply_np_transform(f, _random_np_transform(rng, args.vars))
            print(serialize_function(f), end="")
            print(serialize_function(g), end="")
        else:
            print(serialize_function(_random_table(rng, args.vars, args.kind)), end="")
        print()
    return 0


def _cmd_bench(args) -> int:
    lo, _, hi = args.vars.partition("..")
    config = BenchConfig(
        vars_lo=int(lo),
        vars_hi=int(hi) if hi else int(lo),
        pairs=args.pairs,
        mode=args.mode,
        kind=args.kind,
        seed=args.seed,
    )
    report = run_benchmark(config)
    csv = report.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    else:
        print(csv, end="")
    return 0


def _cmd_classify(args) -> int:
    print(f"{enumerate_npn_classes(args.vars).count} classes")
    return 0


def _cmd_trace(args) -> int:
    args.json = False
    args.node_cap = None
    args.trace = True
    return _cmd_match(args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="npnmatch", description="NPN Boolean matching toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", help="decide NPN equivalence of two functions")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--json", action="store_true")
    p.add_argument("--node-cap", type=int, default=None)
    p.set_defaults(func=_cmd_match, trace=False)

    p = sub.add_parser("oracle", help="brute-force matching (n <= 8)")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="generate random functions")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--kind", choices=["type1", "type2"], required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--equivalent-pair", action="store_true")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="timing harness over random pairs")
    p.add_argument("--vars", required=True, metavar="LO..HI")
    p.add_argument("--pairs", type=int, required=True)
    p.add_argument("--mode", choices=["equiv", "nonequiv"], required=True)
    p.add_argument("--kind", choices=["type1", "type2"], required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("classify", help="count NPN classes (n <= 4)")
    p.add_argument("--vars", type=int, required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("trace", help="match with per-recursion vector dumps")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=_cmd_trace)
    return parser


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (OSError, ValueError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch())
