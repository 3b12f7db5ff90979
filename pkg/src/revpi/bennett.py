"""Multi-tape Turing machines, local determinism checks, Landauer history
instrumentation and Bennett's compute/copy/uncompute construction.

Rules are quintuples generalised to ``k`` tapes: in ``state`` reading the
tuple ``read``, write ``write``, move each head by ``move`` (``L``, ``R`` or
``S``) and go to ``next``.  Backward determinism is checked locally: no two
rules may agree on ``(next, write, move)``.  That criterion is sufficient for
configuration-level backward determinism (the previous head positions, state
and symbols can all be read off the unique rule) but stricter than necessary.

Machines used with :func:`bennett` must be in standard form: the input is
written from cell 0 with the head on cell 0, the halting state has no
outgoing rules, and the output is the blank-free word starting under the
head when the machine halts.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

BLANK = "_"
MOVES = {"L": -1, "R": 1, "S": 0}
_REVERSE = {"L": "R", "R": "L", "S": "S"}


class MachineError(ValueError):
    pass


class DeterminismError(MachineError):
    """Two rules apply to the same configuration."""


@dataclass(frozen=True)
class Rule:
    state: str
    read: tuple[str, ...]
    next: str
    write: tuple[str, ...]
    move: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "state": self.state,
            "read": list(self.read),
            "next": self.next,
            "write": list(self.write),
            "move": "".join(self.move),
        }


def _as_tuple(x: Union[str, Sequence[str]], tapes: int) -> tuple[str, ...]:
    if isinstance(x, str):
        return (x,) if tapes == 1 else tuple(x)
    return tuple(x)


@dataclass(frozen=True)
class TuringMachine:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    start: str
    halt: str
    rules: tuple[Rule, ...]
    tapes: int = 1
    blank: str = BLANK
    name: str = "machine"

    def __post_init__(self) -> None:
        states, symbols = set(self.states), set(self.alphabet)
        if self.blank not in symbols:
            raise MachineError("the blank symbol must belong to the alphabet")
        if self.start not in states or self.halt not in states:
            raise MachineError("start and halt must be declared states")
        for i, r in enumerate(self.rules):
            if r.state not in states or r.next not in states:
                raise MachineError(f"rule {i} uses an undeclared state")
            if not len(r.read) == len(r.write) == len(r.move) == self.tapes:
                raise MachineError(f"rule {i} does not act on {self.tapes} tape(s)")
            if not set(r.read + r.write) <= symbols:
                raise MachineError(f"rule {i} uses an undeclared symbol")
            if any(m not in MOVES for m in r.move):
                raise MachineError(f"rule {i} has an unknown head move")

    @classmethod
    def from_dict(cls, data: dict) -> "TuringMachine":
        tapes = int(data.get("tapes", 1))
        rules = []
        for r in data["rules"]:
            if isinstance(r, dict):
                state, read, nxt, write, move = r["state"], r["read"], r["next"], r["write"], r["move"]
            else:
                state, read, nxt, write, move = r
            rules.append(
                Rule(state, _as_tuple(read, tapes), nxt, _as_tuple(write, tapes), tuple(move))
            )
        return cls(
            states=tuple(data["states"]),
            alphabet=tuple(data["alphabet"]),
            start=data["start"],
            halt=data["halt"],
            rules=tuple(rules),
            tapes=tapes,
            blank=data.get("blank", BLANK),
            name=data.get("name", "machine"),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "tapes": self.tapes,
            "blank": self.blank,
            "alphabet": list(self.alphabet),
            "states": list(self.states),
            "start": self.start,
            "halt": self.halt,
            "rules": [r.to_dict() for r in self.rules],
        }


def load_machine(path: Union[str, Path]) -> TuringMachine:
    return TuringMachine.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def corpus() -> dict[str, TuringMachine]:
    """The sample machines shipped with the package, keyed by name."""
    out = {}
    for entry in sorted(resources.files("revpi.machines").iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            tm = TuringMachine.from_dict(json.loads(entry.read_text(encoding="utf-8")))
            out[tm.name] = tm
    return out


# -- configurations ----------------------------------------------------------------


@dataclass(frozen=True)
class Tape:
    cells: tuple[tuple[int, str], ...] = ()  # non-blank cells, sorted by position
    head: int = 0

    @classmethod
    def from_dict(cls, cells: dict[int, str], head: int, blank: str = BLANK) -> "Tape":
        return cls(tuple(sorted((p, s) for p, s in cells.items() if s != blank)), head)

    @classmethod
    def from_word(cls, word: Sequence[str], blank: str = BLANK) -> "Tape":
        return cls.from_dict(dict(enumerate(word)), 0, blank)

    def symbols(self) -> list[str]:
        """Contents from the leftmost to the rightmost non-blank cell."""
        if not self.cells:
            return []
        cells = dict(self.cells)
        lo, hi = self.cells[0][0], self.cells[-1][0]
        return [cells.get(p, BLANK) for p in range(lo, hi + 1)]


@dataclass(frozen=True)
class Config:
    state: str
    tapes: tuple[Tape, ...]

    def symbols(self, k: int = 0) -> list[str]:
        return self.tapes[k].symbols()

    def text(self, k: int = 0) -> str:
        syms = self.symbols(k)
        return "".join(syms) if all(len(s) == 1 for s in syms) else " ".join(syms)

    def word_at_head(self, k: int = 0, blank: str = BLANK) -> str:
        """The blank-free word starting under head ``k``."""
        cells = dict(self.tapes[k].cells)
        out, p = [], self.tapes[k].head
        while cells.get(p, blank) != blank:
            out.append(cells[p])
            p += 1
        return "".join(out)

    def output(self) -> str:
        return self.word_at_head(0)


def initial_config(tm: TuringMachine, word: Sequence[str] = "", state: Optional[str] = None) -> Config:
    tapes = (Tape.from_word(list(word), tm.blank),) + tuple(Tape() for _ in range(tm.tapes - 1))
    return Config(state or tm.start, tapes)


@dataclass(frozen=True)
class RunResult:
    config: Config
    status: str  # "halted", "stuck" or "fuel"
    steps: int
    fired: tuple[int, ...] = field(default=(), repr=False)

    @property
    def halted(self) -> bool:
        return self.status == "halted"


def _index(tm: TuringMachine) -> dict[tuple[str, tuple[str, ...]], list[int]]:
    table: dict[tuple[str, tuple[str, ...]], list[int]] = {}
    for i, r in enumerate(tm.rules):
        table.setdefault((r.state, r.read), []).append(i)
    return table


def run(tm: TuringMachine, start: Union[Config, Sequence[str]] = "", fuel: int = 10_000) -> RunResult:
    """Execute at most ``fuel`` rule firings from a word or a configuration."""
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    config = start if isinstance(start, Config) else initial_config(tm, start)
    if len(config.tapes) != tm.tapes:
        raise MachineError(f"configuration has {len(config.tapes)} tapes, machine has {tm.tapes}")
    table = _index(tm)
    state = config.state
    cells = [dict(t.cells) for t in config.tapes]
    heads = [t.head for t in config.tapes]
    fired: list[int] = []
    status = "fuel"
    while True:
        if state == tm.halt:
            status = "halted"
            break
        if len(fired) >= fuel:
            break
        read = tuple(c.get(h, tm.blank) for c, h in zip(cells, heads))
        matches = table.get((state, read))
        if not matches:
            status = "stuck"
            break
        if len(matches) > 1:
            raise DeterminismError(
                f"forward determinism violated: rules {matches} all fire in state {state!r} reading {read}"
            )
        i = matches[0]
        r = tm.rules[i]
        for k in range(tm.tapes):
            if r.write[k] == tm.blank:
                cells[k].pop(heads[k], None)
            else:
                cells[k][heads[k]] = r.write[k]
            heads[k] += MOVES[r.move[k]]
        state = r.next
        fired.append(i)
    final = Config(state, tuple(Tape.from_dict(c, h, tm.blank) for c, h in zip(cells, heads)))
    return RunResult(final, status, len(fired), tuple(fired))


# -- determinism -------------------------------------------------------------------


@dataclass(frozen=True)
class DeterminismReport:
    direction: str
    violations: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _clashes(keys: Iterable) -> tuple[tuple[int, int], ...]:
    groups: dict = {}
    for i, key in enumerate(keys):
        groups.setdefault(key, []).append(i)
    return tuple(
        pair for members in groups.values() for pair in itertools.combinations(members, 2)
    )


def check_forward_deterministic(tm: TuringMachine) -> DeterminismReport:
    """Rule pairs sharing ``(state, read)``."""
    return DeterminismReport("forward", _clashes((r.state, r.read) for r in tm.rules))


def check_backward_deterministic(tm: TuringMachine) -> DeterminismReport:
    """Rule pairs sharing ``(next, write, move)``."""
    return DeterminismReport("backward", _clashes((r.next, r.write, r.move) for r in tm.rules))


def _require_forward(tm: TuringMachine) -> None:
    report = check_forward_deterministic(tm)
    if not report.ok:
        raise DeterminismError(f"machine is not forward deterministic: {report.violations}")


# -- Landauer and Bennett ----------------------------------------------------------


def history_symbol(i: int) -> str:
    return str(i)


def _landauer_rules(tm: TuringMachine, passive: int) -> list[Rule]:
    # history on tape tm.tapes; `passive` further tapes must stay blank
    b = tm.blank
    rest = (b,) * passive
    return [
        Rule(
            r.state,
            r.read + (b,) + rest,
            r.next,
            r.write + (history_symbol(i),) + rest,
            r.move + ("R",) + ("S",) * passive,
        )
        for i, r in enumerate(tm.rules)
    ]


def _unwind_rules(tm: TuringMachine, passive_alphabet: Sequence[str], passive: int, done: str) -> list[Rule]:
    """Rules driving the history backwards from state ``~<halt>`` to ``done``.

    State ``~q`` stands for the original machine being in state ``q``.

    Each forward step ``i`` is undone in three firings: step the history head
    back onto symbol ``i``, move the work heads back, then restore the read
    symbols and erase ``i``.
    """
    b, k = tm.blank, tm.tapes
    work = list(itertools.product(tm.alphabet, repeat=k))
    others = list(itertools.product(passive_alphabet, repeat=passive))
    stay_work, stay_rest = ("S",) * k, ("S",) * passive
    rules = []
    states = {r.state for r in tm.rules} | {r.next for r in tm.rules} | {tm.start, tm.halt}
    for q in sorted(states):
        for s, t in itertools.product(work, others):
            rules.append(Rule(f"~{q}", s + (b,) + t, f"~{q}/a", s + (b,) + t, stay_work + ("L",) + stay_rest))
    for i, r in enumerate(tm.rules):
        h = history_symbol(i)
        back = tuple(_REVERSE[m] for m in r.move)
        for s, t in itertools.product(work, others):
            rules.append(Rule(f"~{r.next}/a", s + (h,) + t, f"~b{i}", s + (h,) + t, back + ("S",) + stay_rest))
        for t in others:
            rules.append(
                Rule(f"~b{i}", r.write + (h,) + t, f"~{r.state}", r.read + (b,) + t, stay_work + ("S",) + stay_rest)
            )
    for s, t in itertools.product(work, others):
        rules.append(Rule(f"~{tm.start}/a", s + (b,) + t, done, s + (b,) + t, stay_work + ("R",) + stay_rest))
    return rules


def _states_of(rules: Iterable[Rule], *extra: str) -> tuple[str, ...]:
    seen: dict[str, None] = dict.fromkeys(extra)
    for r in rules:
        seen.setdefault(r.state)
        seen.setdefault(r.next)
    return tuple(seen)


def _check_names(tm: TuringMachine, reserved: Iterable[str]) -> None:
    clash = set(tm.states) & set(reserved)
    if clash or any(q.startswith("~") for q in tm.states):
        raise MachineError(f"state names reserved by the construction: {sorted(clash) or '~*'}")


def landauer_instrument(tm: TuringMachine) -> TuringMachine:
    """Add a history tape recording the index of every fired rule."""
    _require_forward(tm)
    _check_names(tm, ())
    history = tuple(history_symbol(i) for i in range(len(tm.rules)))
    return TuringMachine(
        states=tm.states,
        alphabet=tuple(dict.fromkeys(tm.alphabet + history)),
        start=tm.start,
        halt=tm.halt,
        rules=tuple(_landauer_rules(tm, 0)),
        tapes=tm.tapes + 1,
        blank=tm.blank,
        name=f"{tm.name}+history",
    )


def landauer_unwind(tm: TuringMachine) -> TuringMachine:
    """Machine that consumes the history left by :func:`landauer_instrument`,
    starting in state ``~<halt>`` and halting in ``~done`` with the initial
    configuration restored."""
    _require_forward(tm)
    _check_names(tm, ())
    entry, done = f"~{tm.halt}", "~done"
    rules = _unwind_rules(tm, (), 0, done)
    history = tuple(history_symbol(i) for i in range(len(tm.rules)))
    return TuringMachine(
        states=_states_of(rules, entry, done),
        alphabet=tuple(dict.fromkeys(tm.alphabet + history)),
        start=entry,
        halt=done,
        rules=tuple(rules),
        tapes=tm.tapes + 1,
        blank=tm.blank,
        name=f"{tm.name}+unwind",
    )


def unwind(tm: TuringMachine, config: Config, fuel: int = 100_000) -> RunResult:
    """Undo a halted run of ``landauer_instrument(tm)``."""
    machine = landauer_unwind(tm)
    return run(machine, Config(machine.start, config.tapes), fuel)


COPY_BACK = "copy:back"


def bennett(tm: TuringMachine) -> TuringMachine:
    """Three-tape reversible machine leaving (input, blank history, output).

    The original halting state becomes the copy loop; the copy exits into
    ``~<halt>`` where the uncompute rules take over.
    """
    _require_forward(tm)
    if tm.tapes != 1:
        raise MachineError("bennett expects a one-tape machine")
    if any(r.state == tm.halt for r in tm.rules):
        raise MachineError("the halting state must not have outgoing rules")
    _check_names(tm, (COPY_BACK,))
    b = tm.blank
    entry, done = f"~{tm.halt}", "~done"
    copy = tm.halt
    rules = _landauer_rules(tm, 1)
    marks = [s for s in tm.alphabet if s != b]
    for s in marks:
        rules.append(Rule(copy, (s, b, b), copy, (s, b, s), ("R", "S", "R")))
    rules.append(Rule(copy, (b, b, b), COPY_BACK, (b, b, b), ("L", "S", "L")))
    for s in marks:
        rules.append(Rule(COPY_BACK, (s, b, s), COPY_BACK, (s, b, s), ("L", "S", "L")))
    for x in tm.alphabet:
        rules.append(Rule(COPY_BACK, (x, b, b), entry, (x, b, b), ("R", "S", "R")))
    rules += _unwind_rules(tm, tm.alphabet, 1, done)
    history = tuple(history_symbol(i) for i in range(len(tm.rules)))
    return TuringMachine(
        states=_states_of(rules, tm.start, done),
        alphabet=tuple(dict.fromkeys(tm.alphabet + history)),
        start=tm.start,
        halt=done,
        rules=tuple(rules),
        tapes=3,
        blank=b,
        name=f"{tm.name}+bennett",
    )


@dataclass(frozen=True)
class BennettResult:
    tapes: tuple[str, str, str]
    config: Config
    steps: int


def run_bennett(tm: TuringMachine, word: Sequence[str], fuel: int = 1_000_000) -> BennettResult:
    machine = bennett(tm)
    result = run(machine, initial_config(machine, word), fuel)
    if not result.halted:
        raise MachineError(f"Bennett machine did not halt ({result.status} after {result.steps} steps)")
    cfg = result.config
    return BennettResult((cfg.text(0), cfg.text(1), cfg.text(2)), cfg, result.steps)
