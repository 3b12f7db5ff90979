import itertools
import json

import pytest

from revpi.bennett import (
    BLANK,
    Config,
    DeterminismError,
    MachineError,
    Rule,
    Tape,
    TuringMachine,
    bennett,
    check_backward_deterministic,
    check_forward_deterministic,
    corpus,
    history_symbol,
    initial_config,
    landauer_instrument,
    landauer_unwind,
    load_machine,
    run,
    run_bennett,
    unwind,
)

CORPUS = corpus()
INC, ADD, REV = CORPUS["binary-increment"], CORPUS["unary-addition"], CORPUS["bit-reversal"]


def binary_words(max_len):
    for n in range(max_len + 1):
        for bits in itertools.product("01", repeat=n):
            yield "".join(bits)


# independent oracles for the three sample machines
def increment(w):
    return format(int(w or "0", 2) + 1, "b").zfill(len(w)) if w else "1"


def add(w):
    a, b = w.split("+")
    return "1" * (len(a) + len(b))


CASES = (
    [(INC, w, increment(w)) for w in binary_words(4)]
    + [(ADD, "1" * a + "+" + "1" * b, "1" * (a + b)) for a in range(4) for b in range(4)]
    + [(REV, w, w[::-1]) for w in binary_words(4)]
)


def make(rules, tapes=1, states=("q", "r", "s", "p", "h"), alphabet=(BLANK, "0", "1")):
    return TuringMachine(states, alphabet, states[0], "h", tuple(rules), tapes)


def test_sample_run():
    r = run(INC, "011")
    assert r.halted and r.config.output() == "100"


def test_increment_oracle_is_sane():
    assert increment("011") == "100" and increment("111") == "1000" and add("11+1") == "111"


@pytest.mark.parametrize("tm, word, expected", CASES, ids=lambda x: getattr(x, "name", repr(x)))
def test_corpus_machines(tm, word, expected):
    r = run(tm, word, 100_000)
    assert r.halted
    assert r.config.output() == expected


def test_empty_machine_is_stuck():
    r = run(make([]), "0101")
    assert (r.status, r.steps) == ("stuck", 0)


def test_zero_fuel_returns_initial_configuration():
    r = run(INC, "011", fuel=0)
    assert r.status == "fuel" and r.config == initial_config(INC, "011")


def test_forward_violation():
    tm = make([Rule("q", ("0",), "r", ("1",), ("R",)), Rule("q", ("0",), "s", ("0",), ("R",))])
    report = check_forward_deterministic(tm)
    assert report.violations == ((0, 1),)
    with pytest.raises(DeterminismError):
        run(tm, "0")


def test_backward_violation():
    tm = make([Rule("q", ("0",), "r", ("1",), ("R",)), Rule("p", ("1",), "r", ("1",), ("R",))])
    assert check_forward_deterministic(tm).ok
    assert check_backward_deterministic(tm).violations == ((0, 1),)


def test_corpus_is_forward_deterministic():
    for tm in CORPUS.values():
        assert check_forward_deterministic(tm).ok


def test_machine_validation():
    with pytest.raises(MachineError):
        make([Rule("q", ("2",), "h", ("0",), ("R",))])
    with pytest.raises(MachineError):
        make([Rule("q", ("0",), "nowhere", ("0",), ("R",))])
    with pytest.raises(MachineError):
        make([Rule("q", ("0",), "h", ("0",), ("X",))])
    with pytest.raises(MachineError):
        make([Rule("q", ("0", "0"), "h", ("0",), ("R",))])


def test_json_round_trip(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(REV.to_dict()))
    assert load_machine(path) == REV


def test_tape_views():
    t = Tape.from_word(list("01"))
    assert t.symbols() == ["0", "1"]
    cfg = Config("q", (t,))
    assert cfg.word_at_head(0) == "01"


# -- Landauer instrumentation ----------------------------------------------------


@pytest.mark.parametrize("tm", CORPUS.values(), ids=lambda tm: tm.name)
def test_landauer_is_backward_deterministic(tm):
    li = landauer_instrument(tm)
    assert check_forward_deterministic(li).ok
    assert check_backward_deterministic(li).ok
    un = landauer_unwind(tm)
    assert check_forward_deterministic(un).ok
    assert check_backward_deterministic(un).ok


def test_landauer_history_records_fired_rules():
    plain = run(INC, "011")
    logged = run(landauer_instrument(INC), "011")
    assert logged.config.symbols(0) == list("100")
    assert logged.config.symbols(1) == [history_symbol(i) for i in plain.fired]


@pytest.mark.parametrize("tm, word, expected", CASES[::3], ids=lambda x: getattr(x, "name", repr(x)))
def test_unwind_restores_input(tm, word, expected):
    logged = run(landauer_instrument(tm), word, 100_000)
    back = unwind(tm, logged.config)
    assert back.halted
    assert back.config.symbols(0) == list(word)
    assert back.config.symbols(1) == []


def test_instrumenting_a_reversible_machine():
    # a machine that is already reversible: flip every bit, moving right
    flip = make(
        [
            Rule("q", ("0",), "q", ("1",), ("R",)),
            Rule("q", ("1",), "q", ("0",), ("R",)),
            Rule("q", (BLANK,), "h", (BLANK,), ("S",)),
        ],
        states=("q", "h"),
    )
    assert check_backward_deterministic(landauer_instrument(flip)).ok


# -- Bennett's construction -------------------------------------------------------


@pytest.mark.parametrize("tm", CORPUS.values(), ids=lambda tm: tm.name)
def test_bennett_composite_is_reversible(tm):
    b = bennett(tm)
    assert b.tapes == 3
    assert check_forward_deterministic(b).ok
    assert check_backward_deterministic(b).ok


@pytest.mark.parametrize("tm, word, expected", CASES, ids=lambda x: getattr(x, "name", repr(x)))
def test_bennett_tapes(tm, word, expected):
    assert run_bennett(tm, word).tapes == (word, "", expected)


def test_bennett_on_a_machine_that_halts_at_once():
    idle = TuringMachine(("h",), (BLANK, "0", "1"), "h", "h", ())
    assert run_bennett(idle, "0110").tapes == ("0110", "", "0110")


def test_reserved_state_names_are_rejected():
    bad = TuringMachine(("~halt", "h"), (BLANK, "0"), "~halt", "h", ())
    with pytest.raises(MachineError):
        bennett(bad)
