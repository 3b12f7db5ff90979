"""``pi`` command-line tool.

Exit status: 0 on success (or a positive verdict), 1 on a negative verdict
(inequivalent terms, determinism violation), 2 on usage, parse or type errors.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import bennett as tmod
from .effects import AllocTerm, HideTerm, alloc_equiv, factorize, hide_equiv
from .evaluate import evaluate, invert, reval
from .models import FinFun, Permutation, denote, equiv, synth_perm
from .parser import (
    PiSyntaxError,
    parse,
    parse_comb_type,
    parse_type,
    parse_value,
    print_comb,
    print_type,
    print_value,
)
from .quantum import TOL, QuantumError, denote_q, is_density, lift_channel
from .syntax import Ascribe, Comb, PiTypeError, Prod, Sum, ValueType, idx, size
from .typecheck import check, infer


class UsageError(Exception):
    pass


def _read_program(path: str) -> Comb:
    return parse(Path(path).read_text(encoding="utf-8"))


def _endpoints(c: Comb, type_text: Optional[str]) -> tuple[ValueType, ValueType]:
    if type_text:
        return parse_comb_type(type_text)
    if isinstance(c, Ascribe):
        return c.dom, c.cod
    t = infer(c)
    try:
        size(t.dom), size(t.cod)
    except PiTypeError:
        raise UsageError(f"type {t} is not ground; pass --type or ascribe the program") from None
    return t.dom, t.cod


def _emit(args, human: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(human)


def _complex_json(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _matrix_json(m: np.ndarray) -> list:
    m = np.asarray(m)
    if m.ndim == 1:
        return [_complex_json(z) for z in m]
    return [[_complex_json(z) for z in row] for row in m]


def _parse_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        re, im = x
        return complex(re, im)
    return complex(x)


def _parse_matrix(text: str) -> np.ndarray:
    data = json.loads(text)
    return np.array([[_parse_complex(x) for x in row] for row in data], dtype=complex)


# -- subcommands ----------------------------------------------------------------


def cmd_check(args) -> int:
    c = _read_program(args.file)
    if isinstance(c, Ascribe) or args.type:
        dom, cod = _endpoints(c, args.type)
        check(c, dom, cod)
        text = f"{print_type(dom)} <-> {print_type(cod)}"
    else:
        text = str(infer(c))
    _emit(args, text, {"type": text})
    return 0


def cmd_run(args) -> int:
    c = _read_program(args.file)
    dom, cod = _endpoints(c, args.type)
    check(c, dom, cod)
    v = parse_value(args.input)
    expected = cod if args.reverse else dom
    idx(v, expected)  # raises on a type mismatch
    out = reval(c, v) if args.reverse else evaluate(c, v)
    _emit(args, print_value(out), {"value": print_value(out)})
    return 0


def cmd_invert(args) -> int:
    c = invert(_read_program(args.file))
    _emit(args, print_comb(c), {"program": print_comb(c)})
    return 0


def cmd_equiv(args) -> int:
    a, b = _read_program(args.a), _read_program(args.b)
    dom, cod = parse_comb_type(args.type)
    same = equiv(a, b, dom, cod)
    _emit(args, "equivalent" if same else "not equivalent", {"equivalent": same})
    return 0 if same else 1


def cmd_denote(args) -> int:
    c = _read_program(args.file)
    dom, cod = _endpoints(c, args.type)
    image = list(denote(c, dom, cod).image)
    print(json.dumps(image))
    return 0


def cmd_synth(args) -> int:
    p = Permutation(tuple(json.loads(args.perm)))
    b = parse_type(args.type)
    c = synth_perm(p, b)
    _emit(args, print_comb(c), {"program": print_comb(c)})
    return 0


def cmd_factor(args) -> int:
    pairs = []
    for item in filter(None, (s.strip() for s in args.fun.split(","))):
        a, _, b = item.partition(":")
        pairs.append((int(a), int(b)))
    f = FinFun.from_pairs(pairs, args.dom, args.cod)
    fac = factorize(f)
    data = {
        "dom": fac.dom_size,
        "cod": fac.cod_size,
        "heap": fac.heap,
        "garbage": fac.garbage,
        "bij": list(fac.bij.image),
        "recomposed": list(fac.recompose().table),
    }
    print(json.dumps(data, sort_keys=True))
    return 0


def _split_sum(b: ValueType, what: str) -> tuple[ValueType, ValueType]:
    if not isinstance(b, Sum):
        raise UsageError(f"{what} must have the form 'input + hidden', got {print_type(b)}")
    return b.left, b.right


def _split_prod(b: ValueType, what: str) -> tuple[ValueType, ValueType]:
    if not isinstance(b, Prod):
        raise UsageError(f"{what} must have the form 'output * garbage', got {print_type(b)}")
    return b.left, b.right


def _layer_term(path: str, layer: str):
    c = _read_program(path)
    if not isinstance(c, Ascribe):
        raise UsageError(f"{path}: layer terms need an ascription 'c : b1 + h <-> b2'")
    dom, hidden = _split_sum(c.dom, "domain")
    t = AllocTerm(dom, hidden, c.cod, c)
    if layer == "alloc":
        return t
    out, garbage = _split_prod(c.cod, "codomain")
    return HideTerm(dom, out, garbage, t)


def cmd_arrow_equiv(args) -> int:
    a, b = _layer_term(args.a, args.layer), _layer_term(args.b, args.layer)
    same = alloc_equiv(a, b) if args.layer == "alloc" else hide_equiv(a, b)
    if args.layer == "alloc":
        tables = [a.injection().mapping, b.injection().mapping]
    else:
        tables = [a.function().table, b.function().table]
    _emit(
        args,
        "equivalent" if same else "not equivalent",
        {"equivalent": same, "tables": [list(t) for t in tables]},
    )
    return 0 if same else 1


def _format_vector(v: np.ndarray) -> str:
    # adding 0.0 turns -0.0 into 0.0
    return np.array2string(np.round(v, 12) + 0.0, precision=6, suppress_small=True)


def _parse_state(text: str, b: ValueType, tol: float) -> np.ndarray:
    n = size(b)
    stripped = text.strip()
    if stripped.startswith("["):
        psi = np.array([_parse_complex(x) for x in json.loads(stripped)], dtype=complex)
    else:
        psi = np.zeros(n, dtype=complex)
        psi[idx(parse_value(stripped), b)] = 1
    if psi.shape != (n,):
        raise UsageError(f"state has {psi.shape[0]} amplitudes, type {print_type(b)} needs {n}")
    if abs(np.linalg.norm(psi) - 1) > tol:
        raise UsageError("state is not normalized")
    return psi


def cmd_qrun(args) -> int:
    c = _read_program(args.file)
    dom, cod = _endpoints(c, args.type)
    u = denote_q(c, dom, cod)
    psi = _parse_state(args.state, dom, args.tol)
    out = u @ psi
    _emit(args, _format_vector(out), {"state": _matrix_json(out)})
    return 0


def cmd_qchan(args) -> int:
    c = _read_program(args.file)
    if not isinstance(c, Ascribe):
        raise UsageError("channel programs need an ascription 'c : b1 + h <-> b2 * g'")
    dom, hidden = _split_sum(c.dom, "domain")
    out, garbage = _split_prod(c.cod, "codomain")
    ch = lift_channel(c, dom, hidden, out, garbage)
    rho = _parse_matrix(args.rho)
    if not is_density(rho, args.tol):
        raise UsageError("--rho is not a density matrix (Hermitian, unit trace, positive)")
    if rho.shape[0] != ch.dom_dim:
        raise UsageError(f"--rho has dimension {rho.shape[0]}, the channel expects {ch.dom_dim}")
    result = ch(rho)
    _emit(args, _format_vector(result), {"rho": _matrix_json(result)})
    return 0


def _tm_result_json(result: tmod.RunResult, tm: tmod.TuringMachine, output_tape: int) -> dict:
    cfg = result.config
    return {
        "status": result.status,
        "steps": result.steps,
        "state": cfg.state,
        "tapes": [cfg.symbols(k) for k in range(tm.tapes)],
        "heads": [t.head for t in cfg.tapes],
        "output": cfg.word_at_head(output_tape, tm.blank),
    }


def cmd_tm(args) -> int:
    tm = tmod.load_machine(args.machine)
    if args.action == "check":
        fwd = tmod.check_forward_deterministic(tm)
        bwd = tmod.check_backward_deterministic(tm)
        data = {
            "forward": {"ok": fwd.ok, "violations": [list(p) for p in fwd.violations]},
            "backward": {"ok": bwd.ok, "violations": [list(p) for p in bwd.violations]},
        }
        human = "\n".join(
            f"{r.direction}: {'ok' if r.ok else 'violations ' + str([list(p) for p in r.violations])}"
            for r in (fwd, bwd)
        )
        _emit(args, human, data)
        return 0 if fwd.ok and bwd.ok else 1
    # the composite leaves its result on the third tape
    output_tape = 2 if args.action == "bennett" else 0
    if args.action == "run":
        machine = tm
    elif args.action == "landauer":
        machine = tmod.landauer_instrument(tm)
    else:
        machine = tmod.bennett(tm)
    if args.input is None:
        print(json.dumps(machine.to_dict(), sort_keys=True))
        return 0
    result = tmod.run(machine, args.input, args.fuel)
    data = _tm_result_json(result, machine, output_tape)
    human = "\n".join(
        [f"{result.status} after {result.steps} steps in state {result.config.state}"]
        + [f"tape {k + 1}: {result.config.text(k)}" for k in range(machine.tapes)]
    )
    _emit(args, human, data)
    return 0 if result.halted else 1


# -- wiring -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pi", description="Reversible programming with Pi.")
    ap.add_argument("--format", choices=("human", "json"), default="human")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="print the principal type, or check the ascription")
    p.add_argument("file")
    p.add_argument("--type")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run", help="evaluate a program on a value")
    p.add_argument("file")
    p.add_argument("--input", required=True)
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--type")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("invert", help="print the inverse program")
    p.add_argument("file")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("equiv", help="decide program equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--type", required=True)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("denote", help="print the permutation as a JSON array")
    p.add_argument("file")
    p.add_argument("--type")
    p.set_defaults(func=cmd_denote)

    p = sub.add_parser("synth", help="synthesize a program from a permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--type", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("factor", help="factor a finite function as injection, bijection, projection")
    p.add_argument("--fun", required=True, help='e.g. "0:0,1:0"')
    p.add_argument("--dom", type=int, required=True)
    p.add_argument("--cod", type=int, required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("arrow-equiv", help="compare two allocation or hiding terms extensionally")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--layer", choices=("alloc", "hide"), default="alloc")
    p.set_defaults(func=cmd_arrow_equiv)

    p = sub.add_parser("qrun", help="apply a quantum program to a ket")
    p.add_argument("file")
    p.add_argument("--state", required=True, help="value literal or JSON list of [re, im] amplitudes")
    p.add_argument("--type")
    p.add_argument("--tol", type=float, default=TOL, help="normalization tolerance")
    p.set_defaults(func=cmd_qrun)

    p = sub.add_parser("qchan", help="apply the channel of 'c : b1 + h <-> b2 * g' to a density matrix")
    p.add_argument("file")
    p.add_argument("--rho", required=True, help="JSON matrix of [re, im] entries")
    p.add_argument("--tol", type=float, default=TOL, help="density-matrix validation tolerance")
    p.set_defaults(func=cmd_qchan)

    p = sub.add_parser("tm", help="Turing machine tools")
    p.add_argument("action", choices=("run", "check", "landauer", "bennett"))
    p.add_argument("machine")
    p.add_argument("--input")
    p.add_argument("--fuel", type=int, default=100_000)
    p.set_defaults(func=cmd_tm)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PiSyntaxError, PiTypeError, UsageError, tmod.MachineError, QuantumError, ValueError, OSError) as e:
        print(f"pi {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
