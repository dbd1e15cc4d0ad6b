"""Command-line front end: ``qcanon <command> ...``.

Exit status: 0 success, 1 usage or input error, 2 a verification found a failure.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import kashiwara as kw
from . import kernel, verify
from .canonical import (
    MinorSpec,
    block_to_json,
    canonical_block,
    canonical_to_modified,
    expand_in_canonical,
    quantum_minor,
)
from .invariant_subalgebras import CoidealSpec, borel_weil_module, invariant_basis, string_property_check
from .qmatrix import AlgebraElement, bar_element, enumerate_block, multiply
from .uq import act, parse_generator

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


class CheckFailure(Exception):
    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class JobConfig:
    command: str
    fmt: str = "json"
    seed: int = 0
    output: str | None = None
    max_block_size: int = 5000


# -- input helpers -------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def load_element(path: str) -> AlgebraElement:
    src = sys.stdin.read() if path == "-" else _read(path)
    try:
        data = json.loads(src)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    try:
        el = AlgebraElement.from_json(data)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return canonical_to_modified(el) if el.basis == "canonical" else el


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _guard(cfg: JobConfig, ro, co) -> None:
    size = len(enumerate_block(ro, co))
    if size > cfg.max_block_size:
        raise UsageError(f"block has {size} matrices, above --max-block-size {cfg.max_block_size}")


# -- commands -------------------------------------------------------------------


def cmd_mul(args, cfg):
    a, b = load_element(args.left), load_element(args.right)
    if a.n != b.n:
        raise UsageError(f"size mismatch: {a.n} vs {b.n}")
    if a.basis != b.basis:
        b = b.in_basis(a.basis)
    out = multiply(a, b)
    return out.to_json(), str(out)


def cmd_bar(args, cfg):
    el = load_element(args.element)
    out = bar_element(el)
    return out.to_json(), str(out)


def cmd_canonical(args, cfg):
    ro, co = _int_list(args.ro), _int_list(args.co)
    if len(ro) != args.n or len(co) != args.n:
        raise UsageError(f"--ro and --co need {args.n} entries")
    if sum(ro) != sum(co):
        raise UsageError(f"row sums {sum(ro)} and column sums {sum(co)} differ")
    if min(ro + co) < 0:
        raise UsageError("row and column sums must be nonnegative")
    _guard(cfg, ro, co)
    data = block_to_json(ro, co, canonical_block(ro, co))
    lines = []
    for e in data["elements"]:
        lines.append(f"b({e['top']}) = " + " + ".join(f"({_poly_text(t['h'])})*x({t['matrix']})" for t in e["coeffs"]))
    return data, "\n".join(lines)


def _poly_text(js) -> str:
    from .laurent import LaurentPoly

    return str(LaurentPoly.from_json(js))


def cmd_minor(args, cfg):
    spec = MinorSpec(tuple(_int_list(args.rows)), tuple(_int_list(args.cols)))
    m = quantum_minor(spec, args.n)
    can = expand_in_canonical(m.to_modified())
    data = {"rows": list(spec.I), "cols": list(spec.J), "plain": m.to_json(), "canonical": can.to_json()}
    return data, f"{m}\n= {can}"


def cmd_act(args, cfg):
    el = load_element(args.element)
    g = parse_generator(args.generator)
    g.check(el.n)
    out = act(args.side, g, el)
    return out.to_json(), str(out)


def cmd_kashiwara(args, cfg):
    el = load_element(args.element).to_modified()
    if not 1 <= args.i <= el.n - 1:
        raise UsageError(f"--i must be in 1..{el.n - 1}")
    ops = {("E", "L"): kw.tilde_E, ("F", "L"): kw.tilde_F, ("E", "R"): kw.tilde_E_right, ("F", "R"): kw.tilde_F_right}
    out = ops[(args.op, args.side)](args.i, el)
    data = {"op": args.op, "side": args.side, "i": args.i, "result": out.to_json()}
    if args.side == "L":
        reps = kw.kernel_agreement_check(args.i, el)
    else:
        reps = kw.right_kernel_agreement_check(args.i, el)
    data["kernel_agreement"] = [{"kind": r.kind, "action_vanishes": r.action_vanishes,
                                 "operator_vanishes": r.operator_vanishes} for r in reps]
    text = str(out)
    if not all(r.agrees for r in reps):
        raise CheckFailure((data, text))
    return data, text


def _spec_from_args(args) -> CoidealSpec:
    if args.theta is not None:
        return CoidealSpec.levi(args.n, _int_list(args.theta))
    names = [s for s in (args.S or "").replace(" ", "").split(",") if s]
    try:
        return CoidealSpec.parse(args.n, names)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_invariants(args, cfg):
    spec = _spec_from_args(args)
    if args.truncation < 0:
        raise UsageError("--truncation must be nonnegative")
    blocks = invariant_basis(spec, args.truncation)
    rep = string_property_check(spec, args.truncation, samples=args.samples, seed=cfg.seed)
    checks = {"string_property": "pass" if rep.ok else rep.counterexamples[0]}
    data = {"S": spec.names(), "truncation": args.truncation, "seed": cfg.seed,
            "blocks": [b.to_json() for b in blocks], "checks": checks}
    lines = [f"S = {{{', '.join(spec.names())}}}, truncation {args.truncation}"]
    for b in blocks:
        lines.append(f"ro={list(b.ro)} co={list(b.co)}: {len(b.members)} invariant(s)")
    lines.append(f"string property: {'pass' if rep.ok else 'FAIL'}")
    if not rep.ok:
        raise CheckFailure((data, "\n".join(lines)))
    return data, "\n".join(lines)


def cmd_module(args, cfg):
    lam = _int_list(args.weight)
    if len(lam) != args.n - 1:
        raise UsageError(f"--lambda needs {args.n - 1} fundamental coordinates")
    try:
        mod = borel_weil_module(lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = mod.to_json()
    lines = [f"highest weight {lam}: dimension {mod.dimension}"]
    lines += [f"  b({A})" for A in data["basis"]]
    return data, "\n".join(lines)


class _Timeout(Exception):
    pass


def cmd_verify(args, cfg):
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in verify.SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from all, {', '.join(verify.SUITES)}")
    results = []
    deadline = time.monotonic() + args.timeout if args.timeout else None
    timed_out = False
    for name in names:
        if deadline is not None and time.monotonic() >= deadline:
            timed_out = True
            break
        if deadline is not None and hasattr(signal, "SIGALRM"):
            signal.signal(signal.SIGALRM, _raise_timeout)
            signal.setitimer(signal.ITIMER_REAL, max(deadline - time.monotonic(), 0.001))
        try:
            results.append(verify.run_suite(name, seed=cfg.seed))
        except _Timeout:
            timed_out = True
            break
        finally:
            if deadline is not None and hasattr(signal, "SIGALRM"):
                signal.setitimer(signal.ITIMER_REAL, 0)
    data = {
        "seed": cfg.seed,
        "backend": kernel.BACKEND,
        "complete": not timed_out,
        "suites": [r.to_json() for r in results],
    }
    lines = [f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.summary}" for r in results]
    if timed_out:
        lines.append("timeout reached; report is partial")
    if timed_out or not all(r.passed for r in results):
        raise CheckFailure((data, "\n".join(lines)))
    return data, "\n".join(lines)


def _raise_timeout(signum, frame):
    raise _Timeout()


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--max-block-size", type=int, default=5000)

    p = _Parser(prog="qcanon", description="Dual canonical bases of quantum matrix algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("mul", parents=[common], help="straightened product of two elements")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("bar", parents=[common], help="bar involution of an element")
    s.add_argument("element")
    s.set_defaults(func=cmd_bar)

    s = sub.add_parser("canonical", parents=[common], help="canonical basis of one (ro, co) block")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--ro", required=True)
    s.add_argument("--co", required=True)
    s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("minor", parents=[common], help="quantum minor and its canonical expansion")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--rows", required=True)
    s.add_argument("--cols", required=True)
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("act", parents=[common], help="apply L or R of a generator")
    s.add_argument("--side", choices=("L", "R"), required=True)
    s.add_argument("--generator", required=True, help="E1, F2, K1, K1inv, ...")
    s.add_argument("element")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("kashiwara", parents=[common], help="Kashiwara operator on an element")
    s.add_argument("--op", choices=("E", "F"), required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--side", choices=("L", "R"), default="L")
    s.add_argument("element")
    s.set_defaults(func=cmd_kashiwara)

    s = sub.add_parser("invariants", parents=[common], help="invariant canonical elements up to a degree")
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--S", help="comma-separated generators, e.g. F1,F2")
    g.add_argument("--theta", help="Levi set: E_i, F_i for i in theta plus all K")
    s.add_argument("--truncation", type=int, default=2)
    s.add_argument("--samples", type=int, default=20)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("module", parents=[common], help="irreducible module realized by invariants")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambda", dest="weight", required=True, help="fundamental coordinates, e.g. 1,0")
    s.set_defaults(func=cmd_module)

    s = sub.add_parser("verify", parents=[common], help="run property suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--timeout", type=float, default=None, help="seconds; stop and report partially")
    s.set_defaults(func=cmd_verify)
    return p


def _emit(cfg: JobConfig, data, text: str) -> None:
    out = json.dumps(data, sort_keys=True, indent=2) + "\n" if cfg.fmt == "json" else text + "\n"
    if cfg.output:
        Path(cfg.output).write_text(out)
    else:
        sys.stdout.write(out)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = JobConfig(args.command, args.format, args.seed, args.output, args.max_block_size)
    if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
        print("qcanon: error: --n must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        data, text = args.func(args, cfg)
    except UsageError as exc:
        print(f"qcanon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailure as exc:
        data, text = exc.payload
        _emit(cfg, data, text)
        return EXIT_CHECK
    except ValueError as exc:
        print(f"qcanon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(cfg, data, text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
