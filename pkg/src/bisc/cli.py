"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from . import classes
from .mine import mine
from .perm import MeshPattern, PatternError, Perm
from .pipeline import (
    DEFAULT_CAP,
    Basis,
    LimitError,
    PruneError,
    avoiders,
    run_bisc,
    verify_equality,
)
from .render import FORMATS, avoiders_to_json, parse_basis, render_basis

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_LIMIT = 3

COMMANDS = ("mine", "bisc", "avoiders", "verify", "classgen")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    class_spec: str | None = None
    length: int | None = None
    m: int = 4
    n: int | None = None
    output_format: str = "text"
    prune: bool = False
    cap: int = DEFAULT_CAP
    patterns: str | None = None
    basis: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.m < 0:
            raise InputError("-m must be non-negative")
        if self.n is not None and self.n < 0:
            raise InputError("-n must be non-negative")
        if self.output_format not in FORMATS:
            raise InputError(f"unknown format {self.output_format!r}")


def read_permutations(lines: Sequence[str], source: str = "<input>") -> list[Perm]:
    """Parse one permutation per line; blank lines and ``#`` comments are skipped."""
    out = []
    seen = set()
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            p = Perm.parse(line)
        except PatternError as exc:
            raise InputError(f"{source}:{lineno}: {exc}") from exc
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def read_permutation_file(path: str | Path) -> list[Perm]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    return read_permutations(text.splitlines(), str(path))


def _load_input(cfg: RunConfig) -> list[Perm]:
    if cfg.input and cfg.class_spec:
        raise InputError("give either --input or --class, not both")
    if cfg.input:
        return read_permutation_file(cfg.input)
    if cfg.class_spec:
        if cfg.length is None:
            raise InputError("--class needs --len")
        if cfg.length > cfg.cap:
            raise LimitError(f"length {cfg.length} exceeds the cap of {cfg.cap}")
        return classes.generate(cfg.class_spec, cfg.length, cap=cfg.cap)
    raise InputError("no input: use --input FILE or --class SPEC")


def _load_basis(cfg: RunConfig) -> Basis:
    if cfg.patterns is not None:
        return Basis(classes.parse_pattern_list(cfg.patterns))
    if cfg.basis is not None:
        try:
            text = Path(cfg.basis).read_text()
        except OSError as exc:
            raise InputError(str(exc)) from exc
        try:
            return parse_basis(text)
        except (KeyError, json.JSONDecodeError) as exc:
            raise InputError(f"{cfg.basis}: malformed basis ({exc})") from exc
    raise InputError("no basis: use --patterns or --basis FILE")


def _max_len(perms: Sequence[Perm]) -> int:
    return max((len(p) for p in perms), default=0)


def _render_mined(table, fmt: str) -> str:
    if fmt == "json":
        return table.to_json() + "\n"
    lines = []
    for p in table.patterns():
        shadings = [MeshPattern(p, s) for s in table.shadings(p)]
        if not shadings:
            lines.append(f"{p}: never occurs")
        else:
            lines.append(f"{p}: " + " | ".join(str(mp) if mp.shading else f"({p}, {{}})" for mp in shadings))
    return "\n".join(lines) + "\n"


def _status(ok: bool, cex: Perm | None, n: int) -> str:
    if ok:
        return f"# verify n={n}: ok"
    return f"# verify n={n}: FAILED, counterexample {cex}"


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute ``cfg``; write results to ``out`` and return the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg.validate()
        if cfg.n is not None and cfg.n > cfg.cap:
            raise LimitError(f"horizon {cfg.n} exceeds the cap of {cfg.cap}")

        if cfg.command == "classgen":
            for p in _load_input(cfg):
                out.write(f"{p}\n")
            return EXIT_OK

        if cfg.command == "avoiders":
            if cfg.n is None:
                raise InputError("avoiders needs -n")
            av = avoiders(_load_basis(cfg), cfg.n, cap=cfg.cap)
            if cfg.output_format == "json":
                out.write(avoiders_to_json(av) + "\n")
            else:
                for p in av.members():
                    out.write(f"{p}\n")
            return EXIT_OK

        perms = _load_input(cfg)

        if cfg.command == "mine":
            out.write(_render_mined(mine(perms, cfg.m), cfg.output_format))
            return EXIT_OK

        if cfg.command == "verify":
            n = _max_len(perms) if cfg.n is None else cfg.n
            ok, cex = verify_equality(perms, _load_basis(cfg), n, cap=cfg.cap)
            out.write(_status(ok, cex, n).lstrip("# ") + "\n")
            return EXIT_OK if ok else EXIT_VERIFY_FAILED

        # bisc
        horizon = _max_len(perms) if cfg.n is None else cfg.n
        if cfg.prune and horizon > cfg.cap:
            raise LimitError(f"horizon {horizon} exceeds the cap of {cfg.cap}")
        basis = run_bisc(perms, cfg.m, do_prune=cfg.prune, n=horizon, cap=cfg.cap)
        out.write(render_basis(basis, cfg.output_format))
        if cfg.n is not None:
            ok, cex = verify_equality(perms, basis, cfg.n, cap=cfg.cap)
            line = _status(ok, cex, cfg.n)
            if cfg.output_format == "json":
                err.write(line + "\n")
            else:
                out.write(line + "\n")
            return EXIT_OK if ok else EXIT_VERIFY_FAILED
        return EXIT_OK
    except LimitError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_LIMIT
    except (InputError, PatternError, PruneError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bisc",
        description="Mine allowed mesh patterns and conjecture a basis of forbidden ones.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            src = p.add_mutually_exclusive_group()
            src.add_argument("--input", metavar="FILE", help="one permutation per line")
            src.add_argument("--class", dest="class_spec", metavar="SPEC",
                             help="generated class, e.g. west2, rsk_avoid:2,2, avoid:231")
            p.add_argument("--len", dest="length", type=int, metavar="N",
                           help="maximum length for --class")
        p.add_argument("--format", dest="output_format", choices=FORMATS, default="text")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                       help="refuse brute-force work beyond this length (default %(default)s)")

    def basis_args(p: argparse.ArgumentParser) -> None:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--patterns", help="';'-separated mesh patterns, e.g. \"2341;(3241, {(1,4)})\"")
        g.add_argument("--basis", metavar="FILE", help="basis file (text, JSON or ASCII grid)")

    p = sub.add_parser("mine", help="record maximal allowed shadings")
    common(p)
    p.add_argument("-m", type=int, default=4, help="maximum pattern length")

    p = sub.add_parser("bisc", help="infer forbidden mesh patterns")
    common(p)
    p.add_argument("-m", type=int, default=4, help="maximum pattern length")
    p.add_argument("-n", type=int, help="verification / pruning horizon")
    p.add_argument("--prune", action="store_true", help="greedily remove redundant patterns")

    p = sub.add_parser("avoiders", help="list permutations avoiding a basis")
    common(p, with_input=False)
    basis_args(p)
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("verify", help="check that a basis describes the input")
    common(p)
    basis_args(p)
    p.add_argument("-n", type=int, help="horizon (default: longest input)")

    p = sub.add_parser("classgen", help="print a generated class")
    common(p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        class_spec=getattr(args, "class_spec", None),
        length=getattr(args, "length", None),
        m=getattr(args, "m", 4),
        n=getattr(args, "n", None),
        output_format=args.output_format,
        prune=getattr(args, "prune", False),
        cap=args.cap,
        patterns=getattr(args, "patterns", None),
        basis=getattr(args, "basis", None),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
