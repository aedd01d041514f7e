"""Reachability analysis for attribute and group administration policies.

Every function takes the policy as DSL text and returns the same structured
report the command line prints with ``--format json``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from . import _core
from ._core import (
    EXIT_BOUND,
    EXIT_INPUT,
    EXIT_INTERNAL,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_RESTRICTION,
)

__all__ = [
    "EXIT_BOUND",
    "EXIT_INPUT",
    "EXIT_INTERNAL",
    "EXIT_NEGATIVE",
    "EXIT_OK",
    "EXIT_RESTRICTION",
    "GuragError",
    "Result",
    "classify",
    "emit",
    "fmt",
    "fuzz",
    "oracle",
    "run",
    "solve",
    "validate",
]


class GuragError(Exception):
    """A command ended with an input, restriction or internal error."""

    def __init__(self, exit_code: int, stderr: str):
        super().__init__(stderr.strip() or f"exit code {exit_code}")
        self.exit_code = exit_code
        self.stderr = stderr


@dataclass(frozen=True)
class Result:
    exit_code: int
    out: str
    err: str


def run(args: Sequence[str], input: Optional[str] = None) -> Result:
    """Runs a command line (without the program name)."""
    code, out, err = _core.run(list(args), input)
    return Result(code, out, err)


_DECIDED = (EXIT_OK, EXIT_NEGATIVE, EXIT_BOUND)


def _report(args: Sequence[str], text: Optional[str] = None) -> dict[str, Any]:
    r = run(["--format", "json", *args], text)
    if r.exit_code not in _DECIDED:
        raise GuragError(r.exit_code, r.err)
    return json.loads(r.out)


def _bounds(max_depth, max_states, max_ms, threads) -> list[str]:
    args = ["--threads", str(threads)]
    for flag, value in (("--max-depth", max_depth), ("--max-states", max_states),
                        ("--max-ms", max_ms)):
        if value is not None:
            args += [flag, str(value)]
    return args


def classify(text: str) -> dict[str, Any]:
    return _report(["classify", "-"], text)


def solve(text: str, query: int = 0, engine: str = "auto", *, max_depth: Optional[int] = None,
          max_states: Optional[int] = None, max_ms: Optional[int] = None, threads: int = 1,
          timing: bool = True) -> dict[str, Any]:
    args = [] if timing else ["--no-timing"]
    args += ["solve", "-", "--query", str(query), "--engine", engine]
    return _report(args + _bounds(max_depth, max_states, max_ms, threads), text)


def oracle(text: str, query: int = 0, *, max_depth: Optional[int] = None,
           max_states: Optional[int] = None, max_ms: Optional[int] = None, threads: int = 1,
           timing: bool = True) -> dict[str, Any]:
    args = [] if timing else ["--no-timing"]
    args += ["oracle", "-", "--query", str(query)]
    return _report(args + _bounds(max_depth, max_states, max_ms, threads), text)


def validate(text: str, plan: int = 0, query: int = 0) -> dict[str, Any]:
    return _report(["validate", "-", "--plan", str(plan), "--query", str(query)], text)


def fmt(text: str) -> str:
    r = run(["fmt", "-"], text)
    if r.exit_code != EXIT_OK:
        raise GuragError(r.exit_code, r.err)
    return r.out


def fuzz(cls: str = "any", seed: int = 1, count: int = 100, threads: int = 1,
         timing: bool = True) -> dict[str, Any]:
    args = [] if timing else ["--no-timing"]
    args += ["fuzz", "--class", cls, "--seed", str(seed), "--count", str(count),
             "--threads", str(threads)]
    return _report(args)


def emit(cls: str, seed: int, index: int) -> str:
    """DSL text of one generated instance."""
    r = run(["fuzz", "--class", cls, "--seed", str(seed), "--emit", str(index)])
    if r.exit_code != EXIT_OK:
        raise GuragError(r.exit_code, r.err)
    return r.out
