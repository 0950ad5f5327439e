"""Line-based automaton spec files.

Sections may appear in any order; ``#`` starts a comment::

    semiring boolean|nat-inf
    states N
    repeated L
    gamma p q ...
    sigma a b ...
    initial-stack p
    I i letter|eps [weight]
    P j letter|eps [weight]
    trans i p letter|eps j REPL [weight]

REPL is ``eps`` or the replacement's symbols, top first, separated by spaces.
A missing weight means 1.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from omega_pushdown.algebra.semiring import SemiringValue, get_semiring
from omega_pushdown.automaton.model import EPS, OmegaPda, Transition, ensure_valid
from omega_pushdown.cli.models import SpecFile, TransitionLine, VectorEntry
from omega_pushdown.config import SemiringName

EPS_TOKEN = "eps"
SCALAR_SECTIONS = ("semiring", "states", "repeated", "gamma", "sigma", "initial-stack")


class SpecError(ValueError):
    """A spec file problem, located at a 1-based line when one applies."""

    def __init__(self, line: int | None, message: str) -> None:
        self.line = line
        self.message = message
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}: {self.message}"


def _is_weight_literal(token: str) -> bool:
    return token.isdigit() or token == "inf"


def _letter(token: str, line: int) -> str:
    if token == EPS_TOKEN:
        return EPS
    if len(token) != 1:
        raise SpecError(line, f"letter {token!r} must be a single character or eps")
    return token


def _symbol(token: str, line: int) -> str:
    if token == EPS_TOKEN or _is_weight_literal(token):
        raise SpecError(line, f"{token!r} cannot be used as a stack symbol")
    return token


def _state(token: str, line: int) -> int:
    if not token.isdigit():
        raise SpecError(line, f"bad state index {token!r}")
    if int(token) < 1:
        raise SpecError(line, f"state index {token} out of range")
    return int(token)


def _read_sections(text: str) -> tuple[dict[str, Any], dict[str, int]]:
    """Tokenise ``text`` into raw SpecFile fields and the line of each scalar section."""
    fields: dict[str, Any] = {"initial": [], "final": [], "transitions": []}
    lines: dict[str, int] = {}
    seen_entries: dict[tuple[object, ...], tuple[str, int]] = {}

    def remember(key: tuple[object, ...], weight: str, line: int) -> bool:
        if key in seen_entries:
            old_weight, old_line = seen_entries[key]
            if old_weight != weight:
                raise SpecError(line, f"contradictory duplicate of line {old_line}")
            return False
        seen_entries[key] = (weight, line)
        return True

    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        keyword, *args = content.split()
        if keyword in SCALAR_SECTIONS:
            value: Any
            if keyword in ("gamma", "sigma"):
                if not args:
                    raise SpecError(number, f"{keyword} needs at least one symbol")
                check = _symbol if keyword == "gamma" else _letter
                value = tuple(dict.fromkeys(check(token, number) for token in args))
                if EPS in value:
                    raise SpecError(number, "sigma cannot contain eps")
            elif len(args) != 1:
                raise SpecError(number, f"{keyword} takes exactly one value")
            else:
                value = _symbol(args[0], number) if keyword == "initial-stack" else args[0]
            name = keyword.replace("-", "_")
            if name in fields and fields[name] != value:
                raise SpecError(number, f"contradictory duplicate of {keyword} (line {lines[name]})")
            fields.setdefault(name, value)
            lines.setdefault(name, number)
        elif keyword in ("I", "P"):
            if len(args) not in (2, 3):
                raise SpecError(number, f"{keyword} expects: state letter|eps [weight]")
            state, letter = _state(args[0], number), _letter(args[1], number)
            weight = args[2] if len(args) == 3 else "1"
            if remember((keyword, state, letter), weight, number):
                target = fields["initial" if keyword == "I" else "final"]
                target.append(VectorEntry(line=number, state=state, letter=letter, weight=weight))
        elif keyword == "trans":
            if len(args) < 5:
                raise SpecError(number, "trans expects: i p letter|eps j REPL [weight]")
            weight = "1"
            if len(args) > 5 and _is_weight_literal(args[-1]):
                weight = args.pop()
            source, top = _state(args[0], number), _symbol(args[1], number)
            letter, target_state = _letter(args[2], number), _state(args[3], number)
            repl_tokens = args[4:]
            if repl_tokens == [EPS_TOKEN]:
                replacement: tuple[str, ...] = ()
            else:
                replacement = tuple(_symbol(token, number) for token in repl_tokens)
            if remember(("trans", source, top, letter, target_state, replacement), weight, number):
                fields["transitions"].append(
                    TransitionLine(
                        line=number,
                        source=source,
                        top=top,
                        letter=letter,
                        target=target_state,
                        replacement=replacement,
                        weight=weight,
                    )
                )
        else:
            raise SpecError(number, f"unknown section {keyword!r}")
    return fields, lines


def _validate_model(fields: dict[str, Any], lines: dict[str, int]) -> SpecFile:
    for required in ("states", "initial_stack"):
        if required not in fields:
            raise SpecError(None, f"missing section: {required.replace('_', '-')}")
    try:
        return SpecFile.model_validate(fields)
    except ValidationError as exc:
        error = exc.errors()[0]
        location = error["loc"][0] if error["loc"] else None
        message = str(error["msg"]).removeprefix("Value error, ")
        line = lines.get(str(location))
        if line is None and location is not None:
            message = f"{str(location).replace('_', '-')}: {message}"
        raise SpecError(line, message) from exc


def _check_membership(spec: SpecFile) -> None:
    used_letters = [(e.letter, e.line) for e in (*spec.initial, *spec.final, *spec.transitions)]
    if spec.sigma is not None:
        allowed = set(spec.sigma)
        for letter, line in used_letters:
            if letter != EPS and letter not in allowed:
                raise SpecError(line, f"unknown letter {letter!r}")
    if spec.gamma is not None:
        symbols = set(spec.gamma)
        if spec.initial_stack not in symbols:
            raise SpecError(None, f"unknown stack symbol {spec.initial_stack!r} in initial-stack")
        for t in spec.transitions:
            for symbol in (t.top, *t.replacement):
                if symbol not in symbols:
                    raise SpecError(t.line, f"unknown stack symbol {symbol!r}")
    for entry in (*spec.initial, *spec.final):
        if entry.state > spec.states:
            raise SpecError(entry.line, f"state index {entry.state} out of range")
    for t in spec.transitions:
        for index in (t.source, t.target):
            if index > spec.states:
                raise SpecError(t.line, f"state index {index} out of range")


def to_pda(spec: SpecFile, bound: int | None = None) -> OmegaPda:
    """Build the automaton described by a validated :class:`SpecFile`."""
    _check_membership(spec)
    semiring = get_semiring(spec.semiring, bound)

    def weight(literal: str, line: int) -> SemiringValue:
        try:
            return semiring.parse(literal)
        except ValueError as exc:
            raise SpecError(line, str(exc)) from exc

    initial: dict[int, dict[str, SemiringValue]] = {}
    final: dict[int, dict[str, SemiringValue]] = {}
    for entries, vector in ((spec.initial, initial), (spec.final, final)):
        for e in entries:
            vector.setdefault(e.state, {})[e.letter] = weight(e.weight, e.line)
    transitions = [
        Transition(t.source, t.top, t.letter, t.target, t.replacement, weight(t.weight, t.line))
        for t in spec.transitions
    ]
    pda = OmegaPda.from_transitions(
        semiring,
        spec.states,
        transitions,
        initial=initial,
        final=final,
        initial_stack=spec.initial_stack,
        gamma=spec.gamma,
        sigma=spec.sigma,
        repeated=spec.repeated,
    )
    ensure_valid(pda)
    return pda


def parse_spec(text: str, bound: int | None = None) -> OmegaPda:
    """Parse spec file text into a validated automaton, raising :class:`SpecError`."""
    fields, lines = _read_sections(text)
    return to_pda(_validate_model(fields, lines), bound)


def load_spec(path: str, bound: int | None = None) -> OmegaPda:
    """Read a spec file from ``path``; ``-`` reads standard input."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_spec(text, bound)


def _inferred(pda: OmegaPda) -> tuple[tuple[str, ...], tuple[str, ...]]:
    symbols = {pda.initial_stack}
    letters: set[str] = set()
    for t in pda.matrix.transitions():
        symbols.add(t.top)
        symbols.update(t.replacement)
        letters.add(t.letter)
    for poly in (*pda.initial, *pda.final):
        letters.update(poly.letters)
    letters.discard(EPS)
    return tuple(sorted(symbols)), tuple(sorted(letters))


def _weight_suffix(pda: OmegaPda, value: SemiringValue) -> str:
    return "" if value == pda.semiring.one else f" {pda.semiring.format(value)}"


def serialize_spec(pda: OmegaPda) -> str:
    """Spec file text for ``pda``; sections equal to their defaults are left out."""
    gamma, sigma = _inferred(pda)
    out = []
    if pda.semiring.name != SemiringName.BOOLEAN:
        out.append(f"semiring {pda.semiring.name.value}")
    out.append(f"states {pda.n}")
    if pda.repeated:
        out.append(f"repeated {pda.repeated}")
    if pda.gamma != gamma:
        out.append("gamma " + " ".join(pda.gamma))
    if pda.sigma != sigma:
        out.append("sigma " + " ".join(pda.sigma))
    out.append(f"initial-stack {pda.initial_stack}")
    for keyword, vector in (("I", pda.initial), ("P", pda.final)):
        for state, poly in zip(pda.states, vector, strict=True):
            for letter, value in poly:
                out.append(
                    f"{keyword} {state} {letter or EPS_TOKEN}{_weight_suffix(pda, value)}"
                )
    for t in pda.matrix.transitions():
        replacement = " ".join(t.replacement) if t.replacement else EPS_TOKEN
        out.append(
            f"trans {t.source} {t.top} {t.letter or EPS_TOKEN} {t.target} {replacement}"
            f"{_weight_suffix(pda, t.weight)}"
        )
    return "\n".join(out) + "\n"
