"""Input files: a YAML mapping with ``signature``, ``degree`` and ``generators``.

::

    signature: "(0; +; [ ]; {(2,3),( )})"
    degree: 4
    generators:
      c1.0: "(1,2)(3)(4)"
      c1.1: "(1)(2)(3,4)"
      ...

Every canonical generator of the signature must be present, and no other name.
"""

from __future__ import annotations

from pathlib import Path

import yaml

from .permutation import PermutationError, format_cycles, parse_cycles
from .representation import ActionError, CosetAction
from .signature import (
    SignatureError,
    SignatureParseError,
    canonical_presentation,
    format_signature,
    parse_signature,
)


class InputError(ValueError):
    """Malformed input file; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 source: str = "<input>") -> None:
        self.line, self.column, self.source = line, column, source
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


def _position(node: yaml.Node, offset: int | None) -> tuple[int, int]:
    line, column = node.start_mark.line + 1, node.start_mark.column + 1
    if offset is not None:
        quote = 1 if node.style in ("'", '"') else 0
        column += offset + quote
    return line, column


def _scalar(node: yaml.Node, what: str, source: str) -> str:
    if not isinstance(node, yaml.ScalarNode):
        line, col = _position(node, None)
        raise InputError(f"{what} must be a scalar", line, col, source)
    return node.value


def parse_action_text(text: str, source: str = "<input>") -> CosetAction:
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise InputError(f"YAML error: {exc.problem}", mark.line + 1 if mark else None,
                         mark.column + 1 if mark else None, source) from exc
    if not isinstance(root, yaml.MappingNode):
        raise InputError("expected a mapping with keys signature, degree, generators",
                         1, 1, source)
    fields: dict[str, tuple[yaml.Node, yaml.Node]] = {}
    for key, value in root.value:
        name = _scalar(key, "key", source)
        if name in fields:
            raise InputError(f"duplicate key {name!r}", *_position(key, None), source)
        fields[name] = (key, value)
    for required in ("signature", "degree", "generators"):
        if required not in fields:
            raise InputError(f"missing field {required!r}", 1, 1, source)
    unknown = sorted(set(fields) - {"signature", "degree", "generators"})
    if unknown:
        raise InputError(f"unknown field {unknown[0]!r}", *_position(fields[unknown[0]][0], None),
                         source)

    sig_node = fields["signature"][1]
    try:
        sig = parse_signature(_scalar(sig_node, "signature", source))
    except SignatureParseError as exc:
        raise InputError(str(exc), *_position(sig_node, exc.offset), source) from exc

    deg_node = fields["degree"][1]
    try:
        degree = int(_scalar(deg_node, "degree", source))
        if degree < 1:
            raise ValueError
    except ValueError as exc:
        raise InputError("degree must be a positive integer", *_position(deg_node, None),
                         source) from exc

    try:
        pres = canonical_presentation(sig)
    except SignatureError as exc:
        raise InputError(str(exc), *_position(sig_node, None), source) from exc
    expected = pres.names

    gens_node = fields["generators"][1]
    if not isinstance(gens_node, yaml.MappingNode):
        raise InputError("generators must be a mapping from generator name to cycles",
                         *_position(gens_node, None), source)
    images = {}
    for key, value in gens_node.value:
        name = _scalar(key, "generator name", source)
        if name not in pres.kinds:
            raise InputError(f"unknown generator {name!r}; expected exactly "
                             + ", ".join(expected), *_position(key, None), source)
        if name in images:
            raise InputError(f"duplicate generator {name!r}", *_position(key, None), source)
        text_value = "" if value.tag.endswith(":null") else _scalar(value, name, source)
        try:
            images[name] = parse_cycles(text_value, degree)
        except PermutationError as exc:
            raise InputError(f"{name}: {exc}", *_position(value, exc.offset), source) from exc
    missing = [n for n in expected if n not in images]
    if missing:
        raise InputError("missing generators " + ", ".join(missing) + "; expected exactly "
                         + ", ".join(expected), *_position(gens_node, None), source)
    try:
        return CosetAction(sig, degree, images)
    except ActionError as exc:
        raise InputError(str(exc), None, None, source) from exc


def load_action(path: str | Path) -> CosetAction:
    path = Path(path)
    return parse_action_text(path.read_text(), str(path))


def dump_action(action: CosetAction) -> str:
    lines = [f'signature: "{format_signature(action.signature)}"', f"degree: {action.degree}",
             "generators:"]
    lines += [f'  {name}: "{format_cycles(p)}"' for name, p in action.images.items()]
    return "\n".join(lines) + "\n"
