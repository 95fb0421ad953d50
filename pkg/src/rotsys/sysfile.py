"""Plain-text serialization of rotation systems.

Format (one file per system):

    rotsys 1
    # optional comments
    1: 2 3 4
    2: 1 3 4
    3: 1 2 4
    4: 1 2 3

The header line is mandatory.  Each remaining non-blank, non-comment line
gives one ground element and its rotation in canonical linearization.
``parse(render(system)) == system`` holds bit-exactly for every valid
system.
"""

from __future__ import annotations

from .core import DuplicateLabelError, RotationError, RotationSystem, validate

HEADER = "rotsys 1"


class SystemFileError(RotationError):
    """The text is not a well-formed system file."""


def render(system: RotationSystem) -> str:
    """Serialize a system; rotations come out in canonical linearization."""
    lines = [HEADER]
    for label, rot in system.rotations().items():
        entries = " ".join(str(x) for x in rot)
        lines.append(f"{label}:{' ' + entries if entries else ''}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> RotationSystem:
    """Parse and validate a system file; see the module docstring for the format."""
    lines = text.splitlines()
    body: list[str] = []
    header_seen = False
    for line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not header_seen:
            if stripped != HEADER:
                raise SystemFileError(f"expected header {HEADER!r}, got {stripped!r}")
            header_seen = True
            continue
        body.append(stripped)
    if not header_seen:
        raise SystemFileError(f"missing header {HEADER!r}")
    raw: dict[int, tuple[int, ...]] = {}
    for line in body:
        head, sep, tail = line.partition(":")
        if not sep:
            raise SystemFileError(f"missing ':' in line {line!r}")
        label = _int(head, line)
        if label in raw:
            raise DuplicateLabelError(f"element {label} declared twice")
        raw[label] = tuple(_int(tok, line) for tok in tail.split())
    return validate(raw)


def _int(token: str, line: str) -> int:
    token = token.strip()
    if not token.isdigit():
        raise SystemFileError(f"expected a positive integer, got {token!r} in {line!r}")
    return int(token)


def load(path: str) -> RotationSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def save(path: str, system: RotationSystem) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(system))
