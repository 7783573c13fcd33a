"""Plan, slice-stack and mesh serialization.

Plan text
    One line per row, ``#`` occupied and ``.`` empty.
Plain PBM
    Netpbm ``P1``; pixel 1 is occupied.
Slice stack
    Header ``CA-SLICES 1 <width> <height> <layers> <termination> <rule|->``,
    then each layer bottom-up in plan text, separated by one blank line.
OBJ mesh
    One unit cube per occupied voxel, y up, no shared vertices.

Every parser rejects malformed input with a :class:`FormatError` that names
the offending line or position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .growth import EmptyPlanError, Termination, Tower
from .lattice import Layer
from .rule_codec import check_code

SLICES_MAGIC = "CA-SLICES"
SLICES_VERSION = "1"


class FormatError(ValueError):
    """Malformed plan, bitmap or slice input."""


@dataclass(frozen=True)
class PlanDocument:
    layer: Layer
    source_name: str = "<plan>"

    def __post_init__(self) -> None:
        if self.layer.is_empty():
            raise EmptyPlanError(f"{self.source_name}: plan has no occupied cells")


def _parse_grid_lines(lines: list[str], first_lineno: int = 1) -> Layer:
    width = len(lines[0])
    for k, line in enumerate(lines):
        lineno = first_lineno + k
        if len(line) != width:
            raise FormatError(
                f"row {k + 1} (line {lineno}) has length {len(line)}, expected {width}"
            )
        m = re.search(r"[^#.]", line)
        if m:
            raise FormatError(
                f"line {lineno}, column {m.start() + 1}: unexpected character {m.group()!r}"
            )
    if width == 0:
        raise FormatError(f"line {first_lineno}: empty row")
    return Layer(np.array([[ch == "#" for ch in line] for line in lines], dtype=bool))


def parse_plan_text(text: str, source_name: str = "<text>") -> PlanDocument:
    """Parse a ``#``/``.`` plan; a single trailing newline is allowed."""
    if not text:
        raise FormatError("empty plan input")
    body = text[:-1] if text.endswith("\n") else text
    if not body:
        raise FormatError("empty plan input")
    return PlanDocument(_parse_grid_lines(body.split("\n")), source_name)


def render_plan_text(layer: Layer) -> str:
    return "\n".join(layer.to_rows()) + "\n"


def parse_pbm(data: bytes, source_name: str = "<pbm>") -> PlanDocument:
    """Parse a plain (``P1``) portable bitmap."""
    if isinstance(data, str):
        data = data.encode("ascii")
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise FormatError(f"byte {exc.start}: non-ASCII data in plain PBM") from exc
    if not text.startswith("P1"):
        raise FormatError(f"bad magic {text[:2]!r}, expected 'P1' (plain PBM)")
    if len(text) > 2 and not text[2].isspace():
        raise FormatError(f"offset 2: expected whitespace after magic, got {text[2]!r}")

    pos = 2
    header: list[int] = []
    while len(header) < 2:
        m = re.compile(r"\s*(?:#[^\n]*(?:\n|$)\s*)*").match(text, pos)
        pos = m.end()
        m = re.compile(r"\d+").match(text, pos)
        if not m:
            what = "width" if not header else "height"
            if pos >= len(text):
                raise FormatError(f"truncated header: missing {what}")
            raise FormatError(f"offset {pos}: expected {what}, got {text[pos]!r}")
        header.append(int(m.group()))
        pos = m.end()
    width, height = header
    if width == 0 or height == 0:
        raise FormatError(f"zero dimension {width}x{height}")

    pixels: list[bool] = []
    need = width * height
    for i in range(pos, len(text)):
        ch = text[i]
        if ch.isspace():
            continue
        if ch not in "01":
            raise FormatError(f"offset {i}: pixel must be 0 or 1, got {ch!r}")
        if len(pixels) == need:
            raise FormatError(f"offset {i}: extra pixel data after {need} pixels")
        pixels.append(ch == "1")
    if len(pixels) < need:
        raise FormatError(f"truncated pixel data: got {len(pixels)} of {need} pixels")
    layer = Layer(np.array(pixels, dtype=bool).reshape(height, width))
    return PlanDocument(layer, source_name)


def export_pbm(layer: Layer) -> bytes:
    lines = ["P1", f"{layer.width} {layer.height}"]
    lines += [" ".join("1" if c else "0" for c in row) for row in layer.cells]
    return ("\n".join(lines) + "\n").encode("ascii")


def export_slices(tower: Tower) -> str:
    rows, cols = tower.frame
    rule = "-" if tower.rule_code is None else str(tower.rule_code)
    header = f"{SLICES_MAGIC} {SLICES_VERSION} {cols} {rows} {tower.height} {tower.termination.value} {rule}"
    blocks = ["\n".join(layer.to_rows()) for layer in tower.layers]
    return header + "\n" + "\n\n".join(blocks) + "\n"


def parse_slices(text: str) -> Tower:
    """Inverse of :func:`export_slices`; checks the body against the header."""
    if not text:
        raise FormatError("empty slice input")
    if not text.endswith("\n"):
        raise FormatError("slice file must end with a newline")
    lines = text[:-1].split("\n")
    fields = lines[0].split(" ")
    if len(fields) != 7 or fields[0] != SLICES_MAGIC:
        raise FormatError(f"line 1: malformed header {lines[0]!r}")
    if fields[1] != SLICES_VERSION:
        raise FormatError(f"line 1: unsupported version {fields[1]!r}")
    try:
        width, height, count = (int(f) for f in fields[2:5])
    except ValueError:
        raise FormatError(f"line 1: non-integer dimensions in {lines[0]!r}") from None
    if width < 1 or height < 1 or count < 1:
        raise FormatError(f"line 1: dimensions and layer count must be positive")
    try:
        termination = Termination(fields[5])
    except ValueError:
        raise FormatError(f"line 1: unknown termination {fields[5]!r}") from None
    rule_code = None
    if fields[6] != "-":
        try:
            rule_code = check_code(int(fields[6]))
        except (ValueError, TypeError) as exc:
            raise FormatError(f"line 1: bad rule code {fields[6]!r}: {exc}") from None

    layers = []
    idx = 1
    for k in range(count):
        if k > 0:
            if idx >= len(lines):
                raise FormatError(f"header claims {count} layers, body has {k}")
            if lines[idx] != "":
                raise FormatError(f"line {idx + 1}: expected blank separator before layer {k}")
            idx += 1
        block = lines[idx:idx + height]
        if len(block) < height or "" in block:
            raise FormatError(
                f"line {idx + 1}: layer {k} has fewer than {height} rows"
                if block else f"header claims {count} layers, body has {k}"
            )
        for j, row in enumerate(block):
            if len(row) != width:
                raise FormatError(
                    f"line {idx + j + 1}: layer {k} row has width {len(row)}, expected {width}"
                )
        layers.append(_parse_grid_lines(block, idx + 1))
        idx += height
    if idx != len(lines):
        raise FormatError(f"line {idx + 1}: trailing data after {count} layers")
    try:
        return Tower(tuple(layers), termination, rule_code)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# Corners of a unit cube as (dx, dy, dz) offsets, 1-based local vertex numbers
# in the order listed.  Bottom face (y=0) first, then top face (y=1), each
# counter-clockwise seen from above.
CUBE_CORNERS = (
    (0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1),
    (0, 1, 0), (1, 1, 0), (1, 1, 1), (0, 1, 1),
)
# Quads wound counter-clockwise when seen from outside (right-handed axes).
CUBE_FACES = (
    (1, 2, 3, 4),  # y = 0, bottom
    (5, 8, 7, 6),  # y = 1, top
    (1, 5, 6, 2),  # z = 0
    (4, 3, 7, 8),  # z = 1
    (1, 4, 8, 5),  # x = 0
    (2, 6, 7, 3),  # x = 1
)


def export_obj(tower: Tower) -> str:
    """Wavefront OBJ with one unit cube per voxel.

    Voxel (layer k, row i, col j) spans x in [j, j+1], y in [k, k+1],
    z in [i, i+1].  Cubes are emitted layer by layer, row-major, each as 8
    ``v`` lines followed by 6 ``f`` lines that index its own vertices.
    """
    vox = tower.voxels()
    if not vox.any():
        raise ValueError("tower has no occupied voxels to export")
    out = []
    base = 0
    for k, i, j in np.argwhere(vox):
        for dx, dy, dz in CUBE_CORNERS:
            out.append(f"v {j + dx} {k + dy} {i + dz}")
        for face in CUBE_FACES:
            out.append("f " + " ".join(str(base + n) for n in face))
        base += 8
    return "\n".join(out) + "\n"
