"""Surface files (exact, JSON) and mesh export (OFF / OBJ, rounded)."""
from __future__ import annotations

import json
from fractions import Fraction

from gmpy2 import mpq

from .geometry.primitives import GeometryError, Point3, Polygon
from .geometry.scalar import fmt, scalar
from .surface import Mode, Surface

VERSION = "polysurf-surface/1"


class SurfaceFormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


def _encode_id(pid):
    if isinstance(pid, tuple):
        return [_encode_id(x) for x in pid]
    if isinstance(pid, (str, int)) or pid is None:
        return pid
    if isinstance(pid, (type(mpq(0)), Fraction)):
        return {"q": fmt(pid)}
    return str(pid)


def _decode_id(raw):
    if isinstance(raw, list):
        return tuple(_decode_id(x) for x in raw)
    if isinstance(raw, dict):
        return scalar(raw["q"])
    return raw


def dumps_surface(s: Surface) -> str:
    """One polygon per line so parse errors can point at a line."""
    lines = ["{", f'  "version": {json.dumps(VERSION)},', f'  "mode": {json.dumps(s.mode.value)},']
    lines.append('  "ids": ' + json.dumps([_encode_id(p.id) for p in s.polygons]) + ",")
    lines.append('  "polygons": [')
    body = []
    for p in s.polygons:
        body.append("    " + json.dumps([[fmt(v) for v in c] for c in p.corners]))
    lines.append(",\n".join(body))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _polygon_lines(text: str) -> list[int]:
    """Line number of each polygon entry in a file written by dumps_surface."""
    out = []
    inside = False
    for n, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped.startswith('"polygons"'):
            inside = True
            continue
        if inside and stripped.startswith("[["):
            out.append(n)
    return out


def loads_surface(text: str) -> Surface:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SurfaceFormatError(e.msg, e.lineno) from None
    if not isinstance(data, dict):
        raise SurfaceFormatError("expected a JSON object", 1)
    if data.get("version") != VERSION:
        raise SurfaceFormatError(f"unsupported version {data.get('version')!r}")
    try:
        mode = Mode(data.get("mode", "convex"))
    except ValueError:
        raise SurfaceFormatError(f"unknown mode {data.get('mode')!r}") from None
    raw = data.get("polygons")
    if not isinstance(raw, list):
        raise SurfaceFormatError("missing polygon list")
    ids = data.get("ids") or [None] * len(raw)
    if len(ids) != len(raw):
        raise SurfaceFormatError("ids and polygons differ in length")
    where = _polygon_lines(text)
    polys = []
    for k, (cs, pid) in enumerate(zip(raw, ids)):
        line = where[k] if k < len(where) else None
        try:
            corners = [Point3(*(scalar(v) for v in c)) for c in cs]
            if any(len(c) != 3 for c in cs):
                raise ValueError("corner needs three coordinates")
            polys.append(Polygon(corners, _decode_id(pid) if pid is not None else k))
        except (TypeError, ValueError, GeometryError) as e:
            raise SurfaceFormatError(f"polygon {k}: {e}", line) from None
    try:
        return Surface(polys, mode)
    except ValueError as e:
        raise SurfaceFormatError(str(e)) from None


def read_surface(path) -> Surface:
    with open(path) as fh:
        return loads_surface(fh.read())


def write_surface(s: Surface, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_surface(s))


def _decimal(x, digits: int) -> str:
    q = Fraction(int(x.numerator), int(x.denominator))
    scaled = round(q * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    text = f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def mesh(s: Surface) -> tuple[list[Point3], list[list[int]]]:
    """Vertices deduplicated by exact equality, faces as index lists."""
    index: dict = {}
    verts: list[Point3] = []
    faces = []
    for p in s.polygons:
        f = []
        for c in p.corners:
            if c not in index:
                index[c] = len(verts)
                verts.append(c)
            f.append(index[c])
        faces.append(f)
    return verts, faces


def to_off(s: Surface, digits: int = 12) -> str:
    verts, faces = mesh(s)
    edges = {frozenset((f[i], f[(i + 1) % len(f)])) for f in faces for i in range(len(f))}
    out = ["OFF", f"{len(verts)} {len(faces)} {len(edges)}"]
    out += [" ".join(_decimal(v, digits) for v in c) for c in verts]
    out += [" ".join(map(str, [len(f), *f])) for f in faces]
    return "\n".join(out) + "\n"


def to_obj(s: Surface, digits: int = 12) -> str:
    verts, faces = mesh(s)
    out = ["# coordinates rounded to %d digits" % digits]
    out += ["v " + " ".join(_decimal(v, digits) for v in c) for c in verts]
    out += ["f " + " ".join(str(i + 1) for i in f) for f in faces]
    return "\n".join(out) + "\n"
