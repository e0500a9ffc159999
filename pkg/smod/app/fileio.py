"""
Input files

Formats (`#` starts a comment, blank lines are ignored, <ringref> is a path
relative to the file that names it):

    ring       params: u1,u2 / vars: x1,x2 / order: grevlex|lex|block <k>
    module     module <name> ring <ringref> gens <g>
               then one relation column per line (g comma-separated entries)
    matrix     matrix <name> ring <ringref> rows <r> cols <c>
               then r rows of c entries
    ideal      ideal <name> ring <ringref>
               then one generator per line
    submodule  submodule <name> ring <ringref> of <module-file>
               then one generator vector per line
    map        map <name> ring <ringref> source <module-file> target <module-file>
               then the rows of v0 (target gens x source gens)
    complex    complex <name> ring <ringref> ranks r0,r1,...,rl
               then for i = 1..l a line `d <i>` followed by r_{i-1} rows of r_i entries

Every problem is reported as InputError with file and line.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InputError, NotAHomomorphism, ParseError, SmodError, UnknownSymbol
from .fpmod import FPModule, Submodule, lift_map
from .matrix import PolyMatrix
from .polyring import Poly, RingDescriptor, poly_format, poly_parse
from .resolve import FreeComplex

logger = logging.getLogger(__name__)

KINDS = ('module', 'matrix', 'ideal', 'submodule', 'map', 'complex')


@dataclass(frozen=True)
class Loaded:
    """
    A named object read from a file

    Attributes:
        kind: ring | module | matrix | ideal | submodule | map | complex
        name: name from the header (file stem for rings)
        value: the parsed object (a list of polynomials for ideals)
        ring: ring descriptor of the object
        path: source file
    """
    kind: str
    name: str
    value: Any
    ring: RingDescriptor
    path: Path


def _content_lines(path: Path) -> List[Tuple[int, str]]:
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", str(path)) from exc
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if line:
            out.append((number, line))
    return out


def _split_entries(line: str) -> List[str]:
    return [part.strip() for part in line.split(',')]


# ====================
# Rings
# ====================

def parse_ring_text(lines: Iterable[Tuple[int, str]], source: str) -> RingDescriptor:
    params: Tuple[str, ...] = ()
    variables: Optional[Tuple[str, ...]] = None
    order, elim = 'grevlex', 0
    last = 0
    for number, line in lines:
        last = number
        key, sep, rest = line.partition(':')
        if not sep:
            raise InputError("expected `key: value`", source, number)
        key, rest = key.strip(), rest.strip()
        names = tuple(n for n in _split_entries(rest) if n) if rest else ()
        if key == 'params':
            params = names
        elif key == 'vars':
            variables = names
        elif key == 'order':
            words = rest.split()
            if not words or words[0] not in ('grevlex', 'lex', 'block'):
                raise InputError(f"unknown order: {rest}", source, number)
            order = words[0]
            if order == 'block':
                if len(words) != 2 or not words[1].isdigit():
                    raise InputError("block order needs an elimination count", source, number)
                elim = int(words[1])
        else:
            raise InputError(f"unknown ring key: {key}", source, number)
    if variables is None:
        raise InputError("ring file without `vars:`", source, last or None)
    for name in params + variables:
        if not name.isidentifier():
            raise InputError(f"invalid name: {name}", source, last or None)
    try:
        return RingDescriptor(params, variables, order, elim)
    except ValueError as exc:
        raise InputError(str(exc), source) from exc


def load_ring(path: Path) -> RingDescriptor:
    return parse_ring_text(_content_lines(Path(path)), str(path))


# ====================
# Objects
# ====================

class _Reader:
    """Line cursor over one object file"""

    def __init__(self, path: Path):
        self.path = Path(path)
        self.lines = _content_lines(self.path)
        self.index = 0

    @property
    def source(self) -> str:
        return str(self.path)

    def error(self, message: str, line: Optional[int] = None) -> InputError:
        return InputError(message, self.source, line)

    def header(self) -> Tuple[int, Dict[str, str], List[str]]:
        if not self.lines:
            raise self.error("empty file")
        number, line = self.lines[0]
        self.index = 1
        words = line.split()
        if words[0] not in KINDS or len(words) < 2:
            raise self.error(f"expected one of {', '.join(KINDS)} and a name", number)
        fields: Dict[str, str] = {}
        rest = words[2:]
        if len(rest) % 2:
            raise self.error("header keys and values must pair up", number)
        for key, value in zip(rest[::2], rest[1::2]):
            fields[key] = value
        return number, fields, words[:2]

    def body(self) -> List[Tuple[int, str]]:
        return self.lines[self.index:]

    def resolve(self, ref: str) -> Path:
        return (self.path.parent / ref).resolve()

    def polys(self, number: int, line: str, ring: RingDescriptor, count: Optional[int]) -> List[Poly]:
        parts = _split_entries(line)
        if count is not None and len(parts) != count:
            raise self.error(f"expected {count} entries, found {len(parts)}", number)
        try:
            return [poly_parse(p, ring) for p in parts]
        except (ParseError, UnknownSymbol) as exc:
            raise self.error(str(exc), number) from exc

    def require(self, fields: Dict[str, str], key: str, number: int) -> str:
        if key not in fields:
            raise self.error(f"header misses `{key}`", number)
        return fields[key]

    def integer(self, fields: Dict[str, str], key: str, number: int) -> int:
        value = self.require(fields, key, number)
        if not value.isdigit():
            raise self.error(f"`{key}` must be a non-negative integer", number)
        return int(value)


def load_file(path: Path) -> Loaded:
    """Read one object (or ring) file"""
    path = Path(path)
    reader = _Reader(path)
    if reader.lines and ':' in reader.lines[0][1] and reader.lines[0][1].split()[0] not in KINDS:
        ring = parse_ring_text(reader.lines, str(path))
        return Loaded('ring', path.stem, ring, ring, path)

    number, fields, (kind, name) = reader.header()
    ring = load_ring(reader.resolve(reader.require(fields, 'ring', number)))
    body = reader.body()

    if kind == 'module':
        gens = reader.integer(fields, 'gens', number)
        columns = [reader.polys(n, line, ring, gens) for n, line in body]
        value = FPModule(ring, gens, PolyMatrix.from_columns(ring, columns, gens))

    elif kind == 'matrix':
        rows = reader.integer(fields, 'rows', number)
        cols = reader.integer(fields, 'cols', number)
        if len(body) != rows:
            raise reader.error(f"expected {rows} rows, found {len(body)}", number)
        grid = [reader.polys(n, line, ring, cols) for n, line in body]
        value = PolyMatrix.from_rows(ring, grid, cols)

    elif kind == 'ideal':
        value = [reader.polys(n, line, ring, 1)[0] for n, line in body]

    elif kind == 'submodule':
        ambient = _load_module(reader, reader.require(fields, 'of', number), ring, number)
        gens = [reader.polys(n, line, ring, ambient.gens) for n, line in body]
        value = Submodule(ambient, tuple(tuple(g) for g in gens))

    elif kind == 'map':
        source = _load_module(reader, reader.require(fields, 'source', number), ring, number)
        target = _load_module(reader, reader.require(fields, 'target', number), ring, number)
        if len(body) != target.gens:
            raise reader.error(f"v0 needs {target.gens} rows, found {len(body)}", number)
        grid = [reader.polys(n, line, ring, source.gens) for n, line in body]
        v0 = PolyMatrix.from_rows(ring, grid, source.gens)
        try:
            value = lift_map(v0, source, target)
        except NotAHomomorphism as exc:
            raise reader.error(str(exc), number) from exc

    else:
        value = _parse_complex(reader, fields, ring, number, body)

    logger.debug(f"loaded {kind} {name} from {path}")
    return Loaded(kind, name, value, ring, path)


def _load_module(reader: _Reader, ref: str, ring: RingDescriptor, number: int) -> FPModule:
    loaded = load_file(reader.resolve(ref))
    if loaded.kind != 'module':
        raise reader.error(f"{ref} is a {loaded.kind}, expected a module", number)
    if loaded.ring != ring:
        raise reader.error(f"{ref} lives in another ring", number)
    return loaded.value


def _parse_complex(reader: _Reader, fields: Dict[str, str], ring: RingDescriptor,
                   number: int, body: Sequence[Tuple[int, str]]) -> FreeComplex:
    raw = reader.require(fields, 'ranks', number)
    try:
        ranks = [int(r) for r in raw.split(',')]
    except ValueError as exc:
        raise reader.error(f"bad ranks: {raw}", number) from exc
    maps: List[PolyMatrix] = []
    pos = 0
    for i in range(1, len(ranks)):
        if pos >= len(body) or body[pos][1].split() != ['d', str(i)]:
            line = body[pos][0] if pos < len(body) else number
            raise reader.error(f"expected `d {i}`", line)
        pos += 1
        grid = []
        for _ in range(ranks[i - 1]):
            if pos >= len(body):
                raise reader.error(f"d {i} needs {ranks[i - 1]} rows", number)
            n, line = body[pos]
            grid.append(reader.polys(n, line, ring, ranks[i]))
            pos += 1
        maps.append(PolyMatrix.from_rows(ring, grid, ranks[i]))
    if pos != len(body):
        raise reader.error("trailing lines after the last map", body[pos][0])
    try:
        return FreeComplex(ring, tuple(ranks), tuple(maps))
    except ValueError as exc:
        raise reader.error(str(exc), number) from exc


def parse_inputs(paths: Sequence[Path]) -> Tuple[RingDescriptor, Dict[str, Loaded]]:
    """
    Load several files over one ring

    Raises:
        InputError: unreadable or malformed file, duplicate name, rings differ
    """
    objects: Dict[str, Loaded] = {}
    ring: Optional[RingDescriptor] = None
    for path in paths:
        try:
            loaded = load_file(Path(path))
        except InputError:
            raise
        except (SmodError, ValueError) as exc:
            raise InputError(str(exc), str(path)) from exc
        if loaded.name in objects:
            raise InputError(f"duplicate name: {loaded.name}", str(path))
        if ring is None:
            ring = loaded.ring
        elif loaded.ring != ring:
            raise InputError("inputs live in different rings", str(path))
        objects[loaded.name] = loaded
    if ring is None:
        raise InputError("no input files")
    return ring, objects


# ====================
# Writers
# ====================

def format_ring(ring: RingDescriptor) -> str:
    order = f"block {ring.elim_count}" if ring.order == 'block' else ring.order
    lines = []
    if ring.param_names:
        lines.append(f"params: {','.join(ring.param_names)}")
    lines.append(f"vars: {','.join(ring.var_names)}")
    lines.append(f"order: {order}")
    return "\n".join(lines) + "\n"


def _row(entries: Sequence[Poly]) -> str:
    return ", ".join(poly_format(e) for e in entries)


def format_matrix_file(name: str, ringref: str, A: PolyMatrix) -> str:
    lines = [f"matrix {name} ring {ringref} rows {A.rows} cols {A.cols}"]
    lines += [_row(A.row(i)) for i in range(A.rows)]
    return "\n".join(lines) + "\n"


def format_module_file(name: str, ringref: str, L: FPModule) -> str:
    lines = [f"module {name} ring {ringref} gens {L.gens}"]
    lines += [_row(col) for col in L.presentation.columns()]
    return "\n".join(lines) + "\n"


def format_ideal_file(name: str, ringref: str, gens: Sequence[Poly]) -> str:
    lines = [f"ideal {name} ring {ringref}"] + [poly_format(f) for f in gens]
    return "\n".join(lines) + "\n"


def format_complex_file(name: str, ringref: str, C: FreeComplex) -> str:
    lines = [f"complex {name} ring {ringref} ranks {','.join(str(r) for r in C.ranks)}"]
    for i, phi in enumerate(C.maps, start=1):
        lines.append(f"d {i}")
        lines += [_row(phi.row(k)) for k in range(phi.rows)]
    return "\n".join(lines) + "\n"
