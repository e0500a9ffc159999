"""
smod command line

Usage:
    python -m app gb --ideal I.txt
    python -m app specialize --module L.mod --alpha 2 --out r.json
    python -m app verify --theorem tor_4_2 --inputs L.mod,M.mod --trials 25 --seed 7
    python -m app corpus list

Computation subcommands print to standard out. With `--alpha` the inputs
are specialized first; parametric computations end with a `certificate:`
line listing the factors that must not vanish.

Exit codes:
    0 - success
    1 - verification failure or a failed computation
    2 - usage, parse or input error
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from . import __version__, config
from .certificate import Certificate
from .errors import CapExceeded, InputError, ParseError, SmodError, UnknownSymbol
from .fileio import (
    Loaded,
    format_complex_file,
    format_ideal_file,
    format_matrix_file,
    format_module_file,
    format_ring,
    load_file,
    load_ring,
)
from .fpmod import FPModule, Submodule, annihilator, fingerprint
from .groebner import dim_ideal, ideal_gb, module_gb, normal_form, syzygies
from .homology import ext, grade_module, grade_on, proj_dim, tor
from .matrix import PolyMatrix
from .models import CommandOutput, CorpusManifest, THEOREM_IDS, VerificationTask
from .polyring import poly_format, poly_parse
from .resolve import INFINITY, FreeComplex, be_exactness, determinantal_ideal, free_resolution, rank_matrix
from .scalars import SubstPoint
from .specialize import specialize_value
from .verification import run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


@dataclass
class CommandResult:
    lines: List[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    cert: Optional[Certificate] = None
    alpha: Optional[SubstPoint] = None
    json_text: Optional[str] = None


class UsageError(Exception):
    """Bad combination of flags"""
    pass


# ====================
# Input helpers
# ====================

def _load(path: str, kinds: Sequence[str], ring_path: Optional[str]) -> Loaded:
    loaded = load_file(Path(path))
    if loaded.kind not in kinds:
        raise InputError(f"expected a {' or '.join(kinds)} file, found a {loaded.kind}", path)
    if ring_path is not None and load_ring(Path(ring_path)) != loaded.ring:
        raise InputError(f"ring differs from --ring {ring_path}", path)
    return loaded


def _prepare(args, path: str, kinds: Sequence[str], cert: Optional[Certificate] = None):
    """
    Load an input and specialize it when --alpha is given

    Returns (value, ring of value, certificate); the certificate is created
    on the first call and shared by later ones.
    """
    loaded = _load(path, kinds, args.ring)
    value, ring = loaded.value, loaded.ring
    if cert is None:
        cert = Certificate(ring.param_names)
    if args.alpha is None:
        return value, ring, cert
    alpha = SubstPoint.parse(args.alpha, ring.m)
    if loaded.kind == 'ideal':
        return [specialize_value(f, alpha, cert, ring) for f in value], ring.specialized(), cert
    return specialize_value(value, alpha, cert), ring.specialized(), cert


def _finish(result: CommandResult, cert: Certificate) -> CommandResult:
    result.cert = cert
    if len(cert):
        result.lines.append("certificate: " + "; ".join(cert.to_strings()))
    return result


def _grade_text(value) -> str:
    return "inf" if value == INFINITY else str(value)


def _one_of(args, *names: str) -> str:
    given = [n for n in names if getattr(args, n, None)]
    if len(given) != 1:
        raise UsageError(f"give exactly one of {', '.join('--' + n for n in names)}")
    return given[0]


# ====================
# Subcommands
# ====================

def cmd_gb(args) -> CommandResult:
    kind = _one_of(args, 'ideal', 'module', 'submodule')
    value, ring, cert = _prepare(args, getattr(args, kind), (kind,))
    if kind == 'ideal':
        gb = ideal_gb(value, ring, cert)
    elif kind == 'module':
        gb = value.relation_gb(cert)
    else:
        gb = module_gb([list(g) for g in value.generators] + value.ambient.relations,
                       ring, value.ambient.gens, cert)
    return _finish(CommandResult(gb.format_lines() or ["0"]), cert)


def cmd_nf(args) -> CommandResult:
    value, ring, cert = _prepare(args, args.ideal, ('ideal',))
    gb = ideal_gb(value, ring, cert)
    f = poly_parse(args.poly, ring)
    return _finish(CommandResult([poly_format(normal_form([f], gb)[0])]), cert)


def cmd_syz(args) -> CommandResult:
    A, _, cert = _prepare(args, args.matrix, ('matrix',))
    S = syzygies(A, cert)
    lines = [f"syzygies {S.rows} x {S.cols}"] + S.format_rows()
    return _finish(CommandResult(lines), cert)


def cmd_resolve(args) -> CommandResult:
    L, _, cert = _prepare(args, args.module, ('module',))
    result = CommandResult()
    try:
        F = free_resolution(L, args.cap, cert)
    except CapExceeded as exc:
        F = exc.partial
        result.exit_code = EXIT_FAILURE
        result.lines.append(f"resolution did not terminate within {exc.cap} maps")
    result.lines.append("ranks " + ",".join(str(r) for r in F.ranks))
    for i, phi in enumerate(F.maps, start=1):
        result.lines.append(f"d {i}")
        result.lines.extend(phi.format_rows())
    return _finish(result, cert)


def cmd_rank(args) -> CommandResult:
    A, _, cert = _prepare(args, args.matrix, ('matrix',))
    return _finish(CommandResult([str(rank_matrix(A, cert))]), cert)


def cmd_minors(args) -> CommandResult:
    A, _, cert = _prepare(args, args.matrix, ('matrix',))
    gb = determinantal_ideal(A, args.size, cert)
    return _finish(CommandResult(gb.format_lines() or ["0"]), cert)


def cmd_exact(args) -> CommandResult:
    C, _, cert = _prepare(args, args.complex, ('complex',))
    report = be_exactness(C, cert)
    lines = []
    for r in report.records:
        data = r.to_dict()
        lines.append(" ".join(f"{k}={v}" for k, v in data.items()))
    lines.append(f"exact: {'yes' if report.overall else 'no'}")
    return _finish(CommandResult(lines), cert)


def cmd_dim(args) -> CommandResult:
    kind = _one_of(args, 'ideal', 'module')
    value, ring, cert = _prepare(args, getattr(args, kind), (kind,))
    gb = ideal_gb(value, ring, cert) if kind == 'ideal' else annihilator(value, cert)
    return _finish(CommandResult([str(dim_ideal(gb))]), cert)


_WRITERS: Dict[str, Callable] = {
    'module': format_module_file,
    'matrix': format_matrix_file,
    'ideal': format_ideal_file,
    'complex': format_complex_file,
}


def _emit(path: str, kind: str, value, ring) -> None:
    """Write a specialized input as a loadable file with a sibling ring file"""
    if kind not in _WRITERS:
        raise UsageError(f"--emit does not support {kind} inputs")
    target = Path(path)
    ring_path = target.with_suffix('.ring')
    if ring_path == target:
        raise UsageError("--emit target must not end in .ring")
    _write_text(ring_path, format_ring(ring))
    _write_text(target, _WRITERS[kind](target.stem, ring_path.name, value))


def cmd_specialize(args) -> CommandResult:
    if args.alpha is None:
        raise UsageError("specialize needs --alpha")
    kind = _one_of(args, 'module', 'matrix', 'ideal', 'complex', 'submodule')
    value, ring, cert = _prepare(args, getattr(args, kind), (kind,))
    if args.emit:
        _emit(args.emit, kind, value, ring)
    if isinstance(value, FPModule):
        lines = value.format_lines()
    elif isinstance(value, PolyMatrix):
        lines = value.format_rows()
    elif isinstance(value, FreeComplex):
        lines = ["ranks " + ",".join(str(r) for r in value.ranks)]
        for i, phi in enumerate(value.maps, start=1):
            lines += [f"d {i}"] + phi.format_rows()
    elif isinstance(value, Submodule):
        lines = ["(" + ", ".join(poly_format(f) for f in g) + ")" for g in value.generators]
    else:
        lines = [poly_format(f) for f in value]
    alpha = SubstPoint.parse(args.alpha, len(cert.param_names))
    return _finish(CommandResult(lines, alpha=alpha), cert)


def _functor(args, fn: Callable) -> CommandResult:
    L, _, cert = _prepare(args, args.left, ('module',))
    M, _, _ = _prepare(args, args.right, ('module',), cert)
    T = fn(L, M, args.index, cert)
    lines = T.format_lines() + ["fingerprint " + fingerprint(T, cert).describe()]
    return _finish(CommandResult(lines), cert)


def cmd_tor(args) -> CommandResult:
    return _functor(args, tor)


def cmd_ext(args) -> CommandResult:
    return _functor(args, ext)


def cmd_grade(args) -> CommandResult:
    L, _, cert = _prepare(args, args.module, ('module',))
    if args.ideal:
        I, _, _ = _prepare(args, args.ideal, ('ideal',), cert)
        value = grade_on(I, L, cert)
    else:
        value = grade_module(L, cert)
    return _finish(CommandResult([_grade_text(value)]), cert)


def cmd_projdim(args) -> CommandResult:
    L, _, cert = _prepare(args, args.module, ('module',))
    return _finish(CommandResult([str(proj_dim(L, cert))]), cert)


def cmd_verify(args) -> CommandResult:
    try:
        task = VerificationTask(
            theorem_id=args.theorem,
            inputs=[p.strip() for p in args.inputs.split(',') if p.strip()],
            trials=args.trials if args.trials is not None else config.DEFAULT_TRIALS,
            seed=args.seed,
            bound=args.bound if args.bound is not None else config.DEFAULT_BOUND,
            alpha=[a.strip() for a in args.alpha.split(',')] if args.alpha is not None else None,
        )
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc
    report = run_verification(task, workers=args.workers, timing=args.timing or None)
    lines = []
    for r in report.trials:
        status = "pass" if r.passed else "FAIL"
        lines.append(f"trial {r.index} alpha=({', '.join(r.alpha)}) {status}: {r.detail}")
    s = report.summary
    lines.append(f"{task.theorem_id}: {s.passed} passed, {s.failed} failed, "
                 f"{s.distinct_certificates} distinct certificates")
    return CommandResult(lines, exit_code=EXIT_OK if report.ok else EXIT_FAILURE,
                         json_text=report.to_json())


def cmd_corpus(args) -> CommandResult:
    path = config.CORPUS_DIR / 'manifest.json'
    try:
        manifest = CorpusManifest.model_validate_json(path.read_text(encoding='utf-8'))
    except OSError as exc:
        raise InputError(f"cannot read manifest: {exc.strerror}", str(path)) from exc
    except ValidationError as exc:
        raise InputError(f"malformed manifest: {exc.error_count()} errors", str(path)) from exc
    lines = [f"{e.theorem_id:<14} trials={e.trials:<3} {','.join(e.inputs)}"
             + (f"  # {e.note}" if e.note else "")
             for e in manifest.entries]
    return CommandResult(lines)


COMMANDS: Dict[str, Callable] = {
    'gb': cmd_gb, 'nf': cmd_nf, 'syz': cmd_syz, 'resolve': cmd_resolve, 'rank': cmd_rank,
    'minors': cmd_minors, 'exact': cmd_exact, 'dim': cmd_dim, 'specialize': cmd_specialize,
    'tor': cmd_tor, 'ext': cmd_ext, 'grade': cmd_grade, 'projdim': cmd_projdim,
    'verify': cmd_verify, 'corpus': cmd_corpus,
}


# ====================
# Parser
# ====================

class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting"""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--ring', help="ring file the inputs must live in")
    common.add_argument('--alpha', help="substitution point a1,a2,... (rational literals)")
    common.add_argument('--out', help="write a JSON report to this file")

    parser = _Parser(prog='smod', description="Specialization of modules over Q(u)[x]")
    parser.add_argument('--version', action='version', version=f"smod {__version__}")
    parser.add_argument('--log-level', default=config.LOG_LEVEL, type=str.upper, choices=LOG_LEVELS,
                        help="logging level (stderr)")
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    p = sub.add_parser('gb', parents=[common], help="reduced Groebner basis")
    p.add_argument('--ideal')
    p.add_argument('--module', help="basis of the relation module")
    p.add_argument('--submodule', help="basis of generators plus ambient relations")

    p = sub.add_parser('nf', parents=[common], help="normal form modulo an ideal")
    p.add_argument('--ideal', required=True)
    p.add_argument('--poly', required=True)

    p = sub.add_parser('syz', parents=[common], help="syzygies of the columns of a matrix")
    p.add_argument('--matrix', required=True)

    p = sub.add_parser('resolve', parents=[common], help="free resolution of a module")
    p.add_argument('--module', required=True)
    p.add_argument('--cap', type=int, default=None, help="maximal number of maps (default n + 1)")

    p = sub.add_parser('rank', parents=[common], help="rank of a matrix")
    p.add_argument('--matrix', required=True)

    p = sub.add_parser('minors', parents=[common], help="ideal of t x t minors")
    p.add_argument('--matrix', required=True)
    p.add_argument('--size', type=int, required=True)

    p = sub.add_parser('exact', parents=[common], help="Buchsbaum-Eisenbud exactness test")
    p.add_argument('--complex', required=True)

    p = sub.add_parser('dim', parents=[common], help="Krull dimension")
    p.add_argument('--ideal')
    p.add_argument('--module')

    p = sub.add_parser('specialize', parents=[common], help="substitute alpha into an input")
    for kind in ('module', 'matrix', 'ideal', 'complex', 'submodule'):
        p.add_argument(f'--{kind}')
    p.add_argument('--emit', help="write the specialized input as a file (plus a .ring file beside it)")

    for name in ('tor', 'ext'):
        p = sub.add_parser(name, parents=[common], help=f"{name.capitalize()}_i(L, M)")
        p.add_argument('--left', required=True, help="module L")
        p.add_argument('--right', required=True, help="module M")
        p.add_argument('--index', type=int, required=True)

    p = sub.add_parser('grade', parents=[common], help="grade(I, L), or grade L without --ideal")
    p.add_argument('--module', required=True)
    p.add_argument('--ideal')

    p = sub.add_parser('projdim', parents=[common], help="projective dimension")
    p.add_argument('--module', required=True)

    p = sub.add_parser('verify', parents=[common], help="randomized verification campaign")
    p.add_argument('--theorem', required=True, choices=THEOREM_IDS)
    p.add_argument('--inputs', required=True, help="comma-separated input files")
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--bound', type=int, default=None)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--timing', action='store_true', help="record wall-clock ms per trial")

    p = sub.add_parser('corpus', help="committed corpus")
    p.add_argument('action', choices=['list'])
    return parser


# ====================
# Entry points
# ====================

def _write_text(path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding='utf-8')
    except OSError as exc:
        raise InputError(f"cannot write: {exc.strerror}", str(path)) from exc


def configure_logging(level: str) -> None:
    logging.basicConfig(format=config.LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(getattr(logging, level, logging.INFO))


def run_command(argv: Sequence[str], stdout=None) -> int:
    """Run one subcommand; returns the exit code"""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        print(f"smod: {exc}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(args.log_level)

    try:
        result = COMMANDS[args.command](args)
        for line in result.lines:
            print(line, file=stdout)
        out = getattr(args, 'out', None)
        if out:
            text = result.json_text
            if text is None:
                text = CommandOutput(
                    command=args.command,
                    alpha=result.alpha.to_strings() if result.alpha is not None else None,
                    lines=result.lines,
                    cert_factors=result.cert.to_strings() if result.cert is not None else [],
                ).to_json()
            _write_text(out, text + "\n")
        return result.exit_code
    except (UsageError, ParseError, UnknownSymbol, InputError) as exc:
        logger.error(f"{args.command}: {exc}")
        print(f"smod: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SmodError as exc:
        logger.error(f"{args.command}: {type(exc).__name__}: {exc}")
        print(f"smod: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
