"""Command-line interface: construct | verify | frame | equiv | catalog.

Every subcommand reads and writes JSON.  Exit codes: 0 success, 1 a
verification failed (or, for ``equiv``, the matrices are not equivalent),
2 bad arguments or unreadable input, 3 a construction failed.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np

from . import constructions as cons
from .catalog import MAX_K, catalog_json
from .design import DesignMatrix, sym_identity
from .errors import ConfmatError, ParseError
from .frames import MAX_FRAME_ORDER, Frame, frame_from_gram, gram_from_seidel, iterate_block, verify_frame
from .scalars import PARAM_NAMES, UNIMODULAR_TOL, SymExpr, parse_scalar
from .verification import (
    Verdict,
    check_paley_blocks,
    check_paley_layout,
    is_conference,
    is_hadamard,
    is_hermitian,
    permutation_equivalent,
    seidel_spectrum,
)
from .zauner import zauner_frame, zauner_seidel

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3

DEFAULT_TOLERANCE = 1e-9
MAX_EQUIV_ORDER = 14
RANDOM_POINTS = 3


class UsageError(Exception):
    """Bad arguments or unreadable input (exit 2)."""


class ConstructionError(Exception):
    """A construction precondition failed (exit 3)."""


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = DEFAULT_TOLERANCE
    seed: int = 0
    output: str | None = None
    assign: Mapping[str, complex] | None = None
    format: str = "json"


# ---------------------------------------------------------------------------
# argument values


def parse_number(text: str) -> complex:
    """``exp:theta`` (e^{i theta}, radians) or ``re,im``; must have modulus one."""
    try:
        if text.startswith("exp:"):
            z = cmath.exp(1j * float(text[4:]))
        else:
            re, im = text.split(",")
            z = complex(float(re), float(im))
    except ValueError:
        raise UsageError(f"cannot read {text!r} as exp:theta or re,im") from None
    if not cmath.isfinite(z) or abs(abs(z) - 1) > UNIMODULAR_TOL:
        raise UsageError(f"{text!r} has modulus {abs(z)!r}, not 1")
    return z


def parse_value(text: str) -> complex | SymExpr:
    """A numeric value, or a unimodular monomial such as ``b``, ``conj(a)``, ``-i``."""
    if text.startswith("exp:") or "," in text:
        return parse_number(text)
    try:
        e = parse_scalar(text)
    except ParseError as exc:
        raise UsageError(f"bad parameter value {text!r}: {exc}") from None
    if not e.is_unimodular():
        raise UsageError(f"parameter value {text!r} is not a unimodular monomial")
    return e


def parse_assignments(items: Sequence[str] | None) -> dict[str, complex]:
    out: dict[str, complex] = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or len(name) != 1 or name not in PARAM_NAMES:
            raise UsageError(f"--assign expects name=value with name in {PARAM_NAMES}, got {item!r}")
        if name in out:
            raise UsageError(f"parameter {name!r} assigned twice")
        out[name] = parse_number(value.strip())
    return out


def _resolve_values(values: dict[str, complex | SymExpr], assign: Mapping[str, complex]) -> dict:
    """Substitute --assign numbers into symbolic values when anything is numeric."""
    numeric = bool(assign) or any(isinstance(v, complex) for v in values.values())
    if not numeric:
        return values
    out: dict[str, Any] = {}
    for name, v in values.items():
        if isinstance(v, SymExpr):
            missing = sorted(v.params() - set(assign))
            if missing:
                raise UsageError(f"value of {name!r} uses {', '.join(missing)}; give --assign for it")
            out[name] = v.eval(assign)
        else:
            out[name] = v
    return out


# ---------------------------------------------------------------------------
# files


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def load_document(path: str) -> DesignMatrix | Frame:
    data = read_json(path)
    if not isinstance(data, dict):
        raise UsageError(f"{path} does not hold a JSON object")
    try:
        if "vectors" in data:
            return Frame.from_json(data)
        return DesignMatrix.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def load_matrix(path: str) -> DesignMatrix:
    doc = load_document(path)
    if not isinstance(doc, DesignMatrix):
        raise UsageError(f"{path} holds a frame, expected a matrix")
    return doc


def dumps(data: Any) -> str:
    # repr floats are the shortest strings that round-trip exactly
    return json.dumps(data) + "\n"


def emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {output}: {exc.strerror}") from None


def _numeric_input(M: DesignMatrix, assign: Mapping[str, complex]) -> DesignMatrix:
    if not assign:
        return M
    try:
        return M.evaluate(assign)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# construct


def _conjugated(M: DesignMatrix) -> DesignMatrix:
    meta = dict(M.meta)
    meta["conjugated"] = True
    return DesignMatrix(M.kind, np.conj(M.entries), list(M.params), meta)


def _family_values(args: argparse.Namespace, names: str) -> dict[str, complex | SymExpr]:
    return {name: parse_value(getattr(args, name)) for name in names}


def _build(args: argparse.Namespace, cfg: RunConfig) -> DesignMatrix | Frame:
    family = args.family
    assign = cfg.assign or {}
    if family == "paley":
        return cons.paley_matrix(args.q)
    if family == "cab":
        values = _resolve_values(_family_values(args, "ab"), assign)
        return cons.cab_matrix(args.q, values["a"], values["b"])
    if family in ("c6", "c10", "c14"):
        names = {"c6": "b", "c10": "abc", "c14": "abcdef"}[family]
        values = _resolve_values(_family_values(args, names), assign)
        return cons.FAMILIES[family](**values)
    if family == "fourier":
        return cons.fourier(args.n)
    if family == "quaternary":
        return cons.quaternary(args.q, args.sign)
    if family == "zauner":
        if args.seidel:
            return zauner_seidel(args.q)[0]
        return zauner_frame(args.q)
    source = _numeric_input(load_matrix(args.input), assign)
    if family == "hadamard-double":
        return cons.hadamard_double(source, tol=cfg.tolerance)
    if family == "block":
        return _build_block(args, source, cfg)
    raise UsageError(f"unknown family {family!r}")


def _build_block(args: argparse.Namespace, source: DesignMatrix, cfg: RunConfig) -> DesignMatrix:
    if args.beta < 1:
        raise UsageError("--beta must be at least 1")
    H0 = source
    if args.from_conference:
        conf = is_conference(source, tol=cfg.tolerance)
        herm = is_hermitian(source, tol=cfg.tolerance)
        if not (conf.ok and herm.ok):
            bad = conf if not conf.ok else herm
            raise ConstructionError(f"input is not a Hermitian conference matrix: {bad.identity} at {bad.witness}")
        H0 = cons.conference_hadamard(source)
    if args.seidel:
        Q, _ = iterate_block(H0, args.beta, args.sign, tol=max(cfg.tolerance, 1e-10))
        return Q
    n = H0.order ** (2**args.beta)
    if n > MAX_FRAME_ORDER:
        raise ConstructionError(f"order {n} exceeds {MAX_FRAME_ORDER}")
    K = cons.block_square(H0, tol=cfg.tolerance)
    for _ in range(args.beta - 1):
        K = cons.block_square(K, check=False)
    return K


def cmd_construct(args: argparse.Namespace, cfg: RunConfig) -> int:
    try:
        doc = _build(args, cfg)
    except UsageError:
        raise
    except (ConfmatError, ValueError) as exc:
        raise ConstructionError(str(exc)) from None
    if args.conjugate:
        if not isinstance(doc, DesignMatrix):
            raise UsageError("--conjugate applies to matrices only")
        doc = _conjugated(doc)
    emit(dumps(doc.to_json()), cfg.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _named(name: str, v: Verdict) -> dict[str, Any]:
    data = {"check": name}
    data.update(v.to_json())
    return data


def _unit_diagonal(M: DesignMatrix, tol: float) -> Verdict:
    d = np.diag(M.numeric())
    dev = np.abs(d - 1)
    worst = float(dev.max())
    if M.is_symbolic:
        ok = all(x == 1 for x in np.diag(M.entries))
        worst = 0.0 if ok else worst
    else:
        ok = worst <= tol
    i = int(np.argmax(dev))
    return Verdict(ok, "diag=1", worst, None if ok else (i + 1, i + 1))


def _seidel_verdict(Q: DesignMatrix | np.ndarray, k: int | None, tol: float) -> Verdict:
    fail, m_plus, detail = seidel_spectrum(Q, tol=tol)
    if fail is not None:
        return fail
    ok = k is None or m_plus == k
    return Verdict(ok, "seidel(n,k)", 0.0, None, f"{detail}; k={m_plus}" + ("" if ok else f", expected {k}"))


def _paley_verdicts(M: DesignMatrix) -> list[dict[str, Any]]:
    layout = check_paley_layout(M)
    out = [_named("paley_layout", layout)]
    if layout.ok:
        C = np.array([[int(complex(x).real) for x in row] for row in M.entries], dtype=np.int64)
        out.append(_named("paley_blocks", check_paley_blocks(cons.blocks_of(C))))
    return out


def matrix_verdicts(M: DesignMatrix, tol: float, k: int | None = None) -> list[dict[str, Any]]:
    """Every verdict that applies to a matrix of this kind."""
    out: list[dict[str, Any]] = []
    if M.kind == "conference":
        out.append(_named("conference", is_conference(M, tol)))
        if is_hermitian(M, tol).ok:
            out.append(_named("seidel", _seidel_verdict(M, k, tol)))
        if M.meta.get("construction") == "paley":
            out.extend(_paley_verdicts(M))
    elif M.kind == "hadamard":
        out.append(_named("hadamard", is_hadamard(M, tol)))
        if M.meta.get("construction") == "block_square":
            m = math.isqrt(M.order)
            out.append(_named("hermitian", is_hermitian(M, tol)))
            out.append(_named("unit_diagonal", _unit_diagonal(M, tol)))
            I = sym_identity(M.order) if M.is_symbolic else np.eye(M.order)
            Q = DesignMatrix("seidel", M.entries - I)
            out.append(_named("seidel", _seidel_verdict(Q, m * (m + 1) // 2, tol)))
    elif M.kind == "seidel":
        expected = k if k is not None else M.meta.get("k")
        out.append(_named("seidel", _seidel_verdict(M, expected, tol)))
    elif M.kind == "gram":
        G = M.numeric()
        out.append(_named("hermitian", is_hermitian(G, tol)))
        res = float(np.abs(G @ G - G).max())
        out.append(_named("projection", Verdict(res <= tol, "G^2=G", res)))
    return out


def _random_points(params: Sequence[str], seed: int) -> list[dict[str, complex]]:
    rng = np.random.default_rng(seed)
    return [
        {name: cmath.exp(1j * float(t)) for name, t in zip(params, rng.uniform(0, 2 * math.pi, len(params)))}
        for _ in range(RANDOM_POINTS)
    ]


def verify_report(path: str, cfg: RunConfig, k: int | None = None) -> dict[str, Any]:
    doc = load_document(path)
    tol = cfg.tolerance
    if isinstance(doc, Frame):
        verdicts = [_named("frame", verify_frame(doc, tol=tol, parseval_tol=tol))]
        report = {"file": path, "document": "frame", "n": doc.n, "k": doc.k, "verdicts": verdicts}
    else:
        verdicts = matrix_verdicts(doc, tol, k)
        if doc.is_symbolic and doc.params:
            points = _random_points(doc.params, cfg.seed)
            if cfg.assign:
                points.insert(0, dict(cfg.assign))
            for n_point, point in enumerate(points, 1):
                numeric = _numeric_input(doc, point)
                label = "assigned point" if cfg.assign and n_point == 1 else f"random point {n_point}"
                for item in matrix_verdicts(numeric, tol, k):
                    item["check"] = f"{item['check']} @ {label}"
                    verdicts.append(item)
        report = {
            "file": path,
            "document": "matrix",
            "kind": doc.kind,
            "order": doc.order,
            "scalar_mode": doc.scalar_mode,
            "params": list(doc.params),
            "verdicts": verdicts,
        }
    report["ok"] = all(v["ok"] for v in verdicts)
    return report


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    report = verify_report(args.file, cfg, args.k)
    emit(dumps(report), cfg.output)
    return EXIT_OK if report["ok"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# frame


def cmd_frame(args: argparse.Namespace, cfg: RunConfig) -> int:
    M = _numeric_input(load_matrix(args.file), cfg.assign or {})
    if M.is_symbolic and M.params:
        raise UsageError(f"matrix has parameters {', '.join(M.params)}; give --assign values")
    Q = M.numeric()
    if args.conjugate:
        Q = -Q
    fail, m_plus, detail = seidel_spectrum(Q, tol=cfg.tolerance)
    if fail is not None:
        sys.stderr.write(f"error: not a Seidel matrix: {fail.identity} at {fail.witness} {fail.detail}\n")
        return EXIT_FAIL
    k = args.k if args.k is not None else m_plus
    if k != m_plus:
        sys.stderr.write(f"error: larger eigenvalue has multiplicity {m_plus}, not k={k}\n")
        return EXIT_FAIL
    frame = frame_from_gram(gram_from_seidel(Q, k, check=False), k)
    verdict = verify_frame(frame, tol=max(cfg.tolerance, 1e-8), parseval_tol=max(cfg.tolerance, 1e-9))
    summary = {
        "n": frame.n,
        "k": frame.k,
        "common_angle": frame.common_angle,
        "redundancy": str(frame.redundancy),
        "verdict": verdict.to_json(),
    }
    if cfg.output is None:
        sys.stdout.write(dumps(frame.to_json()))
        sys.stderr.write(dumps(summary))
    else:
        emit(dumps(frame.to_json()), cfg.output)
        sys.stdout.write(dumps(summary))
    return EXIT_OK if verdict.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# equiv


def cmd_equiv(args: argparse.Namespace, cfg: RunConfig) -> int:
    A = _numeric_input(load_matrix(args.file_a), cfg.assign or {})
    B = _numeric_input(load_matrix(args.file_b), cfg.assign or {})
    for path, M in ((args.file_a, A), (args.file_b, B)):
        if M.is_symbolic and M.params:
            raise UsageError(f"{path} has parameters {', '.join(M.params)}; give --assign values")
    if A.order != B.order:
        raise UsageError(f"orders differ: {A.order} vs {B.order}")
    if A.order > MAX_EQUIV_ORDER:
        raise UsageError(f"order {A.order} exceeds {MAX_EQUIV_ORDER}")
    try:
        result = permutation_equivalent(A, B, budget=args.budget)
    except ConfmatError as exc:
        raise UsageError(str(exc)) from None
    report = {
        "equivalent": result.equivalent,
        "permutation": result.one_line(),
        "certificate": result.certificate,
        "nodes": result.nodes,
    }
    emit(dumps(report), cfg.output)
    return EXIT_OK if result.equivalent else EXIT_FAIL


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog(args: argparse.Namespace, cfg: RunConfig) -> int:
    if not 3 <= args.max_k <= MAX_K:
        raise UsageError(f"--max-k must lie in 3..{MAX_K}")
    emit(catalog_json(args.max_k), cfg.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tolerance", type=float, default=argparse.SUPPRESS, help="numeric tolerance (default 1e-9)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for random unimodular points")
    p.add_argument("--output", "-o", default=argparse.SUPPRESS, help="output file (default stdout)")
    p.add_argument(
        "--assign", action="append", default=argparse.SUPPRESS, metavar="NAME=VALUE",
        help="numeric parameter value, exp:theta or re,im (repeatable)",
    )
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="confmat", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="build a matrix or frame", parents=[common])
    fam = construct.add_subparsers(dest="family", required=True)

    def family(name: str, help: str) -> argparse.ArgumentParser:
        p = fam.add_parser(name, help=help, parents=[common])
        p.add_argument("--conjugate", action="store_true", help="emit the entrywise conjugate")
        return p

    p = family("paley", "real symmetric conference matrix of order q+1")
    p.add_argument("--q", type=int, required=True)
    p = family("cab", "the C(a,b) conference matrix of order q+1")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", default="a")
    p.add_argument("--b", default="b")
    for name, params in (("c6", "b"), ("c10", "abc"), ("c14", "abcdef")):
        p = family(name, f"Hermitian conference family of order {name[1:]}")
        for x in params:
            p.add_argument(f"--{x}", default=x)
    p = family("hadamard-double", "Hadamard matrix of twice the order of a conference matrix")
    p.add_argument("--input", required=True)
    p = family("block", "block square of a Hadamard matrix, iterated beta times")
    p.add_argument("--input", required=True)
    p.add_argument("--beta", type=int, default=1)
    p.add_argument("--seidel", action="store_true", help="emit the Seidel matrix K - I")
    p.add_argument("--sign", type=int, choices=(1, -1), default=1, help="-1 emits -(K - I)")
    p.add_argument("--from-conference", action="store_true", help="input is a Hermitian conference C; use I + iC")
    p = family("fourier", "Fourier matrix")
    p.add_argument("--n", type=int, required=True)
    p = family("quaternary", "C(1, sign*i) + sign*i*I with fourth-root-of-unity entries")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    p = family("zauner", "(q+1, (q+1)/2) equiangular frame from additive characters")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seidel", action="store_true", help="emit the Seidel matrix instead of the frame")

    verify = sub.add_parser("verify", help="check every applicable identity", parents=[common])
    verify.add_argument("file")
    verify.add_argument("--k", type=int, default=None, help="expected multiplicity for Seidel checks")

    frame = sub.add_parser("frame", help="equiangular Parseval frame from a Seidel matrix", parents=[common])
    frame.add_argument("file")
    frame.add_argument("--k", type=int, default=None, help="frame dimension (default: inferred)")
    frame.add_argument("--conjugate", action="store_true", help="use -Q, the conjugate frame")

    equiv = sub.add_parser("equiv", help="switching and permutation equivalence", parents=[common])
    equiv.add_argument("file_a")
    equiv.add_argument("file_b")
    equiv.add_argument("--budget", type=int, default=10**7, help="search node budget")

    cat = sub.add_parser("catalog", help="feasibility of (2k, k) frames for odd k", parents=[common])
    cat.add_argument("--max-k", type=int, default=50)
    return parser


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "frame": cmd_frame,
    "equiv": cmd_equiv,
    "catalog": cmd_catalog,
}


def _config(args: argparse.Namespace) -> RunConfig:
    tol = getattr(args, "tolerance", DEFAULT_TOLERANCE)
    if not (tol > 0 and math.isfinite(tol)):
        raise UsageError("--tolerance must be positive")
    seed = getattr(args, "seed", 0)
    if not 0 <= seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    assign = parse_assignments(getattr(args, "assign", None))
    return RunConfig(tol, seed, getattr(args, "output", None), assign)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ConstructionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONSTRUCTION


def run() -> None:
    sys.exit(main())
