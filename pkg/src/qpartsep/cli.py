"""``qpartsep`` command line.

State files are JSON objects ``{"n_qubits": N, "matrix": [[[re, im], ...], ...],
"metadata": {...}}``. ``-`` reads stdin. Exit codes: 0 success, 2 malformed
input, 3 validation failure, 4 bad partition.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

import numpy as np

from . import statelib
from .partition import PartitionError, basis_permutation, format_label, parse_label, reorder
from .ppt import PptVerdict, check_partition, scan_partitions
from .qstate import (
    DEFAULT_TOL,
    DensityMatrix,
    QStateError,
    Tolerances,
    maximally_mixed,
    pure_density,
    validate_density,
)
from .reduction import reduce

MAX_QUBITS = 12
TOL_ENV = "QPARTSEP_TOL"

EXIT_MALFORMED = 2
EXIT_INVALID = 3
EXIT_PARTITION = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- state files -----------------------------------------------------------

def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data, where: str = "matrix") -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise CliError(EXIT_MALFORMED, f"'{where}' must be a nonempty list of rows")
    dim = len(data)
    out = np.empty((dim, dim), dtype=np.complex128)
    for a, row in enumerate(data):
        if not isinstance(row, list) or len(row) != dim:
            raise CliError(EXIT_MALFORMED, f"'{where}' row {a} does not have {dim} entries")
        for b, z in enumerate(row):
            if (not isinstance(z, list) or len(z) != 2
                    or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in z)):
                raise CliError(EXIT_MALFORMED, f"'{where}'[{a}][{b}] is not a [re, im] pair")
            out[a, b] = complex(z[0], z[1])
    return out


def state_to_json(rho: DensityMatrix, metadata: dict | None = None) -> dict:
    doc = {"n_qubits": rho.n_qubits, "matrix": matrix_to_json(rho.mat)}
    if metadata:
        doc["metadata"] = metadata
    return doc


def state_from_json(doc, validate: bool = True, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    if not isinstance(doc, dict):
        raise CliError(EXIT_MALFORMED, "state file must be a JSON object")
    n = doc.get("n_qubits")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise CliError(EXIT_MALFORMED, "'n_qubits' must be a positive integer")
    if n > MAX_QUBITS:
        raise CliError(EXIT_MALFORMED, f"'n_qubits' is {n}; at most {MAX_QUBITS} qubits are supported")
    if "matrix" not in doc:
        raise CliError(EXIT_MALFORMED, "missing field 'matrix'")
    m = matrix_from_json(doc["matrix"])
    if m.shape[0] != 1 << n:
        raise CliError(EXIT_MALFORMED, f"'matrix' is {m.shape[0]}x{m.shape[0]}, expected {1 << n}x{1 << n} for n_qubits={n}")
    if not validate:
        return DensityMatrix(n, m)
    try:
        return validate_density(m, n, tol)
    except QStateError as exc:
        raise CliError(EXIT_INVALID, f"{type(exc).__name__}: {exc}") from exc


def read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_MALFORMED, f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_MALFORMED, f"{path}: invalid JSON ({exc})") from exc


def load_state(path: str, validate: bool = True, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    return state_from_json(read_json(path), validate, tol)


def emit(doc, out=None):
    out = out or sys.stdout
    # json writes floats with repr, which round-trips every double exactly
    json.dump(doc, out, indent=None)
    out.write("\n")


# -- reports ---------------------------------------------------------------

def verdict_record(v: PptVerdict, reduced: np.ndarray | None = None) -> dict:
    rec = {
        "label": v.partition.label,
        "min_eig": v.min_eig,
        "classification": v.classification.value,
        "pt_eigenvalues": list(v.pt_eigenvalues),
        "tolerance": v.tolerance_used,
    }
    if reduced is not None:
        rec["reduced"] = matrix_to_json(reduced)
    return rec


def build_report(state_name: str, rho: DensityMatrix, verdicts, tol: Tolerances) -> dict:
    records = [verdict_record(v, reduce(rho, v.partition, tol).mat) for v in verdicts]
    npt = [r["label"] for r in records if r["classification"] == "NPT_INSEPARABLE"]
    if npt:
        summary = f"inseparable across {', '.join(npt)}; entangled"
    else:
        summary = "all tested reductions are PPT; inconclusive"
    return {"state": state_name, "partitions": records, "summary": summary}


def render_report(report: dict, verdicts) -> str:
    lines = [f"state: {report['state']}"]
    width = max(len(r["label"]) for r in report["partitions"])
    for rec, v in zip(report["partitions"], verdicts):
        eigs = " ".join(f"{e: .6g}" for e in rec["pt_eigenvalues"])
        lines.append(f"  {rec['label']:<{width}}  {rec['classification']:<16}  min_eig={rec['min_eig']: .9g}  pt=[{eigs}]")
    for v in verdicts:
        if v.inseparable:
            lines.append("  " + v.describe())
    lines.append(f"summary: {report['summary']}")
    return "\n".join(lines)


# -- commands --------------------------------------------------------------

def _tolerances(args) -> Tolerances:
    tol = args.tol
    if tol is None:
        env = os.environ.get(TOL_ENV)
        if env:
            try:
                tol = float(env)
            except ValueError:
                raise CliError(EXIT_MALFORMED, f"{TOL_ENV}={env!r} is not a number") from None
    if tol is None:
        return DEFAULT_TOL
    if not tol >= 0:
        raise CliError(EXIT_MALFORMED, f"tolerance must be nonnegative, got {tol}")
    return replace(DEFAULT_TOL, psd_tol=tol)


def _partition(args, n: int):
    try:
        return parse_label(args.partition, n)
    except PartitionError as exc:
        raise CliError(EXIT_PARTITION, f"--partition: {exc}") from exc


def cmd_validate(args) -> int:
    rho = load_state(args.file, tol=_tolerances(args))
    eigs = rho.eigenvalues() if rho.n_qubits <= 6 else None
    print(f"valid {rho.n_qubits}-qubit density matrix")
    if eigs is not None:
        print("eigenvalues: " + " ".join(f"{e:.12g}" for e in eigs))
    return 0


def cmd_reorder(args) -> int:
    tol = _tolerances(args)
    rho = load_state(args.file, not args.no_validate, tol)
    p = _partition(args, rho.n_qubits)
    if args.no_validate:
        perm = basis_permutation(p)
        out = DensityMatrix(rho.n_qubits, rho.mat[np.ix_(perm, perm)])
    else:
        out = reorder(rho, p, tol)
    emit(state_to_json(out, {"name": "reorder", "source": args.file, "partition": p.label}))
    return 0


def cmd_reduce(args) -> int:
    tol = _tolerances(args)
    rho = load_state(args.file, tol=tol)
    p = _partition(args, rho.n_qubits)
    rs = reduce(rho, p, tol)
    emit(state_to_json(rs.state, {"name": "reduce", "source": args.file, "partition": p.label}))
    return 0


def _print_report(args, rho, verdicts, tol):
    report = build_report(args.file, rho, verdicts, tol)
    if args.json:
        emit(report)
    else:
        print(render_report(report, verdicts))


def cmd_ppt(args) -> int:
    tol = _tolerances(args)
    rho = load_state(args.file, tol=tol)
    p = _partition(args, rho.n_qubits)
    _print_report(args, rho, [check_partition(rho, p, tol)], tol)
    return 0


def cmd_scan(args) -> int:
    tol = _tolerances(args)
    rho = load_state(args.file, tol=tol)
    if rho.n_qubits < 2:
        raise CliError(EXIT_PARTITION, "a single qubit has no bipartitions")
    _print_report(args, rho, scan_partitions(rho, tol), tol)
    return 0


GEN_KINDS = ("werner", "example-prime", "example-dprime", "ghz", "maximally-mixed",
             "random-pure", "random-mixed", "random-separable")


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise CliError(EXIT_MALFORMED, f"gen {args.kind} requires --{name}")
    return value


def generate(args) -> tuple[DensityMatrix, dict]:
    kind = args.kind
    params = {}
    if kind in ("werner", "example-prime", "example-dprime"):
        x = params["x"] = _need(args, "x")
        if not 0.0 <= x <= 1.0:
            raise CliError(EXIT_MALFORMED, f"--x must lie in [0, 1], got {x}")
        fn = {"werner": statelib.werner, "example-prime": statelib.example_prime,
              "example-dprime": statelib.example_dprime}[kind]
        return fn(x), params
    if kind == "random-separable":
        label = params["partition"] = _need(args, "partition")
        n = args.n
        try:
            p = parse_label(label, n)
        except PartitionError as exc:
            raise CliError(EXIT_PARTITION, f"--partition: {exc}") from exc
        n = params["n"] = p.n
    else:
        n = params["n"] = _need(args, "n")
    if not 1 <= n <= MAX_QUBITS:
        raise CliError(EXIT_MALFORMED, f"--n must be in 1..{MAX_QUBITS}, got {n}")
    if kind == "ghz":
        return pure_density(statelib.ghz(n)), params
    if kind == "maximally-mixed":
        return maximally_mixed(n), params
    seed = params["seed"] = _need(args, "seed")
    if kind == "random-pure":
        return pure_density(statelib.random_pure(n, seed)), params
    if kind == "random-mixed":
        rank = params["rank"] = args.rank if args.rank is not None else 1 << n
        if not 1 <= rank <= 1 << n:
            raise CliError(EXIT_MALFORMED, f"--rank must be in 1..{1 << n}, got {rank}")
        return statelib.random_mixed(n, rank, seed), params
    terms = params["terms"] = args.terms
    if terms < 1:
        raise CliError(EXIT_MALFORMED, "--terms must be positive")
    return statelib.random_partition_separable(p, terms, seed), params


def cmd_gen(args) -> int:
    rho, params = generate(args)
    emit(state_to_json(rho, {"name": args.kind, "source": "qpartsep gen", "parameters": params}))
    return 0


def load_constructor_spec(doc) -> statelib.ConstructorSpec:
    if not isinstance(doc, dict):
        raise CliError(EXIT_MALFORMED, "constructor spec must be a JSON object")
    label = doc.get("partition")
    if not isinstance(label, str):
        raise CliError(EXIT_MALFORMED, "missing string field 'partition'")
    n = doc.get("n_qubits")
    if n is not None and (not isinstance(n, int) or isinstance(n, bool)):
        raise CliError(EXIT_MALFORMED, "'n_qubits' must be an integer")
    if n is not None and n > MAX_QUBITS:
        raise CliError(EXIT_MALFORMED, f"'n_qubits' is {n}; at most {MAX_QUBITS} qubits are supported")
    try:
        p = parse_label(label, n)
    except PartitionError as exc:
        raise CliError(EXIT_PARTITION, f"'partition': {exc}") from exc
    if p.n > MAX_QUBITS:
        raise CliError(EXIT_MALFORMED, f"at most {MAX_QUBITS} qubits are supported")
    raw = doc.get("blocks")
    if not isinstance(raw, list):
        raise CliError(EXIT_MALFORMED, "missing list field 'blocks'")
    blocks = []
    for k, blk in enumerate(raw):
        if not isinstance(blk, dict) or "weight" not in blk or "sigma" not in blk:
            raise CliError(EXIT_MALFORMED, f"blocks[{k}] needs 'weight' and 'sigma'")
        w = blk["weight"]
        if not isinstance(w, (int, float)) or isinstance(w, bool):
            raise CliError(EXIT_MALFORMED, f"blocks[{k}].weight is not a number")
        sigma = matrix_from_json(blk["sigma"], f"blocks[{k}].sigma")
        if sigma.shape != (4, 4):
            raise CliError(EXIT_MALFORMED, f"blocks[{k}].sigma must be 4x4")
        blocks.append((w, sigma))
    try:
        return statelib.ConstructorSpec(p, tuple(blocks))
    except statelib.ConstructorError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc


def cmd_construct(args) -> int:
    spec = load_constructor_spec(read_json(args.spec_file))
    rho = statelib.construct_inseparable(spec)
    emit(state_to_json(rho, {"name": "construct", "source": args.spec_file,
                             "partition": format_label(spec.partition)}))
    return 0


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpartsep", description="Partial-separability test for N-qubit states.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_tol(sp):
        sp.add_argument("--tol", type=float, default=None,
                        help=f"eigenvalue tolerance (default 1e-9, or ${TOL_ENV})")
        return sp

    sp = with_tol(sub.add_parser("validate", help="check that a file holds a density matrix"))
    sp.add_argument("file", help="state JSON file, or - for stdin")
    sp.set_defaults(func=cmd_validate)

    sp = with_tol(sub.add_parser("reorder", help="rewrite a state in the basis ordered by a partition"))
    sp.add_argument("file", help="state JSON file, or - for stdin")
    sp.add_argument("--partition", "-p", required=True, help="partition label such as AC|BD")
    sp.add_argument("--no-validate", action="store_true", help="permute without checking the input is a state")
    sp.set_defaults(func=cmd_reorder)

    sp = with_tol(sub.add_parser("reduce", help="reduce to the two-qubit state of a partition"))
    sp.add_argument("file", help="state JSON file, or - for stdin")
    sp.add_argument("--partition", "-p", required=True, help="partition label such as AC|BD")
    sp.set_defaults(func=cmd_reduce)

    sp = with_tol(sub.add_parser("ppt", help="PPT verdict for one partition"))
    sp.add_argument("file", help="state JSON file, or - for stdin")
    sp.add_argument("--partition", "-p", required=True, help="partition label such as AC|BD")
    sp.add_argument("--json", action="store_true", help="emit the report as JSON")
    sp.set_defaults(func=cmd_ppt)

    sp = with_tol(sub.add_parser("scan", help="PPT verdicts for every partition"))
    sp.add_argument("file", help="state JSON file, or - for stdin")
    sp.add_argument("--json", action="store_true", help="emit the report as JSON")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("gen", help="write a generated state")
    sp.add_argument("kind", choices=GEN_KINDS)
    sp.add_argument("--x", type=float, help="mixing parameter in [0, 1] (werner, example-*)")
    sp.add_argument("--n", type=int, help="number of qubits")
    sp.add_argument("--rank", type=int, help="rank of random-mixed (default 2^n)")
    sp.add_argument("--terms", type=int, default=4, help="mixture terms for random-separable (default 4)")
    sp.add_argument("--partition", "-p", help="partition for random-separable")
    sp.add_argument("--seed", type=int, help="PRNG seed, required for random-* kinds")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("construct", help="assemble a state from weighted two-qubit blocks")
    sp.add_argument("spec_file", help="constructor spec JSON file, or - for stdin")
    sp.set_defaults(func=cmd_construct)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"qpartsep: error: {exc}", file=sys.stderr)
        return exc.code
    except QStateError as exc:
        print(f"qpartsep: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
