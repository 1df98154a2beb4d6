"""Command-line front end.

Commands:

    quditsim run FILE --shots N --seed S [--method M] [--out FMT]
    quditsim gen KIND [kind flags]
    quditsim validate --pairs A,B --circuits N --shots N --seed S ...
    quditsim rb --depths LIST --circuits N --shots N --p P --seed S ...
    quditsim lrbd --depths LIST --circuits N --shots N --p P --seed S ...

Exit codes: 0 success, 2 circuit parse error, 3 unsupported
method/dimension combination, 4 usage error, 5 file I/O error, 6 memory cap
exceeded, 7 internal error.  Results go to stdout; wall-clock timing and
diagnostics go to stderr so identical inputs and seeds produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from .builders import (build_bernstein_vazirani, build_deutsch_jozsa,
                       build_ghz_chain, build_local_gate_test,
                       build_random_clifford_circuit)
from .circuit import parse_sdim, serialize_sdim
from .errors import (DimensionError, MemoryCapError, ParseError,
                     QuditSimError)
from .experiments import (RBConfig, qutrit_detection_code, run_lrb_d, run_rb,
                          validate_backend_pair)
from .simulate import run_circuit

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_USAGE = 4
EXIT_IO = 5
EXIT_MEMORY = 6
EXIT_INTERNAL = 7


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures remapped from exit 2 to exit 4."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threads_from(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("SDIM_THREADS")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise SystemExit(EXIT_USAGE)
    return None


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def _depths(text: str) -> tuple:
    try:
        depths = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad depth list {text!r}")
    if not depths:
        raise argparse.ArgumentTypeError("depth list is empty")
    return depths


def _cmd_run(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        circuit = parse_sdim(text)
    except ParseError as exc:
        print(f"parse error at line {exc.line}, column {exc.column}: "
              f"{exc.message}", file=sys.stderr)
        return EXIT_PARSE
    threads = _threads_from(args)
    started = time.perf_counter()
    result = run_circuit(circuit, shots=args.shots, seed=args.seed,
                         method=args.method, threads=threads)
    elapsed = time.perf_counter() - started
    print(f"elapsed {elapsed:.3f}s", file=sys.stderr)
    if args.out == "json":
        doc = {
            "dimension": result.dimension,
            "qudits": result.num_qudits,
            "shots": result.shots,
            "seed": args.seed,
            "method": result.method,
            "records": [[{"qudit": r.qudit, "seq": r.seq,
                          "deterministic": r.deterministic,
                          "outcome": r.outcome} for r in shot]
                        for shot in result.records],
            "counts": result.counts,
        }
        _emit(json.dumps(doc, indent=2))
    elif args.out == "counts":
        _emit("\n".join(f"{key} {count}"
                        for key, count in result.counts.items()))
    else:  # csv
        lines = ["shot,qudit,seq,deterministic,outcome"]
        for s, shot in enumerate(result.records):
            for r in shot:
                lines.append(f"{s},{r.qudit},{r.seq},"
                             f"{int(r.deterministic)},{r.outcome}")
        _emit("\n".join(lines))
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.kind == "dj":
        circuit = build_deutsch_jozsa(args.d, constant=args.oracle == "constant",
                                      constant_value=args.value)
    elif args.kind == "bv":
        if any(not ch.isdigit() or int(ch) >= args.d for ch in args.secret):
            raise SystemExit(EXIT_USAGE)
        circuit = build_bernstein_vazirani(args.d, args.secret)
    elif args.kind == "ghz":
        circuit = build_ghz_chain(args.n, args.d, measure=args.measure)
    elif args.kind == "local":
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
        circuit = build_local_gate_test(args.n, d=args.d, depth=args.depth,
                                        rng=rng)
    else:  # random
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
        noise = ("d", args.noise_prob) if args.noise_prob > 0 else None
        circuit = build_random_clifford_circuit(args.n, args.d, args.depth, rng,
                                                noise=noise)
    _emit(serialize_sdim(circuit))
    return EXIT_OK


def _cmd_validate(args) -> int:
    method_a, method_b = args.pairs
    dims = args.d
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
    circuits = []
    for i in range(args.circuits):
        d = dims[i % len(dims)]
        n = int(rng.integers(1, args.max_qudits + 1))
        depth = int(rng.integers(1, args.max_depth + 1))
        noise = ("d", args.noise_prob) if args.noise_prob > 0 else None
        circuits.append(build_random_clifford_circuit(n, d, depth, rng,
                                                      noise=noise))
    threads = _threads_from(args)
    started = time.perf_counter()
    report = validate_backend_pair(circuits, method_a, method_b,
                                   shots=args.shots, threshold=args.threshold,
                                   seed=args.seed, threads=threads,
                                   csv_path=args.csv)
    elapsed = time.perf_counter() - started
    print(f"elapsed {elapsed:.3f}s", file=sys.stderr)
    _emit(_report_json(report))
    return EXIT_OK


def _cmd_rb(args) -> int:
    cfg = RBConfig(d=args.d, depths=args.depths,
                   circuits_per_depth=args.circuits, shots=args.shots,
                   p=args.p)
    threads = _threads_from(args)
    started = time.perf_counter()
    report = run_rb(cfg, seed=args.seed, method=args.method, threads=threads,
                    csv_path=args.csv, manifest_path=args.manifest)
    elapsed = time.perf_counter() - started
    print(f"elapsed {elapsed:.3f}s", file=sys.stderr)
    _emit(_report_json(report))
    return EXIT_OK


def _cmd_lrbd(args) -> int:
    cfg = RBConfig(d=3, depths=args.depths, circuits_per_depth=args.circuits,
                   shots=args.shots, p=args.p)
    threads = _threads_from(args)
    started = time.perf_counter()
    report = run_lrb_d(cfg, qutrit_detection_code(), seed=args.seed,
                       postselect=args.postselect.replace("-", "_"),
                       threads=threads, csv_path=args.csv,
                       manifest_path=args.manifest)
    elapsed = time.perf_counter() - started
    print(f"elapsed {elapsed:.3f}s", file=sys.stderr)
    _emit(_report_json(report))
    return EXIT_OK


def _methods_pair(text: str):
    parts = text.split(",")
    allowed = ("tableau", "weyl", "frames", "statevector")
    if len(parts) != 2 or any(p not in allowed for p in parts):
        raise argparse.ArgumentTypeError(
            f"expected two of {allowed} separated by a comma, got {text!r}")
    return parts


def _dim_list(text: str):
    try:
        dims = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}")
    if not dims or any(d < 2 for d in dims):
        raise argparse.ArgumentTypeError("dimensions must be >= 2")
    return dims


def build_parser() -> _Parser:
    parser = _Parser(prog="quditsim",
                     description="Qudit stabilizer circuit simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate an SDIM circuit file")
    run.add_argument("file")
    run.add_argument("--shots", type=int, default=1)
    run.add_argument("--seed", type=int, required=True)
    run.add_argument("--method", choices=("tableau", "frames", "statevector"),
                     default="tableau")
    run.add_argument("--out", choices=("json", "counts", "csv"),
                     default="json")
    run.add_argument("--threads", type=int, default=None)

    gen = sub.add_parser("gen", help="emit a builder circuit as SDIM text")
    gensub = gen.add_subparsers(dest="kind", required=True)
    dj = gensub.add_parser("dj")
    dj.add_argument("--d", type=int, required=True)
    dj.add_argument("--oracle", choices=("constant", "identity"),
                    default="constant")
    dj.add_argument("--value", type=int, default=0)
    bv = gensub.add_parser("bv")
    bv.add_argument("--d", type=int, required=True)
    bv.add_argument("--secret", required=True)
    ghz = gensub.add_parser("ghz")
    ghz.add_argument("--n", type=int, required=True)
    ghz.add_argument("--d", type=int, required=True)
    ghz.add_argument("--measure", action="store_true")
    local = gensub.add_parser("local")
    local.add_argument("--n", type=int, default=7)
    local.add_argument("--d", type=int, required=True)
    local.add_argument("--depth", type=int, required=True)
    local.add_argument("--seed", type=int, required=True)
    rand = gensub.add_parser("random")
    rand.add_argument("--n", type=int, required=True)
    rand.add_argument("--d", type=int, required=True)
    rand.add_argument("--depth", type=int, required=True)
    rand.add_argument("--seed", type=int, required=True)
    rand.add_argument("--noise-prob", type=float, default=0.0)

    val = sub.add_parser("validate", help="cross-validate two backends")
    val.add_argument("--pairs", "--methods", dest="pairs", type=_methods_pair,
                     default=["tableau", "statevector"])
    val.add_argument("--circuits", type=int, default=100)
    val.add_argument("--shots", type=int, default=800)
    val.add_argument("--threshold", type=float, default=0.2)
    val.add_argument("--d", type=_dim_list, default=[3, 5, 7])
    val.add_argument("--max-qudits", type=int, default=5)
    val.add_argument("--max-depth", type=int, default=100)
    val.add_argument("--noise-prob", type=float, default=0.0)
    val.add_argument("--seed", type=int, required=True)
    val.add_argument("--csv", default=None)
    val.add_argument("--threads", type=int, default=None)

    rb = sub.add_parser("rb", help="single-qudit randomized benchmarking")
    rb.add_argument("--d", type=int, default=3)
    rb.add_argument("--depths", type=_depths, default=(0, 4, 8, 12, 16, 20))
    rb.add_argument("--circuits", type=int, default=30)
    rb.add_argument("--shots", type=int, default=10000)
    rb.add_argument("--p", type=float, required=True)
    rb.add_argument("--seed", type=int, required=True)
    rb.add_argument("--method", choices=("tableau", "frames", "statevector"),
                    default="frames")
    rb.add_argument("--csv", default=None)
    rb.add_argument("--manifest", default=None)
    rb.add_argument("--threads", type=int, default=None)

    lrbd = sub.add_parser("lrbd",
                          help="logical benchmarking with error detection")
    lrbd.add_argument("--depths", type=_depths, default=(0, 4, 8, 12, 16, 20))
    lrbd.add_argument("--circuits", type=int, default=30)
    lrbd.add_argument("--shots", type=int, default=10000)
    lrbd.add_argument("--p", type=float, required=True)
    lrbd.add_argument("--seed", type=int, required=True)
    lrbd.add_argument("--postselect", choices=("all", "x-only", "x_only"),
                      default="all")
    lrbd.add_argument("--csv", default=None)
    lrbd.add_argument("--manifest", default=None)
    lrbd.add_argument("--threads", type=int, default=None)

    return parser


_COMMANDS = {"run": _cmd_run, "gen": _cmd_gen, "validate": _cmd_validate,
             "rb": _cmd_rb, "lrbd": _cmd_lrbd}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except MemoryCapError as exc:
        print(f"memory cap exceeded: {exc}", file=sys.stderr)
        return EXIT_MEMORY
    except DimensionError as exc:
        print(f"unsupported method/dimension: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_IO
    except QuditSimError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - last-resort exit code mapping
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
