"""Command-line front end.

Subcommands: ``count`` (exact counts + histogram), ``det`` (one
determinant by a chosen route), ``verify`` (sieve many assignments
against the recurrence prediction), ``oeis`` (sequence tables, optionally
in b-file format), ``bench`` (recurrence vs elimination wall time).

Output is JSON by default, one object per invocation, with every integer
rendered as an exact decimal string. For a fixed command line stdout is
byte-identical across runs and thread counts; wall-clock timing is only
included when --timing is passed (and inside bench rows, whose point is
the measurement).

Exit codes: 0 success/verified, 1 verification mismatch, 2 invalid input,
3 resource refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from .core import ModulusSystem, validate_modulus_system
from .counting import (
    coverage_counts,
    exact_coverage_histogram,
    first_primes,
    oeis_a005867,
    oeis_a067549,
)
from .determinant import (
    available_det,
    build_available_matrix,
    build_free_matrix,
    det_bareiss,
    det_laplace,
    free_det,
)
from .errors import ResourceLimitError, ValidationError
from .oracle import DEFAULT_PRODUCT_LIMIT, SieveConfig, residue_independence_check

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_REFUSED = 3


def _parse_moduli(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ValidationError(f"cannot parse moduli list {text!r}") from None


def _system_from_args(args: argparse.Namespace) -> ModulusSystem:
    if args.first_k is not None:
        if args.first_k < 1:
            raise ValidationError("--first-k must be >= 1")
        moduli = first_primes(args.first_k)
    else:
        moduli = _parse_moduli(args.primes)
    return validate_modulus_system(moduli, coprime_mode=args.coprime)


def _moduli_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--primes", help="comma-separated moduli, e.g. 2,3,5")
    group.add_argument(
        "--first-k", type=int, metavar="N", help="use the first N primes"
    )
    parser.add_argument(
        "--coprime",
        action="store_true",
        help="accept pairwise-coprime composite moduli",
    )


def _output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument(
        "--timing",
        action="store_true",
        help="include wall-clock timing_ms in the record (breaks byte-for-byte determinism)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apcover",
        description="Exact coverage counts for residue classes of coprime arithmetic progressions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="coverage counts and full histogram")
    _moduli_flags(p_count)
    _output_flags(p_count)

    p_det = sub.add_parser("det", help="one determinant by a chosen method")
    _moduli_flags(p_det)
    _output_flags(p_det)
    p_det.add_argument("--which", choices=("available", "free"), required=True)
    p_det.add_argument(
        "--method", choices=("recurrence", "bareiss", "laplace"), default="recurrence"
    )

    p_verify = sub.add_parser(
        "verify", help="sieve assignments and compare with the recurrence prediction"
    )
    _moduli_flags(p_verify)
    _output_flags(p_verify)
    p_verify.add_argument("--trials", type=int, default=20)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--exhaustive", action="store_true")
    p_verify.add_argument(
        "--limit",
        type=int,
        default=DEFAULT_PRODUCT_LIMIT,
        metavar="DECIMAL",
        help="refuse products above this (default %(default)s)",
    )
    p_verify.add_argument(
        "--threads", type=int, default=0, help="sieve workers, 0 = auto"
    )

    p_oeis = sub.add_parser("oeis", help="emit sequence terms")
    _output_flags(p_oeis)
    p_oeis.add_argument("--sequence", choices=("A067549", "A005867"), required=True)
    p_oeis.add_argument("--terms", type=int, required=True)
    p_oeis.add_argument(
        "--bfile", action="store_true", help='plain "index value" lines for diffing'
    )

    p_bench = sub.add_parser("bench", help="recurrence vs Bareiss wall time")
    _output_flags(p_bench)
    p_bench.add_argument("--kmax", type=int, required=True)
    p_bench.add_argument("--repeat", type=int, default=3)
    p_bench.add_argument(
        "--timeout-ms",
        type=float,
        default=1000.0,
        help="skip Bareiss for larger k once one case exceeds this",
    )
    return parser


def _str_counts(counts) -> dict[str, str]:
    return {
        "available": str(counts.available),
        "free": str(counts.free),
        "occupied": str(counts.occupied),
        "product": str(counts.product),
    }


def _run_count(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    system = _system_from_args(args)
    counts = coverage_counts(system)
    histogram = exact_coverage_histogram(system)
    record = {
        "command": "count",
        "inputs": {
            "moduli": [str(m) for m in system.moduli],
            "coprime": system.coprime_mode,
        },
        "results": {
            **_str_counts(counts),
            "histogram": [str(c) for c in histogram.counts],
        },
    }
    return record, EXIT_OK


def _run_det(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    system = _system_from_args(args)
    if args.method == "recurrence":
        value = available_det(system) if args.which == "available" else free_det(system)
    else:
        evaluate = det_bareiss if args.method == "bareiss" else det_laplace
        if args.which == "available":
            value = evaluate(build_available_matrix(system))
        else:
            raw = evaluate(build_free_matrix(system))
            value = raw if system.k % 2 == 0 else -raw
    record = {
        "command": "det",
        "inputs": {
            "moduli": [str(m) for m in system.moduli],
            "coprime": system.coprime_mode,
            "which": args.which,
            "method": args.method,
        },
        "results": {"value": str(value)},
    }
    return record, EXIT_OK


def _run_verify(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    system = _system_from_args(args)
    config = SieveConfig(product_limit=args.limit, threads=args.threads)
    report = residue_independence_check(
        system,
        trials=args.trials,
        seed=args.seed,
        config=config,
        exhaustive=args.exhaustive,
    )
    record = {
        "command": "verify",
        "inputs": {
            "moduli": [str(m) for m in system.moduli],
            "coprime": system.coprime_mode,
            "trials": str(args.trials),
            "seed": str(args.seed),
            "exhaustive": args.exhaustive,
            "limit": str(args.limit),
        },
        "results": {
            "mode": "exhaustive" if args.exhaustive else "random",
            "assignments_tested": str(report.assignments_tested),
            "all_match": report.all_match,
            "expected": _str_counts(report.expected),
            "mismatches": [
                {
                    "residues": [str(r) for r in residues],
                    "observed": _str_counts(observed),
                }
                for residues, observed in report.mismatches
            ],
        },
    }
    return record, EXIT_OK if report.all_match else EXIT_MISMATCH


def _run_oeis(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    if args.terms < 1:
        raise ValidationError("--terms must be >= 1")
    table = (
        oeis_a067549(args.terms)
        if args.sequence == "A067549"
        else oeis_a005867(args.terms)
    )
    record = {
        "command": "oeis",
        "inputs": {"sequence": table.name, "terms": str(args.terms)},
        "results": {
            "terms": [[str(i), str(v)] for i, v in table.terms],
        },
    }
    if args.bfile:
        record["_text"] = "".join(line + "\n" for line in table.bfile_lines())
    return record, EXIT_OK


def _time_best(fn, repeat: int) -> tuple[float, Any]:
    """Best-of-``repeat`` wall time in ms, and the (identical) result."""
    best = float("inf")
    result = None
    for _ in range(max(1, repeat)):
        start = time.perf_counter()
        result = fn()
        elapsed = (time.perf_counter() - start) * 1000.0
        best = min(best, elapsed)
    return best, result


def _run_bench(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    if args.kmax < 2:
        raise ValidationError("--kmax must be >= 2")
    if args.repeat < 1:
        raise ValidationError("--repeat must be >= 1")
    primes = first_primes(args.kmax)
    rows = []
    bareiss_alive = True
    for k in range(1, args.kmax + 1):
        system = validate_modulus_system(primes[:k])
        rec_ms, rec_value = _time_best(lambda: available_det(system), args.repeat)
        row: dict[str, Any] = {"k": str(k), "recurrence_ms": f"{rec_ms:.3f}"}
        if bareiss_alive:
            matrix = build_available_matrix(system)
            bar_ms, bar_value = _time_best(lambda: det_bareiss(matrix), 1)
            if bar_ms <= args.timeout_ms and args.repeat > 1:
                # only spend repeats on cases that fit the budget
                extra_ms, _ = _time_best(lambda: det_bareiss(matrix), args.repeat - 1)
                bar_ms = min(bar_ms, extra_ms)
            row["bareiss_ms"] = f"{bar_ms:.3f}"
            row["agree"] = bar_value == rec_value
            if bar_ms > args.timeout_ms:
                bareiss_alive = False
        else:
            row["bareiss_ms"] = "skipped (timeout)"
            row["agree"] = None
        rows.append(row)
    record = {
        "command": "bench",
        "inputs": {
            "kmax": str(args.kmax),
            "repeat": str(args.repeat),
            "timeout_ms": f"{args.timeout_ms:.3f}",
        },
        "results": {"rows": rows},
    }
    return record, EXIT_OK


_RUNNERS = {
    "count": _run_count,
    "det": _run_det,
    "verify": _run_verify,
    "oeis": _run_oeis,
    "bench": _run_bench,
}


def _render_csv(record: dict[str, Any]) -> str:
    command = record["command"]
    results = record["results"]
    if command == "count":
        histogram = results["histogram"]
        header = ["available", "free", "occupied", "product"]
        header += [f"j{j}" for j in range(len(histogram))]
        values = [results[c] for c in header[:4]] + list(histogram)
        return ",".join(header) + "\n" + ",".join(values) + "\n"
    if command == "det":
        inputs = record["inputs"]
        return "which,method,value\n" + ",".join(
            [inputs["which"], inputs["method"], results["value"]]
        ) + "\n"
    if command == "verify":
        expected = results["expected"]
        header = "mode,assignments_tested,all_match,available,free,occupied,product\n"
        row = ",".join(
            [
                results["mode"],
                results["assignments_tested"],
                str(results["all_match"]).lower(),
                expected["available"],
                expected["free"],
                expected["occupied"],
                expected["product"],
            ]
        )
        return header + row + "\n"
    if command == "oeis":
        lines = ["index,value"]
        lines += [",".join(pair) for pair in results["terms"]]
        return "\n".join(lines) + "\n"
    if command == "bench":
        lines = ["k,recurrence_ms,bareiss_ms,agree"]
        for row in results["rows"]:
            agree = "" if row["agree"] is None else str(row["agree"]).lower()
            lines.append(
                ",".join([row["k"], row["recurrence_ms"], row["bareiss_ms"], agree])
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"no csv layout for {command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        record, exit_code = _RUNNERS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    text = record.pop("_text", None)
    if text is not None:
        sys.stdout.write(text)
        return exit_code
    record["timing_ms"] = f"{elapsed_ms:.3f}" if args.timing else None
    if args.format == "csv":
        sys.stdout.write(_render_csv(record))
    else:
        sys.stdout.write(json.dumps(record, indent=2) + "\n")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
