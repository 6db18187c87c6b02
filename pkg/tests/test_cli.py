import json

import pytest

import apcover.cli as cli
from apcover.core import CoverageCounts
from apcover.oracle import IndependenceReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_count_golden(capsys):
    code, record, _ = run_json(capsys, "count", "--primes", "2,3,5")
    assert code == 0
    assert record["command"] == "count"
    assert record["inputs"]["moduli"] == ["2", "3", "5"]
    results = record["results"]
    assert results["available"] == "22"
    assert results["free"] == "8"
    assert results["occupied"] == "8"
    assert results["histogram"] == ["8", "14", "7", "1"]
    assert record["timing_ms"] is None


def test_count_single_prime(capsys):
    code, record, _ = run_json(capsys, "count", "--primes", "2")
    assert code == 0
    assert record["results"]["available"] == "2"
    assert record["results"]["free"] == "1"


def test_count_rejects_composite_with_exit_2(capsys):
    code, out, err = run(capsys, "count", "--primes", "4,3")
    assert code == 2
    assert out == ""
    assert "4" in err and "prime" in err


def test_count_first_k_expansion(capsys):
    code, record, _ = run_json(capsys, "count", "--first-k", "4")
    assert code == 0
    assert record["inputs"]["moduli"] == ["2", "3", "5", "7"]
    assert record["results"]["available"] == "140"


def test_count_coprime_mode(capsys):
    code, record, _ = run_json(capsys, "count", "--primes", "4,9", "--coprime")
    assert code == 0
    assert record["results"]["available"] == "35"
    assert record["results"]["free"] == "24"


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--primes", "2,3,5", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "available,free,occupied,product,j0,j1,j2,j3"
    assert lines[1] == "22,8,8,30,8,14,7,1"


@pytest.mark.parametrize(
    "method,which,expected",
    [
        ("recurrence", "available", "1448"),
        ("bareiss", "available", "1448"),
        ("laplace", "available", "1448"),
        ("recurrence", "free", "480"),
        ("bareiss", "free", "480"),
        ("laplace", "free", "480"),
    ],
)
def test_det_methods_agree(capsys, method, which, expected):
    code, record, _ = run_json(
        capsys, "det", "--primes", "2,3,5,7,11", "--which", which, "--method", method
    )
    assert code == 0
    assert record["results"]["value"] == expected


def test_det_free_bareiss_small(capsys):
    code, record, _ = run_json(
        capsys, "det", "--primes", "2,3", "--which", "free", "--method", "bareiss"
    )
    assert code == 0
    assert record["results"]["value"] == "2"


def test_det_available_bareiss_generalized(capsys):
    code, record, _ = run_json(
        capsys, "det", "--primes", "3,5,7", "--which", "available", "--method", "bareiss"
    )
    assert code == 0
    assert record["results"]["value"] == "92"


def test_det_laplace_cap_exits_2(capsys):
    # free matrix of 8 moduli is 9x9, over the expansion cap
    code, _, err = run(
        capsys, "det", "--first-k", "8", "--which", "free", "--method", "laplace"
    )
    assert code == 2
    assert "dimension" in err
    # the available matrix of 8 moduli is exactly at the cap
    code, record, _ = run_json(
        capsys, "det", "--first-k", "8", "--which", "available", "--method", "laplace"
    )
    assert code == 0
    assert record["results"]["value"] == "5338368"


def test_verify_exhaustive(capsys):
    code, record, _ = run_json(capsys, "verify", "--primes", "2,3,5", "--exhaustive")
    assert code == 0
    results = record["results"]
    assert results["mode"] == "exhaustive"
    assert results["assignments_tested"] == "30"
    assert results["all_match"] is True
    assert results["expected"]["available"] == "22"
    assert results["mismatches"] == []


def test_verify_single_trial(capsys):
    code, record, _ = run_json(
        capsys, "verify", "--primes", "2,3", "--trials", "1", "--seed", "0"
    )
    assert code == 0
    assert record["results"]["assignments_tested"] == "1"
    assert record["results"]["expected"]["available"] == "5"
    assert record["results"]["expected"]["free"] == "2"


def test_verify_seven_primes_random_trials(capsys):
    code, record, _ = run_json(
        capsys,
        "verify", "--primes", "2,3,5,7,11,13,17", "--trials", "20", "--seed", "7",
    )
    assert code == 0
    results = record["results"]
    assert results["assignments_tested"] == "20"
    assert results["all_match"] is True
    assert results["expected"]["product"] == "510510"


def test_verify_product_limit_exits_3(capsys):
    code, out, err = run(capsys, "verify", "--primes", "2,3,5", "--limit", "10")
    assert code == 3
    assert out == ""
    assert "exceeds" in err


def test_verify_exhaustive_budget_exits_3(capsys):
    # 3*5*7*11*13*17*19 = 4849845 assignments, over the exhaustive budget
    code, out, err = run(
        capsys, "verify", "--primes", "3,5,7,11,13,17,19", "--exhaustive"
    )
    assert code == 3
    assert out == ""
    assert "exhaustive" in err


def test_verify_mismatch_exits_1(capsys, monkeypatch):
    fake = IndependenceReport(
        assignments_tested=1,
        all_match=False,
        expected=CoverageCounts(available=5, free=2, occupied=1, product=6),
        mismatches=(((0, 0), CoverageCounts(available=6, free=3, occupied=0, product=6)),),
    )
    monkeypatch.setattr(cli, "residue_independence_check", lambda *a, **kw: fake)
    code, record, _ = run_json(capsys, "verify", "--primes", "2,3")
    assert code == 1
    assert record["results"]["all_match"] is False
    assert record["results"]["mismatches"][0]["observed"]["available"] == "6"


def test_oeis_bfile_bytes(capsys):
    code, out, _ = run(
        capsys, "oeis", "--sequence", "A005867", "--terms", "5", "--bfile"
    )
    assert code == 0
    assert out == "1 1\n2 2\n3 8\n4 48\n5 480\n"


def test_oeis_bfile_first_term(capsys):
    code, out, _ = run(capsys, "oeis", "--sequence", "A067549", "--terms", "1", "--bfile")
    assert code == 0
    assert out == "1 2\n"


def test_oeis_bfile_300_terms(capsys):
    from apcover.counting import first_primes
    from apcover.determinant import build_available_matrix, det_bareiss
    from apcover.core import validate_modulus_system

    code, out, _ = run(
        capsys, "oeis", "--sequence", "A067549", "--terms", "300", "--bfile"
    )
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 300
    assert lines[0] == "1 2"
    assert out.endswith("\n")
    for index in (10, 50):
        s = validate_modulus_system(first_primes(index))
        expected = det_bareiss(build_available_matrix(s))
        assert lines[index - 1] == f"{index} {expected}"


def test_oeis_json_table(capsys):
    code, record, _ = run_json(capsys, "oeis", "--sequence", "A067549", "--terms", "5")
    assert code == 0
    assert record["results"]["terms"] == [
        ["1", "2"],
        ["2", "5"],
        ["3", "22"],
        ["4", "140"],
        ["5", "1448"],
    ]


def test_oeis_csv(capsys):
    code, out, _ = run(
        capsys, "oeis", "--sequence", "A005867", "--terms", "3", "--format", "csv"
    )
    assert code == 0
    assert out == "index,value\n1,1\n2,2\n3,8\n"


def test_oeis_rejects_bad_terms(capsys):
    code, _, err = run(capsys, "oeis", "--sequence", "A005867", "--terms", "0")
    assert code == 2
    assert "terms" in err


def test_bench_small(capsys):
    code, record, _ = run_json(capsys, "bench", "--kmax", "4", "--repeat", "1")
    assert code == 0
    rows = record["results"]["rows"]
    assert [r["k"] for r in rows] == ["1", "2", "3", "4"]
    assert all(r["agree"] is True for r in rows)
    assert rows[1]["recurrence_ms"] != ""


def test_bench_timeout_skips_later_bareiss_rows(capsys):
    code, record, _ = run_json(
        capsys, "bench", "--kmax", "5", "--repeat", "1", "--timeout-ms", "0.000001"
    )
    assert code == 0
    rows = record["results"]["rows"]
    # the first row is measured (and over budget); everything after is skipped
    assert rows[0]["bareiss_ms"] != "skipped (timeout)"
    assert rows[0]["agree"] is True
    assert all(r["bareiss_ms"] == "skipped (timeout)" for r in rows[1:])
    assert all(r["agree"] is None for r in rows[1:])


def test_bench_rejects_kmax_below_2(capsys):
    code, _, err = run(capsys, "bench", "--kmax", "1")
    assert code == 2
    assert "kmax" in err


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--kmax", "2", "--repeat", "1", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,recurrence_ms,bareiss_ms,agree"
    assert len(lines) == 3


def test_json_numbers_round_trip(capsys):
    _, record, _ = run_json(capsys, "count", "--first-k", "9")
    results = record["results"]
    total = int(results["product"])
    assert int(results["available"]) + int(results["occupied"]) == total
    assert sum(int(c) for c in results["histogram"]) == total
    for value in [*results["histogram"], results["available"], results["free"]]:
        assert str(int(value)) == value


def test_output_is_reproducible_in_process(capsys):
    args = ["verify", "--primes", "2,3,5,7", "--trials", "5", "--seed", "1"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_timing_flag_adds_wall_clock(capsys):
    code, record, _ = run_json(capsys, "count", "--primes", "2,3", "--timing")
    assert code == 0
    assert record["timing_ms"] is not None
    float(record["timing_ms"])
