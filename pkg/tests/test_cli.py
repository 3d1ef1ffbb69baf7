import math

import pytest

from mobsum.cli import main


def _run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_table_schema_and_rows(capsys):
    code, out = _run(capsys, "table", "--limit", "100", "--stride", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,g,g_err,f,f_err,M,theta,theta_err,epsilon,h,h_err"
    assert len(lines) == 101
    row3 = lines[3].split(",")
    assert row3[0] == "3"
    assert row3[5] == "-1"  # M(3)
    assert abs(float(row3[1]) - 1 / 6) < 1e-12  # g(3)
    assert float(row3[2]) > 0  # g_err scientific field parses
    assert lines[-1].split(",")[0] == "100"


def test_table_stride(capsys):
    code, out = _run(capsys, "table", "--limit", "10", "--stride", "5")
    lines = out.splitlines()
    assert [r.split(",")[0] for r in lines[1:]] == ["5", "10"]
    row10 = lines[2].split(",")
    assert abs(float(row10[6]) - math.log(210.0)) < 1e-12  # theta(10)


def test_table_writes_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, _ = _run(capsys, "table", "--limit", "5", "--out", str(target))
    assert code == 0
    text = target.read_text(encoding="utf-8")
    assert text.startswith("x,g,")
    assert text.endswith("\n") and "\r" not in text


def test_verify_small_passes(capsys):
    code, out = _run(capsys, "verify", "--limit", "500")
    assert code == 0
    lines = out.splitlines()
    names = [r.split(",")[0] for r in lines[1:] if not r.startswith("#")]
    assert names == [
        "divisor_sum_unit",
        "gram_unit_sum",
        "prime_decomposition",
        "abel_rearrangement",
        "g_unit_bound",
        "mangoldt_bound",
        "theta_mertens_bounds",
        "harmonic_log_bound",
        "prime_power_tail_bound",
    ]
    assert all(r.split(",")[7] == "pass" for r in lines[1:] if not r.startswith("#"))
    assert lines[-1].startswith("# gamma=0.57721566490153")


def test_verify_deterministic(capsys):
    _, first = _run(capsys, "verify", "--limit", "400")
    _, second = _run(capsys, "verify", "--limit", "400")
    assert first == second


def test_verify_csv_cells_are_comma_free(capsys):
    _, out = _run(capsys, "verify", "--limit", "200")
    header = out.splitlines()[0].count(",")
    for line in out.splitlines()[1:]:
        if line.startswith("#"):
            continue
        assert line.count(",") == header, line


def test_converge_output(capsys):
    code, out = _run(
        capsys, "converge", "--delta", "0.9", "--limit", "2000", "--stride", "100"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,ratio_h,ratio_M"
    assert len(lines) == 22  # 20 samples + header + footer
    footer = lines[-1]
    assert footer.startswith("G=") and ",xi_h=" in footer and ",xi_M=" in footer


def test_fast_crosscheck(capsys):
    code, out = _run(capsys, "fast", "--limit", "20000")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("quantity,recursive,direct,agrees")
    assert all(r.split(",")[3] == "true" for r in lines[1:])


def test_bench_runs(capsys):
    code, out = _run(capsys, "bench", "--limit", "50000")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "operation,parameter,seconds,detail"
    ops = {r.split(",")[0] for r in lines[1:]}
    assert ops == {"sieve_moebius", "m_recursive"}


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["converge", "--limit", "100"])  # missing required --delta
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["table"])  # missing required --limit
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["table", "--limit", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_unwritable_output_exits_2(tmp_path, capsys):
    bad = tmp_path / "missing_dir" / "out.csv"
    code = main(["table", "--limit", "5", "--out", str(bad)])
    capsys.readouterr()
    assert code == 2
