import csv
import io
import math
import subprocess
import sys

import pytest

from dnsdisc.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def table(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_helstrom_cross_methods(capsys):
    code, out, _ = run(["helstrom", "--mu", "1", "--xi", "1", "--k", "0", "--h", "2", "--nt", "0.2"], capsys)
    assert code == 0
    (row,) = table(out)
    assert abs(float(row["pe_closed"]) - float(row["pe_general"])) < 1e-9
    assert row["pe_pure"] == ""


def test_helstrom_equal_states(capsys):
    _, out, _ = run(["helstrom", "--k", "1", "--h", "1", "--nt", "0"], capsys)
    (row,) = table(out)
    assert float(row["pe_pure"]) == 0.5
    assert float(row["pe_general"]) == pytest.approx(0.5, abs=1e-12)


def test_helstrom_coherent(capsys):
    _, out, _ = run(["helstrom", "--mu", "2", "--nt", "0"], capsys)
    (row,) = table(out)
    assert float(row["pe_pure"]) == pytest.approx(0.5 * (1 - math.sqrt(1 - math.exp(-4))), rel=1e-12)


def test_complex_flag_and_comments(capsys):
    _, out, _ = run(["helstrom", "--mu=-0.5,0.25", "--h", "1", "--nt", "0.1"], capsys)
    assert out.startswith("# dnsdisc")
    (row,) = table(out)
    assert float(row["mu_re"]) == -0.5 and float(row["mu_im"]) == 0.25


def test_kennedy_subcommand(capsys):
    _, out, _ = run(["kennedy", "--mu", "1", "--xi", "1", "--h", "2", "--nt", "0.2"], capsys)
    (row,) = table(out)
    assert row["n_th"] == "1" and row["optimal"] == "1"
    code, out, err = run(["kennedy", "--mu", "1", "--h", "2", "--nt", "0.2"], capsys)
    assert code == 2 and "--nth" in err
    _, out, _ = run(["kennedy", "--mu", "1", "--h", "2", "--nt", "0.2", "--nth", "1", "--beta=-1"], capsys)
    assert table(out)[0]["optimal"] == "0"


def test_simulate_subcommand(capsys):
    _, out, _ = run(["simulate", "--h", "2", "--nt", "0.2", "--trials", "20000", "--seed", "4"], capsys)
    (row,) = table(out)
    assert row["pe_mc"] != ""


def test_flag_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["helstrom", "--k", "x"])
    assert exc.value.code == 2
    capsys.readouterr()
    code, _, err = run(["helstrom", "--nt", "-1"], capsys)
    assert code == 2 and err.startswith("error:")


def test_truncation_failure_exit_3(capsys):
    code, _, err = run(["helstrom", "--mu", "2", "--nt", "0.5", "--dim", "4"], capsys)
    assert code == 3 and err.count("\n") == 1


def test_sweep_fig1_rows(capsys):
    _, out, _ = run(["sweep", "--fig", "1", "--workers", "1", "--dstep", "0.5"], capsys)
    rows = table(out)
    assert len(rows) == 6 * 9
    for row in rows:
        if float(row["mu_re"]) == 0:
            expected = 0.5 if row["k"] == row["h"] else 0.0
            assert float(row["pe_general"]) == pytest.approx(expected, abs=1e-12)


def test_sweep_fig3_kennedy_equals_helstrom(capsys):
    _, out, _ = run(["sweep", "--fig", "3", "--workers", "1"], capsys)
    rows = table(out)
    assert len(rows) == 4 * 7
    for row in rows:
        assert abs(float(row["pe_kennedy"]) - float(row["pe_general"])) < 1e-9


def test_ook_rows(capsys):
    _, out, _ = run(["ook", "--workers", "1", "--nts", "0.2", "--hs", "1,2,3,4,5"], capsys)
    assert "# energy matching" in out
    rows = table(out)
    dns = [float(r["pe_dns"]) for r in rows]
    assert all(float(r["pe_dns"]) < float(r["pe_coherent"]) for r in rows)
    assert all(b < a for a, b in zip(dns, dns[1:]))
    for r in rows:
        assert float(r["energy_dns"]) == pytest.approx(float(r["energy_coherent"]), rel=1e-14)


def test_sweep_fig4_is_ook(capsys):
    _, out, _ = run(["sweep", "--fig", "4", "--workers", "1", "--hs", "1,2"], capsys)
    assert len(table(out)) == 2 * 3


def test_verify_presets(capsys):
    code, out, err = run(["verify", "--grid", "empty"], capsys)
    assert code == 0 and "0 checks" in err
    code, out, _ = run(["verify", "--grid", "quick"], capsys)
    assert code == 0 and all(r["status"] == "pass" for r in table(out))
    code, _, err = run(["verify", "--grid", "quick", "--check-tol", "1e-30"], capsys)
    assert code == 1 and "FAIL" in err


def test_parallel_sweep_matches_serial(capsys):
    _, serial, _ = run(["sweep", "--fig", "2", "--dstep", "1", "--workers", "1"], capsys)
    _, parallel, _ = run(["sweep", "--fig", "2", "--dstep", "1", "--workers", "3"], capsys)
    assert table(serial) == table(parallel)


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "dnsdisc", "helstrom", "--h", "1", "--nt", "0.2"],
        capture_output=True, text=True, check=True,
    )
    assert "pe_closed" in res.stdout
