import json

from rca.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestCheck:
    def test_non_injective_exits_1(self, capsys):
        status, out, _ = run(capsys, "check", "eca:90")
        assert status == 1
        assert "not injective" in out

    def test_injective_reports_neighborhoods(self, capsys):
        status, out, _ = run(capsys, "check", "eca:170")
        assert status == 0
        assert "N = {1}" in out
        assert "N_inv = {-1}" in out
        assert "N_tilde = {1}" in out

    def test_bad_rule_argument_exits_2(self, capsys):
        status, _, err = run(capsys, "check", "eca:900")
        assert status == 2
        assert "error:" in err

    def test_unreadable_file_exits_2(self, capsys):
        status, _, err = run(capsys, "check", "/nonexistent/rule.txt")
        assert status == 2

    def test_malformed_file_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.rule"
        path.write_text("alphabet 2\nneighborhood 0\ntable 0 1 1\n")
        status, _, err = run(capsys, "check", str(path))
        assert status == 2
        assert "line 3" in err


class TestInvert:
    def test_shift(self, capsys, tmp_path):
        out_file = tmp_path / "inv.rule"
        status, out, _ = run(capsys, "invert", "eca:170", "-o", str(out_file))
        assert status == 0
        assert "neighborhood -1" in out
        assert out_file.read_text().startswith("alphabet 2")

    def test_rule_file_input(self, capsys, tmp_path):
        path = tmp_path / "shift.rule"
        path.write_text("alphabet 2\nneighborhood 1\ntable 0 1\n")
        status, out, _ = run(capsys, "invert", str(path))
        assert status == 0
        assert "neighborhood -1" in out


class TestBn:
    def test_shift(self, capsys):
        status, out, _ = run(capsys, "bn", "eca:170")
        assert status == 0
        assert "BN = {1}; bound = {1}; slack = {}" in out

    def test_power(self, capsys):
        status, out, _ = run(capsys, "bn", "eca:170", "--power", "3")
        assert status == 0
        assert "BN = {3}" in out

    def test_json_roundtrip(self, capsys):
        status, out, _ = run(capsys, "bn", "eca:170", "--json")
        payload = json.loads(out)
        assert json.loads(json.dumps(payload)) == payload
        assert payload["bn"] == [1]


class TestVerify:
    def test_exhaustive(self, capsys):
        status, out, _ = run(
            capsys, "verify", "eca:170", "--period", "6", "--exhaustive"
        )
        assert status == 0
        assert "4096/4096 match" in out

    def test_dump_is_deterministic(self, capsys, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        run(capsys, "verify", "eca:15", "--period", "5", "--dump", str(a))
        run(capsys, "verify", "eca:15", "--period", "5", "--dump", str(b))
        assert a.read_bytes() == b.read_bytes()
        assert a.read_text().startswith("period 5")


class TestBlocks:
    def test_dump(self, capsys, tmp_path):
        path = tmp_path / "k0.txt"
        status, out, _ = run(capsys, "blocks", "eca:170", "--dump", str(path))
        assert status == 0
        assert "Loc(K_0): 0:1 1:0" in out
        assert path.read_text().startswith("cells 0:1 1:0")


class TestTimeSymmetry:
    def test_ts_check_holds(self, capsys):
        status, out, _ = run(capsys, "ts-check", "eca:51", "--involution", "0 1")
        assert status == 0

    def test_ts_check_fails(self, capsys):
        status, out, _ = run(capsys, "ts-check", "eca:170", "--involution", "0 1")
        assert status == 1

    def test_ts_check_bad_involution(self, capsys):
        status, _, err = run(capsys, "ts-check", "eca:51", "--involution", "1 2 0")
        assert status == 2

    def test_ts_find(self, capsys):
        status, out, _ = run(capsys, "ts-find", "eca:204", "--json")
        assert status == 0
        assert json.loads(out)["involutions"] == [[0, 1], [1, 0]]

    def test_ts_find_none(self, capsys):
        status, out, _ = run(capsys, "ts-find", "eca:170")
        assert status == 1

    def test_symmetrize_then_ebr2(self, capsys, tmp_path):
        path = tmp_path / "sym.rule"
        status, out, _ = run(capsys, "symmetrize", "eca:170", "-o", str(path))
        assert status == 0
        assert "involution 0 2 1 3" in out
        status, out, _ = run(
            capsys,
            "ebr2",
            str(path),
            "--involution",
            "0 2 1 3",
            "--period",
            "6",
            "--exhaustive",
        )
        assert status == 0
        assert "4096/4096 match" in out
        assert "containment holds" in out


class TestCensus:
    def test_eca_census(self, capsys):
        status, out, _ = run(capsys, "census", "--alphabet", "2", "--radius", "1")
        assert status == 0
        assert "6 reversible rules among 256" in out

    def test_census_json(self, capsys):
        status, out, _ = run(
            capsys, "census", "--alphabet", "2", "--radius", "1", "--json"
        )
        payload = json.loads(out)
        assert [row["rule"] for row in payload["reversible"]] == [
            15, 51, 85, 170, 204, 240,
        ]

    def test_census_report_dir(self, capsys, tmp_path):
        outdir = tmp_path / "report"
        status, out, _ = run(
            capsys,
            "census",
            "--alphabet",
            "2",
            "--radius",
            "1",
            "--report-dir",
            str(outdir),
        )
        assert status == 0
        csv_text = (outdir / "census.csv").read_text()
        assert csv_text.splitlines()[0].startswith("rule,")
        assert len(csv_text.splitlines()) == 7
        assert (outdir / "census_bn.png").stat().st_size > 0

    def test_census_cap(self, capsys):
        status, _, err = run(capsys, "census", "--alphabet", "3", "--radius", "1")
        assert status == 2


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_no_arguments(self, capsys):
        assert run(capsys)[0] == 2
