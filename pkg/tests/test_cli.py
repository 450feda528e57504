import json
import math

import pytest

from wiretap_bec import cli, codes, secrecy


def run(*argv):
    return cli.main(list(argv))


def read_csv(path):
    meta, header, rows = {}, None, []
    for line in path.read_text().splitlines():
        if line.startswith("# "):
            key, _, val = line[2:].partition("=")
            meta[key] = val
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, header, rows


def data_lines(path):
    return [l for l in path.read_text().splitlines()
            if not l.startswith("# generated")]


class TestProfile:
    def test_polar_exact_csv(self, tmp_path):
        out = tmp_path / "prof.csv"
        assert run("profile", "--family", "polar", "--p", "0.4", "--m", "4",
                   "--out", str(out)) == 0
        meta, header, rows = read_csv(out)
        assert header == ["index", "erasure", "tvd", "stderr"]
        assert meta["trials"] == "0"
        assert len(rows) == 16
        exact = codes.polar_bitchannel_erasure(4, 0.4)
        for row, want in zip(rows, exact):
            assert math.isclose(float(row[1]), want, abs_tol=1e-9)
            assert math.isclose(float(row[2]), (1 - want) / 2, abs_tol=1e-9)

    def test_sorted_companion_file(self, tmp_path):
        out = tmp_path / "prof.csv"
        run("profile", "--family", "polar", "--p", "0.4", "--m", "4",
            "--out", str(out))
        _, _, rows = read_csv(tmp_path / "prof_sorted.csv")
        tvds = [float(r[2]) for r in rows]
        assert tvds == sorted(tvds)

    def test_rm_monte_carlo_json(self, tmp_path):
        out = tmp_path / "prof.json"
        assert run("profile", "--family", "rm", "--p", "0.4", "--m", "3",
                   "--trials", "2000", "--seed", "5", "--out", str(out),
                   "--format", "json") == 0
        doc = json.loads(out.read_text())
        assert doc["meta"]["trials"] == 2000
        assert len(doc["rows"]) == 8
        assert all(0 <= r["erasure"] <= 1 for r in doc["rows"])

    def test_message_mode(self, tmp_path):
        out = tmp_path / "prof.csv"
        assert run("profile", "--family", "rm", "--p", "0.5", "--m", "3",
                   "--mode", "message", "--k", "3", "--trials", "1000",
                   "--out", str(out)) == 0
        _, _, rows = read_csv(out)
        assert [r[0] for r in rows] == ["0", "1", "2"]

    def test_message_mode_requires_k(self, tmp_path):
        assert run("profile", "--family", "rm", "--p", "0.5", "--m", "3",
                   "--mode", "message",
                   "--out", str(tmp_path / "x.csv")) == 1


class TestRateCurve:
    def test_polar_bound2(self, tmp_path):
        out = tmp_path / "rates.csv"
        assert run("rate-curve", "--family", "polar", "--p", "0.4",
                   "--delta", "0.01", "--m", "3,4,5",
                   "--out", str(out)) == 0
        _, header, rows = read_csv(out)
        assert header[:3] == ["n", "k", "rate"]
        assert [r[0] for r in rows] == ["8", "16", "32"]
        want = secrecy.max_rate(codes.POLAR, 5, 0.4,
                                secrecy.SecrecyBudget(0.01)).k
        assert int(rows[2][1]) == want

    def test_second_order_negative_note(self, tmp_path):
        out = tmp_path / "rates.csv"
        assert run("rate-curve", "--family", "polar", "--p", "0.4",
                   "--delta", "0.001", "--m", "2", "--out", str(out)) == 0
        _, _, rows = read_csv(out)
        assert rows[0][-1] == "second-order-negative"

    def test_rm_bound1_small(self, tmp_path):
        out = tmp_path / "rates.json"
        assert run("rate-curve", "--family", "rm", "--p", "0.4",
                   "--delta", "0.01", "--m", "3", "--bound", "1",
                   "--trials", "2000", "--out", str(out),
                   "--format", "json") == 0
        doc = json.loads(out.read_text())
        row = doc["rows"][0]
        assert row["bound"] == "bound1"
        assert row["tvd_sum"] <= 0.01


class TestValidate:
    def test_passes(self, tmp_path, capsys):
        out = tmp_path / "report.txt"
        assert run("validate", "--max-n", "4", "--out", str(out)) == 0
        report = out.read_text()
        assert "FAIL" not in report
        assert report.count("PASS") > 10

    def test_injected_fault_detected(self, capsys):
        assert run("validate", "--max-n", "4", "--inject-fault") == 2
        assert "FAIL injected fault" in capsys.readouterr().out


class TestExitCodes:
    def test_usage_errors(self, tmp_path):
        out = str(tmp_path / "x.csv")
        assert run("profile", "--family", "polar", "--p", "1.5", "--m", "3",
                   "--out", out) == 1
        assert run("profile", "--family", "hamming", "--p", "0.4", "--m", "3",
                   "--out", out) == 1
        assert run("rate-curve", "--family", "polar", "--p", "0.4",
                   "--delta", "2.0", "--m", "3", "--out", out) == 1
        assert run("bogus-command") == 1

    def test_io_error(self):
        assert run("profile", "--family", "polar", "--p", "0.4", "--m", "3",
                   "--out", "/no/such/dir/x.csv") == 3


class TestDeterminism:
    def test_thread_count_invariance(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        base = ["profile", "--family", "rm", "--p", "0.4", "--m", "4",
                "--trials", "3000", "--seed", "7"]
        assert run(*base, "--threads", "1", "--out", str(a)) == 0
        assert run(*base, "--threads", "4", "--out", str(b)) == 0
        assert data_lines(a) == data_lines(b)
