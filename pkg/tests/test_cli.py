import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from infodyn import cli, complementarity
from infodyn.cli import FuzzSummary, fmt, fmt_residual, main, run_fuzz
from infodyn.errors import NoConvergence
from infodyn.qstate import bell_state, ghz_state, state_to_json, w_state

HEADER_2Q = "t,I1,I2,I_total,tau12,E,residual"
HEADER_3Q = "t,I1,I2,I3,I_total,tau12,tau13,tau23,tau123,E,residual"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture
def state_file(tmp_path):
    def write(state_or_text, name="state.json"):
        p = tmp_path / name
        text = state_or_text if isinstance(state_or_text, str) else state_to_json(state_or_text)
        p.write_text(text)
        return str(p)

    return write


class TestFormatting:
    def test_fmt(self):
        assert fmt(1 / 3) == "0.333333333333"
        assert fmt(0.0) == "0"
        assert fmt(2.0) == "2"

    def test_fmt_residual(self):
        assert fmt_residual(0.0) == "0.00000000000e+00"
        assert fmt_residual(-0.0) == "0.00000000000e+00"
        assert fmt_residual(1.5e-15) == "1.50000000000e-15"


class TestEvolve:
    def test_ising_2q_default(self, capsys):
        code, out, _ = run(capsys, "evolve", "--qubits", "2", "--preset", "ising", "--c", "1",
                           "--alpha-sq", "1/3", "--grid", "0:6.2832:401")
        assert code == 0
        assert out.splitlines()[0] == HEADER_2Q
        data = rows(out)
        assert len(data) == 401
        assert max(abs(float(r["residual"])) for r in data) <= 1e-9
        assert "e" in data[0]["residual"]

    def test_xy_3q(self, capsys):
        code, out, _ = run(capsys, "evolve", "--qubits", "3", "--preset", "xy", "--c", "1",
                           "--alpha-sq", "1/3")
        assert code == 0
        assert out.splitlines()[0] == HEADER_3Q
        data = rows(out)
        assert len(data) == 401
        assert max(abs(float(r["residual"])) for r in data) <= 1e-9

    def test_two_samples(self, capsys):
        code, out, _ = run(capsys, "evolve", "--qubits", "2", "--grid", "0.5:1.5:2")
        assert code == 0
        assert [float(r["t"]) for r in rows(out)] == [0.5, 1.5]

    def test_json_fields(self, capsys):
        code, out, _ = run(capsys, "evolve", "--qubits", "3", "--grid", "0:1:3", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert len(doc) == 3
        assert list(doc[0]) == HEADER_3Q.split(",")

    def test_state_file_start(self, capsys, state_file):
        code, out, _ = run(capsys, "evolve", "--state", state_file(w_state()), "--preset", "custom",
                           "--c1", "0.3", "--c2", "-0.4", "--c3", "1.1", "--grid", "0:3:31")
        assert code == 0
        data = rows(out)
        assert len(data) == 31
        assert float(data[0]["tau123"]) == pytest.approx(0.0, abs=1e-12)

    def test_out_file(self, capsys, tmp_path):
        dest = tmp_path / "series.csv"
        code, out, _ = run(capsys, "evolve", "--qubits", "2", "--grid", "0:1:5", "--out", str(dest))
        assert code == 0 and out == ""
        assert len(rows(dest.read_text())) == 5

    def test_deterministic_bytes(self, capsys):
        argv = ("evolve", "--qubits", "3", "--preset", "xy", "--grid", "0:6:101")
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b

    @pytest.mark.parametrize("argv", [
        ("evolve", "--qubits", "5"),
        ("evolve", "--qubits", "2", "--grid", "0:1"),
        ("evolve", "--qubits", "2", "--grid", "0:1:1"),
        ("evolve", "--qubits", "2", "--alpha-sq", "3/2"),
        ("evolve", "--qubits", "2", "--alpha-sq", "abc"),
        ("evolve", "--qubits", "2", "--preset", "heisenberg"),
        ("evolve", "--qubits", "2", "--alpha-sq", "1/3", "--state", "x.json"),
        ("bogus",),
        (),
    ])
    def test_bad_arguments(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 1
        assert err


class TestCheck:
    def test_ghz(self, capsys, state_file):
        code, out, _ = run(capsys, "check", "--state", state_file(ghz_state()))
        assert code == 0
        (r,) = rows(out)
        assert float(r["tau123"]) == pytest.approx(1.0, abs=1e-12)
        assert float(r["E"]) == pytest.approx(3.0, abs=1e-12)
        assert abs(float(r["residual"])) <= 1e-12

    def test_bell(self, capsys, state_file):
        code, out, _ = run(capsys, "check", "--state", state_file(bell_state()))
        assert code == 0
        (r,) = rows(out)
        assert float(r["I_total"]) == pytest.approx(0.0, abs=1e-12)
        assert float(r["tau12"]) == pytest.approx(1.0, abs=1e-12)

    def test_json(self, capsys, state_file):
        code, out, _ = run(capsys, "check", "--state", state_file(w_state()), "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["tangles"]["tau_pairs"]["12"] == pytest.approx(4 / 9, abs=1e-12)
        assert doc["complementarity"]["lhs"] == pytest.approx(3.0, abs=1e-12)
        assert len(doc["complementarity"]["per_qubit_residuals"]) == 3

    @pytest.mark.parametrize("text", [
        '{"qubits": 2, "amplitudes": [[1, 0], [0, 0], [0, 0]]}',
        '{"qubits": 2, "amplitudes": [[1, 0], [1, 0], [0, 0], [0, 0]]}',
        '{"qubits": 2}',
        "not json",
        '{"qubits": 1, "amplitudes": [[1, 0], [0, 0]]}',
        '{"qubits": 4, "amplitudes": [[1, 0]' + ", [0, 0]" * 15 + "]}",
    ])
    def test_malformed(self, capsys, state_file, text):
        code, _, err = run(capsys, "check", "--state", state_file(text))
        assert code == 2
        assert "malformed" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "check", "--state", str(tmp_path / "absent.json"))
        assert code == 2

    def test_residual_failure_exit(self, capsys, state_file, monkeypatch):
        real = complementarity.total_local_info

        def skewed(state, measure="fidelity"):
            rep = real(state, measure)
            return type(rep).from_values([v + 1e-6 for v in rep.per_qubit])

        monkeypatch.setattr(complementarity, "total_local_info", skewed)
        code, _, _ = run(capsys, "check", "--state", state_file(ghz_state()))
        assert code == 4


class TestFuzz:
    def test_two_qubits_pass(self, capsys):
        code, out, _ = run(capsys, "fuzz", "--qubits", "2", "--trials", "1000")
        assert code == 0
        (r,) = rows(out)
        assert r["trials"] == "1000" and r["pass"] == "true"
        assert float(r["max_abs_residual"]) <= 1e-9

    def test_deterministic(self, capsys):
        argv = ("fuzz", "--qubits", "3", "--trials", "1000", "--seed", "42")
        code_a, a, _ = run(capsys, *argv)
        code_b, b, _ = run(capsys, *argv)
        assert code_a == code_b == 0
        assert a == b

    def test_parallel_matches_serial(self):
        assert run_fuzz(3, 64, 9, jobs=2) == run_fuzz(3, 64, 9, jobs=1)

    def test_json(self, capsys):
        code, out, _ = run(capsys, "fuzz", "--qubits", "2", "--trials", "5", "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert set(doc) == {"trials", "max_abs_residual", "worst_seed", "pass"}
        assert doc["pass"] is True
        assert 42 <= doc["worst_seed"] < 47

    @pytest.mark.parametrize("argv", [
        ("fuzz", "--qubits", "3", "--trials", "0"),
        ("fuzz", "--qubits", "4", "--trials", "5"),
        ("fuzz", "--qubits", "2", "--trials", "-3"),
        ("fuzz", "--trials", "5"),
    ])
    def test_bad_arguments(self, capsys, argv):
        assert run(capsys, *argv)[0] == 1

    def test_summary_pass_flag(self):
        s = FuzzSummary(1, 2e-9, 0, False)
        assert s.as_dict()["pass"] is False


class TestSpectrum:
    def _energies(self, out):
        return [float(r["energy"]) for r in rows(out)]

    def test_ising(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--qubits", "2", "--preset", "ising", "--c", "1")
        assert code == 0
        assert out.splitlines()[0] == "k,energy"
        np.testing.assert_allclose(self._energies(out), [-1, -1, 1, 1], atol=1e-11)

    def test_xy(self, capsys):
        _, out, _ = run(capsys, "spectrum", "--qubits", "2", "--preset", "xy", "--c", "1")
        np.testing.assert_allclose(self._energies(out), [-2, 0, 0, 2], atol=1e-11)

    def test_zero_coupling(self, capsys):
        _, out, _ = run(capsys, "spectrum", "--qubits", "3", "--preset", "custom",
                        "--c1", "0", "--c2", "0", "--c3", "0")
        assert self._energies(out) == [0.0] * 8

    def test_numerical_failure_exit(self, capsys, monkeypatch):
        def broken(_m):
            raise NoConvergence("forced")

        monkeypatch.setattr(cli, "hermitian_eig", broken)
        code, _, err = run(capsys, "spectrum", "--qubits", "2")
        assert code == 3
        assert "numerical" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "infodyn", "spectrum", "--qubits", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "k,energy"
