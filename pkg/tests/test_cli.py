import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from cftkit.cli import parse_complex, parse_rational, run, to_jsonable
from cftkit.gromov_witten import km_counts
from cftkit.qseries import eta_eval


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, json.loads(buf.getvalue()) if buf.getvalue() else None


def check_schema(doc):
    assert set(doc) == {"command", "inputs", "result", "diagnostics"}
    assert isinstance(doc["command"], str)
    assert isinstance(doc["inputs"], dict)
    assert isinstance(doc["diagnostics"], dict)


class TestParsing:
    @pytest.mark.parametrize(
        "text,value",
        [("0+1i", 1j), ("0.3 - 1.2i", 0.3 - 1.2j), ("2i", 2j), ("-i", -1j), ("1.5", 1.5), ("1e-1+2e0i", 0.1 + 2j)],
    )
    def test_complex(self, text, value):
        assert parse_complex(text) == value

    def test_rational(self):
        assert parse_rational("3/8") == F(3, 8)
        assert parse_rational(" -2 ") == -2

    def test_json_encoding(self):
        assert to_jsonable(F(1, 3)) == "1/3"
        assert to_jsonable(1 + 2j) == {"re": 1.0, "im": 2.0}
        assert to_jsonable(0.1) == 0.1


class TestSpecExamples:
    def test_eta(self):
        code, doc = call("eta", "--tau", "0+1i", "--tol", "1e-10")
        assert code == 0
        check_schema(doc)
        assert abs(doc["result"]["re"] - 0.768225) < 1e-6
        assert doc["result"]["re"] == eta_eval(1j, 1e-10).real

    def test_kac_table(self):
        code, doc = call("kac-table", "--P", "3", "--Q", "4")
        assert code == 0
        check_schema(doc)
        flat = {x for row in doc["result"] for x in row}
        assert {"0", "1/2", "1/16"} <= flat

    def test_gw(self):
        code, doc = call("gw", "--dmax", "5")
        assert code == 0
        check_schema(doc)
        assert doc["result"] == {"1": 1, "2": 1, "3": 12, "4": 620, "5": 87304}
        assert doc["result"] == {str(k): v for k, v in km_counts(5).items()}


class TestSubcommands:
    @pytest.mark.parametrize(
        "argv",
        [
            ["theta", "--index", "3", "--tau", "1i"],
            ["partition-count", "--n", "10"],
            ["z", "boson", "--tau", "0.1+0.9i", "--r", "2"],
            ["z", "majorana", "--tau", "1.5i"],
            ["z", "dirac", "--tau", "1.5i"],
            ["z", "minimal", "--tau", "1.5i", "--P", "2", "--Q", "5"],
            ["gram", "--c", "1/2", "--h", "1/16", "--level", "2"],
            ["kac-det", "--m", "3", "--h", "1/16", "--level", "2"],
            ["nullvec", "--c", "1/2", "--h", "1/16", "--level", "2"],
            ["character", "--P", "3", "--Q", "4", "--p", "1", "--q", "1", "--order", "6"],
            ["fock-check", "ns", "--cutoff", "5", "--max-mode", "2"],
            ["correlator", "psi", "--points", "0,1,3,7/2"],
            ["correlator", "vertex", "--points", "0,1", "--charges", "1/2,-1/2"],
            ["correlator", "sigma4", "--points", "0,1,2i,3"],
            ["correlator", "bc", "--points", "2,1"],
            ["fusion", "su2", "--k", "2", "--weights", "1,1,2"],
            ["fusion", "verlinde", "--k", "3", "--genus", "2"],
            ["fusion", "minimal", "--generator", "Phi12", "--p", "1", "--q", "2", "--P", "3", "--Q", "4"],
            ["wdvv"],
            ["check-modular"],
        ],
    )
    def test_runs(self, argv):
        code, doc = call(*argv)
        assert code == 0, doc
        check_schema(doc)

    def test_values(self):
        assert call("partition-count", "--n", "4")[1]["result"] == 5
        assert call("correlator", "bc", "--points", "2,1")[1]["result"] == "1"
        assert call("kac-det", "--m", "3", "--h", "1/16", "--level", "2")[1]["result"] == "0"
        assert call("fusion", "verlinde", "--k", "1", "--genus", "1")[1]["result"] == 2
        doc = call("nullvec", "--c", "1/2", "--h", "1/16", "--level", "2")[1]
        assert doc["result"][0]["coefficients"] == {"2": "1", "1 1": "-4/3"}

    def test_check_modular_small(self):
        doc = call("check-modular")[1]
        for model, res in doc["result"].items():
            assert res["T"] < 1e-8 and res["S"] < 1e-8, model

    def test_deterministic(self):
        a = call("z", "boson", "--tau", "0.1+0.9i", "--r", "1.3")[1]
        b = call("z", "boson", "--tau", "0.1+0.9i", "--r", "1.3")[1]
        assert a == b


class TestErrors:
    def test_domain_error(self):
        code, doc = call("eta", "--tau", "0-1i")
        assert code == 1
        assert "error" in doc

    def test_invalid_model(self):
        code, doc = call("kac-table", "--P", "2", "--Q", "4")
        assert code == 1 and "InvalidModelError" in doc["error"]

    def test_unknown_subcommand(self, capsys):
        code, doc = call("bogus")
        assert code == 2 and doc is None
        assert "invalid choice" in capsys.readouterr().err

    def test_missing_flag(self):
        assert call("eta")[0] == 2

    def test_console_entry_point(self):
        out = subprocess.run(
            [sys.executable, "-m", "cftkit.cli", "gw", "--dmax", "3"], capture_output=True, text=True
        )
        assert out.returncode == 0
        assert json.loads(out.stdout)["result"] == {"1": 1, "2": 1, "3": 12}
