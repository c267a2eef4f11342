import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stdout

from crtoolkit.__main__ import FAILURE, INVALID, SUCCESS, main
from crtoolkit.settings import Settings


EZ = {"name": "EZ", "matrix": [["0", "0", "0"], ["1", "0", "0"], ["0", "0", "1"]]}
EY3 = {"name": "EY(3)", "matrix": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "3"]]}
BROKEN_SL2 = {
    "name": "broken",
    "dim": 3,
    "brackets": [
        {"i": 0, "j": 1, "coeffs": ["0", "2", "0"]},
        {"i": 0, "j": 2, "coeffs": ["0", "0", "-2"]},
        {"i": 1, "j": 2, "coeffs": ["1", "1", "0"]},
    ],
    "q": [[{"re": "1", "im": "0"}, {"re": "0", "im": "0"}, {"re": "0", "im": "0"}]],
}


class TestCLI(unittest.TestCase):
    def setUp(self):
        self.folder = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.folder.cleanup()
        Settings.reset()

    def path(self, name: str, data=None) -> str:
        path = os.path.join(self.folder.name, name)
        if data is not None:
            with open(path, "w") as handle:
                json.dump(data, handle)
        return path

    def run_json(self, *argv) -> tuple:
        output = io.StringIO()
        with redirect_stdout(output):
            code = main(["--json", *argv])
        return code, json.loads(output.getvalue())

    def test_endo_analyze(self):
        code, report = self.run_json("endo", "analyze", self.path("ez.json", EZ))
        self.assertEqual(code, SUCCESS)
        self.assertTrue(report["cyclic"])
        self.assertEqual(report["class"], "EZ")
        self.assertEqual(report["modulus"], "27/4")
        self.assertEqual(report["mu0"], "27/4")
        self.assertFalse(report["arithmetic_progression"])
        self.assertEqual(report["stability_order"], 1)

    def test_endo_compare(self):
        ez, ey = self.path("ez.json", EZ), self.path("ey.json", EY3)
        code, report = self.run_json("endo", "compare", ez, ey, "--global")
        self.assertEqual(code, SUCCESS)
        self.assertEqual(report, {"locally_equivalent": False, "globally_equivalent": False})

    def test_tube_round_trip(self):
        tube = self.path("tube.json")
        code, _ = self.run_json(
            "endo", "make-tube", self.path("ez.json", EZ), "--d", "2", "--a", "1,0,1", "-o", tube
        )
        self.assertEqual(code, SUCCESS)

        code, report = self.run_json("tube", "analyze", tube)
        self.assertEqual(code, SUCCESS)
        self.assertEqual(report["degree"], 2)
        self.assertEqual(report["kernel_chain"]["dims"], [2, 1, 0])
        self.assertEqual(report["minimal"], "holds")

        algebra = self.path("algebra.json")
        code, report = self.run_json("cralgebra", "from-tube", tube, "-o", algebra)
        self.assertEqual(code, SUCCESS)
        self.assertEqual(report["degree"], 2)

        code, report = self.run_json("cralgebra", "check", algebra)
        self.assertEqual(code, SUCCESS)
        self.assertTrue(report["jacobi"])
        self.assertEqual(report["k"], 2)

    def test_jacobi_failure(self):
        code, report = self.run_json("cralgebra", "check", self.path("sl2.json", BROKEN_SL2))
        self.assertEqual(code, FAILURE)
        self.assertEqual(report["jacobi_failure"], [0, 1, 2])

    def test_catalog(self):
        code, entries = self.run_json("catalog", "list")
        self.assertEqual(code, SUCCESS)
        self.assertEqual(len(entries), 29)

        code, dump = self.run_json("catalog", "dump", "EI")
        self.assertEqual(dump["kind"], "tube")

        code, report = self.run_json("catalog", "verify", "EI")
        self.assertEqual(code, SUCCESS)
        self.assertEqual(report["status"], "pass")

    def test_invalid_input(self):
        bad = self.path("bad.json", {"matrix": [[0.5, 0], [0, 1]]})
        output = io.StringIO()
        with redirect_stdout(output):
            self.assertEqual(main(["endo", "analyze", bad]), INVALID)
            self.assertEqual(main(["endo", "analyze", self.path("missing.json")]), INVALID)
            self.assertEqual(main(["catalog", "dump", "NOPE"]), INVALID)
            self.assertEqual(main(["endo"]), INVALID)
            self.assertEqual(main(["--help"]), SUCCESS)

    def capture(self, *argv) -> tuple:
        output = io.StringIO()
        with redirect_stdout(output):
            code = main(list(argv))
        return code, output.getvalue()

    def test_trailing_flags(self):
        code, output = self.capture("catalog", "verify", "EI", "--json")
        self.assertEqual(code, SUCCESS)
        self.assertEqual(json.loads(output)["status"], "pass")

        code, output = self.capture("catalog", "list", "--json", "--tol", "1e-6")
        self.assertEqual(code, SUCCESS)
        self.assertEqual(len(json.loads(output)), 29)
        self.assertEqual(Settings.tolerance, 1e-6)

    def test_leading_flags_survive(self):
        code, output = self.capture("--json", "--seed", "5", "catalog", "dump", "EZ")
        self.assertEqual(code, SUCCESS)
        self.assertEqual(json.loads(output)["name"], "EZ")
        self.assertEqual(Settings.seed, 5)

    def test_verify_deterministic(self):
        code, first = self.capture("catalog", "verify", "ALL", "--json")
        self.assertEqual(code, SUCCESS)
        code, second = self.capture("catalog", "verify", "ALL", "--json")
        self.assertEqual(code, SUCCESS)
        self.assertEqual(first.encode(), second.encode())
        self.assertEqual(json.loads(first)["status"], "pass")
