import json
import os
import tempfile
import unittest

from crtoolkit.catalog import (
    ALL,
    CatalogEntry,
    Expectation,
    catalog,
    entry,
    inequivalence_matrix,
    verify,
    verify_entry,
)
from crtoolkit.catalog.consts import CROSS_ORACLE, FAIL, META, PASS
from crtoolkit.catalog.entries import Catalog
from crtoolkit.errors import InvalidInput, OutOfRange
from crtoolkit.tube.kernels import kernel_chain


class TestCatalog(unittest.TestCase):
    def test_fixtures(self):
        names = catalog().names()
        self.assertEqual(len(names), 29)
        self.assertEqual(names, sorted(names))
        for name in ("EI", "EZ", "EY-1/2", "EX-5/2", "EV", "JP-3-1", "GU-1", "FQ", "AII-1"):
            self.assertIn(name, names)

    def test_entry(self):
        ez = entry("EZ")
        self.assertEqual(ez.kind, "tube")
        self.assertIsNotNone(ez.endo)
        self.assertEqual(entry("GU-1").kind, "cralgebra")
        self.assertEqual(entry("NIL3").kind, "endo")

        data = ez.toDict()
        self.assertEqual(data["family"], "EZ")
        self.assertEqual(data["expected"]["modulus"]["value"], "27/4")

    def test_family_member(self):
        member = entry("JP", {"k": 3, "c": 1})
        self.assertEqual(member.name, "JP-3-1")
        self.assertEqual(kernel_chain(member.payload).dims, [3, 2, 1, 0])
        self.assertEqual(entry("QC", {"n": 4}).payload.n, 4)

    def test_unknown(self):
        with self.assertRaises(InvalidInput):
            entry("NOPE")
        with self.assertRaises(InvalidInput):
            entry("NOPE", {"k": 1})
        with self.assertRaises(OutOfRange):
            entry("GU", {"gamma": 0})

    def test_schema(self):
        with self.assertRaises(InvalidInput):
            CatalogEntry.fromDict({"schema": 2, "name": "EZ", "family": "EZ"})
        with self.assertRaises(InvalidInput):
            Expectation("modulus", "1", "guess")
        with self.assertRaises(InvalidInput):
            Expectation("colour", "1", "DERIVED: nothing")

    def test_json_fixtures(self):
        fixture = {
            "schema": 1,
            "name": "EZ-json",
            "family": "EZ",
            "params": {},
            "expected": {
                "modulus": {"value": "27/4", "source": "DERIVED: roots {0, 0, 1}"}
            },
        }
        with tempfile.TemporaryDirectory() as folder:
            with open(os.path.join(folder, "ez.json"), "w") as handle:
                json.dump(fixture, handle)
            with open(os.path.join(folder, "notes.txt"), "w") as handle:
                handle.write("not a fixture")
            loaded = Catalog.loadFixtures(folder)

        self.assertEqual(loaded.names(), ["EZ-json"])
        self.assertTrue(verify_entry(loaded.find("EZ-json")).passed)


class TestVerify(unittest.TestCase):
    def test_light_cone(self):
        report = verify_entry(entry("EI"))
        self.assertTrue(report.passed)
        statuses = {r.invariant: r.status for r in report.results}
        self.assertEqual(statuses[CROSS_ORACLE], PASS)
        self.assertEqual(statuses["hol_dim"], META)
        self.assertEqual(statuses["degree"], PASS)

    def test_sl2(self):
        self.assertTrue(verify("AII-1").passed)

    def test_mismatch(self):
        wrong = CatalogEntry(
            "wrong",
            "EZ",
            overrides={"modulus": Expectation("modulus", "1", "DERIVED: deliberately wrong")},
        )
        report = verify_entry(wrong)
        self.assertFalse(report.passed)
        self.assertEqual([r.invariant for r in report.failures()], ["modulus"])
        self.assertEqual(report.toDict()["status"], FAIL)

    def test_all(self):
        report = verify(ALL)
        failures = [
            (e.name, r.invariant) for e in report.entries for r in e.failures()
        ]
        self.assertEqual(failures, [])
        self.assertEqual(report.toDict()["status"], PASS)
        self.assertEqual(len(report.entries), 29)


class TestInequivalence(unittest.TestCase):
    def test_matrix(self):
        names = ["EI", "EY-3", "EZ", "EX-3"]
        result = inequivalence_matrix(names)
        self.assertEqual(result["names"], names)
        for i, row in enumerate(result["matrix"]):
            for j, value in enumerate(row):
                self.assertEqual(value, i == j, f"{names[i]} vs {names[j]}")

    def test_progressions(self):
        result = inequivalence_matrix(["EI", "NIL3"])
        self.assertEqual(result["matrix"], [[True, True], [True, True]])

    def test_needs_endomorphism(self):
        with self.assertRaises(InvalidInput):
            inequivalence_matrix(["EI", "GU-1"])
