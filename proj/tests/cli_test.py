"""End-to-end checks of the qcsp-lab binary: outputs, exit codes, JSON schemas."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema

BIN = os.environ["QCSP_LAB"]
SCHEMAS = pathlib.Path(os.environ["QCSP_SCHEMAS"])
DATA = pathlib.Path(__file__).parent / "cli"


def run(*args):
    p = subprocess.run([BIN, *map(str, args)], cwd=DATA, capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout, p.stderr


def validate(name, text):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    doc = json.loads(text)
    jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)
    return doc


class Eval(unittest.TestCase):
    def test_true_sentence(self):
        self.assertEqual(run("eval", "forall_exists.phs", "cycle:0111")[:2], (0, "true\n"))

    def test_three_star_is_false(self):
        self.assertEqual(run("eval", "three_star.phs", "cycle:0111")[:2], (1, "false\n"))

    def test_malformed(self):
        self.assertEqual(run("eval", "malformed.phs", "cycle:0111")[0], 2)

    def test_missing_file(self):
        self.assertEqual(run("eval", "nope.phs", "cycle:0111")[0], 2)

    def test_naive_engine_agrees(self):
        self.assertEqual(run("eval", "three_star.phs", "path:101", "--engine", "naive")[0],
                         run("eval", "three_star.phs", "path:101")[0])

    def test_json(self):
        code, out, _ = run("eval", "forall_exists.phs", "cycle:0111", "--json")
        doc = validate("eval", out)
        self.assertEqual((code, doc["result"]), (0, True))
        code, out, _ = run("eval", "three_star.phs", "cycle:0111", "--json")
        doc = validate("eval", out)
        self.assertEqual(code, 1)
        self.assertTrue(doc["witness"]["refutation"])


class Classify(unittest.TestCase):
    def test_examples(self):
        self.assertIn("Pspace-hard", run("classify", "1111")[1])
        self.assertIn("upper L,", run("classify", "0111")[1])
        self.assertEqual(run("classify", "ab")[0], 2)
        self.assertEqual(run("classify", "01")[0], 2)

    def test_hard_side_is_not_negative(self):
        self.assertEqual(run("classify", "0101")[0], 0)

    def test_json(self):
        doc = validate("classify", run("classify", "1110", "--json")[1])
        self.assertEqual((doc["normal_form"], doc["upper"]), ("0111", "L"))


class Reduce(unittest.TestCase):
    def test_qnae_p101_verify(self):
        code, out, _ = run("reduce", "qnae-p101", "inst.nae", "--verify")
        self.assertEqual(code, 0)
        self.assertTrue(out.endswith("agree: true/true\n"))

    def test_missing_boundary(self):
        self.assertEqual(run("reduce", "qnae-missing", "inst.nae", "--d", 2, "--e", 3)[0], 2)

    def test_km_verify(self):
        code, out, _ = run("reduce", "km-reflexive", "k5.graph", "--m", 4, "--verify")
        self.assertEqual(code, 0)
        self.assertTrue(out.endswith("agree: false/false\n"))

    def test_ret(self):
        self.assertTrue(run("reduce", "ret-even", "even.ret", "--word", "001111", "--verify")[1].endswith(
            "agree: true/true\n"))
        self.assertTrue(run("reduce", "ret-odd", "odd.ret", "--word", "0011111", "--verify")[1].endswith(
            "agree: false/false\n"))

    def test_two_loops_known_gap(self):
        code, out, _ = run("reduce", "ret-two-loops", "two_loops.ret", "--m", 6, "--verify")
        self.assertEqual(code, 1)
        self.assertIn("best-effort: true", out)
        self.assertTrue(out.endswith("disagree: true/false\n"))

    def test_missing_param(self):
        self.assertEqual(run("reduce", "ret-odd", "odd.ret")[0], 2)
        self.assertEqual(run("reduce", "bogus", "inst.nae")[0], 2)

    def test_sidecar(self):
        with tempfile.TemporaryDirectory() as d:
            out = pathlib.Path(d) / "s.phs"
            self.assertEqual(run("reduce", "qnae-p101", "inst.nae", "-o", out)[0], 0)
            validate("provenance", (pathlib.Path(d) / "s.phs.provenance.json").read_text())
            self.assertEqual(run("eval", out, "path:101")[:2], (0, "true\n"))

    def test_json(self):
        doc = validate("reduce", run("reduce", "qnae-p101", "inst.nae", "--verify", "--json")[1])
        self.assertTrue(doc["verify"]["agree"])
        prefix = doc["sentence"].rsplit(";", 1)[0].replace(";", " ").split()
        bound = {w for w in prefix if w not in ("forall", "exists")}
        self.assertEqual(bound, set(doc["provenance"]))


class Poly(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(run("poly", "cycle:0011", "majority")[0], 0)
        self.assertEqual(run("poly", "cycle:0111", "majority")[:2], (1, "absent\n"))
        code, out, _ = run("poly", "cycle:0111", "complete", "--seed", "maroti.txt")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("witness\n"))

    def test_errors(self):
        self.assertEqual(run("poly", "cycle:0111", "complete")[0], 2)
        self.assertEqual(run("poly", "cycle:011", "complete", "--seed", "maroti.txt")[0], 2)
        self.assertEqual(run("poly", "cycle:0111", "minority")[0], 2)

    def test_json(self):
        doc = validate("poly", run("poly", "cycle:0111", "complete", "--seed", "maroti.txt", "--json")[1])
        self.assertEqual(len(doc["table"]["entries"]), 64)
        validate("poly", run("poly", "cycle:0111", "majority", "--json")[1])


class Conjecture(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(run("conjecture", 4)[0], 0)
        self.assertEqual(run("conjecture", 3)[0], 2)
        self.assertEqual(run("conjecture", 12)[0], 3)

    def test_json(self):
        doc = validate("conjecture", run("conjecture", 4, "--json")[1])
        self.assertEqual((doc["maps"], doc["cases"]), (76, 1216))


class Selftest(unittest.TestCase):
    def test_quick(self):
        code, out, _ = run("selftest", "--quick", "--json")
        doc = validate("selftest", out)
        failed = {c["id"] for c in doc["criteria"] if not c["passed"]}
        self.assertEqual(failed, {6})
        self.assertEqual(code, 1)
        self.assertEqual(run("selftest", "--quick", "--expect-fail", 6)[0], 0)


class Usage(unittest.TestCase):
    def test_no_subcommand(self):
        self.assertEqual(run()[0], 2)

    def test_help(self):
        self.assertEqual(run("--help")[0], 0)


if __name__ == "__main__":
    unittest.main(argv=sys.argv[:1], verbosity=2)
