import io
from pathlib import Path

import pytest

from accessknow.cli import run

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
DATA = HERE / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestParse:
    def test_ok(self):
        code, out, _ = call("parse", "box x0 <-> (x0 == true)")
        assert code == 0
        assert out.splitlines()[0] == "box x0 <-> (x0 == true)"

    def test_syntax_error(self):
        code, out, err = call("parse", "K1 x ->")
        assert code == 2 and out == ""
        assert "column 8" in err and err.rstrip().endswith("^")

    def test_records(self):
        code, out, _ = call("parse", "--format", "records", "x & y")
        assert out.strip() == "record=formula text='x & y' size=3 variables=x,y propositional=true"


def test_unknown_verb():
    assert call("frobnicate")[0] == 2


def test_missing_file():
    code, _, err = call("check-proof", DATA / "nope.proof")
    assert code == 2 and "cannot read" in err


class TestIpc:
    def test_check(self):
        code, out, _ = call("ipc", "check", DATA / "formulas.txt")
        assert code == 1
        assert [line.split()[0] for line in out.splitlines()] == [
            "NON-TAUT", "NON-TAUT", "TAUT", "TAUT"]

    def test_countermodel(self):
        code, out, _ = call("ipc", "countermodel", DATA / "formulas.txt", "--max-worlds", "3")
        assert code == 1
        assert "  order: 0<1" in out and "  V(1) = x" in out

    def test_modal_rejected(self, tmp_path):
        p = tmp_path / "m.txt"
        p.write_text("box x\n")
        assert call("ipc", "check", p)[0] == 2


class TestProofs:
    def test_valid(self):
        code, out, _ = call("check-proof", DATA / "reflection.proof")
        assert code == 0 and "K1 x |-_L5AC[N=2] x" in out

    def test_an_over_tnd(self):
        code, out, _ = call("check-proof", DATA / "an_tnd.proof")
        assert code == 1 and "step 1: AN applied to TND" in out

    def test_malformed(self, tmp_path):
        p = tmp_path / "bad.proof"
        p.write_text("logic L5\n0: x ->; AXIOM S2\n")
        code, _, err = call("check-proof", p)
        assert code == 2 and "line 2" in err

    def test_lemmas(self):
        code, out, _ = call("lemmas", "--logic", "L5AC")
        assert code == 0
        lines = out.splitlines()
        assert all(line.startswith("PASS") for line in lines[:-1])
        assert lines[-1] == "19/19 ok"

    def test_lemmas_minus_reports_xfail(self):
        code, out, _ = call("lemmas", "--logic", "L5ACminus")
        assert code == 0 and "XFAIL 510xiii" in out


class TestAlgebra:
    def test_square(self):
        code, out, _ = call("algebra", "check", DATA / "square.alg")
        assert code == 0 and "disjunction property: no" in out

    def test_filters(self):
        code, out, _ = call("algebra", "filters", DATA / "square.alg")
        assert out.splitlines() == ["{1} filter,proper", "{a,1} filter,proper,prime,ultra",
                                    "{b,1} filter,proper,prime,ultra", "{0,a,b,1} filter"]

    def test_not_heyting(self):
        code, out, _ = call("algebra", "check", DATA / "diamond.alg")
        assert code == 1 and "pseudo-complement" in out

    def test_malformed(self, tmp_path):
        p = tmp_path / "x.alg"
        p.write_text("elements two\n")
        assert call("algebra", "check", p)[0] == 2


class TestModels:
    @pytest.mark.parametrize("name", "ABCD")
    def test_gen_model_golden(self, name):
        code, out, _ = call("gen-model", "--fixture", name)
        assert code == 0
        assert out == (GOLDEN / f"fixture{name}.model").read_text()

    @pytest.mark.parametrize("name,code", [("A", 0), ("B", 0), ("C", 0), ("D", 1)])
    def test_check_model_golden(self, name, code):
        got, out, _ = call("check-model", "--logic", "L5AC", GOLDEN / f"fixture{name}.model")
        assert got == code
        assert out == (GOLDEN / f"check_L5AC_{name}.txt").read_text()

    def test_d_under_minus(self):
        code, out, _ = call("check-model", "--logic", "L5ACminus", GOLDEN / "fixtureD.model")
        assert code == 0
        assert out == (GOLDEN / "check_L5ACminus_D.txt").read_text()

    def test_d_cites_introspection(self):
        _, out, _ = call("check-model", "--logic", "L5AC", GOLDEN / "fixtureD.model")
        assert "introspection: FAIL  [G={1,2}, m=3/4]" in out

    @pytest.mark.parametrize("name,code", [("A", 0), ("B", 1), ("C", 0), ("D", 0)])
    def test_intended_golden(self, name, code):
        got, out, _ = call("intended", "--logic", "L5ACminus", GOLDEN / f"fixture{name}.model")
        assert got == code
        assert out == (GOLDEN / f"intended_{name}.txt").read_text()

    def test_intended_on_invalid_model(self):
        code, out, _ = call("intended", "--logic", "L5AC", GOLDEN / "fixtureD.model")
        assert code == 1 and "failed: introspection" in out

    def test_intended_needs_common(self):
        assert call("intended", "--logic", "L5", GOLDEN / "fixtureA.model")[0] == 2

    def test_eval(self):
        code, out, _ = call("eval", "--logic", "L5AC", GOLDEN / "fixtureA.model", "x=1/4",
                            "K2 x")
        assert code == 0 and out.splitlines() == ["value: 0", "designated: no"]

    def test_eval_errors(self):
        m = GOLDEN / "fixtureA.model"
        assert call("eval", "--logic", "L5AC", m, "x=7/8", "x")[0] == 2
        assert call("eval", "--logic", "L5AC", m, "-", "x")[0] == 2
        assert call("eval", "--logic", "L5", m, "x=1", "K1 x")[0] == 2

    def test_countermodel(self):
        code, out, _ = call("countermodel", "--logic", "L5AC", "--max-size", "6", "x -> K1 x")
        assert code == 1 and "assignment x=1/2" in out
        code, out, _ = call("countermodel", "--logic", "L5AC", "K1 x -> x")
        assert code == 0 and "inconclusive" in out

    def test_records_are_deterministic(self):
        argv = ("--format", "records", "check-model", "--logic", "L5AC",
                GOLDEN / "fixtureD.model")
        a, b = call(*argv), call(*argv)
        assert a == b
        assert "record=verdict route=thm870 logic='L5AC[N=2]' valid=false" in a[1]


class TestSweep:
    def test_restricted_to_l5(self):
        code, out, _ = call("sweep", "--logic", "L5", "--candidates", "200", "--skip-algebras")
        assert code == 0
        suites = {line.split()[0] for line in out.splitlines()[:-1]}
        assert suites == {"scripts", "soundness", "theorem-truth", "validators", "lemma815"}
        assert out.splitlines()[-1].startswith("sweep green")

    def test_corrupted_fixture_is_pinpointed(self, tmp_path):
        text = (GOLDEN / "fixtureA.model").read_text()
        bad = tmp_path / "bad.model"
        bad.write_text(text.replace("C{1,2}: 0->0 1/4->0 1/2->1/2",
                                    "C{1,2}: 0->0 1/4->0 1/2->1"))
        code, out, _ = call("sweep", "--logic", "L5AC", "--candidates", "50",
                            "--skip-algebras", "--model", bad)
        assert code == 1
        assert "bad.model: (E): FAIL" in out
        assert out.splitlines()[-1].startswith("sweep RED")

    def test_records_summary(self):
        code, out, _ = call("--format", "records", "sweep", "--logic", "IEL",
                            "--candidates", "100", "--skip-algebras")
        assert code == 0
        assert out.splitlines()[-1] == "record=sweep failing_suites=0 ok=true"
