import io
import json
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from commuting_ops import document
from commuting_ops.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run
from commuting_ops.diffop import DiffOp
from commuting_ops.exact_core import CoefPoly
from commuting_ops.operator_zoo import FamilySpec, build


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


specs = st.one_of(
    st.builds(FamilySpec, st.sampled_from(["dixmier_r2", "dixmier_r3"]),
              alpha=st.sampled_from(["alpha", 1, Fraction(-3, 7)])),
    st.builds(FamilySpec, st.sampled_from(["mironov_r2", "mironov_r3"]), g=st.integers(1, 3)),
    st.builds(FamilySpec, st.just("rank_2k"), k=st.integers(2, 3), g=st.integers(1, 2)),
    st.builds(FamilySpec, st.just("rank_3k"), k=st.integers(1, 2), g=st.integers(1, 2)),
    st.builds(FamilySpec, st.just("cheb_z"), r=st.sampled_from([-3, -1, 1, 2, 4]), g=st.integers(1, 2),
              b=st.sampled_from([0, "b", Fraction(1, 3)])),
    st.builds(FamilySpec, st.just("cheb_canonical"), r=st.integers(1, 6), g=st.integers(1, 3),
              a=st.sampled_from([None, "a", Fraction(2, 5)])),
)


@settings(max_examples=60, deadline=None)
@given(specs)
def test_document_round_trip(spec):
    for op in build(spec):
        if op is None:
            continue
        text = document.dumps(op)
        back = document.loads(text)
        assert back == op
        assert document.dumps(back) == text


def test_document_format():
    doc = document.to_document(DiffOp.D(2) + DiffOp.X().scale(Fraction(-5, 16)))
    assert doc["format"] == "commuting-ops/operator"
    assert doc["terms"][1]["coeff"][0]["c"] == "-5/16"
    doc["terms"][0]["coeff"][0]["c"] = "2/4"
    assert document.from_document(doc).lead() == Fraction(1, 2)


@pytest.mark.parametrize("text", ["{}", "[1]", "not json",
                                  '{"format": "commuting-ops/operator", "version": 9, "terms": []}'])
def test_bad_documents(text):
    with pytest.raises(document.DocumentError):
        document.loads(text)


def test_expressions():
    op = document.parse_operator("(D^2 + x^3 + alpha)^2 + 2*x")
    assert op == build(FamilySpec("dixmier_r2"))[0]
    assert document.parse_operator("D*x") == document.parse_operator("x*D + 1")
    assert document.parse_value("5/16") == Fraction(5, 16)
    assert isinstance(document.parse_value("alpha - 1/8"), CoefPoly)
    for bad in ["x^-1", "1.5*x", "x/x", "D^2 +"]:
        with pytest.raises(document.DocumentError):
            document.parse_operator(bad)


def test_example_flow(tmp_path):
    L, M = tmp_path / "L.json", tmp_path / "M.json"
    assert call("build", "dixmier-r2", "--alpha", "1", "-o", L)[0] == EXIT_OK
    code, out, _ = call("find-m", L, "--order", 6, "-o", M)
    assert code == EXIT_OK and "dimension: 3" in out
    assert document.load(M) == build(FamilySpec("dixmier_r2", alpha=1)).M
    code, out, _ = call("curve", L, M)
    assert code == EXIT_OK and "(0, 0, -1)" in out
    code, out, _ = call("curve", L, M, "--json")
    res = json.loads(out)["results"]
    assert res["curve"]["coefficients_descending"] == ["0", "0", "-1"]
    assert call("commutator", L, L)[0] == EXIT_OK
    code, out, _ = call("certify-rank", L, M, "--lambda", 2)
    assert code == EXIT_OK and "(mu^2 - 7)^2, rank 2 certified" in out


def test_exit_codes(tmp_path):
    assert call("commutator", "D", "x")[0] == EXIT_FAIL
    assert call("canonical-check", "D^2 + 3*D")[0] == EXIT_FAIL
    assert call("canonical-check", "D^2")[0] == EXIT_OK
    assert call("commutator", tmp_path / "missing.json", "D")[0] == EXIT_USAGE
    assert call("frobnicate")[0] == EXIT_USAGE
    assert call("build", "nope")[0] == EXIT_USAGE
    assert call("certify-rank", "D^2", "D^3", "--lambda", "half")[0] == EXIT_USAGE
    assert call("find-m", "D^2 + x", "--order", 3, "--degree", 1, "--cap", 2)[0] == EXIT_FAIL


def test_other_commands(tmp_path):
    code, out, _ = call("cheb", 5)
    assert code == EXIT_OK and "16" in out
    code, out, _ = call("weyl-auto", "x*D", "-o", tmp_path / "w.json")
    assert code == EXIT_OK
    assert document.load(tmp_path / "w.json") == document.parse_operator("-x*D - 1")
    code, out, _ = call("adjoint", "x^2*D", "--json")
    assert code == EXIT_OK and json.loads(out)["command"] == "adjoint"


def test_mironov_commands():
    args = ["--V", "x^3+alpha", "--W", "2*x", "--curve", "0,0,-alpha"]
    assert call("mironov-verify", *args, "--Q", "lambda + x")[0] == EXIT_OK
    assert call("mironov-verify", *args, "--Q", "lam + x")[0] == EXIT_OK
    assert call("mironov-verify", *args, "--Q", "lambda - x")[0] == EXIT_FAIL
    code, out, _ = call("mironov-solve-g1", "--V", "x^3+alpha", "--W", "2*x", "--json")
    res = json.loads(out)["results"]
    assert code == EXIT_OK and res["curve"]["coefficients_descending"] == ["0", "0", "-alpha"]


@pytest.mark.filterwarnings("ignore::commuting_ops.eigenspace.DegenerateBranchWarning")
@pytest.mark.parametrize("argv", [
    ["verify-pair", "D^2", "D^3"], ["certify-rank", "D^2", "D^3", "--lambda", 0],
    ["curve", "D^2", "D^3"], ["find-m", "D^2", "--order", 3], ["cheb", 3],
])
def test_json_has_every_fact(monkeypatch, argv):
    from commuting_ops import cli
    seen = []
    original = cli.Report.finish

    def spy(self, as_json, out=None):
        seen.append(self)
        return original(self, as_json, out)

    monkeypatch.setattr(cli.Report, "finish", spy)
    call(*argv)
    _, js, _ = call(*argv, "--json")
    human = seen[0]
    res = json.loads(js)["results"]
    assert len(human.lines) == len(human.keys)
    assert set(human.keys) <= set(res)


def perturbations(op):
    for i, c in op.coeffs.items():
        for mono in c.terms:
            bumped = dict(op.coeffs)
            bumped[i] = c + CoefPoly(c.params, {mono: 1})
            yield (i, mono), DiffOp(bumped, op.params)


@pytest.fixture(scope="module")
def dixmier_docs(tmp_path_factory):
    d = tmp_path_factory.mktemp("pair")
    L, M = build(FamilySpec("dixmier_r2", alpha=1))
    document.save(L, d / "L.json")
    document.save(M, d / "M.json")
    return d, L, M


def test_verify_pair_perturbed(dixmier_docs):
    d, L, M = dixmier_docs
    assert call("verify-pair", d / "L.json", d / "M.json")[0] == EXIT_OK
    for which, op in (("L", L), ("M", M)):
        for key, bumped in perturbations(op):
            if which == "L" and key == (0, (0,)):
                # L + 1 still commutes with M; the curve just shifts
                continue
            path = d / f"{which}_bumped.json"
            document.save(bumped, path)
            pair = (path, d / "M.json") if which == "L" else (d / "L.json", path)
            assert call("verify-pair", *pair)[0] == EXIT_FAIL, (which, key)
