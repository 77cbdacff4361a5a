import json

import pytest

from tropical_hurwitz.cli import (
    InstanceFormatError,
    dump_instance,
    format_rational,
    load_instance,
    main,
    parse_instance,
)
from tropical_hurwitz.covers import tropical_open_hurwitz

EXPECTED = {
    "deg3": "1/1",
    "gen2": "8/1",
    "gen2-surface": "8/1",
    "deg2-non-proper": "1/1",
    "row1": "1/2",
    "row2": "1/1",
    "row3": "0/1",
    "row4": "1/2",
    "elem1": "1/4",
    "elem2": "1/1",
}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_compute_corpus(capsys, corpus, name):
    assert run(capsys, "compute", corpus / f"{name}.instance") == (0, EXPECTED[name], "")


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_check_passes_on_corpus(capsys, corpus, name):
    code, out, _ = run(capsys, "check", corpus / f"{name}.instance")
    assert code == 0 and "FAIL" not in out


def test_correspondence_reported_for_closed_instances(capsys, corpus):
    _, out, _ = run(capsys, "check", corpus / "gen2.instance")
    assert "PASS correspondence: 8/1 vs 8/1" in out


def test_compute_compact_shape(capsys, corpus):
    assert run(capsys, "compute", corpus / "gen2-surface.instance", "--shape", "compact")[1] == "8/1"


def test_oracle_and_friends(capsys):
    assert run(capsys, "oracle", "-d", 2, "-g", 0, "--profile", "2", "--profile", "2")[1] == "1/2"
    assert run(capsys, "oracle", "-d", 2, "-g", 1, "--disconnected")[1] == "2/1"
    assert run(capsys, "frobenius", "-d", 2, "-g", 1)[1] == "2/1"
    assert run(capsys, "formula", "--one-special", "-d", 3, "--mu", "3")[1] == "1/1"
    assert run(capsys, "double", "-d", 3, "--mu0", "3", "--muinf", "1,1,1")[1] == "1/1"
    assert run(capsys, "double", "-d", 3, "--mu0", "3", "--muinf", "3", "-g", 1)[1] == "2/1"


def test_covers_listing(capsys, corpus):
    code, out, _ = run(capsys, "covers", corpus / "deg3.instance")
    assert code == 0
    assert "aut 6  multiplicity 2/3" in out and "aut 1  multiplicity 1/3" in out
    assert out.splitlines()[-1] == "total 1/1 over 2 cover(s)"


def test_structured_output(capsys, corpus):
    code, out, _ = run(capsys, "covers", corpus / "gen2.instance", "--format", "structured")
    data = json.loads(out)
    assert code == 0 and data["total"] == "8/1"
    assert sorted(c["multiplicity"] for c in data["covers"]) == ["1/1", "1/1", "2/1", "2/1", "2/1"]
    code, out, _ = run(capsys, "check", corpus / "row4.instance", "--format", "structured")
    assert json.loads(out)["passed"] is True


def test_output_is_reproducible(capsys, corpus):
    first = run(capsys, "covers", corpus / "gen2-surface.instance")
    assert run(capsys, "covers", corpus / "gen2-surface.instance") == first


def test_validation_failure_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.instance"
    bad.write_text("hurwitz-instance v1\nvertex v\nleaf a\nedge e v a\ndegree v 1\n")
    code, out, err = run(capsys, "compute", bad)
    assert code == 1 and "valence 1" in err
    code, out, _ = run(capsys, "compute", bad, "--format", "structured")
    assert code == 1 and json.loads(out)["violations"][0]["code"] == "structure"


def test_malformed_files(capsys, tmp_path):
    cases = {
        "noheader": "vertex v\n",
        "unknown": "hurwitz-instance v1\nfrobnicate x\n",
        "mixed": "hurwitz-instance v1\nvertex v\ncomponent S genus 0 degree 1\n",
        "badint": "hurwitz-instance v1\ncomponent S genus zero degree 1\n",
        "dupe": "hurwitz-instance v1\nvertex v v\n",
    }
    for name, text in cases.items():
        path = tmp_path / f"{name}.instance"
        path.write_text(text)
        assert run(capsys, "compute", path)[0] == 1, name
    assert run(capsys, "compute", tmp_path / "missing.instance")[0] == 1


def test_resource_exhaustion_exit_code(capsys, corpus):
    assert run(capsys, "compute", corpus / "gen2.instance", "--node-budget", 10)[0] == 2
    assert run(capsys, "oracle", "-d", 9, "--profile", "9", "--profile", "9")[0] == 2
    assert run(capsys, "oracle", "-d", 9, "--profile", "9", "--profile", "9", "--max-degree", 9)[1] == "1/9"


def test_round_trip(corpus):
    for name in EXPECTED:
        mb = load_instance(corpus / f"{name}.instance")
        again = parse_instance(dump_instance(mb))
        assert set(again.base.vertices) == set(mb.base.vertices)
        assert set(again.base.edges) == set(mb.base.edges)
        assert (again.cuts, again.branches, again.degrees) == (mb.cuts, mb.branches, mb.degrees)
        assert dump_instance(again) == dump_instance(mb)
        assert tropical_open_hurwitz(again).total == tropical_open_hurwitz(mb).total


def test_parse_errors_are_specific():
    with pytest.raises(InstanceFormatError, match="line 2"):
        parse_instance("hurwitz-instance v1\nedge e v\n")


def test_format_rational():
    assert format_rational(3) == "3/1"
    assert format_rational(-2 / 4) == "-1/2"
    assert format_rational(0) == "0/1"
