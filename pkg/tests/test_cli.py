import json

import pytest

from bilocal.cli import main
from bilocal.serialize import dumps, jsonable, parse_rational


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_passes(capsys):
    code, out = run_cli(capsys, "verify", "--kind", "complex", "--N", "2", "--M", "2", "--P", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["checks"]["structure_constants"]["ok"] is True


def test_verify_real_passes(capsys):
    code, out = run_cli(capsys, "verify", "--kind", "real", "--N", "1", "--M", "2", "--P", "4")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_verify_fault_injection_exits_1(capsys):
    code, out = run_cli(
        capsys, "verify", "--kind", "complex", "--N", "1", "--M", "2", "--P", "4",
        "--inject-fault", "drop-e-shift",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["ok"] is False
    assert payload["checks"]["structure_constants"]["failures"]


def test_usage_error_exit_2(capsys):
    code, _ = run_cli(capsys, "verify", "--N", "-1", "--M", "2", "--P", "4")
    assert code == 2


def test_guard_requires_unsafe_large(capsys):
    code, _ = run_cli(capsys, "verify", "--kind", "complex", "--N", "9", "--M", "2", "--P", "4")
    assert code == 2


def test_unknown_subcommand_exit_2(capsys):
    assert main(["frobnicate"]) == 2


def test_classify_n2(capsys):
    code, out = run_cli(
        capsys, "classify", "--kind", "complex", "--N", "2", "--M", "3", "--P", "6",
        "--cutoff", "2", "--unsafe-large",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 6
    mult = {(tuple(r["Y_plus"]), tuple(r["Y_minus"])): r["multiplicity"] for r in payload["sectors"]}
    assert mult[((1,), ())] == 2
    assert all(r["multiplicity"] == r["gauge_dimension"] for r in payload["sectors"])


def test_classify_n0_vacuum_only(capsys):
    code, out = run_cli(
        capsys, "classify", "--kind", "complex", "--N", "0", "--M", "2", "--P", "4", "--cutoff", "2"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 1
    assert payload["sectors"][0]["Y_plus"] == []


def test_gram_vacuum_levels(capsys):
    code, out = run_cli(
        capsys, "gram", "--kind", "complex", "--N", "1", "--M", "1", "--P", "4", "--level", "1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["gram"] == [[1]]
    code, out = run_cli(
        capsys, "gram", "--kind", "complex", "--N", "2", "--M", "1", "--P", "4", "--level", "1"
    )
    assert json.loads(out)["gram"] == [[2]]


def test_gram_rejects_out_of_bound_sector(capsys):
    code, out = run_cli(
        capsys, "gram", "--kind", "complex", "--N", "2", "--M", "2", "--P", "6",
        "--yplus", "1,1", "--yminus", "1",
    )
    assert code == 1
    assert "r+ + r-" in json.loads(out)["error"]


def test_map_irreps_u(capsys):
    code, out = run_cli(capsys, "map-irreps", "--group", "U", "--N", "2", "--cap", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert {"sector": {"Y_plus": [1], "Y_minus": [], "N": 2}, "irrep": {"Y": [1], "q": 1}} in payload["entries"]


def test_map_irreps_o_signs(capsys):
    code, out = run_cli(capsys, "map-irreps", "--group", "O", "--N", "3", "--cap", "2")
    assert code == 0
    payload = json.loads(out)
    signs = {tuple(e["sector"]["Y"]): e["irrep"]["sign"] for e in payload["entries"]}
    assert signs[(1,)] == "+"
    assert signs[(1, 1)] == "-"


def test_spectrum_levels(capsys):
    code, out = run_cli(capsys, "spectrum", "--D", "4", "--count", "14")
    assert code == 0
    payload = json.loads(out)
    assert [lvl["h"] for lvl in payload["levels"]] == [1, 4, 9]


def test_spectrum_rejects_odd_dimension(capsys):
    assert main(["spectrum", "--D", "5", "--count", "3"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--kind", "real", "--N", "1", "--M", "2", "--P", "4"],
        ["classify", "--kind", "complex", "--N", "1", "--M", "2", "--P", "4", "--cutoff", "2"],
        ["gram", "--kind", "complex", "--N", "1", "--M", "1", "--P", "4", "--level", "2"],
        ["map-irreps", "--group", "O", "--N", "2", "--cap", "2"],
        ["spectrum", "--D", "6", "--count", "7"],
    ],
)
def test_byte_identical_reruns_and_roundtrip(capsys, argv):
    _, out1 = run_cli(capsys, *argv)
    _, out2 = run_cli(capsys, *argv)
    assert out1 == out2
    # parsing and reserializing the emitted JSON is byte-identical
    line = out1.strip()
    assert json.dumps(json.loads(line), sort_keys=True, separators=(",", ":")) == line


def test_table_format_runs(capsys):
    code, out = run_cli(capsys, "spectrum", "--D", "4", "--count", "5", "--format", "table")
    assert code == 0
    assert "ell" in out


def test_seed_free_flag_accepted(capsys):
    code, _ = run_cli(capsys, "spectrum", "--D", "4", "--count", "1", "--seed-free")
    assert code == 0


def test_rational_serialization():
    from fractions import Fraction

    assert jsonable(Fraction(3, 2)) == "3/2"
    assert jsonable(Fraction(4, 2)) == 2
    assert dumps({"x": Fraction(1, 3)}) == '{"x":"1/3"}'
    assert parse_rational("5/2") == Fraction(5, 2)
    assert parse_rational("7") == 7
    with pytest.raises(ValueError):
        parse_rational("1.5")
