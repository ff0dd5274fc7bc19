"""End-to-end command-line behavior, driven through cli.main."""

import json

import pytest

from cglkit.cli import main
from cglkit.presentation import CGLPresentation
from cglkit.presets import parse_preset_spec

ALL_PRESETS = [
    "quantum-affine:2",
    "quantum-affine:3",
    "oq-matrices:2,2",
    "oq-matrices:2,3",
    "oq-matrices:3,2",
    "multiparam-matrices:2",
    "uq-sl3",
    "quantum-plane-minus-one",
]


def test_preset_list(capsys):
    assert main(["preset", "list"]) == 0
    out = capsys.readouterr().out
    assert "oq-matrices" in out
    assert "uq-sl3" in out
    assert "quantum-plane-minus-one" in out


def test_preset_emit_to_file(tmp_path, capsys):
    target = tmp_path / "m22.json"
    assert main(["preset", "emit", "--preset", "oq-matrices:2,2", "--json", str(target)]) == 0
    P = CGLPresentation.from_json(target.read_text())
    assert P == parse_preset_spec("oq-matrices:2,2")


def test_preset_emit_to_stdout(capsys):
    assert main(["preset", "emit", "--preset", "uq-sl3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert "lambda" in data


def test_preset_emit_requires_a_spec(capsys):
    assert main(["preset", "emit"]) == 2


@pytest.mark.parametrize("spec", ALL_PRESETS)
def test_validate_presets(spec, capsys):
    assert main(["validate", "--preset", spec]) == 0
    assert "PASS" in capsys.readouterr().out


def test_validate_rejects_bad_lambda_diagonal(tmp_path, capsys):
    data = json.loads(parse_preset_spec("oq-matrices:2,2").to_json())
    data["lambda"][0][0] = "q"
    bad = tmp_path / "broken.json"
    bad.write_text(json.dumps(data))
    assert main(["validate", str(bad)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_validate_missing_file(capsys):
    assert main(["validate", "no-such-file.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_input_and_preset_are_mutually_exclusive(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text("{}")
    assert main(["validate", str(f), "--preset", "uq-sl3"]) == 2


def test_presentation_source_is_required(capsys):
    assert main(["validate"]) == 2


def test_unknown_preset(capsys):
    assert main(["validate", "--preset", "no-such-thing"]) == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_command(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2


def test_nakayama_output(capsys):
    assert main(["nakayama", "--preset", "oq-matrices:2,2"]) == 0
    assert "eigenvalues [q^2, 1, 1, q^-2]" in capsys.readouterr().out


def test_nakayama_json_payload(tmp_path, capsys):
    target = tmp_path / "nu.json"
    assert main(["nakayama", "--preset", "oq-matrices:2,2", "--json", str(target)]) == 0
    assert json.loads(target.read_text()) == {
        "eigenvalues": ["q^2", "1", "1", "q^-2"]
    }


def test_y_elements_output(tmp_path, capsys):
    target = tmp_path / "y.json"
    code = main(["y-elements", "--preset", "oq-matrices:2,2", "--json", str(target)])
    assert code == 0
    out = capsys.readouterr().out
    assert "y4 = x1*x4 - q*x2*x3" in out
    assert "pred = [-, -, -, 1]" in out
    assert "finals = {2,3,4}" in out
    payload = json.loads(target.read_text())
    assert payload["finals"] == [2, 3, 4]
    assert payload["y"][3] == "x1*x4 - q*x2*x3"


def test_verify_nakayama(capsys):
    assert main(["verify-nakayama", "--preset", "multiparam-matrices:2"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_core_of_quantum_affine_space(capsys):
    assert main(["core", "--preset", "quantum-affine:3"]) == 0
    out = capsys.readouterr().out
    assert "F_x = {1,2,3}" in out
    assert "core generators: 0" in out


def test_core_of_quantum_matrices(capsys):
    assert main(["core", "--preset", "oq-matrices:2,2"]) == 0
    out = capsys.readouterr().out
    assert "F_x = {}" in out
    assert "C_x = {1,2,3,4}" in out


def test_saturation_verdicts(capsys):
    assert main(["saturation", "--preset", "oq-matrices:2,2"]) == 0
    out = capsys.readouterr().out
    assert "commutation subgroup saturated: yes" in out
    assert main(["saturation", "--preset", "quantum-plane-minus-one"]) == 1
    out = capsys.readouterr().out
    assert "commutation subgroup saturated: no" in out
    assert "verdicts agree: yes" in out


def test_rank_output(capsys):
    assert main(["rank", "--preset", "oq-matrices:2,3"]) == 0
    assert "rank = 4" in capsys.readouterr().out


def test_center_output(capsys):
    assert main(["center", "--preset", "oq-matrices:2,2"]) == 0
    out = capsys.readouterr().out
    assert "center lattice rank: 2" in out
    assert "[0, 0, 0, 1]  (monomial)" in out
    assert "[0, 1, -1, 0]  (fraction)" in out


def test_centralizer_output(capsys):
    assert main(["centralizer", "x2", "1", "--preset", "oq-matrices:2,2"]) == 0
    assert "dim C_1(x2) = 1" in capsys.readouterr().out


def test_centralizer_accepts_aliases(capsys):
    assert main(["centralizer", "X12", "1", "--preset", "oq-matrices:2,2"]) == 0
    assert "dim C_1(X12) = 1" in capsys.readouterr().out


def test_centralizer_unknown_generator(capsys):
    assert main(["centralizer", "x9", "1", "--preset", "oq-matrices:2,2"]) == 2


def test_centralizer_multiparameter_limitation(capsys):
    assert main(["centralizer", "x1", "1", "--preset", "multiparam-matrices:2"]) == 1
    assert "error:" in capsys.readouterr().err


def write_endo(tmp_path, images):
    f = tmp_path / "endo.json"
    f.write_text(json.dumps({"images": images}))
    return str(f)


def test_audit_identity_endomorphism(tmp_path, capsys):
    endo = write_endo(tmp_path, ["x1", "x2", "x3", "x4"])
    assert main(["audit-endo", endo, "--preset", "oq-matrices:2,2"]) == 0
    out = capsys.readouterr().out
    assert "unipotent: yes" in out
    assert "certified" in out


def test_audit_shear_on_affine_space(tmp_path, capsys):
    endo = write_endo(tmp_path, ["x1", "x2 + q*x1*x3", "x3"])
    assert main(["audit-endo", endo, "--preset", "quantum-affine:3"]) == 0
    out = capsys.readouterr().out
    assert "unipotent: yes" in out


def test_audit_rejects_relation_breaking_map(tmp_path, capsys):
    endo = write_endo(tmp_path, ["x1", "x2 + x1"])
    assert main(["audit-endo", endo, "--preset", "quantum-affine:2"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_audit_parse_error_shows_position(tmp_path, capsys):
    endo = write_endo(tmp_path, ["x1 + @", "x2"])
    assert main(["audit-endo", endo, "--preset", "quantum-affine:2"]) == 2
    err = capsys.readouterr().err
    assert "(line 1, column 6)" in err
    assert "^" in err


def test_audit_wrong_image_count(tmp_path, capsys):
    endo = write_endo(tmp_path, ["x1", "x2"])
    assert main(["audit-endo", endo, "--preset", "quantum-affine:3"]) == 2
    assert "error:" in capsys.readouterr().err


def test_audit_missing_endo_file(capsys):
    assert main(["audit-endo", "absent.json", "--preset", "quantum-affine:2"]) == 2


def test_fuel_flag_is_accepted(capsys):
    assert main(["validate", "--preset", "oq-matrices:2,2", "--fuel", "20"]) == 0


def test_roundtrip_emitted_file_through_validate(tmp_path, capsys):
    target = tmp_path / "p.json"
    assert main(["preset", "emit", "--preset", "oq-matrices:3,2", "--json", str(target)]) == 0
    assert main(["validate", str(target)]) == 0
