import json

import pytest

from conftest import FIXTURES
from nec_subgroups.cli import main
from nec_subgroups.files import InputError, dump_action, load_action, parse_action_text
from nec_subgroups.hoare import subgroup_signature
from nec_subgroups.signature import normalize, parse_signature


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_example2(capsys):
    code, out, _ = run(capsys, "validate", FIXTURES / "example2.yaml")
    assert code == 0
    assert out.strip() == "ok: 9 relators verified, transitive, degree 4"


def test_validate_printed_example3(capsys):
    code, out, _ = run(capsys, "validate", FIXTURES / "example3_printed.yaml")
    assert code == 1
    assert "x1 x2 e1" in out


def test_validate_out_of_range_point(capsys, tmp_path):
    f = tmp_path / "bad.yaml"
    f.write_text((FIXTURES / "example2.yaml").read_text().replace('"(1,2)(3)(4)"', '"(1,5)(3)(4)"'))
    code, _, err = run(capsys, "validate", f)
    assert code == 2
    assert "point 5 outside 1..4" in err
    # line of c1.0, column of the offending point inside the quoted string
    lines = f.read_text().splitlines()
    line = next(i for i, l in enumerate(lines, 1) if l.lstrip().startswith("c1.0"))
    col = lines[line - 1].index("5") + 1
    assert f":{line}:{col}:" in err


@pytest.mark.parametrize("fixture, expected", [
    ("example2.yaml", "(1; -; [ ]; {(3),(),()})"),
    ("example3_corrected.yaml", "(9; -; [2,3,6,8]; {(2,2,5)})"),
    ("triangle_2_3_7_theta1.yaml", "(0; +; [2,3,7]; {})"),
    ("triangle_3_4_6_theta2.yaml", "(0; +; [3]; {(2,3)})"),
    ("triangle_4_3_6_theta3.yaml", "(0; +; [ ]; {(2,3,3,3)})"),
])
def test_signature_command(capsys, fixture, expected):
    code, out, _ = run(capsys, "signature", FIXTURES / fixture)
    assert code == 0 and out.strip() == expected


def test_signature_requires_override_for_printed(capsys):
    code, out, _ = run(capsys, "signature", FIXTURES / "example3_printed.yaml")
    assert code == 1 and "x1 x2 e1" in out
    code, out, _ = run(capsys, "signature", FIXTURES / "example3_printed.yaml",
                       "--allow-invalid-relators", "--trace")
    assert code == 0 and "unverified input" in out


def test_trace_contents(capsys):
    code, out, _ = run(capsys, "signature", FIXTURES / "example2.yaml", "--trace")
    assert code == 0
    assert "Step 1. induced reflections: c1.0@3, c1.0@4, c1.1@1" in out
    assert "negative circuit c1.0 c2.0 c1.2^-1" in out
    assert "A(Γ) = 7/12, N = 4, A(Λ) = 4 x 7/12 = 7/3, genus g = 1" in out
    assert out.strip().splitlines()[-1] == "signature: (1; -; [ ]; {(3),(),()})"


def test_machine_round_trip(capsys):
    for fixture in ("example2.yaml", "example3_corrected.yaml", "triangle_2_3_7_theta1.yaml"):
        code, out, _ = run(capsys, "signature", FIXTURES / fixture, "--format", "machine")
        assert code == 0
        data = json.loads(out)
        action = load_action(FIXTURES / fixture)
        report = subgroup_signature(action.signature, action)
        assert normalize(parse_signature(data["signature"])) == report.signature
        assert data["area"]["subgroup"] == str(report.area.subgroup_area)
        assert {"orientability", "links", "chains", "area"} <= set(data)


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "signature", FIXTURES / "example3_corrected.yaml", "--trace",
                "--format", fmt)[1] for fmt in ("text",) for _ in range(3)}
    assert len(outs) == 1


def test_restrict_to_orbit(capsys, tmp_path):
    f = tmp_path / "intransitive.yaml"
    f.write_text('signature: "(0;+;[];{(2,3),()})"\ndegree: 3\ngenerators:\n'
                 '  c1.0: ""\n  c1.1: ""\n  c1.2: ""\n  c2.0: ""\n  e1: "(2,3)"\n  e2: "(2,3)"\n')
    code, out, _ = run(capsys, "signature", f)
    assert code == 1 and "intransitive" in out
    code, out, _ = run(capsys, "signature", f, "--restrict-to-orbit", 2)
    assert code == 0


def test_enumerate_index_two(capsys):
    code, out, _ = run(capsys, "enumerate", "(0;+;[];{(4,6,8)})", "--index", 2)
    assert code == 0 and out.count("signature:") == 7
    code, out, _ = run(capsys, "enumerate", "(0;+;[];{(3,5,7)})", "--index", 2)
    assert code == 0 and out.count("signature:") == 1
    assert "signature: (0; +; [3,5,7]; {})" in out


def test_enumerate_degree_one(capsys):
    code, out, _ = run(capsys, "enumerate", "(0;+;[6,6];{(5,8,12)})", "--degree", 1)
    assert code == 0 and out.count("signature:") == 1
    assert "signature: (0; +; [6,6]; {(5,8,12)})" in out


def test_enumerate_errors(capsys):
    assert run(capsys, "enumerate", "(0;+;[];{(2,3,6)})", "--index", 2)[0] == 2
    assert run(capsys, "enumerate", "(0;+;[];{(2,3,7)})", "--degree", 9)[0] == 2
    assert run(capsys, "enumerate", "(0;+;[];{(2,3,7)})", "--index", 3)[0] == 2
    code, out, _ = run(capsys, "enumerate", "(0;+;[];{(2,3),()})", "--degree", 4, "--limit", 3)
    assert code == 0 and "partial" in out and out.count("signature:") == 3


@pytest.mark.parametrize("text, message", [
    ('signature: "(0;+;[];{(2,3,7)})"\ndegree: 2\ngenerators:\n  c1.0: ""\n', "missing generators"),
    ('signature: "(0;+;[];{(2,3,7)})"\ndegree: 2\ngenerators:\n  x1: ""\n', "unknown generator 'x1'"),
    ('signature: "(0;+;[];{(2,3,7)"\ndegree: 2\ngenerators: {}\n', "expected"),
    ('signature: "(0;+;[];{(2,3,7)})"\ndegree: two\ngenerators: {}\n', "degree"),
    ("signature: [unclosed\n", "YAML error"),
])
def test_input_errors(text, message):
    with pytest.raises(InputError, match=message):
        parse_action_text(text)


def test_missing_generator_lists_expected_names():
    with pytest.raises(InputError) as info:
        parse_action_text('signature: "(0;+;[];{(2,3,7)})"\ndegree: 2\ngenerators:\n  c1.0: ""\n')
    assert "expected exactly c1.0, c1.1, c1.2, c1.3, e1" in str(info.value)


def test_dump_round_trip():
    action = load_action(FIXTURES / "example3_corrected.yaml")
    assert parse_action_text(dump_action(action)) == action


def test_parse_error_exit_code(capsys, tmp_path):
    f = tmp_path / "x.yaml"
    f.write_text("signature: (0;+;[];{(2,3,7)})\ndegree: 2\ngenerators:\n  bogus: ''\n")
    code, _, err = run(capsys, "signature", f)
    assert code == 2 and "bogus" in err
