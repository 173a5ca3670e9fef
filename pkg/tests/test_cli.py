import json

from framebundles.cli import main

Z3_SPEC = '{"kind": "cyclic", "n": 3}'
KLEIN_SPEC = '{"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 2}]}'
WINDING_Z2_K2 = '{"kind": "winding", "group": {"kind": "cyclic", "n": 2}, "k": 2}'
U1_WINDING_K2 = '{"k": 2, "loops": 1, "generators": [{"angles": ["0", "0"], "perm": [1, 0]}]}'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


GOLDEN_Z3 = """command: classify-circle
group: Z3 order 3
automorphisms: 2
conjugacy classes: 2
class size representative components
0 1 (0,1,2) 3
1 1 (0,2,1) 2
status: ok
"""

GOLDEN_KLEIN = """command: classify-circle
group: Z2xZ2 order 4
automorphisms: 6
conjugacy classes: 3
class size representative components
0 1 (0,1,2,3) 4
1 3 (0,1,3,2) 3
2 2 (0,2,3,1) 2
status: ok
"""


def test_classify_circle_z3_golden(capsys):
    code, out, _ = run(capsys, "classify-circle", "--group", Z3_SPEC)
    assert code == 0
    assert out == GOLDEN_Z3


def test_classify_circle_klein_golden(capsys):
    code, out, _ = run(capsys, "classify-circle", "--group", KLEIN_SPEC)
    assert code == 0
    assert out == GOLDEN_KLEIN


def test_classify_circle_trivial_group(capsys):
    code, out, _ = run(capsys, "classify-circle", "--group", '{"kind": "cyclic", "n": 1}')
    assert code == 0
    assert "automorphisms: 1" in out
    assert "conjugacy classes: 1" in out
    assert "0 1 (0) 1" in out


def test_classify_circle_deterministic(capsys):
    _, first, _ = run(capsys, "classify-circle", "--group", KLEIN_SPEC)
    _, second, _ = run(capsys, "classify-circle", "--group", KLEIN_SPEC)
    assert first == second


def test_classify_circle_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "classify-circle", "--group", Z3_SPEC)
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "ok"
    assert payload["data"]["aut_order"] == 2
    assert [c["components"] for c in payload["data"]["classes"]] == [3, 2]


def test_components_command(capsys):
    code, out, _ = run(capsys, "components", WINDING_Z2_K2)
    assert code == 0
    assert "components: 2" in out


def test_frame_bundle_command(capsys):
    code, out, _ = run(capsys, "frame-bundle", WINDING_Z2_K2)
    assert code == 0
    assert "clutching 1: g=(0,0) sigma=(1,0)" in out
    assert "frame bundle components: 4" in out


def test_holonomy_command_empty_word(capsys):
    code, out, _ = run(capsys, "holonomy", WINDING_Z2_K2, "--word", "")
    assert code == 0
    assert "is identity: yes" in out


def test_holonomy_command_single_loop(capsys):
    code, out, _ = run(capsys, "holonomy", WINDING_Z2_K2, "--word", "1")
    assert code == 0
    assert "is identity: no" in out


def test_holonomy_bad_word_is_usage_error(capsys):
    code, _, err = run(capsys, "holonomy", WINDING_Z2_K2, "--word", "7")
    assert code == 2
    assert "error" in err


def test_sn_action_obstruction_exit_code(capsys):
    covering = json.dumps(
        {
            "kind": "flat",
            "mode": "gspace",
            "fiber": {"kind": "table", "group": {"kind": "cyclic", "n": 1}, "act": [[0, 1, 2]]},
            "loops": 1,
            "clutching": [{"perm": [1, 2, 0]}],
        }
    )
    code, out, _ = run(capsys, "sn-action", covering)
    assert code == 1
    assert "obstruction: generator 1" in out


def test_sn_action_success(capsys):
    covering = json.dumps(
        {
            "kind": "flat",
            "mode": "gspace",
            "fiber": {"kind": "table", "group": {"kind": "cyclic", "n": 1}, "act": [[0, 1, 2]]},
            "loops": 1,
            "clutching": [{"perm": [0, 1, 2]}],
        }
    )
    code, out, _ = run(capsys, "sn-action", covering)
    assert code == 0
    assert "global action" in out


def test_sn_action_small_fiber_is_obstruction_exit(capsys):
    covering = json.dumps(
        {
            "kind": "flat",
            "mode": "gspace",
            "fiber": {"kind": "table", "group": {"kind": "cyclic", "n": 1}, "act": [[0, 1]]},
            "loops": 1,
            "clutching": [{"perm": [1, 0]}],
        }
    )
    code, _, err = run(capsys, "sn-action", covering)
    assert code == 1
    assert "obstruction" in err


def test_decompose_command(capsys):
    code, out, _ = run(capsys, "decompose", WINDING_Z2_K2)
    assert code == 0
    assert "covering clutching 1: (1,0)" in out
    assert "principal fiber size |G|: 2" in out
    assert "covering components: 1" in out


def test_verify_unknown_suite_usage_error(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2
    assert "unknown suite" in err


def test_verify_beyond_fixture_bound_usage_error(capsys):
    code, _, err = run(capsys, "verify", "torsor", "--max-group", "7")
    assert code == 2
    assert "order 6" in err


def test_verify_small_suite(capsys):
    code, out, _ = run(capsys, "verify", "wreath-iso", "--group", "z2", "--orbits", "2")
    assert code == 0
    assert "counter homomorphism pairs: 64" in out
    assert "status: ok" in out


def test_verify_json_deterministic(capsys):
    _, first, _ = run(capsys, "--format", "json", "verify", "division-rules", "--group", "z2", "--orbits", "2")
    _, second, _ = run(capsys, "--format", "json", "verify", "division-rules", "--group", "z2", "--orbits", "2")
    assert first == second
    assert json.loads(first)["status"] == "ok"


def test_u1_holonomy_command(capsys):
    code, out, _ = run(capsys, "u1-holonomy", U1_WINDING_K2, "--word", "1")
    assert code == 0
    assert "holonomy: angles=(0,0) sigma=(1,0)" in out


def test_u1_transport_command(capsys):
    code, out, _ = run(
        capsys,
        "u1-transport",
        U1_WINDING_K2,
        "--word",
        "1",
        "--start",
        '{"angle": "0", "sheet": 0}',
    )
    assert code == 0
    assert "end: angle=0 sheet=1" in out


def test_pushforward_command(capsys):
    spec = '{"k": 1, "loops": 1, "generators": [{"angles": ["1/3"], "perm": [0]}]}'
    code, out, _ = run(capsys, "pushforward", spec, "--power", "3")
    assert code == 0
    assert "generator 1: angles=(0) sigma=(0)" in out


def test_division_check_command(capsys):
    path_doc = json.dumps(
        {
            "step": "1/100",
            "points": [{"angle": f"{i}/400", "sheet": 0} for i in range(4)],
        }
    )
    code, out, _ = run(capsys, "division-check", U1_WINDING_K2, "--path", path_doc)
    assert code == 0
    assert "constant rate: 1/4" in out


def test_division_check_mixed_sheets_obstruction(capsys):
    path_doc = json.dumps(
        {
            "step": "1/100",
            "points": [{"angle": "0", "sheet": 0}, {"angle": "0", "sheet": 1}],
        }
    )
    code, _, err = run(capsys, "division-check", U1_WINDING_K2, "--path", path_doc)
    assert code == 1
    assert "obstruction" in err


def test_schema_error_exit_code(capsys):
    code, _, err = run(capsys, "classify-circle", "--group", '{"kind": "cyclic"}')
    assert code == 2
    assert "error" in err


def test_stdin_document(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(Z3_SPEC))
    code, out, _ = run(capsys, "classify-circle", "--group", "-")
    assert code == 0
    assert "automorphisms: 2" in out
