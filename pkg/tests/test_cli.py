"""Command-line front end: exit codes, JSON shapes, workspace loading."""

import json
import os

import pytest

from gammalat.cli import main
from gammalat.errors import InvalidCocycle, UnknownName, WorkspaceError
from gammalat.workspace import empty_workspace, load_workspace, resolve_lattice

DEMO = os.path.join(os.path.dirname(__file__), "..", "demo", "workspace.json")


def run(capsys, *args):
    rc = main(list(args))
    out = capsys.readouterr().out
    return rc, out


def run_json(capsys, *args):
    rc, out = run(capsys, *args)
    return rc, json.loads(out)


def test_group_info_builtin(capsys):
    rc, doc = run_json(capsys, "group-info", "s3")
    assert rc == 0
    assert doc["format"] == 1
    assert doc["group"]["order"] == "6"
    assert len(doc["group"]["conjugacy_classes"]) == 3
    assert len(doc["group"]["cyclic_subgroup_reps"]) == 3


def test_group_info_workspace(capsys):
    rc, doc = run_json(capsys, "--workspace", DEMO, "group-info", "s3")
    assert rc == 0
    assert doc["group"]["order"] == "6"
    assert doc["group"]["labels"][1] == "t"


def test_group_info_trivial(capsys):
    rc, doc = run_json(capsys, "group-info", "trivial")
    assert rc == 0
    assert doc["group"]["order"] == "1"
    assert len(doc["group"]["conjugacy_classes"]) == 1
    assert len(doc["group"]["cyclic_subgroup_reps"]) == 1


def test_missing_name_exits_2(capsys):
    rc, doc = run_json(capsys, "group-info", "nope")
    assert rc == 2
    assert doc["error"]["code"] == "UnknownName"
    rc, doc = run_json(capsys, "artin", "nope")
    assert rc == 2
    rc, doc = run_json(capsys, "reduce", "nope")
    assert rc == 2


def test_artin_sign_lattice(capsys):
    rc, doc = run_json(capsys, "artin", "c2_sign")
    assert rc == 0
    assert doc["artin"]["r"] == 1
    terms = doc["artin"]["terms"]
    assert [(t["m"], t["n"]) for t in terms] == [(1, 0), (0, 1)]
    assert doc["minimal"] is True


def test_artin_zero_lattice_empty_terms(capsys):
    rc, doc = run_json(capsys, "--workspace", DEMO, "artin", "zero_demo")
    assert rc == 0
    assert doc["artin"]["r"] == 1
    assert doc["artin"]["terms"] == []


def test_ono_sign_lattice(capsys):
    rc, doc = run_json(capsys, "ono", "c2_sign")
    assert rc == 0
    assert doc["ono"]["index"] == "2"
    assert doc["ono"]["embedding"]["matrix"]["entries"] == [["1", "-1"], ["1", "1"]]


def test_ono_seedless_failure_exits_1(capsys):
    rc, doc = run_json(capsys, "ono", "v4_character", "--seedless")
    assert rc == 1
    assert doc["error"]["code"] == "NoInvertibleIntertwiner"


def test_twist_commands(capsys):
    rc, doc = run_json(capsys, "--workspace", DEMO, "twist", "aug_twisted", "twist_inv3")
    assert rc == 0
    assert doc["permutation_certificate"]["status"] == "YES"
    assert doc["lattice"]["rank"] == 2
    rc, doc = run_json(capsys, "--workspace", DEMO, "twist", "aug_twisted", "triv_inv3")
    assert rc == 0
    assert doc["permutation_certificate"]["status"] == "YES"
    rc, doc = run_json(capsys, "twist", "c2_sign", "nope")
    assert rc == 2


def test_reduce_fixture(capsys):
    rc, doc = run_json(capsys, "reduce", "sign_component")
    assert rc == 0
    red = doc["reduction"]
    assert red["m"] == "2"
    assert red["A"]["structure"]["invariant_factors"] == ["2", "4"]
    assert red["A"]["structure"]["order"] == "8"
    assert red["kernel_order_of_F"] == "8"
    assert len(red["narrative"]) == 5


def test_reduce_narrative_only(capsys):
    rc, doc = run_json(capsys, "reduce", "sign_component", "--narrative-only")
    assert rc == 0
    assert set(doc) == {"format", "narrative"}
    assert [e["step"] for e in doc["narrative"]] == [0, 1, 2, 3, 4]


def test_reduce_demo_workspace(capsys):
    rc, doc = run_json(capsys, "--workspace", DEMO, "reduce", "demo_component")
    assert rc == 0
    assert doc["reduction"]["kernel_order_of_F"] == "8"


def test_table_mode(capsys):
    rc, out = run(capsys, "--table", "group-info", "s3")
    assert rc == 0
    assert "conjugacy classes" in out
    rc, out = run(capsys, "--table", "ono", "c2_sign")
    assert rc == 0
    assert "embedding index 2" in out
    rc, out = run(capsys, "--table", "reduce", "sign_component")
    assert rc == 0
    assert "kernel order of F" in out
    # errors are JSON even in table mode
    rc, out = run(capsys, "--table", "artin", "nope")
    assert rc == 2
    assert json.loads(out)["error"]["code"] == "UnknownName"


def test_check_command(capsys):
    rc, doc = run_json(capsys, "check")
    assert rc == 0
    assert doc["passed"] is True
    assert len(doc["properties"]) >= 25
    names = [p["name"] for p in doc["properties"]]
    assert names == sorted(names)
    assert all(p["passed"] for p in doc["properties"])


def test_workspace_loads_and_resolves():
    ws = load_workspace(DEMO)
    assert set(ws.groups) == {"s3", "gamma1"}
    assert set(ws.actions) == {"inv3", "triv_on_c2"}
    assert set(ws.lattices) == {"aug_twisted", "component_sign_demo", "zero_demo"}
    assert set(ws.cocycles) == {"triv_inv3", "twist_inv3"}
    assert set(ws.reductions) == {"demo_component"}
    # workspace wins, then built-ins
    assert resolve_lattice(ws, "c2_sign").rank == 1
    with pytest.raises(UnknownName):
        resolve_lattice(ws, "nope")


def test_workspace_error_paths(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc, doc = run_json(capsys, "--workspace", str(bad), "group-info", "s3")
    assert rc == 2
    assert doc["error"]["code"] == "WorkspaceError"

    missing_format = tmp_path / "nofmt.json"
    missing_format.write_text("{}")
    with pytest.raises(WorkspaceError):
        load_workspace(str(missing_format))

    unknown_section = tmp_path / "extra.json"
    unknown_section.write_text(json.dumps({"format": 1, "stuff": {}}))
    with pytest.raises(WorkspaceError):
        load_workspace(str(unknown_section))

    bad_cocycle = tmp_path / "cocycle.json"
    bad_cocycle.write_text(
        json.dumps(
            {
                "format": 1,
                "actions": {
                    "triv": {"actor": "c2", "target": "c3", "generator_images": [[0, 1, 2]]}
                },
                "cocycles": {"bad": {"action": "triv", "values": [0, 1]}},
            }
        )
    )
    with pytest.raises(InvalidCocycle):
        load_workspace(str(bad_cocycle))

    bad_matrix = tmp_path / "matrix.json"
    bad_matrix.write_text(
        json.dumps(
            {
                "format": 1,
                "lattices": {
                    "x": {
                        "group": "c2",
                        "rank": 1,
                        "generator_matrices": [{"rows": 1, "cols": 1, "entries": [[1, 2]]}],
                    }
                },
            }
        )
    )
    with pytest.raises(WorkspaceError):
        load_workspace(str(bad_matrix))

    rc, doc = run_json(capsys, "--workspace", str(tmp_path / "absent.json"), "check")
    assert rc == 2
    assert doc["error"]["code"] == "WorkspaceError"


def test_workspace_big_integer_entries(tmp_path):
    big = 10 ** 40
    doc = {
        "format": 1,
        "lattices": {
            "big": {
                "group": "c2",
                "rank": 2,
                "generator_matrices": [
                    {
                        "rows": 2,
                        "cols": 2,
                        "entries": [["-1", str(big)], ["0", "1"]],
                    }
                ],
            }
        },
    }
    path = tmp_path / "big.json"
    path.write_text(json.dumps(doc))
    ws = load_workspace(str(path))
    lat = ws.lattices["big"]
    assert lat.matrices[1].entries[0][1] == big


def test_json_outputs_are_byte_stable(capsys):
    for args in (
        ["group-info", "s3"],
        ["artin", "c2_sign"],
        ["ono", "v4_character"],
        ["reduce", "sign_component"],
        ["--workspace", DEMO, "twist", "aug_twisted", "twist_inv3"],
    ):
        rc1, out1 = run(capsys, *args)
        rc2, out2 = run(capsys, *args)
        assert rc1 == rc2 == 0
        assert out1 == out2
        assert out1.endswith("\n")


def test_internal_error_code_for_unexpected(monkeypatch, capsys):
    import gammalat.cli as cli_mod

    def boom(*args, **kwargs):
        raise RuntimeError("surprise")

    monkeypatch.setattr(cli_mod, "artin_decompose", boom)
    rc, doc = run_json(capsys, "artin", "c2_sign")
    assert rc == 1
    assert doc["error"]["code"] == "internal"
    assert "surprise" in doc["error"]["message"]
