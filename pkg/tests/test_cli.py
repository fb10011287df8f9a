import json
import subprocess
import sys

import pytest

from simprep import Filtration, SimplicialComplex, lower_star_filtration
from simprep.cli import main
from simprep.poset import poset_from_json
from shapes import ANNULUS_SCENE, SPHERE_CATALOG, torus, torus_levels


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def catalog_doc(cat):
    return {"entries": [{"key": list(k), "members": v} for k, v in cat.items()]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_replace_sphere(tmp_path, capsys):
    cat = write(tmp_path, "cat.json", catalog_doc(SPHERE_CATALOG))
    out_file = tmp_path / "delta.json"
    code, out, _ = run(capsys, "replace", "--catalog", cat, "--ell", "2", "--out", str(out_file))
    assert code == 0 and out == "b: 1 0 1\n"
    doc = json.loads(out_file.read_text())
    K = SimplicialComplex.from_json(doc["complex"])
    assert K.f_vector() == [6, 12, 8]
    P = poset_from_json(doc["poset"])
    assert len(P) == 6 and P.hasse() == [tuple(e) for e in doc["poset"]["hasse"]]
    assert SimplicialComplex.from_json(K.to_json()) == K


def test_replace_empty_scene(tmp_path, capsys):
    scene = write(tmp_path, "s.json", {"dim": 2, "sets": {}})
    code, out, _ = run(capsys, "replace", "--scene", scene, "--ell", "1")
    assert code == 0 and out == "b:\n"


def test_replace_annulus(tmp_path, capsys):
    scene = write(tmp_path, "s.json", ANNULUS_SCENE)
    code, out, _ = run(capsys, "replace", "--scene", scene, "--ell", "1")
    assert code == 0 and out == "b: 1 1\n"


def test_nerve_of_annulus_misses_the_hole(tmp_path, capsys):
    scene = write(tmp_path, "s.json", ANNULUS_SCENE)
    code, out, _ = run(capsys, "nerve", "--scene", scene)
    assert code == 0 and out == "b: 1 0\n"


def test_missing_cover_entry_exit_code(tmp_path, capsys):
    cat = write(tmp_path, "cat.json", {"labels": ["a", "b"], "entries": [{"key": ["a", "b"], "members": ["c", "d"]}]})
    code, _, err = run(capsys, "replace", "--catalog", cat, "--ell", "1")
    assert code == 3 and '["c", "d"]' in err


def test_malformed_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "replace", "--scene", str(bad), "--ell", "1")[0] == 2
    assert run(capsys, "betti", "--complex", str(tmp_path / "missing.json"))[0] == 2
    scene = write(tmp_path, "s.json", {"dim": 2, "sets": {"A": [[[0], [1]]]}})
    assert run(capsys, "nerve", "--scene", scene)[0] == 2


def test_barcode_point(tmp_path, capsys):
    f = write(tmp_path, "f.json", {"labels": [0], "complexes": [{"vertices": 1, "simplices": [[0]]}]})
    code, out, _ = run(capsys, "barcode", "--filtration", f, "--ell", "0")
    assert code == 0 and out.splitlines()[1:] == ["0,0,inf,1"]


def test_barcode_triangle_fill(tmp_path, capsys):
    f = write(tmp_path, "f.json", {"complexes": [
        {"vertices": 3, "simplices": [[0, 1], [1, 2], [0, 2]]},
        {"vertices": 3, "simplices": [[0, 1, 2]]}]})
    code, out, _ = run(capsys, "barcode", "--filtration", f, "--ell", "1")
    assert code == 0 and "1,0,1,1" in out.splitlines()


def test_barcode_torus_rows(tmp_path, capsys):
    F = lower_star_filtration(torus(), torus_levels())
    f = write(tmp_path, "f.json", F.to_json())
    code, out, _ = run(capsys, "barcode", "--filtration", f, "--ell", "2")
    assert code == 0
    assert out.splitlines()[1:] == ["0,0,inf,1", "1,2,inf,1", "1,4,inf,1", "2,5,inf,1"]
    assert Filtration.from_json(json.loads(open(f).read())) == F


def test_barcode_not_nested(tmp_path, capsys):
    f = write(tmp_path, "f.json", {"complexes": [
        {"vertices": 2, "simplices": [[0, 1]]}, {"vertices": 1, "simplices": [[0]]}]})
    code, _, err = run(capsys, "barcode", "--filtration", f)
    assert code == 2 and "[1]" in err


def test_barcode_json_format(tmp_path, capsys):
    f = write(tmp_path, "f.json", {"labels": ["1/2"], "complexes": [{"vertices": 1, "simplices": [[0]]}]})
    code, out, _ = run(capsys, "--format", "json", "barcode", "--filtration", f, "--ell", "0")
    assert code == 0
    assert json.loads(out) == {"bars": [{"p": 0, "birth": "1/2", "death": "inf", "multiplicity": 1}]}


def test_sa_barcode_disk(capsys):
    code, out, _ = run(capsys, "sa-barcode", "--set", "1 - X^2 >= 0", "--poly", "X^2", "--ell", "1")
    assert code == 0
    rows = out.splitlines()
    assert len(rows) == 2 and rows[1].startswith("0,")
    assert ",inf," in rows[1]


def test_sa_barcode_empty(capsys):
    code, out, _ = run(capsys, "sa-barcode", "--set", "X^2 + 1 <= 0", "--poly", "X")
    assert code == 0 and len(out.splitlines()) == 1


def test_sa_barcode_two_intervals_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "sa-barcode",
                       "--set", "(X+2)*(X+1) <= 0 or (X-1)*(X-2) <= 0", "--poly", "X")
    assert code == 0
    bars = json.loads(out)["bars"]
    assert [b["birth"]["poly"] for b in bars] == ["T + 2", "T - 1"]
    assert all(b["death"] == "inf" for b in bars)


def test_sa_barcode_errors(capsys):
    assert run(capsys, "sa-barcode", "--set", "X > 0 and X - 1 <= 0", "--poly", "X")[0] == 4
    assert run(capsys, "sa-barcode", "--set", "X >= 0", "--poly", "X")[0] == 4
    assert run(capsys, "sa-barcode", "--set", "X >= ", "--poly", "X")[0] == 2


def test_betti_command(tmp_path, capsys):
    k = write(tmp_path, "k.json", {"vertices": 4, "simplices": [[0, 1], [1, 2], [2, 3], [0, 3]]})
    assert run(capsys, "betti", "--complex", k, "--ell", "1")[1] == "b: 1 1\n"


def test_output_is_deterministic(tmp_path, capsys):
    cat = write(tmp_path, "cat.json", catalog_doc(SPHERE_CATALOG))
    outs = []
    for n in range(2):
        path = tmp_path / f"d{n}.json"
        run(capsys, "replace", "--catalog", cat, "--ell", "2", "--out", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point(tmp_path):
    k = write(tmp_path, "k.json", {"vertices": 1, "simplices": [[0]]})
    res = subprocess.run([sys.executable, "-m", "simprep", "betti", "--complex", k, "--ell", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "b: 1\n"
