import json

import numpy as np
import pytest

from twistnets.quat import Quaternion
from twistnets.proj4 import QUADRIC_MATRIX, normalize_proj, nullspace, quadric_pair
from twistnets.twistor import HPoint, is_j_real, twistor_fiber
from twistnets.xratio import _quadric_roots
from twistnets.cli import (
    _bivector_out,
    doc_to_net,
    main,
    net_to_doc,
    parse_complex,
)


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _hp1_curve_doc(n=5):
    pts = [[0.0, float(np.cos(t)), float(np.sin(t)), 0.0]
           for t in np.linspace(0.2, 2.0, n)]
    return {"schema": 1, "dim": 1, "box": [n], "kind": "hp1",
            "entries": {str(k): p for k, p in enumerate(pts)},
            "metadata": {}}


def _cp1_curve_doc(n=6, seed=3):
    rng = np.random.default_rng(seed)
    zs = rng.standard_normal((n, 2))
    return {"schema": 1, "dim": 1, "box": [n], "kind": "cp1",
            "entries": {str(k): [float(a), float(b)]
                        for k, (a, b) in enumerate(zs)},
            "metadata": {}}


def _unit_sphere_bivector():
    """The unit sphere of Im H as a twistor line, via four of its points."""
    rows = []
    for x, y, z in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0)):
        p = HPoint.from_quaternion(Quaternion(0.0, x, y, z))
        rows.append(twistor_fiber(p) @ QUADRIC_MATRIX)
    ns = nullspace(np.array(rows), 1e-9)
    roots = [r for r in _quadric_roots(ns[:, 0], ns[:, 1])
             if abs(quadric_pair(r, r)) < 1e-8 and not is_j_real(r, 1e-6)]
    return normalize_proj(roots[0])


def test_parse_complex():
    assert parse_complex("-1") == -1
    assert parse_complex("0+1i") == 1j
    assert parse_complex("2.5-0.5j") == 2.5 - 0.5j
    from twistnets.proj4 import GeometryError
    with pytest.raises(GeometryError):
        parse_complex("nope")


def test_evolve_circular_then_check(tmp_path, capsys):
    src = _write(tmp_path, "curve.json", _hp1_curve_doc())
    out = str(tmp_path / "net.json")
    rc = main(["evolve", src, "--mode", "circular", "--lambda", "-1",
               "--steps", "3", "-o", out])
    assert rc == 0
    doc = json.loads(open(out).read())
    assert doc["kind"] == "hp1" and doc["box"] == [5, 4]
    rc = main(["check", out])
    msg = capsys.readouterr().out
    assert rc == 0 and "max residual" in msg


def test_check_detects_broken_net(tmp_path, capsys):
    src = _write(tmp_path, "curve.json", _hp1_curve_doc())
    out = str(tmp_path / "net.json")
    assert main(["evolve", src, "--mode", "circular", "--lambda", "-1",
                 "-o", out]) == 0
    doc = json.loads(open(out).read())
    doc["entries"]["1,1"][0] += 0.05
    bad = _write(tmp_path, "bad.json", doc)
    rc = main(["check", bad, "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert rc == 3 and not rep["ok"]


def test_evolve_complex_cr_report(tmp_path, capsys):
    src = _write(tmp_path, "curve.json", _cp1_curve_doc())
    out = str(tmp_path / "net.json")
    assert main(["evolve", src, "--mode", "complex", "--lambda", "0.4+0.9i",
                 "--steps", "3", "-o", out]) == 0
    rc = main(["check", out, "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert rc == 0 and rep["report"] == "cr" and rep["max_residual"] < 1e-8


def test_evolve_lift_conic_and_byte_stable_reexport(tmp_path, capsys):
    src = _write(tmp_path, "curve.json", _cp1_curve_doc())
    out = str(tmp_path / "lifted.json")
    assert main(["evolve", src, "--mode", "complex", "--lambda", "0.7-0.4i",
                 "--steps", "3", "--lift", "-o", out]) == 0
    rc = main(["check", out, "--report", "conic", "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert rc == 0 and rep["ok"]
    # loading and re-exporting a q4 document reproduces it byte for byte
    out2 = str(tmp_path / "again.json")
    assert main(["export", out, "--target", "json", "-o", out2]) == 0
    assert open(out).read() == open(out2).read()


def test_net_doc_roundtrip(tmp_path):
    src = _write(tmp_path, "curve.json", _hp1_curve_doc())
    out = str(tmp_path / "net.json")
    assert main(["evolve", src, "--mode", "circular", "--lambda", "-1.5",
                 "-o", out]) == 0
    doc = json.loads(open(out).read())
    again = net_to_doc(doc_to_net(doc))
    assert json.dumps(doc, sort_keys=True) == json.dumps(again, sort_keys=True)


def test_export_obj_lattice(tmp_path):
    src = _write(tmp_path, "curve.json", _hp1_curve_doc(3))
    net = str(tmp_path / "net.json")
    assert main(["evolve", src, "--mode", "circular", "--lambda", "-1",
                 "--steps", "2", "-o", net]) == 0
    obj = str(tmp_path / "net.obj")
    assert main(["export", net, "-o", obj]) == 0
    text = open(obj).read().splitlines()
    verts = [l for l in text if l.startswith("v ")]
    faces = [l for l in text if l.startswith("f ")]
    assert len(verts) == 9 and len(faces) == 4
    assert all(len(l.split()) == 4 for l in verts)


def test_export_obj_skips_infinity(tmp_path, capsys):
    doc = _hp1_curve_doc(3)
    doc["entries"]["1"] = None
    src = _write(tmp_path, "curve.json", doc)
    assert main(["export", src, "-o", str(tmp_path / "c.obj")]) == 0
    assert "infinity" in capsys.readouterr().err


def test_export_obj_sphere_matches_circumsphere(tmp_path):
    S = _unit_sphere_bivector()
    doc = {"schema": 1, "dim": 1, "box": [1], "kind": "q4",
           "entries": {"0": _bivector_out(S)}, "metadata": {}}
    src = _write(tmp_path, "sphere.json", doc)
    obj = str(tmp_path / "sphere.obj")
    assert main(["export", src, "-o", obj]) == 0
    verts = np.array([[float(t) for t in l.split()[1:]]
                      for l in open(obj).read().splitlines()
                      if l.startswith("v ")])
    faces = [l for l in open(obj).read().splitlines() if l.startswith("f ")]
    assert len(verts) == 13 * 16 and len(faces) == 12 * 16
    radii = np.linalg.norm(verts, axis=1)
    assert np.max(np.abs(radii - 1.0)) < 1e-6


def test_exit_code_usage_errors(tmp_path):
    # missing file and malformed JSON are usage/IO problems
    assert main(["check", str(tmp_path / "nope.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check", str(bad)]) == 1
    # empty curve document
    doc = {"schema": 1, "dim": 1, "box": [3], "kind": "hp1",
           "entries": {}, "metadata": {}}
    src = _write(tmp_path, "empty.json", doc)
    assert main(["evolve", src, "--mode", "circular", "--lambda", "-1"]) == 1


def test_exit_code_geometry_errors(tmp_path, capsys):
    src = _write(tmp_path, "curve.json", _hp1_curve_doc())
    # lambda = 1 is a degenerate cross ratio
    assert main(["evolve", src, "--mode", "circular", "--lambda", "1"]) == 2
    # complex lambda is rejected for circular evolution
    assert main(["evolve", src, "--mode", "circular", "--lambda", "0+1i"]) == 2
    capsys.readouterr()


def test_hexahedron_command(tmp_path, capsys):
    e = np.eye(4, dtype=complex)
    from twistnets.proj4 import wedge
    phi = wedge(e[0], e[1])
    p1, p2, p3 = wedge(e[0], e[2]), wedge(e[0], e[3]), wedge(e[1], e[2])
    pts = [phi, p1, p2, p3, phi + p1 + p2, phi + p1 + p3, phi + p2 + p3]
    doc = {"points": [_bivector_out(normalize_proj(p)) for p in pts]}
    src = _write(tmp_path, "hex.json", doc)
    assert main(["hexahedron", src, "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    got = np.array([complex(rep["eighth"][2 * k], rep["eighth"][2 * k + 1])
                    for k in range(6)])
    want = normalize_proj(2 * phi + p1 + p2 + p3)
    from twistnets.proj4 import proj_distance
    assert proj_distance(got, want) < 1e-9
    # wrong shape is a usage error
    bad = _write(tmp_path, "bad.json", {"points": doc["points"][:3]})
    assert main(["hexahedron", bad]) == 1


def test_holonomy_command(tmp_path, capsys):
    src = _write(tmp_path, "hexagon.json", _cp1_curve_doc(6))
    assert main(["holonomy", src, "--lambda", "-1", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert len(rep["eigenlines"]) == 2
    assert rep["parabolic"] is False
    h = np.array([[complex(*rep["matrix"][i][j]) for j in range(2)]
                  for i in range(2)])
    assert abs(np.linalg.det(h)) > 1e-12


def test_lie_report_command(capsys):
    assert main(["lie-report", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["basis_signature"] == [2, 4]
    assert rep["omega_slice_signature"] == [1, 4]
    assert rep["dimension"] == 6
