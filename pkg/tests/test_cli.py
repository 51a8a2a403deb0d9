import json

import pytest

from udm import catalog, io
from udm.cli import main
from udm.graphs import reduced_incidence_matrix


@pytest.fixture()
def files(tmp_path):
    paths = {}
    paths["t4"] = tmp_path / "t4.json"
    paths["t4"].write_text(json.dumps(io.dump_matroid(catalog.tadpole_matroid())))
    paths["u53"] = tmp_path / "u53.json"
    from udm.matroid import uniform_matroid

    paths["u53"].write_text(json.dumps(io.dump_matroid(uniform_matroid(5, 3))))
    paths["square"] = tmp_path / "square.txt"
    paths["square"].write_text(io.dump_graph(catalog.chorded_square((1, 3))))
    paths["tadpole"] = tmp_path / "tadpole.txt"
    paths["tadpole"].write_text(io.dump_graph(catalog.tadpole_graph()))
    paths["theta236"] = tmp_path / "theta236.txt"
    paths["theta236"].write_text(io.dump_graph(catalog.theta_graph(2, 3, 6)))
    paths["star"] = tmp_path / "star.txt"
    paths["star"].write_text(io.dump_graph(catalog.star_graph(3)))
    paths["inc"] = tmp_path / "inc.json"
    paths["inc"].write_text(
        json.dumps(io.dump_representation(reduced_incidence_matrix(catalog.chorded_square((1, 3)))))
    )
    paths["tmp"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_ud_tadpole_matroid(files, capsys):
    code, out = run(capsys, "check-ud", "--matroid", str(files["t4"]))
    report = json.loads(out)
    assert code == 1
    assert report["verdict"] == "NotUniformlyDense"
    assert report["violator"] == [1, 2, 3]
    assert report["violator_density"] == "3/2"
    assert report["ground_density"] == "4/3"


def test_check_ud_uniform_has_witness(files, capsys):
    code, out = run(capsys, "check-ud", "--matroid", str(files["u53"]))
    report = json.loads(out)
    assert code == 0
    assert report["verdict"] == "UniformlyDense"
    assert report["witness"]["marginal"] == "3/5"


def test_check_ud_one_indexed(files, capsys):
    code, out = run(capsys, "check-ud", "--matroid", str(files["t4"]), "--one-indexed")
    # input file is 0-indexed; loading it as 1-indexed shifts elements down,
    # so write a shifted copy first
    data = json.loads(files["t4"].read_text())
    data["bases"] = [[e + 1 for e in b] for b in data["bases"]]
    shifted = files["tmp"] / "t4_one.json"
    shifted.write_text(json.dumps(data))
    code, out = run(capsys, "check-ud", "--matroid", str(shifted), "--one-indexed")
    report = json.loads(out)
    assert code == 1
    assert report["violator"] == [2, 3, 4]


def test_scale_graph_and_matrix_agree(files, capsys):
    code1, out1 = run(capsys, "scale", "--matrix", str(files["inc"]))
    code2, out2 = run(capsys, "scale", "--graph", str(files["square"]))
    r1, r2 = json.loads(out1), json.loads(out2)
    assert code1 == code2 == 0
    assert r1["weights_exact"] == r2["weights_exact"] == ["2", "2", "2", "2", "3"]
    assert r1["diagonal"] == "3/5"


def test_scale_diverges_on_tadpole_graph(files, capsys):
    code, out = run(capsys, "scale", "--graph", str(files["tadpole"]))
    report = json.loads(out)
    assert code == 1
    assert report["status"] == "diverged"
    assert report["certificate"]["kind"] == "density_violation"


def test_classify_bicyclic_exit_code(files, capsys):
    code, out = run(capsys, "classify-bicyclic", "--graph", str(files["theta236"]))
    report = json.loads(out)
    assert code == 1
    assert report["lengths"] == [2, 3, 6]


def test_toughness_star(files, capsys):
    code, out = run(capsys, "toughness", "--graph", str(files["star"]), "--t", "1")
    report = json.loads(out)
    assert code == 1
    assert report["counterexample"] == [0]


def test_matching_star_neither(files, capsys):
    code, out = run(capsys, "matching", "--graph", str(files["star"]))
    report = json.loads(out)
    assert code == 1
    assert report["certificate"]["kind"] == "tutte_witness"


def test_density_subcommand(files, capsys):
    code, out = run(
        capsys, "density", "--matroid", str(files["t4"]), "--subset", "1,2,3"
    )
    report = json.loads(out)
    assert code == 0
    assert report["density"] == "3/2"


def test_enumerate_bases_matrix(files, capsys):
    code, out = run(capsys, "enumerate-bases", "--matrix", str(files["inc"]))
    report = json.loads(out)
    assert code == 0
    assert report["count"] == 8


def test_dual_round_trip(files, capsys):
    code, out = run(capsys, "dual", "--matroid", str(files["u53"]))
    report = json.loads(out)
    assert code == 0
    assert report["matroid"]["rank"] == 2


def test_measure_infeasible_exit(files, capsys):
    code, out = run(capsys, "measure", "--matroid", str(files["t4"]))
    assert code == 1
    assert json.loads(out)["found"] is False


def test_spectral_report(files, capsys):
    code, out = run(capsys, "spectral", "--graph", str(files["square"]), "--subsets", "all")
    report = json.loads(out)
    assert code == 0
    assert report["density"] == "5/3"
    assert report["cycle_nullity"] == 2
    assert report["uniformly_dense"] is True


def test_deterministic_output(files, capsys):
    _, out1 = run(capsys, "check-ud", "--matroid", str(files["t4"]))
    _, out2 = run(capsys, "check-ud", "--matroid", str(files["t4"]))
    assert out1 == out2


def test_threads_flag_deterministic(files, capsys):
    _, out1 = run(capsys, "check-ud", "--matroid", str(files["t4"]), "--threads", "1")
    _, out2 = run(capsys, "check-ud", "--matroid", str(files["t4"]), "--threads", "2")
    assert out1 == out2


def test_text_format(files, capsys):
    code, out = run(capsys, "check-ud", "--matroid", str(files["t4"]), "--format", "text")
    assert code == 1
    assert "verdict: NotUniformlyDense" in out


def test_usage_errors(files, capsys, tmp_path):
    assert main(["check-ud"]) == 2  # no input
    assert main(["check-ud", "--matroid", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("nonsense\n")
    assert main(["check-ud", "--graph", str(bad)]) == 2
    assert main(["nonexistent-command"]) == 2


def test_cap_exit_code(files, capsys, monkeypatch):
    big = files["tmp"] / "big.txt"
    big.write_text(io.dump_graph(catalog.clique_sharing_cycle_edge(5, 20)))
    # exhaustive mode over 29 edges exceeds the default cap of 24
    code = main(["check-ud", "--graph", str(big), "--mode", "exhaustive"])
    assert code == 3
    capsys.readouterr()
    # raising the cap via the environment makes it pass
    monkeypatch.setenv("UDM_SUBSET_CAP", "29")
    code, out = run(capsys, "check-ud", "--graph", str(big), "--mode", "exhaustive")
    assert code == 1
    assert json.loads(out)["violator"] == list(range(10))


def test_verify_round_trips(files, capsys, tmp_path):
    cases = [
        (["check-ud", "--matroid", str(files["t4"])], ["--matroid", str(files["t4"])]),
        (["check-ud", "--matroid", str(files["u53"])], ["--matroid", str(files["u53"])]),
        (["scale", "--matrix", str(files["inc"])], ["--matrix", str(files["inc"])]),
        (["scale", "--graph", str(files["tadpole"])], ["--graph", str(files["tadpole"])]),
        (["toughness", "--graph", str(files["star"]), "--t", "1"], ["--graph", str(files["star"])]),
        (["matching", "--graph", str(files["star"])], ["--graph", str(files["star"])]),
        (["matching", "--graph", str(files["square"])], ["--graph", str(files["square"])]),
        (["classify-bicyclic", "--graph", str(files["theta236"])], ["--graph", str(files["theta236"])]),
        (["measure", "--matroid", str(files["u53"])], ["--matroid", str(files["u53"])]),
    ]
    for i, (cmd, inputs) in enumerate(cases):
        code = main(cmd)
        out = capsys.readouterr().out
        if "certificate" not in json.loads(out):
            continue
        report_path = tmp_path / f"report{i}.json"
        report_path.write_text(out)
        vcode, vout = run(capsys, "verify", "--report", str(report_path), *inputs)
        assert vcode == 0, (cmd, vout)
        assert json.loads(vout)["valid"] is True


def test_check_strict_ud_boundary_round_trip(files, capsys, tmp_path):
    theta = files["tmp"] / "theta123.txt"
    theta.write_text(io.dump_graph(catalog.theta_graph(1, 2, 3)))
    code, out = run(capsys, "check-strict-ud", "--graph", str(theta))
    report = json.loads(out)
    assert code == 1
    assert report["verdict"] == "UniformlyDenseNotStrict"
    assert report["certificate"]["kind"] == "equality_subset"
    path = tmp_path / "strict.json"
    path.write_text(out)
    vcode, vout = run(capsys, "verify", "--report", str(path), "--graph", str(theta))
    assert vcode == 0 and json.loads(vout)["valid"] is True


def test_measure_positive_boundary_has_certificate(files, capsys, tmp_path):
    theta = files["tmp"] / "theta123b.txt"
    theta.write_text(io.dump_graph(catalog.theta_graph(1, 2, 3)))
    code, out = run(capsys, "measure", "--graph", str(theta), "--positive")
    report = json.loads(out)
    assert code == 1
    assert report["max_min_weight"] == "0"
    assert report["certificate"]["kind"] == "equality_subset"
    path = tmp_path / "pos.json"
    path.write_text(out)
    vcode, vout = run(capsys, "verify", "--report", str(path), "--graph", str(theta))
    assert vcode == 0 and json.loads(vout)["valid"] is True


def test_verify_rejects_tampered_certificate(files, capsys, tmp_path):
    main(["check-ud", "--matroid", str(files["t4"])])
    report = json.loads(capsys.readouterr().out)
    report["certificate"]["subset"] = [0, 1]  # not actually a violator
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(report))
    code, out = run(capsys, "verify", "--report", str(path), "--matroid", str(files["t4"]))
    assert code == 1
    assert json.loads(out)["valid"] is False


def test_spectral_violation_certificate_verifies(files, capsys, tmp_path):
    big = files["tmp"] / "cc512.txt"
    big.write_text(io.dump_graph(catalog.clique_sharing_cycle_edge(5, 12)))
    code = main(["spectral", "--graph", str(big), "--subsets", "connected"])
    out = capsys.readouterr().out
    report = json.loads(out)
    assert code == 1
    assert report["certificate"]["kind"] == "density_violation"
    path = tmp_path / "spec.json"
    path.write_text(out)
    vcode, vout = run(capsys, "verify", "--report", str(path), "--graph", str(big))
    assert vcode == 0 and json.loads(vout)["valid"] is True


def test_strict_ud_scaling_mode(files, capsys):
    # small graph, explicit scaling: strictly uniformly dense, exit 0
    code, out = run(capsys, "check-strict-ud", "--graph", str(files["square"]), "--mode", "scaling")
    report = json.loads(out)
    assert code == 0
    assert report["verdict"] == "StrictlyUniformlyDense"
    assert report["certificate"]["kind"] == "scaling_converged"
    # 29-edge graph: auto falls back to scaling, finds an exact violator
    big = files["tmp"] / "cc520s.txt"
    big.write_text(io.dump_graph(catalog.clique_sharing_cycle_edge(5, 20)))
    code, out = run(capsys, "check-strict-ud", "--graph", str(big))
    report = json.loads(out)
    assert code == 1
    assert report["verdict"] == "NotUniformlyDense"
    assert report["certificate"]["kind"] == "density_violation"
    # exhaustive mode on the same input trips the element cap instead
    assert main(["check-strict-ud", "--graph", str(big), "--mode", "exhaustive"]) == 3
    capsys.readouterr()


def test_variety_projection_form(files, capsys):
    # genuine projector with constant diagonal 1/2: member
    good = files["tmp"] / "goodproj.json"
    good.write_text(json.dumps({"entries": [["1/2", "1/2"], ["1/2", "1/2"]]}))
    code, out = run(capsys, "variety", "--projection", str(good))
    assert code == 0 and json.loads(out)["member"] is True
    # constant diagonal but not idempotent: not a member, exit 1
    bad = files["tmp"] / "badproj.json"
    bad.write_text(json.dumps({"entries": [[0.5, 0.4], [0.4, 0.5]]}))
    code, out = run(capsys, "variety", "--projection", str(bad))
    assert code == 1 and json.loads(out)["member"] is False
    # loading a non-projector where a projector is required still errors
    notsym = files["tmp"] / "notsym.json"
    notsym.write_text(json.dumps({"entries": [[0.5, 0.9], [0.1, 0.5]]}))
    assert main(["enumerate-bases", "--projection", str(notsym)]) == 2
