import json
import math

import numpy as np
import pytest

import momdist


def test_version():
    assert momdist.__version__ == "0.1.0"


def test_momdist_single_block_is_plain_distance():
    pts = np.array([[0.0, 0.0], [3.0, 4.0]])
    q = np.array([[0.0, 1.0], [3.0, 0.0]])
    d = momdist.momdist(pts, q, num_blocks=1)
    assert d == pytest.approx([1.0, 3.0])


def test_weights_zero_and_errors():
    pts = momdist.gen_circle(20, seed=1)
    assert np.all(momdist.weights(pts, pts, kind="zero") == 0.0)
    with pytest.raises(momdist.MomdistError):
        momdist.weights(pts, pts, kind="nope")
    with pytest.raises(ValueError):
        momdist.momdist(pts, pts, num_blocks=21)


def test_circle_has_one_loop():
    pts = momdist.gen_circle(200, seed=3)
    dgm = momdist.weighted_rips_diagram(pts, np.zeros(len(pts)))
    h1 = dgm[dgm[:, 0] == 1]
    assert np.sum(h1[:, 2] - h1[:, 1] > 0.5) == 1
    assert abs(h1[np.argmax(h1[:, 2] - h1[:, 1]), 2] - math.sqrt(3) / 2) < 0.02


def test_bottleneck_roundtrip():
    a = np.array([[1.0, 0.0, 1.0], [0.0, 0.0, math.inf]])
    b = np.array([[1.0, 0.0, 2.0], [0.0, 0.0, math.inf]])
    assert momdist.bottleneck(a, a) == 0.0
    assert momdist.bottleneck(a, b, dim=1) == pytest.approx(1.0)
    assert momdist.bottleneck(a, b, dim=0) == 0.0


def test_select_q_returns_trace():
    pts = np.vstack([momdist.gen_circle(150, sigma=0.01, seed=4), momdist.gen_matern(10, seed=5)])
    trace = momdist.select_q(pts, m_min=5, m_max=30, theta=1.5, a=1e6, b=2)
    assert trace["method"] == "lepski-weighted"
    assert trace["chosen_Q"] == 2 * trace["chosen_m"] + 1
    json.dumps(trace)


def test_radii():
    assert momdist.lambert_w0(math.e) == pytest.approx(1.0)
    assert momdist.radius_p(500, 10, 0.05, 1.0, 2.0) < momdist.radius_p(500, 20, 0.05, 1.0, 2.0)


def test_experiment_writes_manifest(tmp_path):
    assert "influence" in momdist.experiment_names()
    params = {"m_values": [10, 90], "replicates": 1, "eval_resolution": 0.5}
    summary, files = momdist.run_experiment("influence", params, seed=2, output_dir=str(tmp_path))
    assert summary["domination_holds"] is True
    assert "manifest.json" in files
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["parameters"]["replicates"] == 1
