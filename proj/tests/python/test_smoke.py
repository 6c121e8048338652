import numpy as np
import pytest

import coldgen


def small_config():
    return {
        "grid": {"nx": 40, "ny": 50, "dx": 0.001, "dy": 0.001},
        "layout": {
            "port_width": 0.01,
            "chips": [
                {"label": "GPU_L", "x0": 0.004, "y0": 0.008, "x1": 0.018, "y1": 0.022, "tdp": 150.0},
                {"label": "GPU_R", "x0": 0.022, "y0": 0.008, "x1": 0.036, "y1": 0.022, "tdp": 150.0},
                {"label": "CPU", "x0": 0.012, "y0": 0.030, "x1": 0.028, "y1": 0.042, "tdp": 40.0},
            ],
        },
        "loop": {"outer_rounds": 3, "rd_steps_per_round": 300},
    }


def test_version_and_defaults():
    assert coldgen.__version__
    cfg = coldgen.default_config()
    assert cfg["grid"]["nx"] == 100 and cfg["grid"]["ny"] == 140
    assert cfg["rd"]["f"] == pytest.approx(0.055)


def test_uniform_load_matches_closed_form():
    q = np.full((16, 12), 750000.0)
    h = np.full((16, 12), 15000.0)
    t, iterations, residual, converged = coldgen.solve_steady(q, h)
    assert converged and iterations > 0 and residual <= 1e-4
    assert t.shape == (16, 12)
    assert np.max(np.abs(t - 75.0)) <= 1e-3


def test_no_sink_raises():
    with pytest.raises(coldgen.NoSinkError):
        coldgen.solve_steady(np.ones((4, 4)), np.zeros((4, 4)))


def test_gray_scott_hand_value():
    u, v = coldgen.gray_scott_step(np.full((5, 5), 0.5), np.full((5, 5), 0.25), dt=1.0)
    assert np.allclose(u, 0.49625, atol=1e-12)
    assert np.allclose(v, 0.252, atol=1e-12)


def test_threshold_mask():
    v = np.array([[0.1, 0.3, 0.5], [0.29, 0.31, 1.0], [0.0, 0.0, 0.0]])
    m = coldgen.threshold_mask(v, 0.3)
    assert m.dtype == np.uint8
    assert m.tolist() == [[0, 1, 1], [0, 1, 1], [0, 0, 0]]


def test_baseline_generate_compare():
    cfg = small_config()
    base = coldgen.baseline(cfg)
    gen = coldgen.generate(cfg, seed=42)
    assert base["mask"].shape == (50, 40) and gen["v"].shape == (50, 40)
    assert base["report"]["kind"] == "design" and gen["report"]["name"] == "generative"
    assert len(gen["report"]["history"]) == 3
    again = coldgen.generate(cfg, seed=42)
    assert np.array_equal(gen["mask"], again["mask"])
    deltas = coldgen.compare(base, gen)
    assert deltas["delta_max_c"] == pytest.approx(
        base["report"]["metrics"]["max_c"] - gen["report"]["metrics"]["max_c"])


def test_evaluate_reproduces_baseline():
    cfg = small_config()
    base = coldgen.baseline(cfg)
    solved = coldgen.evaluate(base["mask"], cfg)
    assert np.array_equal(solved["temperature"], base["temperature"])


def test_invalid_config_names_field():
    cfg = small_config()
    cfg["rd"] = {"feed": 0.05}
    with pytest.raises(coldgen.ValidationError, match="rd.feed"):
        coldgen.baseline(cfg)
    with pytest.raises(ValueError):
        coldgen.evaluate(np.zeros((3, 3), dtype=np.uint8), small_config())
