import numpy as np

from twpainleve import distribution as ds
from twpainleve import plotting


def test_all_figures_render(tmp_path, sol):
    t = np.linspace(-3, 3, 13)
    q = np.exp(-t)
    files = [
        plotting.plot_hm(t, q, -q, q * q, tmp_path / "hm.png"),
        plotting.plot_distribution([ds.build_table(b, -4, 2, 0.25, sol=sol) for b in (2, 6)],
                                   tmp_path / "tw.pdf"),
        plotting.plot_series([(0, 1.0, 2.0, None), (1, 0.5, 0.1, 3.0)], ["n", "a", "b", "c"],
                             tmp_path / "s.png"),
        plotting.plot_verify([{"name": "a", "max_residual": 1e-9, "tolerance": 1e-6, "passed": True},
                              {"name": "b", "max_residual": 0.0, "tolerance": 0, "passed": True}],
                             tmp_path / "v.svg"),
        plotting.plot_frobenius([0.2, 0.1], [[1e-6, 2e-6, 3e-6], [1e-9, 1e-9, 1e-9]],
                                tmp_path / "f.png"),
        plotting.plot_oracle(t, q, q + 1e-9, tmp_path / "o.png"),
    ]
    for f in files:
        assert f.stat().st_size > 500


def test_png_output_is_reproducible(tmp_path):
    t = np.linspace(0, 1, 5)
    a = plotting.plot_hm(t, t, t, t + 1, tmp_path / "a.png").read_bytes()
    b = plotting.plot_hm(t, t, t, t + 1, tmp_path / "b.png").read_bytes()
    assert a == b
