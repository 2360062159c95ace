"""Static matplotlib figures for the CLI ``--plot`` option.

Every function takes plain arrays or dicts, draws on a fresh figure and saves
it to ``path``; the format follows the file extension.  The Agg backend is
forced so nothing ever opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

golden_mean = (np.sqrt(5) - 1.0) / 2.0
fig_width = 6.0

params = {
    "axes.labelsize": 10,
    "font.size": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "lines.linewidth": 1.2,
    "figure.dpi": 120,
    "savefig.dpi": 150,
    "mathtext.fontset": "stix",
}


def _figure(nrows=1, ncols=1, height=None):
    h = height or fig_width * golden_mean
    with plt.rc_context(params):
        fig, axes = plt.subplots(nrows, ncols, figsize=(fig_width, h), squeeze=False)
    return fig, axes


def _save(fig, path):
    with plt.rc_context(params):
        fig.tight_layout(pad=0.5)
        # fixed metadata keeps repeated runs byte-stable for png
        meta = {"Software": None} if str(path).lower().endswith(".png") else None
        fig.savefig(path, metadata=meta)
    plt.close(fig)
    return path


def plot_hm(t, q, qp, u, path):
    fig, ax = _figure(1, 2)
    a, b = ax[0]
    a.plot(t, q, "k-", label="$q$")
    a.plot(t, qp, "--", color="0.4", label="$q'$")
    a.set_xlabel("$t$")
    a.legend(frameon=False)
    b.semilogy(t, np.abs(u), "k-", label="$u$")
    b.semilogy(t, np.asarray(q) ** 2, ":", color="C3", label="$q^2$")
    b.set_xlabel("$t$")
    b.legend(frameon=False)
    return _save(fig, path)


def plot_distribution(tables, path):
    """CDF and pdf for one or more DistTables on shared axes."""
    if not isinstance(tables, (list, tuple)):
        tables = [tables]
    fig, ax = _figure(1, 2)
    a, b = ax[0]
    for tab in tables:
        lab = rf"$\beta={tab.beta}$"
        a.plot(tab.grid, tab.F, label=lab)
        b.plot(tab.grid, tab.pdf, label=lab)
    xl = r"$\tau$" if tables[0].internal else "$t$"
    a.set_xlabel(xl)
    a.set_ylabel("$F$")
    b.set_xlabel(xl)
    b.set_ylabel("pdf")
    a.legend(frameon=False)
    return _save(fig, path)


def plot_series(rows, columns, path):
    """|coefficient| against n on a log axis, one line per column."""
    rows = np.array([[np.nan if v is None else v for v in r] for r in rows], dtype=float)
    fig, ax = _figure()
    a = ax[0, 0]
    n = rows[:, 0]
    for j, name in enumerate(columns[1:], start=1):
        y = np.abs(rows[:, j])
        m = np.isfinite(y) & (y > 0)
        a.semilogy(n[m], y[m], "o-", ms=3, label=name)
    a.set_xlabel("$n$")
    a.set_ylabel("|coefficient|")
    a.legend(frameon=False)
    return _save(fig, path)


def plot_verify(report, path):
    """max_residual / tolerance per check; the dashed line is the pass bound."""
    names = [r["name"] for r in report]
    ratio = []
    for r in report:
        tol = r["tolerance"]
        v = r["max_residual"]
        ratio.append(v / tol if tol > 0 else (0.0 if v == 0 else np.inf))
    ratio = np.clip(np.array(ratio, dtype=float), 1e-20, 1e6)
    fig, ax = _figure(height=max(3.0, 0.14 * len(names)))
    a = ax[0, 0]
    y = np.arange(len(names))
    colors = ["C2" if r["passed"] else "C3" for r in report]
    a.barh(y, ratio, color=colors, log=True)
    a.axvline(1.0, color="k", ls="--", lw=0.8)
    a.set_yticks(y)
    a.set_yticklabels(names, fontsize=5)
    a.invert_yaxis()
    a.set_xlabel("residual / tolerance")
    return _save(fig, path)


def plot_frobenius(z, residuals, path, labels=("mu+", "mu-", "nu")):
    fig, ax = _figure()
    a = ax[0, 0]
    R = np.asarray(residuals, dtype=float)
    for j in range(R.shape[1]):
        a.loglog(z, R[:, j], "o-", ms=3, label=labels[j] if j < len(labels) else str(j))
    # slope-8 guide through the first point of the largest residual
    top = R.max(axis=1)
    a.loglog(z, top[0] * (np.asarray(z) / z[0]) ** 8, "k:", lw=0.8, label="$z^8$")
    a.set_xlabel("$|z|$")
    a.set_ylabel("residual")
    a.legend(frameon=False)
    return _save(fig, path)


def plot_oracle(t, F_painleve, F_fredholm, path):
    fig, ax = _figure(1, 2)
    a, b = ax[0]
    a.plot(t, F_painleve, "k-", label="Painleve")
    a.plot(t, F_fredholm, "o", ms=3, mfc="none", color="C0", label="Fredholm")
    a.set_xlabel("$t$")
    a.set_ylabel("$F_2$")
    a.legend(frameon=False)
    d = np.abs(np.asarray(F_painleve) - np.asarray(F_fredholm))
    b.semilogy(t, np.maximum(d, 1e-18), "k.-")
    b.set_xlabel("$t$")
    b.set_ylabel(r"$|\Delta F|$")
    return _save(fig, path)
