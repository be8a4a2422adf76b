"""Timing comparison of the compiled and pure-Python kernel backends.

Run from the repository root after installing the package:

    python benchmarks/bench_kernels.py

Each kernel is timed on representative inputs at two grid sizes.  When the
compiled backend is unavailable the script still runs, timing the pure
backend alone.
"""

from __future__ import annotations

import math
import time

import numpy as np

from combenergy._kernels import available_backends

SIZES = (513, 4097)
A, B, LAM = 1.0, 2.0, 2.0
REPEAT = 5


def _grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    t = np.exp(np.linspace(0.0, math.log(1.5), n))
    t[0], t[-1] = 1.0, 1.5
    gamma = math.log(1.25) / math.log(1.5)
    H = np.exp(gamma * np.log(t))
    H[0] = 1.0
    return t, H


def _time(fn, *args) -> float:
    best = math.inf
    for _ in range(REPEAT):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def _cases(mod, n: int):
    t, H = _grid(n)
    rng = np.random.default_rng(7)
    noisy = H + 0.05 * rng.standard_normal(n)
    weights = np.ones(n)
    x_nodes = np.linspace(0.0, math.log(1.5), 65)
    zeta0 = math.sqrt(max(0.0, -0.5376 + B * B)) / A
    return {
        f"midpoint_energy(n={n})": (mod.midpoint_energy, (t, H, A, B, LAM)),
        f"gradient(n={n})": (mod.midpoint_energy_gradient, (t, H, A, B, LAM)),
        f"hessian(n={n})": (mod.midpoint_energy_hessian, (t, H, A, B, LAM)),
        f"pav(n={n})": (mod.pav_nondecreasing, (noisy, weights)),
        "shoot_path(65 nodes)": (
            mod.shoot_path,
            (-0.5376, A, B, LAM, x_nodes, 1e-12, 1e-14, zeta0),
        ),
    }


def main() -> None:
    backends = available_backends()
    print(f"backends available: {', '.join(sorted(backends))}")
    if "cython" not in backends:
        print("compiled backend not built; timing the pure backend only")
    names: list[str] = []
    rows: dict[str, dict[str, float]] = {}
    for backend_name, mod in sorted(backends.items()):
        for n in SIZES:
            for case, (fn, args) in _cases(mod, n).items():
                if case not in rows:
                    names.append(case)
                    rows[case] = {}
                if backend_name in rows[case]:
                    continue  # shoot_path case is size-independent
                rows[case][backend_name] = _time(fn, *args)
    cols = sorted(backends)
    header = ["kernel"] + [f"{c} (ms)" for c in cols]
    if len(cols) == 2:
        header.append("speedup")
    widths = [max(len(header[0]), max(len(n) for n in names))] + [12] * (len(header) - 1)
    line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    print(line)
    print("-" * len(line))
    for case in names:
        cells = [case.ljust(widths[0])]
        for c in cols:
            cells.append(f"{rows[case][c] * 1e3:10.4f}".ljust(12))
        if len(cols) == 2:
            ratio = rows[case]["python"] / rows[case]["cython"]
            cells.append(f"{ratio:8.1f}x")
        print("  ".join(cells))


if __name__ == "__main__":
    main()
