"""Iteration-count estimates for plain, Lévy and two-stage random search."""

from eaglestrat.analysis import estimate_step_size, reduction_table

if __name__ == "__main__":
    for label, value in reduction_table(10.0, 1e-5, 100, beta=1.5, coarse_delta=1e-2):
        print(f"{label:16s} {value:.4g}")
    for t, d in ((100, 1), (1000, 10), (1000, 100)):
        s = estimate_step_size(1.0, t, d)
        print(f"step t={t:<5d} d={d:<4d} {s:.4g} L  (L/{1 / s:.0f})")
