"""Regenerate the CUSUMSQ c0 table embedded in ``moneydemand.diagnostics``.

Under the null the recursive residuals are iid normal, so the cumulative
sum-of-squares path depends only on m = T - k. For each m we draw ``REPS``
paths and take the upper quantiles of max_r |s_r - r/m| (two-sided test).
The table is indexed by n = m / 2.

    python scripts/cusumsq_table.py > table.txt
"""

import numpy as np

REPS = 200_000
CHUNK = 20_000
SEED = 19750101
LEVELS = (0.10, 0.05, 0.01)


def grid():
    ms = list(range(2, 101, 2)) + list(range(110, 401, 10)) + list(range(450, 1001, 50))
    return ms


def simulate(m: int, rng: np.random.Generator) -> np.ndarray:
    out = []
    line = np.arange(1, m + 1) / m
    for _ in range(REPS // CHUNK):
        w2 = rng.standard_normal((CHUNK, m)) ** 2
        s = np.cumsum(w2, axis=1)
        s /= s[:, -1:]
        out.append(np.max(np.abs(s - line), axis=1))
    d = np.concatenate(out)
    return np.quantile(d, [1 - a for a in LEVELS])


def main():
    rng = np.random.default_rng(SEED)
    print("# n = (T-k)/2 : c0 at 10%, 5%, 1%")
    for m in grid():
        q = simulate(m, rng)
        print(f"    ({m / 2:g}, {q[0]:.4f}, {q[1]:.4f}, {q[2]:.4f}),")


if __name__ == "__main__":
    main()
