"""Independent reference implementations used to cross-check the library.

Everything here is deliberately naive (quadratic scans, explicit
enumeration, textbook formulas) and shares no code with the package.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


def strictly_increasing(xs) -> bool:
    """Plain left-to-right scan."""
    xs = list(xs)
    return all(xs[i] < xs[i + 1] for i in range(len(xs) - 1))


def dft_naive(ys) -> np.ndarray:
    """O(N^2) one-sided discrete Fourier transform."""
    ys = np.asarray(ys, dtype=float)
    n = len(ys)
    ks = np.arange(n // 2 + 1)
    angles = -2j * np.pi * np.outer(ks, np.arange(n)) / n
    return np.exp(angles) @ ys


def loess_pointwise(xs, ys, span: float) -> np.ndarray:
    """Per-point tricube weighted least squares via explicit normal equations."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    n = len(xs)
    w = math.ceil(span * n)
    out = np.empty(n)
    for i in range(n):
        d = np.abs(xs - xs[i])
        idx = np.argsort(d, kind="stable")[:w]
        dmax = d[idx].max()
        u = d[idx] / dmax
        weights = (1.0 - u**3) ** 3
        design = np.column_stack([np.ones(w), xs[idx]])
        a = design.T @ (weights[:, None] * design)
        b = design.T @ (weights * ys[idx])
        beta = np.linalg.solve(a, b)
        out[i] = beta[0] + beta[1] * xs[i]
    return out


def local_minima_count(ys) -> int:
    """Local minima under the strict (value, index) tie order."""
    keyed = [(float(y), i) for i, y in enumerate(ys)]
    n = len(keyed)
    count = 0
    for i in range(n):
        left_higher = i == 0 or keyed[i] < keyed[i - 1]
        right_higher = i == n - 1 or keyed[i] < keyed[i + 1]
        if left_higher and right_higher:
            count += 1
    return count


def persistence_bruteforce(ys) -> list[tuple[float, float]]:
    """Sublevel pairing by explicit component sets (quadratic merging)."""
    ys = [float(y) for y in ys]
    n = len(ys)
    order = sorted(range(n), key=lambda i: (ys[i], i))
    components: list[dict] = []  # {"members": set, "birth": (value, index)}

    def find(i):
        for comp in components:
            if i in comp["members"]:
                return comp
        return None

    pairs = []
    for idx in order:
        left = find(idx - 1) if idx > 0 else None
        right = find(idx + 1) if idx < n - 1 else None
        if left is None and right is None:
            components.append({"members": {idx}, "birth": (ys[idx], idx)})
        elif left is not None and right is None:
            left["members"].add(idx)
        elif left is None and right is not None:
            right["members"].add(idx)
        else:
            younger, elder = (left, right) if left["birth"] > right["birth"] else (right, left)
            pairs.append((younger["birth"][0], ys[idx]))
            elder["members"] |= younger["members"] | {idx}
            components.remove(younger)
    pairs.append((min(ys), max(ys)))
    return sorted(pairs)


def dtw_full_table(a, b) -> float:
    """Straightforward O(nm) DP table with python loops."""
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    n, m = len(a), len(b)
    table = [[math.inf] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            c = abs(a[i] - b[j])
            if i == 0 and j == 0:
                table[i][j] = c
                continue
            best = math.inf
            if i > 0:
                best = min(best, table[i - 1][j])
            if j > 0:
                best = min(best, table[i][j - 1])
            if i > 0 and j > 0:
                best = min(best, table[i - 1][j - 1])
            table[i][j] = c + best
    return table[n - 1][m - 1]


def dtw_enumerate_paths(a, b) -> float:
    """Minimum cost over every monotone step path, expanded one by one.

    Exponential; keep the inputs tiny.
    """
    a = [float(v) for v in a]
    b = [float(v) for v in b]

    def walk(i, j):
        cost = abs(a[i] - b[j])
        if i == 0 and j == 0:
            return cost
        options = []
        if i > 0:
            options.append(walk(i - 1, j))
        if j > 0:
            options.append(walk(i, j - 1))
        if i > 0 and j > 0:
            options.append(walk(i - 1, j - 1))
        return cost + min(options)

    return walk(len(a) - 1, len(b) - 1)


def dtw_path_search(a, b) -> float:
    """Exhaustive path search with shared sub-searches (memoized recursion)."""
    a = tuple(float(v) for v in a)
    b = tuple(float(v) for v in b)

    @lru_cache(maxsize=None)
    def walk(i, j):
        cost = abs(a[i] - b[j])
        if i == 0 and j == 0:
            return cost
        options = []
        if i > 0:
            options.append(walk(i - 1, j))
        if j > 0:
            options.append(walk(i, j - 1))
        if i > 0 and j > 0:
            options.append(walk(i - 1, j - 1))
        return cost + min(options)

    return walk(len(a) - 1, len(b) - 1)


def bottleneck_enumerate(pairs1, pairs2) -> float:
    """Try every partial matching between two small diagrams."""
    pairs1 = [tuple(map(float, p)) for p in pairs1]
    pairs2 = [tuple(map(float, p)) for p in pairs2]

    def point_cost(p, q):
        return max(abs(p[0] - q[0]), abs(p[1] - q[1]))

    def diagonal_cost(p):
        return (p[1] - p[0]) / 2.0

    best = math.inf

    def assign(i, used, running_max):
        nonlocal best
        if running_max >= best:
            return
        if i == len(pairs1):
            leftovers = [diagonal_cost(q) for j, q in enumerate(pairs2) if j not in used]
            best = min(best, max([running_max, *leftovers]))
            return
        p = pairs1[i]
        assign(i + 1, used, max(running_max, diagonal_cost(p)))
        for j, q in enumerate(pairs2):
            if j not in used:
                assign(i + 1, used | {j}, max(running_max, point_cost(p, q)))

    assign(0, frozenset(), 0.0)
    return best


def bottleneck_kuhn(pairs1, pairs2) -> float:
    """Bottleneck distance via perfect matching on the augmented graph.

    Each diagram is padded with one explicit diagonal copy per point of the
    other diagram; feasibility at radius r is a perfect matching found with
    Kuhn's augmenting paths. Independent of both the enumeration oracle and
    the production flow formulation. Quadratic node count; medium sizes only.
    """
    pairs1 = [tuple(map(float, p)) for p in pairs1]
    pairs2 = [tuple(map(float, p)) for p in pairs2]
    n1, n2 = len(pairs1), len(pairs2)
    if n1 == 0 and n2 == 0:
        return 0.0

    def point_cost(p, q):
        return max(abs(p[0] - q[0]), abs(p[1] - q[1]))

    def diagonal_cost(p):
        return (p[1] - p[0]) / 2.0

    # Left nodes: pairs1 then diagonal copies for each of pairs2.
    # Right nodes: pairs2 then diagonal copies for each of pairs1.
    size = n1 + n2

    def cost(i, j):
        if i < n1 and j < n2:
            return point_cost(pairs1[i], pairs2[j])
        if i < n1:
            return diagonal_cost(pairs1[i])
        if j < n2:
            return diagonal_cost(pairs2[j])
        return 0.0

    candidates = sorted({cost(i, j) for i in range(size) for j in range(size)})

    def feasible(r):
        match_right = [-1] * size

        def try_augment(i, seen):
            for j in range(size):
                if cost(i, j) <= r and j not in seen:
                    seen.add(j)
                    if match_right[j] == -1 or try_augment(match_right[j], seen):
                        match_right[j] = i
                        return True
            return False

        return all(try_augment(i, set()) for i in range(size))

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def apen_direct(sequence, m: int, r: float) -> float:
    """Textbook approximate entropy, double loop, natural log."""
    x = [float(v) for v in sequence]
    n = len(x)

    def phi(mm):
        count = n - mm + 1
        templates = [x[i : i + mm] for i in range(count)]
        total = 0.0
        for t_i in templates:
            matches = sum(
                1 for t_j in templates if max(abs(u - v) for u, v in zip(t_i, t_j)) <= r
            )
            total += math.log(matches / count)
        return total / count

    return phi(m) - phi(m + 1)


def ols_percent_change(errors_by_level) -> float:
    """Closed-form OLS percent change from level 0 to level 4."""
    xs = np.array([float(level) for level, _ in errors_by_level])
    ys = np.array([float(err) for _, err in errors_by_level])
    xm, ym = xs.mean(), ys.mean()
    slope = float(((xs - xm) @ (ys - ym)) / ((xs - xm) @ (xs - xm)))
    intercept = ym - slope * xm
    return 100.0 * ((intercept + 4 * slope) - intercept) / intercept
