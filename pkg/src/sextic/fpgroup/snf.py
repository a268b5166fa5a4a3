"""Smith normal form over the integers, with unimodular transforms."""

from __future__ import annotations


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: list[list[int]]):
    """Return ``(U, D, V)`` with ``U * A * V == D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        if k:
            d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        if k:
            for row in d:
                row[dst] += k * row[src]
            for row in v:
                row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = d[t][t]
            done = True
            for i in range(t + 1, m):
                q = d[i][t] // p
                add_row(t, i, -q)
                if d[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = d[t][j] // p
                add_col(t, j, -q)
                if d[t][j]:
                    done = False
            if done:
                # enforce divisibility against the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if d[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            best = None
            for i in range(t, m):
                if d[i][t] and (best is None or abs(d[i][t]) < best[0]):
                    best = (abs(d[i][t]), i, t)
            for j in range(t, n):
                if d[t][j] and (best is None or abs(d[t][j]) < best[0]):
                    best = (abs(d[t][j]), t, j)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def diagonal(d: list[list[int]]) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def is_divisibility_chain(diag: list[int]) -> bool:
    nz = [x for x in diag if x]
    if any(x == 0 for x in diag[: len(nz)]):
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def determinant(a: list[list[int]]) -> int:
    """Exact integer determinant via fraction-free elimination (Bareiss)."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def abelian_invariants(a: list[list[int]], ncols: int) -> tuple[list[int], int]:
    """Torsion factors (> 1) and free rank of ``Z^ncols / rowspace(a)``."""
    if not a:
        return [], ncols
    _, d, _ = smith_normal_form(a)
    diag = diagonal(d)
    rank = sum(1 for x in diag if x)
    torsion = [x for x in diag if x > 1]
    return torsion, ncols - rank


def primary_factors(torsion: list[int]) -> list[int]:
    """Split cyclic factors into prime powers, sorted (GAP-style listing)."""
    out = []
    for n in torsion:
        p = 2
        while n > 1:
            if n % p == 0:
                q = 1
                while n % p == 0:
                    n //= p
                    q *= p
                out.append(q)
            p += 1
    return sorted(out)

