"""Pure-Python coset enumeration kernel (HLT strategy with coincidence merging).

Column ``2g`` holds the action of generator ``g`` (0-based) and column
``2g + 1`` the action of its inverse, so ``col ^ 1`` is the inverse column.
Words are given as lists of column indices.  The compiled kernel in
``_coset.pyx`` implements the same algorithm and the same return value.
"""


class LimitExceeded(RuntimeError):
    """Coset enumeration did not close within the allowed number of cosets.

    This is inconclusive: the index may be infinite, or merely large.
    """


def enumerate_cosets(ncols, relators, subgroup, max_cosets, row_filling=False):
    """Return ``(index, table)`` where ``table`` is a flat standardized table.

    By default each coset first has every relator scanned from it and then
    its row is completed (relator-first).  With ``row_filling`` the row is
    completed before the relators are scanned.

    ``table[c * ncols + x]`` is the coset reached from coset ``c`` by column
    ``x``; coset 0 is the subgroup itself.
    """
    table = [-1] * ncols
    parent = [0]
    nxt = 1
    queue = []

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(a, b):
        a = rep(a)
        b = rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a, b):
        merge(a, b)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            base = e * ncols
            for x in range(ncols):
                f = table[base + x]
                if f < 0:
                    continue
                xi = x ^ 1
                table[f * ncols + xi] = -1
                e1 = rep(e)
                f1 = rep(f)
                t = table[e1 * ncols + x]
                if t >= 0:
                    merge(f1, t)
                    continue
                t = table[f1 * ncols + xi]
                if t >= 0:
                    merge(e1, t)
                    continue
                table[e1 * ncols + x] = f1
                table[f1 * ncols + xi] = e1
        queue.clear()

    def define(c, x):
        nonlocal nxt
        if nxt >= max_cosets:
            raise LimitExceeded(f"more than {max_cosets} cosets required")
        d = nxt
        nxt += 1
        parent.append(d)
        table.extend([-1] * ncols)
        table[c * ncols + x] = d
        table[d * ncols + (x ^ 1)] = c
        return d

    def scan_and_fill(c, w):
        n = len(w)
        f = c
        b = c
        i = 0
        j = n - 1
        while True:
            while i <= j:
                t = table[f * ncols + w[i]]
                if t < 0:
                    break
                f = t
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i:
                t = table[b * ncols + (w[j] ^ 1)]
                if t < 0:
                    break
                b = t
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f * ncols + w[i]] = b
                table[b * ncols + (w[i] ^ 1)] = f
                return
            define(f, w[i])

    for w in subgroup:
        if w:
            scan_and_fill(0, w)
    c = 0
    while c < nxt:
        if parent[c] == c and row_filling:
            for x in range(ncols):
                if table[c * ncols + x] < 0:
                    define(c, x)
        if parent[c] == c:
            for w in relators:
                scan_and_fill(c, w)
                if parent[c] != c:
                    break
            if parent[c] == c:
                base = c * ncols
                for x in range(ncols):
                    if table[base + x] < 0:
                        define(c, x)
        c += 1
    return _standardize(table, parent, ncols)


def _standardize(table, parent, ncols):
    live = [c for c in range(len(parent)) if parent[c] == c]
    order = {0: 0}
    seq = [0]
    k = 0
    while k < len(seq):
        c = seq[k]
        k += 1
        for x in range(ncols):
            d = table[c * ncols + x]
            if d not in order:
                order[d] = len(seq)
                seq.append(d)
    assert len(seq) == len(live)
    out = [0] * (len(seq) * ncols)
    for c in seq:
        base = order[c] * ncols
        for x in range(ncols):
            out[base + x] = order[table[c * ncols + x]]
    return len(seq), out
