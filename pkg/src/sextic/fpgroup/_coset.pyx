# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coset enumeration kernel; same contract as ``_coset_py``."""

from libc.stdlib cimport malloc, realloc, free

from ._coset_py import LimitExceeded, _standardize


cdef struct State:
    int *table
    int *parent
    int *queue
    long cap
    long nxt
    long qlen
    int ncols
    long max_cosets


cdef inline int rep(State *s, int c) nogil:
    cdef int r = c
    cdef int t
    while s.parent[r] != r:
        r = s.parent[r]
    while s.parent[c] != r:
        t = s.parent[c]
        s.parent[c] = r
        c = t
    return r


cdef inline void merge(State *s, int a, int b) nogil:
    cdef int t
    a = rep(s, a)
    b = rep(s, b)
    if a == b:
        return
    if a > b:
        t = a
        a = b
        b = t
    s.parent[b] = a
    s.queue[s.qlen] = b
    s.qlen += 1


cdef void coincidence(State *s, int a, int b) nogil:
    cdef long i = 0
    cdef int e, f, e1, f1, x, xi, t
    cdef int n = s.ncols
    merge(s, a, b)
    while i < s.qlen:
        e = s.queue[i]
        i += 1
        for x in range(n):
            f = s.table[<long>e * n + x]
            if f < 0:
                continue
            xi = x ^ 1
            s.table[<long>f * n + xi] = -1
            e1 = rep(s, e)
            f1 = rep(s, f)
            t = s.table[<long>e1 * n + x]
            if t >= 0:
                merge(s, f1, t)
                continue
            t = s.table[<long>f1 * n + xi]
            if t >= 0:
                merge(s, e1, t)
                continue
            s.table[<long>e1 * n + x] = f1
            s.table[<long>f1 * n + xi] = e1
    s.qlen = 0


cdef int grow(State *s) nogil:
    cdef long newcap = s.cap * 2
    cdef long i
    cdef int *t
    cdef int *p
    cdef int *q
    if newcap > s.max_cosets:
        newcap = s.max_cosets
    t = <int *> realloc(s.table, newcap * s.ncols * sizeof(int))
    if t == NULL:
        return -1
    s.table = t
    p = <int *> realloc(s.parent, newcap * sizeof(int))
    if p == NULL:
        return -1
    s.parent = p
    q = <int *> realloc(s.queue, newcap * sizeof(int))
    if q == NULL:
        return -1
    s.queue = q
    for i in range(s.cap * s.ncols, newcap * s.ncols):
        s.table[i] = -1
    s.cap = newcap
    return 0


cdef int define(State *s, int c, int x) nogil:
    """Return 0 on success, 1 when the coset limit is hit, -1 on OOM."""
    cdef int d
    if s.nxt >= s.max_cosets:
        return 1
    if s.nxt >= s.cap:
        if grow(s) != 0:
            return -1
    d = <int> s.nxt
    s.nxt += 1
    s.parent[d] = d
    s.table[<long>c * s.ncols + x] = d
    s.table[<long>d * s.ncols + (x ^ 1)] = c
    return 0


cdef int scan_and_fill(State *s, int c, int *w, int n) nogil:
    cdef int f = c
    cdef int b = c
    cdef int i = 0
    cdef int j = n - 1
    cdef int t, r
    cdef int nc = s.ncols
    while True:
        while i <= j:
            t = s.table[<long>f * nc + w[i]]
            if t < 0:
                break
            f = t
            i += 1
        if i > j:
            if f != b:
                coincidence(s, f, b)
            return 0
        while j >= i:
            t = s.table[<long>b * nc + (w[j] ^ 1)]
            if t < 0:
                break
            b = t
            j -= 1
        if j < i:
            coincidence(s, f, b)
            return 0
        if i == j:
            s.table[<long>f * nc + w[i]] = b
            s.table[<long>b * nc + (w[i] ^ 1)] = f
            return 0
        r = define(s, f, w[i])
        if r != 0:
            return r


def enumerate_cosets(int ncols, relators, subgroup, long max_cosets, bint row_filling=False):
    cdef State s
    cdef long total = 0
    cdef long k, c, i
    cdef int x, r = 0
    cdef int nrel = len(relators)
    cdef int *words
    cdef int *offsets
    flat = []
    offs = [0]
    for w in relators:
        flat.extend(w)
        offs.append(len(flat))
    words = <int *> malloc((len(flat) + 1) * sizeof(int))
    offsets = <int *> malloc((nrel + 1) * sizeof(int))
    for k in range(len(flat)):
        words[k] = flat[k]
    for k in range(nrel + 1):
        offsets[k] = offs[k]
    s.ncols = ncols
    s.max_cosets = max_cosets if max_cosets > 1 else 1
    s.cap = 1024 if s.max_cosets > 1024 else s.max_cosets
    s.table = <int *> malloc(s.cap * ncols * sizeof(int))
    s.parent = <int *> malloc(s.cap * sizeof(int))
    s.queue = <int *> malloc(s.cap * sizeof(int))
    for k in range(s.cap * ncols):
        s.table[k] = -1
    s.parent[0] = 0
    s.nxt = 1
    s.qlen = 0
    cdef int *sw
    try:
        for w in subgroup:
            if not w:
                continue
            sw = <int *> malloc(len(w) * sizeof(int))
            for k in range(len(w)):
                sw[k] = w[k]
            r = scan_and_fill(&s, 0, sw, len(w))
            free(sw)
            if r != 0:
                break
        c = 0
        with nogil:
            while r == 0 and c < s.nxt:
                if row_filling and s.parent[c] == c:
                    for x in range(ncols):
                        if s.table[c * ncols + x] < 0:
                            r = define(&s, <int> c, x)
                            if r != 0:
                                break
                if r == 0 and s.parent[c] == c:
                    for i in range(nrel):
                        r = scan_and_fill(&s, <int> c, words + offsets[i],
                                          offsets[i + 1] - offsets[i])
                        if r != 0 or s.parent[c] != c:
                            break
                    if r == 0 and s.parent[c] == c:
                        for x in range(ncols):
                            if s.table[c * ncols + x] < 0:
                                r = define(&s, <int> c, x)
                                if r != 0:
                                    break
                c += 1
        if r == 1:
            raise LimitExceeded(f"more than {max_cosets} cosets required")
        if r < 0:
            raise MemoryError("coset table allocation failed")
        table = [s.table[k] for k in range(s.nxt * ncols)]
        parent = [s.parent[k] for k in range(s.nxt)]
    finally:
        free(s.table)
        free(s.parent)
        free(s.queue)
        free(words)
        free(offsets)
    return _standardize(table, parent, ncols)
