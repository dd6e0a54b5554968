# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

max_flow runs on C long long capacities; callers must keep the total
capacity below 2**62. pivot works on Python ints (no overflow).
"""
from libc.stdlib cimport malloc, free


def max_flow(int n, tails, heads, caps, source_mask, sink_mask):
    cdef int m = len(tails)
    cdef int i, u, v, w, a, qh, qt, hit
    cdef long long c, bottleneck, value = 0
    cdef int *head = <int *> malloc(2 * m * sizeof(int) + 1)
    cdef long long *res = <long long *> malloc(2 * m * sizeof(long long) + 1)
    cdef int *start = <int *> malloc((n + 1) * sizeof(int))
    cdef int *arcs = <int *> malloc(2 * m * sizeof(int) + 1)
    cdef int *fill = <int *> malloc((n + 1) * sizeof(int))
    cdef int *pred = <int *> malloc(n * sizeof(int))
    cdef char *seen = <char *> malloc(n * sizeof(char))
    cdef char *is_src = <char *> malloc(n * sizeof(char))
    cdef char *is_snk = <char *> malloc(n * sizeof(char))
    cdef int *queue = <int *> malloc(n * sizeof(int))
    try:
        for v in range(n + 1):
            start[v] = 0
        for v in range(n):
            is_src[v] = 1 if source_mask[v] else 0
            is_snk[v] = 1 if sink_mask[v] else 0
        for i in range(m):
            u = tails[i]
            v = heads[i]
            c = caps[i]
            head[2 * i] = v
            head[2 * i + 1] = u
            res[2 * i] = c
            res[2 * i + 1] = c
            start[u + 1] += 1
            start[v + 1] += 1
        for v in range(n):
            start[v + 1] += start[v]
            fill[v] = start[v]
        for i in range(m):
            u = head[2 * i + 1]
            v = head[2 * i]
            arcs[fill[u]] = 2 * i
            fill[u] += 1
            arcs[fill[v]] = 2 * i + 1
            fill[v] += 1
        while True:
            qh = 0
            qt = 0
            for v in range(n):
                pred[v] = -1
                seen[v] = is_src[v]
                if is_src[v]:
                    queue[qt] = v
                    qt += 1
            hit = -1
            while qh < qt and hit < 0:
                u = queue[qh]
                qh += 1
                for i in range(start[u], start[u + 1]):
                    a = arcs[i]
                    if res[a] > 0:
                        w = head[a]
                        if not seen[w]:
                            seen[w] = 1
                            pred[w] = a
                            if is_snk[w]:
                                hit = w
                                break
                            queue[qt] = w
                            qt += 1
            if hit < 0:
                return value, [1 if seen[v] else 0 for v in range(n)]
            bottleneck = -1
            w = hit
            while pred[w] >= 0:
                a = pred[w]
                if bottleneck < 0 or res[a] < bottleneck:
                    bottleneck = res[a]
                w = head[a ^ 1]
            w = hit
            while pred[w] >= 0:
                a = pred[w]
                res[a] -= bottleneck
                res[a ^ 1] += bottleneck
                w = head[a ^ 1]
            value += bottleneck
    finally:
        free(head)
        free(res)
        free(start)
        free(arcs)
        free(fill)
        free(pred)
        free(seen)
        free(is_src)
        free(is_snk)
        free(queue)


def pivot(list rows, Py_ssize_t r, Py_ssize_t c, object d):
    cdef list pr = rows[r]
    cdef object p = pr[c]
    cdef Py_ssize_t i, j, width = len(pr)
    cdef list row, new
    cdef object a
    for i in range(len(rows)):
        if i == r:
            continue
        row = rows[i]
        a = row[c]
        if a:
            new = [None] * width
            for j in range(width):
                new[j] = (row[j] * p - a * pr[j]) // d
            rows[i] = new
        elif p != d:
            new = [None] * width
            for j in range(width):
                new[j] = row[j] * p // d
            rows[i] = new
    if p < 0:
        for i in range(len(rows)):
            row = rows[i]
            rows[i] = [-x for x in row]
        return -p
    return p
