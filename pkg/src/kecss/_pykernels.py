"""Pure-Python kernels. ``_ckernels.pyx`` implements the same two functions."""
from collections import deque


def max_flow(n, tails, heads, caps, source_mask, sink_mask):
    """Edmonds-Karp on an undirected integer-capacity network.

    All nodes flagged in ``source_mask`` act as one source and all nodes in
    ``sink_mask`` as one sink. Returns ``(value, reach)`` where ``reach[v]``
    is 1 iff v is reachable from the sources in the final residual network.
    """
    m = len(tails)
    adj = [[] for _ in range(n)]
    head = [0] * (2 * m)
    res = [0] * (2 * m)
    for i in range(m):
        u, v, c = tails[i], heads[i], caps[i]
        head[2 * i], head[2 * i + 1] = v, u
        res[2 * i] = res[2 * i + 1] = c
        adj[u].append(2 * i)
        adj[v].append(2 * i + 1)
    sources = [v for v in range(n) if source_mask[v]]
    value = 0
    while True:
        pred = [-1] * n
        seen = [False] * n
        for s in sources:
            seen[s] = True
        queue = deque(sources)
        hit = -1
        while queue and hit < 0:
            u = queue.popleft()
            for a in adj[u]:
                if res[a] > 0:
                    w = head[a]
                    if not seen[w]:
                        seen[w] = True
                        pred[w] = a
                        if sink_mask[w]:
                            hit = w
                            break
                        queue.append(w)
        if hit < 0:
            return value, [1 if s else 0 for s in seen]
        bottleneck = None
        w = hit
        while pred[w] >= 0:
            a = pred[w]
            if bottleneck is None or res[a] < bottleneck:
                bottleneck = res[a]
            w = head[a ^ 1]
        w = hit
        while pred[w] >= 0:
            a = pred[w]
            res[a] -= bottleneck
            res[a ^ 1] += bottleneck
            w = head[a ^ 1]
        value += bottleneck


def pivot(rows, r, c, d):
    """Fraction-free (Bareiss) pivot on ``rows[r][c]``, in place.

    Every row, including any objective row, is a list of Python ints sharing
    the common denominator ``d``. Returns the new positive denominator.
    """
    pr = rows[r]
    p = pr[c]
    for i, row in enumerate(rows):
        if i == r:
            continue
        a = row[c]
        if a:
            rows[i] = [(x * p - a * y) // d for x, y in zip(row, pr)]
        elif p != d:
            rows[i] = [x * p // d for x in row]
    if p < 0:
        for i, row in enumerate(rows):
            rows[i] = [-x for x in row]
        return -p
    return p
