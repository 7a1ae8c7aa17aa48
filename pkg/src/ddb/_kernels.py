"""HLT coset enumeration over flat integer arrays.

Column ``2g`` of the table is generator ``g`` and column ``2g+1`` its
inverse, so ``x ^ 1`` flips a column to its inverse.  Undefined entries
are ``-1``.  Coincidences use a union-find forest in ``parent`` (the
smaller coset always survives, so coset 0 stays the subgroup coset).
"""

import numpy as np

from ._accel import jit

STATUS_OK = 0
STATUS_LIMIT = 1


@jit
def _rep(parent, k):
    r = k
    while parent[r] != r:
        r = parent[r]
    while parent[k] != r:
        nxt = parent[k]
        parent[k] = r
        k = nxt
    return r


@jit
def _merge(parent, queue, qlen, k, l):
    k1 = _rep(parent, k)
    l1 = _rep(parent, l)
    if k1 == l1:
        return qlen
    if k1 < l1:
        parent[l1] = k1
        queue[qlen] = l1
    else:
        parent[k1] = l1
        queue[qlen] = k1
    return qlen + 1


@jit
def _coincidence(table, parent, queue, a, b):
    ncols = table.shape[1]
    qlen = _merge(parent, queue, 0, a, b)
    i = 0
    while i < qlen:
        e = queue[i]
        i += 1
        for x in range(ncols):
            f = table[e, x]
            if f >= 0:
                xi = x ^ 1
                table[f, xi] = -1
                e1 = _rep(parent, e)
                f1 = _rep(parent, f)
                if table[e1, x] >= 0:
                    qlen = _merge(parent, queue, qlen, f1, table[e1, x])
                elif table[f1, xi] >= 0:
                    qlen = _merge(parent, queue, qlen, e1, table[f1, xi])
                else:
                    table[e1, x] = f1
                    table[f1, xi] = e1


@jit
def _scan_and_fill(table, parent, queue, c, word, start, end, n, limit):
    """Trace ``word[start:end]`` from coset ``c`` both ways, defining cosets as needed.

    Returns ``(n, status)``; the caller guarantees room for ``end - start``
    new rows.
    """
    f = c
    b = c
    i = start
    j = end - 1
    while True:
        while i <= j and table[f, word[i]] >= 0:
            f = table[f, word[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, parent, queue, f, b)
            return n, STATUS_OK
        while j >= i and table[b, word[j] ^ 1] >= 0:
            b = table[b, word[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, parent, queue, f, b)
            return n, STATUS_OK
        if i == j:
            table[f, word[i]] = b
            table[b, word[i] ^ 1] = f
            return n, STATUS_OK
        if n >= limit:
            return n, STATUS_LIMIT
        table[f, word[i]] = n
        table[n, word[i] ^ 1] = f
        n += 1


@jit
def _grow(table, parent, newcap):
    old = table.shape[0]
    t2 = np.full((newcap, table.shape[1]), -1, np.int64)
    t2[:old] = table
    p2 = np.arange(newcap)
    p2[:old] = parent[:old]
    q2 = np.empty(newcap, np.int64)
    return t2, p2, q2


@jit
def hlt_enumerate(ncols, rels, rel_off, subs, sub_off, limit, init_cap):
    """Run HLT enumeration.

    Returns ``(table, parent, n_defined, status)``.  Live cosets are the
    indices ``c < n_defined`` with ``parent[c] == c``.
    """
    cap = max(init_cap, 2)
    table = np.full((cap, ncols), -1, np.int64)
    parent = np.arange(cap)
    queue = np.empty(cap, np.int64)
    maxlen = 1
    for r in range(rel_off.shape[0] - 1):
        maxlen = max(maxlen, rel_off[r + 1] - rel_off[r])
    for s in range(sub_off.shape[0] - 1):
        maxlen = max(maxlen, sub_off[s + 1] - sub_off[s])
    n = 1

    for s in range(sub_off.shape[0] - 1):
        if n + maxlen + 1 > cap:
            cap = max(2 * cap, n + maxlen + 1)
            table, parent, queue = _grow(table, parent, cap)
        n, st = _scan_and_fill(table, parent, queue, 0, subs, sub_off[s], sub_off[s + 1], n, limit)
        if st != STATUS_OK:
            return table, parent, n, st

    c = 0
    nrel = rel_off.shape[0] - 1
    while c < n:
        if parent[c] == c:
            for r in range(nrel):
                if n + maxlen + 1 > cap:
                    cap = max(2 * cap, n + maxlen + 1)
                    table, parent, queue = _grow(table, parent, cap)
                n, st = _scan_and_fill(
                    table, parent, queue, c, rels, rel_off[r], rel_off[r + 1], n, limit
                )
                if st != STATUS_OK:
                    return table, parent, n, st
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in range(ncols):
                    if table[c, x] < 0:
                        if n >= limit:
                            return table, parent, n, STATUS_LIMIT
                        if n + 1 > cap:
                            cap = 2 * cap
                            table, parent, queue = _grow(table, parent, cap)
                        table[c, x] = n
                        table[n, x ^ 1] = c
                        n += 1
        c += 1
    return table, parent, n, STATUS_OK


@jit
def compact_table(table, parent, n):
    """Renumber live cosets ``0..k-1`` in order of creation and rewrite entries."""
    newidx = np.full(n, -1, np.int64)
    k = 0
    for c in range(n):
        if parent[c] == c:
            newidx[c] = k
            k += 1
    out = np.full((k, table.shape[1]), -1, np.int64)
    for c in range(n):
        if parent[c] == c:
            for x in range(table.shape[1]):
                t = table[c, x]
                if t >= 0:
                    out[newidx[c], x] = newidx[_rep(parent, t)]
    return out


@jit
def trace_word(table, start, cols):
    c = start
    for i in range(cols.shape[0]):
        c = table[c, cols[i]]
        if c < 0:
            return -1
    return c
