"""Hot loops: backtracking homomorphism search, brute-force switching
enumeration, and forced-neighbour propagation.

All inputs are dense numpy arrays (see :mod:`mixswitch.graph` for the
adjacency code convention).  Every function here is numba-compilable; see
:mod:`mixswitch._jit` for how the backend is chosen.
"""

import numpy as np

from ._jit import kernel


@kernel
def hom_search(cg, ch, dom0, order, fib, injective):
    """Find ``f`` with ``ch[f[u], f[v]] == cg[u, v]`` whenever ``cg[u, v] != 0``.

    ``dom0[u, x]`` restricts candidate images, ``order`` is the variable order
    and values are tried in increasing index.  With ``injective`` set, no two
    variables may take values in the same ``fib`` class.  Forward checking:
    after each assignment the domains of later neighbours are filtered and the
    branch is cut as soon as one empties.

    Returns ``(found, assignment)``; the assignment is ``-1`` filled if not found.
    """
    ng = cg.shape[0]
    nh = ch.shape[0]
    assign = np.full(ng, -1, np.int64)
    if ng == 0:
        return True, assign
    if nh == 0:
        return False, assign
    dom = dom0.copy()
    if injective:
        cap = ng * ng + 1
    else:
        cap = np.count_nonzero(cg) + 1
    save_w = np.empty(cap, np.int64)
    save_row = np.empty((cap, nh), np.bool_)
    mark = np.zeros(ng + 1, np.int64)
    nxt = np.zeros(ng, np.int64)
    d = 0
    top = 0
    while True:
        v = order[d]
        while top > mark[d]:
            top -= 1
            dom[save_w[top], :] = save_row[top]
        x = nxt[d]
        while x < nh and not dom[v, x]:
            x += 1
        if x >= nh:
            assign[v] = -1
            if d == 0:
                return False, assign
            d -= 1
            continue
        nxt[d] = x + 1
        assign[v] = x
        ok = True
        for k in range(d + 1, ng):
            w = order[k]
            c = cg[v, w]
            if c == 0 and not injective:
                continue
            save_w[top] = w
            save_row[top, :] = dom[w]
            top += 1
            if c != 0:
                dom[w, :] = dom[w, :] & (ch[x, :] == c)
            if injective:
                dom[w, :] = dom[w, :] & (fib != fib[x])
            if not dom[w, :].any():
                ok = False
                break
        if ok:
            if d == ng - 1:
                return True, assign
            d += 1
            mark[d] = top
            nxt[d] = 0


@kernel
def switched_codes(ng, eu, ev, ec, sigma, actions, tr):
    """Code matrix of the graph after switching vertex ``u`` by ``sigma[u]``.

    The listed elements ``(eu[k], ev[k], ec[k])`` have ``eu < ev`` (canonical
    order) and code ``ec`` read from ``eu``; ``eu`` is switched first.
    """
    cg = np.zeros((ng, ng), np.int32)
    for k in range(eu.shape[0]):
        u = eu[k]
        v = ev[k]
        c = actions[sigma[u], ec[k]]
        c = tr[actions[sigma[v], tr[c]]]
        cg[u, v] = c
        cg[v, u] = tr[c]
    return cg


@kernel
def enumerate_switch_hom(ng, eu, ev, ec, actions, tr, ch, dom0, order, fib):
    """Try every assignment of group elements to the ``ng`` vertices.

    Assignments are visited in lexicographic order (vertex 0 most
    significant).  Returns ``(found, sigma, mapping)`` for the first assignment
    whose switched graph maps homomorphically into ``ch``.
    """
    ne = actions.shape[0]
    sigma = np.zeros(ng, np.int64)
    while True:
        cg = switched_codes(ng, eu, ev, ec, sigma, actions, tr)
        found, f = hom_search(cg, ch, dom0, order, fib, False)
        if found:
            return True, sigma, f
        i = ng - 1
        while i >= 0 and sigma[i] == ne - 1:
            sigma[i] = 0
            i -= 1
        if i < 0:
            return False, sigma, f
        sigma[i] += 1


@kernel
def propagate(indptr, indices, codes, nbr):
    """Homomorphism into a target where each (vertex, code) has <= 1 neighbour.

    ``nbr[t, c]`` is that neighbour (or -1).  Each connected component of the
    source is rooted at its least vertex; each root image is tried in turn and
    the images of the remaining vertices are forced along edges.
    """
    n = indptr.shape[0] - 1
    nt = nbr.shape[0]
    assign = np.full(n, -1, np.int64)
    queue = np.empty(max(n, 1), np.int64)
    for r in range(n):
        if assign[r] != -1:
            continue
        found = False
        for t in range(nt):
            head = 0
            tail = 1
            queue[0] = r
            assign[r] = t
            ok = True
            while head < tail and ok:
                u = queue[head]
                head += 1
                for e in range(indptr[u], indptr[u + 1]):
                    w = indices[e]
                    y = nbr[assign[u], codes[e]]
                    if y < 0:
                        ok = False
                        break
                    if assign[w] == -1:
                        assign[w] = y
                        queue[tail] = w
                        tail += 1
                    elif assign[w] != y:
                        ok = False
                        break
            if ok:
                found = True
                break
            for i in range(tail):
                assign[queue[i]] = -1
        if not found:
            return False, assign
    return True, assign
