"""Pure-Python hot kernels.

Every function here has a twin of the same name and signature in the
compiled ``_ckernels`` extension.  Graphs are passed as adjacency bitmasks
of a *simple* graph: ``adj[v]`` has bit ``w`` set iff ``v`` and ``w`` are
adjacent.  At most 64 vertices.
"""

from __future__ import annotations

from typing import Optional, Sequence

IMPLEMENTATION = "python"


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def has_perfect_matching(adj: Sequence[int], mask: int) -> bool:
    """True iff the subgraph induced by ``mask`` has a perfect matching."""
    if mask.bit_count() & 1:
        return False
    return _hpm(adj, mask)


def _hpm(adj: Sequence[int], mask: int) -> bool:
    if not mask:
        return True
    best = -1
    best_deg = 65
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        d = (adj[v] & mask).bit_count()
        if d == 0:
            return False
        if d < best_deg:
            best, best_deg = v, d
            if d == 1:
                break
    rest = mask & ~(1 << best)
    nb = adj[best] & rest
    while nb:
        low = nb & -nb
        nb ^= low
        if _hpm(adj, rest & ~low):
            return True
    return False


def perfect_matchings(adj: Sequence[int], mask: int) -> list:
    """All perfect matchings of the induced subgraph, as tuples of ``(u, v)`` pairs."""
    out: list = []
    if mask.bit_count() & 1:
        return out
    stack: list = []

    def rec(m: int) -> None:
        if not m:
            out.append(tuple(stack))
            return
        v = _low(m)
        rest = m & ~(1 << v)
        nb = adj[v] & rest
        while nb:
            low = nb & -nb
            nb ^= low
            stack.append((v, low.bit_length() - 1))
            rec(rest & ~low)
            stack.pop()

    rec(mask)
    return out


def simple_cycles(adj: Sequence[int], cap: int) -> Optional[list]:
    """Every simple cycle (length >= 3) once, or None when more than ``cap`` exist.

    Each cycle starts at its smallest vertex and runs in the direction whose
    second vertex is smaller than its last.
    """
    n = len(adj)
    full = (1 << n) - 1
    out: list = []
    for s in range(n):
        allowed = full & ~((1 << (s + 1)) - 1)
        path = [s]
        cand = [adj[s] & allowed]
        visited = 1 << s
        while cand:
            c = cand[-1]
            if not c:
                cand.pop()
                v = path.pop()
                visited &= ~(1 << v)
                continue
            low = c & -c
            cand[-1] = c ^ low
            w = low.bit_length() - 1
            path.append(w)
            visited |= low
            if len(path) >= 3 and (adj[w] >> s) & 1 and path[1] < w:
                out.append(tuple(path))
                if len(out) > cap:
                    return None
            cand.append(adj[w] & allowed & ~visited)
    return out


def _dense(keys: list) -> list:
    ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [ranks[k] for k in keys]


def _refine(adj: Sequence[int], colors: list) -> list:
    # colors must be dense (0..k-1); signature is (own color, neighbour color counts)
    n = len(adj)
    ncol = max(colors) + 1
    while True:
        sigs = []
        for v in range(n):
            cnt = [0] * ncol
            a = adj[v]
            while a:
                low = a & -a
                a ^= low
                cnt[colors[low.bit_length() - 1]] += 1
            sigs.append((colors[v], *cnt))
        colors = _dense(sigs)
        k = max(colors) + 1
        if k == ncol:
            return colors
        ncol = k


def _leaf_code(adj: Sequence[int], colors: list) -> int:
    n = len(adj)
    code = 0
    for v in range(n):
        a = adj[v] >> (v + 1)
        w = v + 1
        while a:
            if a & 1:
                i, j = colors[v], colors[w]
                if i > j:
                    i, j = j, i
                code |= 1 << (j * (j - 1) // 2 + i)
            a >>= 1
            w += 1
    return code


def canonical_form(adj: Sequence[int]) -> tuple:
    """Canonical code and labeling (``lab[v]`` = canonical position of ``v``).

    Two simple graphs on the same number of vertices are isomorphic iff their
    codes are equal.  Individualization-refinement; twin vertices in the
    branching cell are explored once.
    """
    n = len(adj)
    if n == 0:
        return 0, ()
    start = _refine(adj, _dense([a.bit_count() for a in adj]))
    best = [-1, None]

    def search(colors: list) -> None:
        counts: dict = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = -1
        for c in sorted(counts):
            if counts[c] > 1:
                target = c
                break
        if target < 0:
            code = _leaf_code(adj, colors)
            if code > best[0]:
                best[0] = code
                best[1] = tuple(colors)
            return
        cell = [v for v in range(n) if colors[v] == target]
        tried: list = []
        for v in cell:
            skip = False
            for r in tried:
                if adj[r] & ~(1 << v) == adj[v] & ~(1 << r):
                    skip = True
                    break
            if skip:
                continue
            tried.append(v)
            keyed = [(colors[u], 0 if u == v else 1) for u in range(n)]
            search(_refine(adj, _dense(keyed)))

    search(start)
    return best[0], best[1]


def find_perfect_matching(adj: Sequence[int], mask: int) -> Optional[list]:
    """One perfect matching of the induced subgraph as ``(u, v)`` pairs, or None."""
    if mask.bit_count() & 1:
        return None
    out: list = []
    return out if _fpm(adj, mask, out) else None


def _fpm(adj: Sequence[int], mask: int, out: list) -> bool:
    if not mask:
        return True
    best = -1
    best_deg = 65
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        d = (adj[v] & mask).bit_count()
        if d == 0:
            return False
        if d < best_deg:
            best, best_deg = v, d
            if d == 1:
                break
    rest = mask & ~(1 << best)
    nb = adj[best] & rest
    while nb:
        low = nb & -nb
        nb ^= low
        out.append((best, low.bit_length() - 1))
        if _fpm(adj, rest & ~low, out):
            return True
        out.pop()
    return False


def matching_covered(adj: Sequence[int], mask: int) -> bool:
    """Connected, at least two vertices, and every edge inside ``mask`` in a perfect matching."""
    k = mask.bit_count()
    if k < 2 or k & 1:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        nb = 0
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb |= adj[low.bit_length() - 1]
        frontier = nb & mask & ~seen
        seen |= frontier
    if seen != mask:
        return False
    covered = {}
    m = mask
    while m:
        low = m & -m
        m ^= low
        u = low.bit_length() - 1
        todo = adj[u] & mask & ~((low << 1) - 1) & ~covered.get(u, 0)
        while todo:
            lw = todo & -todo
            todo ^= lw
            v = lw.bit_length() - 1
            if (covered.get(u, 0) >> v) & 1:
                continue
            pm: list = []
            if not _fpm(adj, mask & ~low & ~lw, pm):
                return False
            pm.append((u, v))
            for a, b in pm:
                covered[a] = covered.get(a, 0) | (1 << b)
                covered[b] = covered.get(b, 0) | (1 << a)
    return True
