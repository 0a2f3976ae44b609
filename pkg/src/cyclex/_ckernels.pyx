# cython: language_level=3
"""Compiled hot kernels; same contract as ``_pykernels``."""

from libc.stdint cimport uint64_t
from libc.string cimport memcpy, memset

IMPLEMENTATION = "cython"

cdef enum:
    MAXN = 64

cdef extern from *:
    int popcount "__builtin_popcountll"(unsigned long long) nogil
    int ctz "__builtin_ctzll"(unsigned long long) nogil


cdef inline uint64_t bit(int v) nogil:
    return (<uint64_t>1) << v


cdef int load(adj, uint64_t* out) except -1:
    cdef int n = len(adj)
    cdef int i
    if n > MAXN:
        raise ValueError("at most 64 vertices")
    for i in range(n):
        out[i] = <uint64_t>adj[i]
    return n


cdef bint hpm(const uint64_t* adj, uint64_t mask) nogil:
    cdef uint64_t m, nb, rest, low
    cdef int v, d, best = -1, best_deg = 65
    if mask == 0:
        return True
    m = mask
    while m:
        v = ctz(m)
        m &= m - 1
        d = popcount(adj[v] & mask)
        if d == 0:
            return False
        if d < best_deg:
            best = v
            best_deg = d
            if d == 1:
                break
    rest = mask & ~bit(best)
    nb = adj[best] & rest
    while nb:
        low = nb & (~nb + 1)
        nb ^= low
        if hpm(adj, rest & ~low):
            return True
    return False


def has_perfect_matching(adj, mask):
    cdef uint64_t a[MAXN]
    load(adj, a)
    cdef uint64_t m = <uint64_t>mask
    if popcount(m) & 1:
        return False
    return hpm(a, m)


cdef void pm_rec(const uint64_t* adj, uint64_t m, int* stack, int depth, list out):
    cdef int v, w, i
    cdef uint64_t rest, nb
    if m == 0:
        out.append(tuple([(stack[2 * i], stack[2 * i + 1]) for i in range(depth)]))
        return
    v = ctz(m)
    rest = m & ~bit(v)
    nb = adj[v] & rest
    while nb:
        w = ctz(nb)
        nb &= nb - 1
        stack[2 * depth] = v
        stack[2 * depth + 1] = w
        pm_rec(adj, rest & ~bit(w), stack, depth + 1, out)


def perfect_matchings(adj, mask):
    cdef uint64_t a[MAXN]
    cdef int stack[MAXN]
    load(adj, a)
    cdef uint64_t m = <uint64_t>mask
    out = []
    if popcount(m) & 1:
        return out
    pm_rec(a, m, stack, 0, out)
    return out


def simple_cycles(adj, cap):
    cdef uint64_t a[MAXN]
    cdef uint64_t cand[MAXN]
    cdef int path[MAXN]
    cdef int n = load(adj, a)
    cdef long long limit = cap
    cdef int s, depth, w, i
    cdef uint64_t allowed, visited, c, full
    out = []
    if n == 0:
        return out
    full = (~(<uint64_t>0)) if n == 64 else (bit(n) - 1)
    for s in range(n):
        allowed = full & ~((bit(s) - 1) | bit(s)) if s < 63 else 0
        path[0] = s
        cand[0] = a[s] & allowed
        depth = 1
        visited = bit(s)
        while depth > 0:
            c = cand[depth - 1]
            if c == 0:
                depth -= 1
                visited &= ~bit(path[depth])
                continue
            w = ctz(c)
            cand[depth - 1] = c & (c - 1)
            path[depth] = w
            depth += 1
            visited |= bit(w)
            if depth >= 3 and (a[w] >> s) & 1 and path[1] < w:
                out.append(tuple([path[i] for i in range(depth)]))
                if len(out) > limit:
                    return None
            cand[depth - 1] = a[w] & allowed & ~visited
    return out


cdef int cmp_sig(const int* sa, const int* sb, int width) nogil:
    cdef int i
    for i in range(width):
        if sa[i] != sb[i]:
            return -1 if sa[i] < sb[i] else 1
    return 0


cdef int densify(int* keys, int n, int width, int* colors) nogil:
    # keys is n rows of ``width`` ints; writes dense lexicographic ranks
    cdef int order[MAXN]
    cdef int i, j, t, k
    for i in range(n):
        order[i] = i
    for i in range(1, n):
        t = order[i]
        j = i - 1
        while j >= 0 and cmp_sig(keys + order[j] * width, keys + t * width, width) > 0:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = t
    k = 0
    colors[order[0]] = 0
    for i in range(1, n):
        if cmp_sig(keys + order[i - 1] * width, keys + order[i] * width, width) != 0:
            k += 1
        colors[order[i]] = k
    return k + 1


cdef int refine(const uint64_t* adj, int n, int* colors, int* sig) nogil:
    cdef int ncol = 0, k, v, i, w, width
    cdef uint64_t x
    for v in range(n):
        if colors[v] + 1 > ncol:
            ncol = colors[v] + 1
    while True:
        width = ncol + 1
        memset(sig, 0, n * width * sizeof(int))
        for v in range(n):
            sig[v * width] = colors[v]
            x = adj[v]
            while x:
                w = ctz(x)
                x &= x - 1
                sig[v * width + 1 + colors[w]] += 1
        k = densify(sig, n, width, colors)
        if k == ncol:
            return k
        ncol = k


cdef int code_cmp(const uint64_t* a, const uint64_t* b, int n) nogil:
    # matches integer order of the bit code used by the Python twin
    cdef int j
    cdef uint64_t x, y
    for j in range(n - 1, 0, -1):
        x = a[j] & (bit(j) - 1)
        y = b[j] & (bit(j) - 1)
        if x != y:
            return -1 if x < y else 1
    return 0


cdef struct Canon:
    int n
    int have
    uint64_t best[MAXN]
    int best_lab[MAXN]
    uint64_t tmp[MAXN]


cdef void canon_search(const uint64_t* adj, Canon* st, int* colors, int* sig) nogil:
    cdef int n = st.n
    cdef int counts[MAXN]
    cdef int target = -1, c, v, u, r, ntried = 0
    cdef int tried[MAXN]
    cdef int child[MAXN]
    cdef int keys[2 * MAXN]
    cdef bint skip
    cdef uint64_t x
    memset(counts, 0, n * sizeof(int))
    for v in range(n):
        counts[colors[v]] += 1
    for c in range(n):
        if counts[c] > 1:
            target = c
            break
    if target < 0:
        memset(st.tmp, 0, n * sizeof(uint64_t))
        for v in range(n):
            x = adj[v]
            while x:
                u = ctz(x)
                x &= x - 1
                st.tmp[colors[v]] |= bit(colors[u])
        if not st.have or code_cmp(st.tmp, st.best, n) > 0:
            memcpy(st.best, st.tmp, n * sizeof(uint64_t))
            memcpy(st.best_lab, colors, n * sizeof(int))
            st.have = 1
        return
    for v in range(n):
        if colors[v] != target:
            continue
        skip = False
        for r in range(ntried):
            u = tried[r]
            if (adj[u] & ~bit(v)) == (adj[v] & ~bit(u)):
                skip = True
                break
        if skip:
            continue
        tried[ntried] = v
        ntried += 1
        for u in range(n):
            keys[2 * u] = colors[u]
            keys[2 * u + 1] = 0 if u == v else 1
        densify(keys, n, 2, child)
        refine(adj, n, child, sig)
        canon_search(adj, st, child, sig)


def canonical_form(adj):
    cdef uint64_t a[MAXN]
    cdef int n = load(adj, a)
    cdef int colors[MAXN]
    cdef int keys[MAXN]
    cdef int sig[MAXN * (MAXN + 1)]
    cdef Canon st
    cdef int v, j
    if n == 0:
        return 0, ()
    st.n = n
    st.have = 0
    for v in range(n):
        keys[v] = popcount(a[v])
    densify(keys, n, 1, colors)
    refine(a, n, colors, sig)
    canon_search(a, &st, colors, sig)
    code = 0
    for j in range(1, n):
        code |= int(st.best[j] & (bit(j) - 1)) << (j * (j - 1) // 2)
    return code, tuple([st.best_lab[v] for v in range(n)])


cdef bint fpm(const uint64_t* adj, uint64_t mask, int* out, int depth) nogil:
    # like hpm but records the matching in out[2*i], out[2*i+1]
    cdef uint64_t m, nb, rest, low
    cdef int v, w, d, best = -1, best_deg = 65
    if mask == 0:
        return True
    m = mask
    while m:
        v = ctz(m)
        m &= m - 1
        d = popcount(adj[v] & mask)
        if d == 0:
            return False
        if d < best_deg:
            best = v
            best_deg = d
            if d == 1:
                break
    rest = mask & ~bit(best)
    nb = adj[best] & rest
    while nb:
        w = ctz(nb)
        nb &= nb - 1
        out[2 * depth] = best
        out[2 * depth + 1] = w
        if fpm(adj, rest & ~bit(w), out, depth + 1):
            return True
    return False


def find_perfect_matching(adj, mask):
    cdef uint64_t a[MAXN]
    cdef int out[MAXN]
    cdef int i, k
    load(adj, a)
    cdef uint64_t m = <uint64_t>mask
    if popcount(m) & 1:
        return None
    if not fpm(a, m, out, 0):
        return None
    k = popcount(m) // 2
    return [(out[2 * i], out[2 * i + 1]) for i in range(k)]


cdef bint mc_core(const uint64_t* adj, uint64_t mask) nogil:
    cdef int k = popcount(mask)
    cdef uint64_t seen, frontier, nb, todo, below
    cdef uint64_t covered[MAXN]
    cdef int out[MAXN]
    cdef int u, v, i, a, b, half
    if k < 2 or k & 1:
        return False
    seen = mask & (~mask + 1)
    frontier = seen
    while frontier:
        nb = 0
        while frontier:
            u = ctz(frontier)
            frontier &= frontier - 1
            nb |= adj[u]
        frontier = nb & mask & ~seen
        seen |= frontier
    if seen != mask:
        return False
    memset(covered, 0, MAXN * sizeof(uint64_t))
    half = k // 2
    seen = mask
    while seen:
        u = ctz(seen)
        seen &= seen - 1
        below = bit(u) | (bit(u) - 1)
        todo = adj[u] & mask & ~below
        while todo:
            v = ctz(todo)
            todo &= todo - 1
            if (covered[u] >> v) & 1:
                continue
            if not fpm(adj, mask & ~bit(u) & ~bit(v), out, 0):
                return False
            covered[u] |= bit(v)
            covered[v] |= bit(u)
            for i in range(half - 1):
                a = out[2 * i]
                b = out[2 * i + 1]
                covered[a] |= bit(b)
                covered[b] |= bit(a)
    return True


def matching_covered(adj, mask):
    cdef uint64_t a[MAXN]
    load(adj, a)
    return mc_core(a, <uint64_t>mask)
