# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pure.py``.

Both modules must return identical results for identical input; the test
suite cross-checks them.
"""
from libc.stdint cimport uint64_t
from libc.string cimport memcpy
from cpython.mem cimport PyMem_Malloc, PyMem_Free

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    MAXN = 64
    MAXGENS = 512
    QCAP = 160  # > 2 * MAXN + 1, see refine()


cdef inline int popc(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef inline uint64_t low_bits(int n) nogil:
    if n >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


cdef int load_rows(object adj, uint64_t* rows) except -1:
    cdef int n = len(adj)
    cdef int i
    if n > MAXN:
        raise ValueError("at most 64 vertices")
    for i in range(n):
        rows[i] = <uint64_t>adj[i]
    return n


# -- maximum clique --------------------------------------------------------

cdef struct CliqueCtx:
    uint64_t adj[MAXN]
    int best_size
    uint64_t best_mask


cdef int color_sort(CliqueCtx* c, uint64_t p, int* order, int* bounds) nogil:
    cdef uint64_t uncolored = p, q, low
    cdef int k = 0, cnt = 0, v
    while uncolored:
        k += 1
        q = uncolored
        while q:
            low = q & (~q + 1)
            v = ctz(q)
            uncolored ^= low
            q &= ~c.adj[v] & ~low
            order[cnt] = v
            bounds[cnt] = k
            cnt += 1
    return cnt


cdef void expand(CliqueCtx* c, uint64_t r, int size, uint64_t p) nogil:
    cdef int order[MAXN]
    cdef int bounds[MAXN]
    cdef int cnt = color_sort(c, p, order, bounds)
    cdef int idx, v
    cdef uint64_t bit, newp
    idx = cnt - 1
    while idx >= 0:
        if size + bounds[idx] <= c.best_size:
            return
        v = order[idx]
        bit = (<uint64_t>1) << v
        newp = p & c.adj[v]
        if newp:
            expand(c, r | bit, size + 1, newp)
        elif size + 1 > c.best_size:
            c.best_size = size + 1
            c.best_mask = r | bit
        p &= ~bit
        idx -= 1


def max_clique(adj, int lower=0):
    cdef CliqueCtx c
    cdef int n = load_rows(adj, c.adj)
    c.best_size = lower
    c.best_mask = 0
    if n:
        expand(&c, 0, 0, low_bits(n))
    return int(c.best_mask)


# -- canonical labelling ---------------------------------------------------

cdef struct CanonCtx:
    int n
    uint64_t adj[MAXN]
    bint have_first
    uint64_t first_cert[MAXN]
    int first_order[MAXN]
    int first_seq[MAXN]
    uint64_t best_cert[MAXN]
    int best_order[MAXN]
    int best_seq[MAXN]
    int ngens
    unsigned char gens[MAXGENS][MAXN]


cdef int refine(CanonCtx* c, uint64_t* cells, int ncells, uint64_t* queue, int qlen) nogil:
    """Equitable refinement in place; returns the new cell count.

    Each split adds its parts to the queue and grows the cell count, so at
    most 2n entries are ever queued (QCAP is never reached).
    """
    cdef int head = 0, ci, k, v, j, kmin, kmax, nparts
    cdef uint64_t w, cell, q
    cdef int cnt[MAXN]
    cdef uint64_t groups[MAXN + 1]
    cdef uint64_t parts[MAXN]
    cdef int n = c.n
    while head < qlen and ncells < n:
        w = queue[head]
        head += 1
        ci = 0
        while ci < ncells:
            cell = cells[ci]
            if (cell & (cell - 1)) == 0:
                ci += 1
                continue
            kmin = MAXN + 1
            kmax = -1
            q = cell
            while q:
                v = ctz(q)
                q &= q - 1
                k = popc(c.adj[v] & w)
                cnt[v] = k
                if k < kmin:
                    kmin = k
                if k > kmax:
                    kmax = k
            if kmin == kmax:
                ci += 1
                continue
            for j in range(kmin, kmax + 1):
                groups[j] = 0
            q = cell
            while q:
                v = ctz(q)
                q &= q - 1
                groups[cnt[v]] |= (<uint64_t>1) << v
            nparts = 0
            for j in range(kmin, kmax + 1):
                if groups[j]:
                    parts[nparts] = groups[j]
                    nparts += 1
            j = ncells - 1
            while j > ci:
                cells[j + nparts - 1] = cells[j]
                j -= 1
            for j in range(nparts):
                cells[ci + j] = parts[j]
                if qlen < QCAP:
                    queue[qlen] = parts[j]
                    qlen += 1
            ncells += nparts - 1
            ci += nparts
    return ncells


cdef int compare_cert(uint64_t* a, uint64_t* b, int n) nogil:
    cdef int j
    for j in range(1, n):
        if a[j] != b[j]:
            return -1 if a[j] < b[j] else 1
    return 0


cdef void make_cert(CanonCtx* c, int* order, uint64_t* cert) nogil:
    cdef int i, j
    cdef uint64_t row, col
    for j in range(1, c.n):
        row = c.adj[order[j]]
        col = 0
        for i in range(j):
            col = (col << 1) | ((row >> order[i]) & 1)
        cert[j] = col


cdef void record_aut(CanonCtx* c, int* src, int* dst) nogil:
    cdef int i
    if c.ngens >= MAXGENS:
        return
    for i in range(c.n):
        c.gens[c.ngens][src[i]] = <unsigned char>dst[i]
    c.ngens += 1


cdef int common_prefix(int* a, int* b, int len_a, int len_b) nogil:
    cdef int k = 0
    while k < len_a and k < len_b and a[k] == b[k]:
        k += 1
    return k


cdef int uf_find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef void orbit_reps(CanonCtx* c, int* fixed, int depth, int* reps) nogil:
    cdef int parent[MAXN]
    cdef int g, v, a, b, i
    cdef bint ok
    for v in range(c.n):
        parent[v] = v
    for g in range(c.ngens):
        ok = True
        for i in range(depth):
            if c.gens[g][fixed[i]] != fixed[i]:
                ok = False
                break
        if not ok:
            continue
        for v in range(c.n):
            a = uf_find(parent, v)
            b = uf_find(parent, c.gens[g][v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    for v in range(c.n):
        reps[v] = uf_find(parent, v)


cdef int search(CanonCtx* c, uint64_t* cells_in, int ncells, uint64_t bitq, int* fixed, int depth) nogil:
    cdef uint64_t cells[MAXN]
    cdef uint64_t queue[QCAP]
    cdef uint64_t cert[MAXN]
    cdef int order[MAXN]
    cdef int reps[MAXN]
    cdef int explored[MAXN]
    cdef int nexplored = 0, ngens_seen = 0, have_reps = 0
    cdef int ci, i, v, back, cmp, done = c.n + 1
    cdef uint64_t target, q, bit
    cdef bint skip
    memcpy(cells, cells_in, ncells * sizeof(uint64_t))
    queue[0] = bitq
    ncells = refine(c, cells, ncells, queue, 1)
    ci = -1
    for i in range(ncells):
        if cells[i] & (cells[i] - 1):
            ci = i
            break
    if ci < 0:
        for i in range(c.n):
            order[i] = ctz(cells[i])
        make_cert(c, order, cert)
        if not c.have_first:
            c.have_first = True
            memcpy(c.first_cert, cert, c.n * sizeof(uint64_t))
            memcpy(c.best_cert, cert, c.n * sizeof(uint64_t))
            memcpy(c.first_order, order, c.n * sizeof(int))
            memcpy(c.best_order, order, c.n * sizeof(int))
            memcpy(c.first_seq, fixed, depth * sizeof(int))
            memcpy(c.best_seq, fixed, depth * sizeof(int))
            c.first_seq[depth] = -1
            c.best_seq[depth] = -1
            return done
        if compare_cert(cert, c.first_cert, c.n) == 0:
            record_aut(c, c.first_order, order)
            return common_prefix(c.first_seq, fixed, seq_len(c.first_seq, c.n), depth)
        cmp = compare_cert(cert, c.best_cert, c.n)
        if cmp == 0:
            record_aut(c, c.best_order, order)
            return common_prefix(c.best_seq, fixed, seq_len(c.best_seq, c.n), depth)
        if cmp < 0:
            memcpy(c.best_cert, cert, c.n * sizeof(uint64_t))
            memcpy(c.best_order, order, c.n * sizeof(int))
            memcpy(c.best_seq, fixed, depth * sizeof(int))
            c.best_seq[depth] = -1
        return done
    target = cells[ci]
    q = target
    while q:
        v = ctz(q)
        q &= q - 1
        if nexplored:
            if c.ngens != ngens_seen:
                orbit_reps(c, fixed, depth, reps)
                ngens_seen = c.ngens
                have_reps = 1
            if have_reps:
                skip = False
                for i in range(nexplored):
                    if reps[v] == reps[explored[i]]:
                        skip = True
                        break
                if skip:
                    continue
        bit = (<uint64_t>1) << v
        # child partition: [.., {v}, target - v, ..]
        for i in range(ncells - 1, ci, -1):
            cells[i + 1] = cells[i]
        cells[ci] = bit
        cells[ci + 1] = target & ~bit
        fixed[depth] = v
        back = search(c, cells, ncells + 1, bit, fixed, depth + 1)
        # restore
        cells[ci] = target
        for i in range(ci + 1, ncells):
            cells[i] = cells[i + 1]
        if back < depth:
            return back
        explored[nexplored] = v
        nexplored += 1
    return done


cdef int seq_len(int* seq, int n) nogil:
    cdef int k = 0
    while k < n and seq[k] >= 0:
        k += 1
    return k


def canonical_labeling(adj):
    cdef CanonCtx* c
    cdef uint64_t cells[MAXN]
    cdef int fixed[MAXN + 1]
    cdef int n, i, g
    c = <CanonCtx*> PyMem_Malloc(sizeof(CanonCtx))
    if c == NULL:
        raise MemoryError()
    try:
        n = load_rows(adj, c.adj)
        if n == 0:
            return [], []
        c.n = n
        c.have_first = False
        c.ngens = 0
        cells[0] = low_bits(n)
        search(c, cells, 1, cells[0], fixed, 0)
        order = [c.best_order[i] for i in range(n)]
        gens = [[c.gens[g][i] for i in range(n)] for g in range(c.ngens)]
        return order, gens
    finally:
        PyMem_Free(c)



cdef int canon_g6(CanonCtx* c, unsigned char* buf) nogil:
    """Canonical graph6 of c.adj (c.n <= 62) into buf; returns its length."""
    cdef uint64_t cells[MAXN]
    cdef int fixed[MAXN + 1]
    cdef int n = c.n, i, j, nbits = 0, length = 1
    cdef unsigned int acc = 0
    cdef uint64_t row
    buf[0] = 63 + n
    if n == 0:
        return 1
    c.have_first = False
    c.ngens = 0
    cells[0] = low_bits(n)
    search(c, cells, 1, cells[0], fixed, 0)
    for j in range(1, n):
        row = c.adj[c.best_order[j]]
        for i in range(j):
            acc = (acc << 1) | <unsigned int>((row >> c.best_order[i]) & 1)
            nbits += 1
            if nbits == 6:
                buf[length] = acc + 63
                length += 1
                acc = 0
                nbits = 0
    if nbits:
        buf[length] = (acc << (6 - nbits)) + 63
        length += 1
    return length


def canonical_graph6(adj):
    """graph6 bytes of the canonically relabelled graph (n <= 62)."""
    cdef CanonCtx* c
    cdef unsigned char buf[340]
    cdef int length
    c = <CanonCtx*> PyMem_Malloc(sizeof(CanonCtx))
    if c == NULL:
        raise MemoryError()
    try:
        c.n = load_rows(adj, c.adj)
        if c.n > 62:
            raise ValueError("short graph6 form holds at most 62 vertices")
        length = canon_g6(c, buf)
        return bytes(buf[:length])
    finally:
        PyMem_Free(c)


cdef void contract(uint64_t* rows, int m, int i, int j, uint64_t* out) nogil:
    cdef uint64_t low = low_bits(j), bi = (<uint64_t> 1) << i, bj = (<uint64_t> 1) << j
    cdef uint64_t row
    cdef int v, k = 0
    for v in range(m):
        if v == j:
            continue
        if v == i:
            row = (rows[i] | rows[j]) & ~(bi | bj)
        elif rows[v] & bj:
            row = (rows[v] & ~bj) | bi
        else:
            row = rows[v]
        out[k] = (row & low) | ((row >> (j + 1)) << j)
        k += 1


cdef int component_count(uint64_t* rows, int m) nogil:
    cdef uint64_t left = low_bits(m), seen, frontier, nxt
    cdef int count = 0
    while left:
        frontier = left & (~left + 1)
        seen = frontier
        while frontier:
            nxt = 0
            while frontier:
                nxt |= rows[ctz(frontier)]
                frontier &= frontier - 1
            frontier = nxt & ~seen
            seen |= nxt
        left &= ~seen
        count += 1
    return count


cdef bint quotient_feasible(uint64_t* rows, int m, int edges, int t, int need,
                            int max_missing, bint allow_delete) nogil:
    cdef int k = m - t, slack = 0, v, d, missing, budget
    cdef int hist[MAXN]
    if k < 0:
        return False
    if allow_delete:
        slack = component_count(rows, m) - 1
    if edges - k + slack < need:
        return False
    if max_missing >= 0:
        for d in range(m):
            hist[d] = 0
        for v in range(m):
            hist[m - 1 - popc(rows[v])] += 1
        missing = m * (m - 1) // 2 - edges
        budget = 2 * k
        d = m - 1
        while d > 0 and budget > 0:
            v = hist[d] if hist[d] < budget else budget
            missing -= v * d
            budget -= v
            d -= 1
        if missing > max_missing:
            return False
    return True


def quotient_feasible_py(adj, int edges, int t, int need, int max_missing, bint allow_delete):
    cdef uint64_t rows[MAXN]
    cdef int m = load_rows(adj, rows)
    return quotient_feasible(rows, m, edges, t, need, max_missing, allow_delete)


def contraction_children(adj, int t, int need, int max_missing, bint allow_delete):
    """Feasible single-edge contractions of a quotient graph.

    Returns ``(i, j, key)`` triples ordered by common-neighbour count, then
    (i, j); ``key`` is the canonical graph6 of the contracted graph.
    ``max_missing < 0`` disables the missing-pair bound.
    """
    cdef CanonCtx* c
    cdef uint64_t rows[MAXN]
    cdef unsigned char buf[340]
    cdef int m, i, j, common, edges = 0, length, v
    cdef uint64_t rest
    c = <CanonCtx*> PyMem_Malloc(sizeof(CanonCtx))
    if c == NULL:
        raise MemoryError()
    try:
        m = load_rows(adj, rows)
        for v in range(m):
            edges += popc(rows[v])
        edges //= 2
        buckets = [[] for _ in range(m + 1)]
        for i in range(m):
            rest = rows[i] & ~low_bits(i + 1)
            while rest:
                j = ctz(rest)
                rest &= rest - 1
                common = popc(rows[i] & rows[j])
                contract(rows, m, i, j, c.adj)
                if not quotient_feasible(c.adj, m - 1, edges - 1 - common, t, need, max_missing, allow_delete):
                    continue
                c.n = m - 1
                length = canon_g6(c, buf)
                buckets[common].append((i, j, bytes(buf[:length])))
        return [item for bucket in buckets for item in bucket]
    finally:
        PyMem_Free(c)
