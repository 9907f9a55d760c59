"""Pure-Python reference kernels; the compiled module mirrors these exactly."""
from __future__ import annotations

from typing import Sequence


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- maximum clique --------------------------------------------------------


def _color_sort(adj: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``p`` in index order.

    Returns vertices grouped by colour class and, per vertex, the number of
    classes used so far (an upper bound on a clique among the prefix).
    """
    order: list[int] = []
    bounds: list[int] = []
    uncolored = p
    k = 0
    while uncolored:
        k += 1
        q = uncolored
        while q:
            low = q & -q
            v = low.bit_length() - 1
            uncolored ^= low
            q &= ~adj[v] & ~low
            order.append(v)
            bounds.append(k)
    return order, bounds


def max_clique(adj: Sequence[int], lower: int = 0) -> int:
    """Mask of a maximum clique (branch and bound with colouring bounds).

    ``lower`` is a known clique size; the search then only reports strictly
    larger cliques and returns 0 if none exists.
    """
    n = len(adj)
    best_size = lower
    best_mask = 0

    def expand(r: int, size: int, p: int) -> None:
        nonlocal best_size, best_mask
        order, bounds = _color_sort(adj, p)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best_size:
                return
            v = order[idx]
            bit = 1 << v
            newp = p & adj[v]
            if newp:
                expand(r | bit, size + 1, newp)
            elif size + 1 > best_size:
                best_size = size + 1
                best_mask = r | bit
            p &= ~bit

    if n:
        expand(0, 0, (1 << n) - 1)
    return best_mask


# -- canonical labelling ---------------------------------------------------

MAX_GENERATORS = 512  # same cap as the compiled twin


def _refine(adj: Sequence[int], cells: list[int], queue: list[int]) -> list[int]:
    """Equitable refinement of the ordered partition ``cells``.

    Cells split by neighbour count into the splitter, sub-cells ordered by
    ascending count; every new sub-cell is queued as a splitter.
    """
    head = 0
    n_cells = len(cells)
    total = sum(c.bit_count() for c in cells)
    while head < len(queue) and n_cells < total:
        w = queue[head]
        head += 1
        ci = 0
        while ci < len(cells):
            c = cells[ci]
            if c & (c - 1) == 0:
                ci += 1
                continue
            groups: dict[int, int] = {}
            for v in _bits(c):
                k = (adj[v] & w).bit_count()
                groups[k] = groups.get(k, 0) | (1 << v)
            if len(groups) == 1:
                ci += 1
                continue
            parts = [groups[k] for k in sorted(groups)]
            cells[ci:ci + 1] = parts
            queue.extend(parts)
            n_cells += len(parts) - 1
            ci += len(parts)
    return cells


def _certificate(adj: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    """Upper-triangle bits in column order; column j packs x(0,j) as its MSB."""
    n = len(order)
    cols = []
    for j in range(1, n):
        row = adj[order[j]]
        col = 0
        for i in range(j):
            col = (col << 1) | (row >> order[i] & 1)
        cols.append(col)
    return tuple(cols)


def canonical_labeling(adj: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    """Return ``(order, generators)``.

    ``order[p]`` is the vertex placed at canonical position ``p``: the labelling
    minimising the column-ordered upper-triangle bit string among all leaves
    of the refinement tree. ``generators`` are automorphisms (as vertex maps)
    met during the search.

    Cells only ever split in place, so an automorphism between two leaves maps
    their individualisation sequences onto each other and fixes the common
    prefix; the search then returns straight to that common ancestor.
    """
    n = len(adj)
    if n == 0:
        return [], []
    done = n + 1
    best_cert: tuple[int, ...] | None = None
    best_order: list[int] = []
    best_seq: list[int] = []
    first_cert: tuple[int, ...] | None = None
    first_order: list[int] = []
    first_seq: list[int] = []
    gens: list[list[int]] = []

    def record_aut(src: list[int], dst: list[int]) -> None:
        if len(gens) >= MAX_GENERATORS:
            return
        perm = [0] * n
        for a, b in zip(src, dst):
            perm[a] = b
        gens.append(perm)

    def common_prefix(a: list[int], b: list[int]) -> int:
        k = 0
        for x, y in zip(a, b):
            if x != y:
                break
            k += 1
        return k

    def orbit_rep(fixed: list[int]) -> list[int]:
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            if all(g[x] == x for x in fixed):
                for v in range(n):
                    a, b = find(v), find(g[v])
                    if a != b:
                        if a < b:
                            parent[b] = a
                        else:
                            parent[a] = b
        return [find(v) for v in range(n)]

    def search(cells: list[int], queue: list[int], fixed: list[int]) -> int:
        nonlocal best_cert, best_order, best_seq, first_cert, first_order, first_seq
        cells = _refine(adj, cells, queue)
        ci = next((i for i, c in enumerate(cells) if c & (c - 1)), -1)
        if ci < 0:
            order = [c.bit_length() - 1 for c in cells]
            cert = _certificate(adj, order)
            if first_cert is None:
                first_cert, first_order, first_seq = cert, order, fixed
                best_cert, best_order, best_seq = cert, order, fixed
                return done
            if cert == first_cert:
                record_aut(first_order, order)
                return common_prefix(first_seq, fixed)
            if cert == best_cert:
                record_aut(best_order, order)
                return common_prefix(best_seq, fixed)
            if cert < best_cert:
                best_cert, best_order, best_seq = cert, order, fixed
            return done
        depth = len(fixed)
        target = cells[ci]
        explored: list[int] = []
        n_gens = 0
        reps: list[int] = []
        for v in _bits(target):
            if explored:
                if len(gens) != n_gens:
                    reps = orbit_rep(fixed)
                    n_gens = len(gens)
                if reps and any(reps[v] == reps[u] for u in explored):
                    continue
            bit = 1 << v
            child = cells[:ci] + [bit, target & ~bit] + cells[ci + 1:]
            back = search(child, [bit], fixed + [v])
            if back < depth:
                return back
            explored.append(v)
        return done

    full = (1 << n) - 1
    search([full], [full], [])
    return best_order, gens


def canonical_graph6(adj: Sequence[int]) -> bytes:
    """graph6 bytes of the canonically relabelled graph (n <= 62)."""
    n = len(adj)
    order = canonical_labeling(adj)[0]
    out = bytearray([63 + n])
    acc = nbits = 0
    for j in range(1, n):
        row = adj[order[j]]
        for i in range(j):
            acc = (acc << 1) | (row >> order[i] & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def _contract(rows: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    low = (1 << j) - 1
    bi, bj = 1 << i, 1 << j
    out = []
    for v, row in enumerate(rows):
        if v == j:
            continue
        if v == i:
            row = (rows[i] | rows[j]) & ~(bi | bj)
        elif row & bj:
            row = (row & ~bj) | bi
        out.append((row & low) | (row >> (j + 1) << j))
    return tuple(out)


def _component_count(rows: Sequence[int]) -> int:
    left = (1 << len(rows)) - 1
    count = 0
    while left:
        seen = frontier = left & -left
        while frontier:
            nxt = 0
            while frontier:
                low = frontier & -frontier
                nxt |= rows[low.bit_length() - 1]
                frontier ^= low
            frontier = nxt & ~seen
            seen |= nxt
        left &= ~seen
        count += 1
    return count


def quotient_feasible_py(adj: Sequence[int], edges: int, t: int, need: int,
                         max_missing: int, allow_delete: bool) -> bool:
    """Edge and missing-pair bounds for reaching t vertices from a quotient graph."""
    m = len(adj)
    k = m - t
    if k < 0:
        return False
    slack = _component_count(adj) - 1 if allow_delete else 0
    if edges - k + slack < need:
        return False
    if max_missing >= 0:
        mdeg = sorted((m - 1 - r.bit_count() for r in adj), reverse=True)
        missing = m * (m - 1) // 2 - edges
        # at most 2k vertices end up in non-singleton parts or get deleted
        if missing - sum(mdeg[: 2 * k]) > max_missing:
            return False
    return True


def contraction_children(adj: Sequence[int], t: int, need: int, max_missing: int,
                         allow_delete: bool) -> list[tuple[int, int, bytes]]:
    """Feasible single-edge contractions as ``(i, j, canonical graph6)``,
    ordered by common-neighbour count, then (i, j)."""
    m = len(adj)
    edges = sum(r.bit_count() for r in adj) // 2
    buckets: list[list[tuple[int, int, bytes]]] = [[] for _ in range(m + 1)]
    for i in range(m):
        ri = adj[i]
        rest = ri >> (i + 1) << (i + 1)
        while rest:
            low = rest & -rest
            rest ^= low
            j = low.bit_length() - 1
            common = (ri & adj[j]).bit_count()
            child = _contract(adj, i, j)
            if not quotient_feasible_py(child, edges - 1 - common, t, need, max_missing, allow_delete):
                continue
            buckets[common].append((i, j, canonical_graph6(child)))
    return [item for bucket in buckets for item in bucket]
