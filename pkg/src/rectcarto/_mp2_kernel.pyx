# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled placement kernel.

Mirror of ``rectcarto._mp2_fallback`` (see its docstring for the
algorithm). Operations and their order match the fallback exactly so
both kernels produce bit-identical layouts and overlap-test counts;
keep any change mirrored there. The whole walk runs without the GIL,
so threaded fitness evaluation scales on multicore machines.
"""

from libc.math cimport M_PI, atan2, copysign, cos, fabs, sin
from libc.stdlib cimport free, malloc
from libc.string cimport memmove, memset

cdef double STEP = M_PI / 180.0
cdef double EPS = 1e-9


cdef struct WS:
    int n
    double* ix
    double* iy
    double* hw
    double* hh
    int* iptr
    int* nbr
    int* seq
    int* rank
    unsigned char* visited
    double* px
    double* py
    int* placed_sorted      # placed ids ascending; the naive scan order
    int psize
    double* keys            # low-x edges of placed boxes, sorted
    int* kids               # ids parallel to keys
    int ksize
    double max_width
    bint use_index
    int* cand
    int* nbuf
    int* stack_node
    int* stack_parent
    int ssize
    int* dfs
    unsigned char* failed
    long long tests


cdef inline int lower_bound(double* a, int size, double v) noexcept nogil:
    cdef int lo = 0, hi = size, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline int upper_bound(double* a, int size, double v) noexcept nogil:
    cdef int lo = 0, hi = size, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline int lower_bound_int(int* a, int size, int v) noexcept nogil:
    cdef int lo = 0, hi = size, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline bint overlap_exists(WS* ws, double cx, double cy, double cw, double ch) noexcept nogil:
    cdef int i, j, m, rid, start, stop
    cdef int* sel
    if ws.use_index:
        start = lower_bound(ws.keys, ws.ksize, cx - cw - ws.max_width)
        stop = upper_bound(ws.keys, ws.ksize, cx + cw)
        m = stop - start
        for i in range(m):
            ws.cand[i] = ws.kids[start + i]
        # ascending id, so both strategies short-circuit on the same hit
        for i in range(1, m):
            rid = ws.cand[i]
            j = i - 1
            while j >= 0 and ws.cand[j] > rid:
                ws.cand[j + 1] = ws.cand[j]
                j -= 1
            ws.cand[j + 1] = rid
        sel = ws.cand
    else:
        m = ws.psize
        sel = ws.placed_sorted
    for i in range(m):
        rid = sel[i]
        ws.tests += 1
        if fabs(cx - ws.px[rid]) < cw + ws.hw[rid] - EPS and fabs(cy - ws.py[rid]) < ch + ws.hh[rid] - EPS:
            return True
    return False


cdef inline void ring_point(WS* ws, int anchor, int b, double theta,
                            double* ocx, double* ocy) noexcept nogil:
    cdef double w = ws.hw[anchor] + ws.hw[b]
    cdef double h = ws.hh[anchor] + ws.hh[b]
    cdef double c = cos(theta)
    cdef double s = sin(theta)
    if fabs(c) * h >= fabs(s) * w:
        ocx[0] = ws.px[anchor] + copysign(w, c)
        ocy[0] = ws.py[anchor] + w * s / fabs(c)
    else:
        ocx[0] = ws.px[anchor] + h * c / fabs(s)
        ocy[0] = ws.py[anchor] + copysign(h, s)


cdef inline double input_bearing(WS* ws, int anchor, int b) noexcept nogil:
    cdef double dxi = ws.ix[b] - ws.ix[anchor]
    cdef double dyi = ws.iy[b] - ws.iy[anchor]
    if dxi == 0.0 and dyi == 0.0:
        return 0.0
    return atan2(dyi, dxi)


cdef inline bint sweep_anchor(WS* ws, int anchor, int b, double* ocx, double* ocy) noexcept nogil:
    cdef double alpha = input_bearing(ws, anchor, b)
    cdef double sign, cx, cy
    cdef int k, si
    for k in range(181):
        for si in range(2):
            if si == 1 and (k == 0 or k == 180):
                continue  # -0 and -180 duplicate their + twins
            sign = 1.0 if si == 0 else -1.0
            ring_point(ws, anchor, b, alpha + sign * (k * STEP), &cx, &cy)
            if not overlap_exists(ws, cx, cy, ws.hw[b], ws.hh[b]):
                ocx[0] = cx
                ocy[0] = cy
                return True
    return False


cdef inline void place(WS* ws, int b, double cx, double cy, int num) noexcept nogil:
    cdef int pos
    cdef double key
    ws.px[b] = cx
    ws.py[b] = cy
    ws.dfs[b] = num
    pos = lower_bound_int(ws.placed_sorted, ws.psize, b)
    if pos < ws.psize:
        memmove(ws.placed_sorted + pos + 1, ws.placed_sorted + pos,
                (ws.psize - pos) * sizeof(int))
    ws.placed_sorted[pos] = b
    ws.psize += 1
    if ws.use_index:
        key = cx - ws.hw[b]
        pos = upper_bound(ws.keys, ws.ksize, key)
        if pos < ws.ksize:
            memmove(ws.keys + pos + 1, ws.keys + pos, (ws.ksize - pos) * sizeof(double))
            memmove(ws.kids + pos + 1, ws.kids + pos, (ws.ksize - pos) * sizeof(int))
        ws.keys[pos] = key
        ws.kids[pos] = b
        ws.ksize += 1
        if 2.0 * ws.hw[b] > ws.max_width:
            ws.max_width = 2.0 * ws.hw[b]


cdef inline void push_children(WS* ws, int u) noexcept nogil:
    cdef int cnt = 0, i, j, v
    for i in range(ws.iptr[u], ws.iptr[u + 1]):
        v = ws.nbr[i]
        if not ws.visited[v]:
            ws.nbuf[cnt] = v
            cnt += 1
    # descending rank, so pops explore in ascending priority
    for i in range(1, cnt):
        v = ws.nbuf[i]
        j = i - 1
        while j >= 0 and ws.rank[ws.nbuf[j]] < ws.rank[v]:
            ws.nbuf[j + 1] = ws.nbuf[j]
            j -= 1
        ws.nbuf[j + 1] = v
    for i in range(cnt):
        ws.stack_node[ws.ssize] = ws.nbuf[i]
        ws.stack_parent[ws.ssize] = u
        ws.ssize += 1


cdef void _run(WS* ws) noexcept nogil:
    cdef int root, counter, b, parent, i, j, v, ocnt
    cdef double cx, cy
    cdef bint found
    root = ws.seq[0]
    ws.visited[root] = True
    place(ws, root, ws.ix[root], ws.iy[root], 1)
    push_children(ws, root)
    counter = 1
    while ws.ssize > 0:
        ws.ssize -= 1
        b = ws.stack_node[ws.ssize]
        parent = ws.stack_parent[ws.ssize]
        if ws.visited[b]:
            continue
        ws.visited[b] = True
        found = sweep_anchor(ws, parent, b, &cx, &cy)
        if not found:
            ocnt = 0
            for i in range(ws.iptr[b], ws.iptr[b + 1]):
                v = ws.nbr[i]
                if ws.visited[v] and v != parent:
                    ws.nbuf[ocnt] = v
                    ocnt += 1
            # remaining placed anchors in ascending rank
            for i in range(1, ocnt):
                v = ws.nbuf[i]
                j = i - 1
                while j >= 0 and ws.rank[ws.nbuf[j]] > ws.rank[v]:
                    ws.nbuf[j + 1] = ws.nbuf[j]
                    j -= 1
                ws.nbuf[j + 1] = v
            for i in range(ocnt):
                found = sweep_anchor(ws, ws.nbuf[i], b, &cx, &cy)
                if found:
                    break
        if not found:
            # no tangent position anywhere: drop at the parent's initial
            # bearing and mark the region failed
            ring_point(ws, parent, b, input_bearing(ws, parent, b), &cx, &cy)
            ws.failed[b] = 1
        counter += 1
        place(ws, b, cx, cy, counter)
        push_children(ws, b)


def run_construction(double[::1] in_x, double[::1] in_y,
                     double[::1] half_w, double[::1] half_h,
                     int[::1] indptr, int[::1] indices, int[::1] order,
                     bint use_index,
                     double[::1] out_x, double[::1] out_y,
                     int[::1] dfs_num, unsigned char[::1] failed):
    """Compiled twin of ``rectcarto._mp2_fallback.run_construction``.

    ``dfs_num`` and ``failed`` must arrive zero-initialized. Returns the
    number of exact rectangle-pair overlap tests performed.
    """
    cdef int n = <int> in_x.shape[0]
    cdef int m = <int> indices.shape[0]
    cdef WS ws
    cdef int i
    cdef long long tests

    ws.n = n
    ws.ix = &in_x[0]
    ws.iy = &in_y[0]
    ws.hw = &half_w[0]
    ws.hh = &half_h[0]
    ws.iptr = &indptr[0]
    ws.nbr = &indices[0] if m > 0 else NULL
    ws.seq = &order[0]
    ws.dfs = &dfs_num[0]
    ws.failed = &failed[0]
    ws.use_index = use_index
    ws.psize = 0
    ws.ksize = 0
    ws.ssize = 0
    ws.max_width = 0.0
    ws.tests = 0

    ws.rank = <int*> malloc(n * sizeof(int))
    ws.visited = <unsigned char*> malloc(n * sizeof(unsigned char))
    ws.px = <double*> malloc(n * sizeof(double))
    ws.py = <double*> malloc(n * sizeof(double))
    ws.placed_sorted = <int*> malloc(n * sizeof(int))
    ws.keys = <double*> malloc(n * sizeof(double))
    ws.kids = <int*> malloc(n * sizeof(int))
    ws.cand = <int*> malloc(n * sizeof(int))
    ws.nbuf = <int*> malloc(n * sizeof(int))
    ws.stack_node = <int*> malloc((m + 1) * sizeof(int))
    ws.stack_parent = <int*> malloc((m + 1) * sizeof(int))

    if (ws.rank == NULL or ws.visited == NULL or ws.px == NULL or ws.py == NULL
            or ws.placed_sorted == NULL or ws.keys == NULL or ws.kids == NULL
            or ws.cand == NULL or ws.nbuf == NULL or ws.stack_node == NULL
            or ws.stack_parent == NULL):
        _free_ws(&ws)
        raise MemoryError("placement kernel allocation failed")

    memset(ws.visited, 0, n * sizeof(unsigned char))
    memset(ws.px, 0, n * sizeof(double))
    memset(ws.py, 0, n * sizeof(double))
    for i in range(n):
        ws.rank[order[i]] = i

    with nogil:
        _run(&ws)
        for i in range(n):
            out_x[i] = ws.px[i]
            out_y[i] = ws.py[i]

    tests = ws.tests
    _free_ws(&ws)
    return tests


cdef void _free_ws(WS* ws):
    free(ws.rank)
    free(ws.visited)
    free(ws.px)
    free(ws.py)
    free(ws.placed_sorted)
    free(ws.keys)
    free(ws.kids)
    free(ws.cand)
    free(ws.nbuf)
    free(ws.stack_node)
    free(ws.stack_parent)
