# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics match ``_kernels_py`` exactly."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef int* _ints(object seq, Py_ssize_t n) except NULL:
    cdef int* buf = <int*>malloc((n if n > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    return buf


def block_gates(int n_qubits, int zone, q0, q1, succ_start, succ, indeg):
    cdef Py_ssize_t g = len(q0)
    cdef Py_ssize_t n_succ = len(succ)
    cdef int max_groups = <int>(2 * g + n_qubits + 1)

    cdef int* a0 = _ints(q0, g)
    cdef int* a1 = _ints(q1, g)
    cdef int* sstart = _ints(succ_start, g + 1)
    cdef int* sarr = _ints(succ, n_succ)
    cdef int* pending = _ints(indeg, g)

    # frontier ring buffer: each gate sits in at most one place at a time
    cdef int cap = <int>(g if g > 0 else 1)
    cdef int* ring = <int*>malloc(cap * sizeof(int))
    cdef int* waiting = <int*>malloc(cap * sizeof(int))
    cdef int* group_of = <int*>malloc((n_qubits if n_qubits > 0 else 1) * sizeof(int))
    cdef int* qnext = <int*>malloc((n_qubits if n_qubits > 0 else 1) * sizeof(int))
    cdef int* qhead = <int*>malloc(max_groups * sizeof(int))
    cdef int* qtail = <int*>malloc(max_groups * sizeof(int))
    cdef int* qcount = <int*>malloc(max_groups * sizeof(int))
    cdef int* ghead = <int*>malloc(max_groups * sizeof(int))
    cdef int* gtail = <int*>malloc(max_groups * sizeof(int))
    cdef int* gnext = <int*>malloc(cap * sizeof(int))
    cdef int* stamp = <int*>malloc(max_groups * sizeof(int))

    cdef int rhead = 0, rlen = 0, nwait = 0, ngroups = 0, tick = 0
    cdef int i, k, s, a, b, ga, gb, big, small, q, grp, best, size
    cdef list blocks = []

    try:
        memset(stamp, 0, max_groups * sizeof(int))
        for i in range(n_qubits):
            group_of[i] = -1
        for i in range(g):
            if pending[i] == 0:
                ring[(rhead + rlen) % cap] = i
                rlen += 1

        while rlen > 0:
            i = ring[rhead]
            rhead = (rhead + 1) % cap
            rlen -= 1
            a = a0[i]
            b = a1[i]
            size = -1
            if b < 0:
                ga = group_of[a]
                if ga < 0:
                    ga = ngroups
                    ngroups += 1
                    group_of[a] = ga
                    qhead[ga] = a; qtail[ga] = a; qnext[a] = -1; qcount[ga] = 1
                    ghead[ga] = -1; gtail[ga] = -1
                gnext[i] = -1
                if gtail[ga] < 0:
                    ghead[ga] = i
                else:
                    gnext[gtail[ga]] = i
                gtail[ga] = i
                size = 0
            else:
                ga = group_of[a]
                gb = group_of[b]
                if ga >= 0 and ga == gb:
                    gnext[i] = -1
                    gnext[gtail[ga]] = i
                    gtail[ga] = i
                    size = 0
                else:
                    size = (qcount[ga] if ga >= 0 else 1) + (qcount[gb] if gb >= 0 else 1)
                    if size <= zone:
                        if ga < 0:
                            ga = ngroups
                            ngroups += 1
                            group_of[a] = ga
                            qhead[ga] = a; qtail[ga] = a; qnext[a] = -1; qcount[ga] = 1
                            ghead[ga] = -1; gtail[ga] = -1
                        if gb < 0:
                            gb = ngroups
                            ngroups += 1
                            group_of[b] = gb
                            qhead[gb] = b; qtail[gb] = b; qnext[b] = -1; qcount[gb] = 1
                            ghead[gb] = -1; gtail[gb] = -1
                        if qcount[ga] >= qcount[gb]:
                            big = ga; small = gb
                        else:
                            big = gb; small = ga
                        q = qhead[small]
                        while q >= 0:
                            group_of[q] = big
                            q = qnext[q]
                        qnext[qtail[big]] = qhead[small]
                        qtail[big] = qtail[small]
                        qcount[big] += qcount[small]
                        if ghead[small] >= 0:
                            if gtail[big] < 0:
                                ghead[big] = ghead[small]
                            else:
                                gnext[gtail[big]] = ghead[small]
                            gtail[big] = gtail[small]
                        gnext[i] = -1
                        if gtail[big] < 0:
                            ghead[big] = i
                        else:
                            gnext[gtail[big]] = i
                        gtail[big] = i
                        size = 0
                    else:
                        waiting[nwait] = i
                        nwait += 1
            if size == 0:
                for k in range(sstart[i], sstart[i + 1]):
                    s = sarr[k]
                    pending[s] -= 1
                    if pending[s] == 0:
                        ring[(rhead + rlen) % cap] = s
                        rlen += 1

            if rlen == 0:
                tick += 1
                best = _pick_largest(n_qubits, group_of, qcount, stamp, tick)
                if best >= 0:
                    blocks.append(_emit(best, group_of, qhead, qnext, ghead, gnext))
                for k in range(nwait):
                    ring[(rhead + rlen) % cap] = waiting[k]
                    rlen += 1
                nwait = 0

        while True:
            tick += 1
            best = _pick_largest(n_qubits, group_of, qcount, stamp, tick)
            if best < 0:
                break
            blocks.append(_emit(best, group_of, qhead, qnext, ghead, gnext))
        return blocks
    finally:
        free(a0); free(a1); free(sstart); free(sarr); free(pending)
        free(ring); free(waiting); free(group_of); free(qnext)
        free(qhead); free(qtail); free(qcount); free(ghead); free(gtail)
        free(gnext); free(stamp)


cdef int _pick_largest(int n_qubits, int* group_of, int* qcount, int* stamp, int tick):
    # ties go to the group with the smallest member qubit
    cdef int q, grp, best = -1
    for q in range(n_qubits):
        grp = group_of[q]
        if grp < 0 or stamp[grp] == tick:
            continue
        stamp[grp] = tick
        if best < 0 or qcount[grp] > qcount[best]:
            best = grp
    return best


cdef list _emit(int grp, int* group_of, int* qhead, int* qnext, int* ghead, int* gnext):
    cdef int q = qhead[grp]
    cdef int i = ghead[grp]
    cdef list members = []
    while q >= 0:
        group_of[q] = -1
        q = qnext[q]
    while i >= 0:
        members.append(i)
        i = gnext[i]
    members.sort()
    return members


def asap_layers(pa, pb, barrier, int n_positions):
    cdef Py_ssize_t m = len(pa)
    cdef int* last = <int*>malloc((n_positions if n_positions > 0 else 1) * sizeof(int))
    cdef int floor = 0, top = 0, layer, a, b
    cdef Py_ssize_t k
    cdef list out = [0] * m
    if last == NULL:
        raise MemoryError()
    try:
        memset(last, 0, n_positions * sizeof(int))
        for k in range(m):
            a = pa[k]
            b = pb[k]
            if barrier[k]:
                floor = top
            layer = last[a]
            if last[b] > layer:
                layer = last[b]
            if floor > layer:
                layer = floor
            layer += 1
            last[a] = layer
            last[b] = layer
            if layer > top:
                top = layer
            out[k] = layer
        return out
    finally:
        free(last)
