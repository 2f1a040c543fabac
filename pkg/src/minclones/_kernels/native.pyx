# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure/enumeration kernels.

Mirrors fallback.py operation for operation, including discovery order,
so the two backends are interchangeable bit for bit.
"""

from cpython.array cimport array
from libc.stdlib cimport free, malloc

NAME = "native"


cdef array _as_int_array(table):
    if isinstance(table, array) and (<array>table).typecode == "i":
        return <array>table
    return array("i", table)


def close_subset(n, table, seed):
    """Smallest superset of `seed` closed under the operation, sorted."""
    cdef array tbl = _as_int_array(table)
    cdef int[::1] t = tbl
    cdef int nn = n
    cdef int *elems = <int *>malloc(nn * sizeof(int))
    cdef char *seen = <char *>malloc(nn)
    if elems == NULL or seen == NULL:
        free(elems); free(seen)
        raise MemoryError
    cdef int count = 0, i = 0, j, a, b, c
    cdef list start = sorted(set(seed))
    try:
        for j in range(nn):
            seen[j] = 0
        for a in start:
            elems[count] = a
            seen[a] = 1
            count += 1
        while i < count:
            a = elems[i]
            for j in range(i + 1):
                b = elems[j]
                c = t[a * nn + b]
                if not seen[c]:
                    seen[c] = 1
                    elems[count] = c
                    count += 1
                c = t[b * nn + a]
                if not seen[c]:
                    seen[c] = 1
                    elems[count] = c
                    count += 1
            i += 1
        return tuple(sorted(elems[j] for j in range(count)))
    finally:
        free(elems)
        free(seen)


def close_pairs(n, table, seeds):
    """Closure of pair codes (u*n + v) under the componentwise operation.

    Frontier BFS in the same (existing, frontier) order as the fallback.
    """
    cdef array tbl = _as_int_array(table)
    cdef int[::1] t = tbl
    cdef int nn = n
    cdef int cap = nn * nn
    cdef int *elems = <int *>malloc(cap * sizeof(int))
    cdef char *seen = <char *>malloc(cap)
    if elems == NULL or seen == NULL:
        free(elems); free(seen)
        raise MemoryError
    cdef int count = 0, prev = 0, hi, i, j, c, s
    cdef int u0, v0, u1, v1
    try:
        for i in range(cap):
            seen[i] = 0
        for s in seeds:
            if not seen[s]:
                seen[s] = 1
                elems[count] = s
                count += 1
        while True:
            hi = count
            if prev == hi:
                break
            for i in range(hi):
                u0 = elems[i] / nn
                v0 = elems[i] % nn
                j = i if i > prev else prev
                while j < hi:
                    u1 = elems[j] / nn
                    v1 = elems[j] % nn
                    c = t[u0 * nn + u1] * nn + t[v0 * nn + v1]
                    if not seen[c]:
                        seen[c] = 1
                        elems[count] = c
                        count += 1
                    c = t[u1 * nn + u0] * nn + t[v1 * nn + v0]
                    if not seen[c]:
                        seen[c] = 1
                        elems[count] = c
                        count += 1
                    j += 1
            prev = hi
        return [elems[i] for i in range(count)]
    finally:
        free(elems)
        free(seen)


def right_orbit(n, table, a):
    """Elements reachable from `a` by b -> b·c, as a sorted tuple."""
    cdef array tbl = _as_int_array(table)
    cdef int[::1] t = tbl
    cdef int nn = n
    cdef int *orbit = <int *>malloc(nn * sizeof(int))
    cdef char *seen = <char *>malloc(nn)
    if orbit == NULL or seen == NULL:
        free(orbit); free(seen)
        raise MemoryError
    cdef int count = 1, i = 0, b, c, d
    try:
        for b in range(nn):
            seen[b] = 0
        orbit[0] = a
        seen[<int>a] = 1
        while i < count:
            b = orbit[i]
            for c in range(nn):
                d = t[b * nn + c]
                if not seen[d]:
                    seen[d] = 1
                    orbit[count] = d
                    count += 1
            i += 1
        return tuple(sorted(orbit[i] for i in range(count)))
    finally:
        free(orbit)
        free(seen)


def eval_postfix(prog, table, n, env):
    """Evaluate a postfix term program; -1 applies the operation."""
    cdef array tbl = _as_int_array(table)
    cdef int[::1] t = tbl
    cdef array parr = _as_int_array(prog)
    cdef int[::1] p = parr
    cdef array earr = _as_int_array(env)
    cdef int[::1] e = earr
    cdef int stack[64]
    cdef int sp = 0, k, op, x, y, nn = n
    for k in range(p.shape[0]):
        op = p[k]
        if op >= 0:
            stack[sp] = e[op]
            sp += 1
        else:
            y = stack[sp - 1]
            x = stack[sp - 2]
            sp -= 1
            stack[sp - 1] = t[x * nn + y]
    return stack[0]


def check_identity(n, table, lhs, rhs, nvars):
    """True iff the two postfix programs agree under all n**nvars assignments."""
    cdef array tbl = _as_int_array(table)
    cdef int[::1] t = tbl
    cdef array larr = _as_int_array(lhs)
    cdef int[::1] lp = larr
    cdef array rarr = _as_int_array(rhs)
    cdef int[::1] rp = rarr
    cdef int nn = n, nv = nvars
    cdef int env[16]
    cdef int stack[64]
    cdef int k, sp, op, x, y, va, vb
    if nv > 16:
        raise ValueError("too many variables")
    for k in range(nv):
        env[k] = 0
    while True:
        sp = 0
        for k in range(lp.shape[0]):
            op = lp[k]
            if op >= 0:
                stack[sp] = env[op]
                sp += 1
            else:
                y = stack[sp - 1]
                x = stack[sp - 2]
                sp -= 1
                stack[sp - 1] = t[x * nn + y]
        va = stack[0]
        sp = 0
        for k in range(rp.shape[0]):
            op = rp[k]
            if op >= 0:
                stack[sp] = env[op]
                sp += 1
            else:
                y = stack[sp - 1]
                x = stack[sp - 2]
                sp -= 1
                stack[sp - 1] = t[x * nn + y]
        vb = stack[0]
        if va != vb:
            return False
        k = nv - 1
        while k >= 0 and env[k] == nn - 1:
            env[k] = 0
            k -= 1
        if k < 0:
            return True
        env[k] += 1


def free_closure(n, table, cap):
    """Closure of the two projections under pointwise application.

    Same contract and discovery order as the fallback; the pointwise
    composition loop runs in C, the dedup dictionary stays in Python.
    """
    cdef array tbl = _as_int_array(table)
    cdef int[::1] t = tbl
    cdef int nn = n
    cdef int size = nn * nn
    cdef int prev = 0, hi, i, j, k
    cdef array buf = array("i", bytes(4 * size))
    cdef int[::1] bv = buf
    cdef array ga, ha
    cdef int[::1] g, h
    pi1 = tuple(i // nn for i in range(size))
    pi2 = tuple(i % nn for i in range(size))
    tables = [pi1]
    parents = [None]
    index = {pi1: 0}
    arrays = [array("i", pi1)]
    if pi2 not in index:
        index[pi2] = 1
        tables.append(pi2)
        parents.append(None)
        arrays.append(array("i", pi2))

    def _emit(tup, par):
        index[tup] = len(tables)
        tables.append(tup)
        parents.append(par)
        arrays.append(array("i", tup))

    while True:
        hi = len(tables)
        if prev == hi:
            return tables, parents, False
        for i in range(hi):
            ga = arrays[i]
            g = ga
            for j in range(max(i, prev), hi):
                ha = arrays[j]
                h = ha
                for k in range(size):
                    bv[k] = t[g[k] * nn + h[k]]
                tup = tuple(buf)
                if tup not in index:
                    _emit(tup, (i, j))
                for k in range(size):
                    bv[k] = t[h[k] * nn + g[k]]
                tup = tuple(buf)
                if tup not in index:
                    _emit(tup, (j, i))
                if len(tables) > cap:
                    return tables, parents, True
        prev = hi
