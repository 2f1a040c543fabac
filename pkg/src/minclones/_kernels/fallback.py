"""Pure-Python implementations of the hot closure/enumeration kernels.

Same contract as the compiled backend in native.pyx; selected at import
time by minclones._kernels when the extension is unavailable.

Tables are flat row-major sequences: table[a*n + b] = a·b.
"""

NAME = "fallback"


def close_subset(n, table, seed):
    """Smallest superset of `seed` closed under the operation, sorted."""
    elems = sorted(set(seed))
    seen = set(elems)
    i = 0
    while i < len(elems):
        a = elems[i]
        for j in range(i + 1):
            b = elems[j]
            c = table[a * n + b]
            if c not in seen:
                seen.add(c)
                elems.append(c)
            c = table[b * n + a]
            if c not in seen:
                seen.add(c)
                elems.append(c)
        i += 1
    return tuple(sorted(seen))


def close_pairs(n, table, seeds):
    """Closure of pair codes (u*n + v) under the componentwise operation.

    Frontier BFS: round r appends exactly the depth-(r+1) products, in
    (existing-index, frontier-index) order, each (a·b, b·a) adjacent.
    The returned discovery order is the canonical element order for
    pair-power subalgebras.
    """
    elems = []
    seen = set()
    for s in seeds:
        if s not in seen:
            seen.add(s)
            elems.append(s)
    prev = 0
    while True:
        hi = len(elems)
        if prev == hi:
            break
        for i in range(hi):
            u0, v0 = divmod(elems[i], n)
            for j in range(max(i, prev), hi):
                u1, v1 = divmod(elems[j], n)
                c = table[u0 * n + u1] * n + table[v0 * n + v1]
                if c not in seen:
                    seen.add(c)
                    elems.append(c)
                c = table[u1 * n + u0] * n + table[v1 * n + v0]
                if c not in seen:
                    seen.add(c)
                    elems.append(c)
        prev = hi
    return elems


def right_orbit(n, table, a):
    """Elements reachable from `a` by b -> b·c, as a sorted tuple."""
    orbit = [a]
    seen = {a}
    i = 0
    while i < len(orbit):
        b = orbit[i]
        row = b * n
        for c in range(n):
            d = table[row + c]
            if d not in seen:
                seen.add(d)
                orbit.append(d)
        i += 1
    return tuple(sorted(seen))


def eval_postfix(prog, table, n, env):
    """Evaluate a postfix term program; -1 applies the operation."""
    stack = []
    for op in prog:
        if op >= 0:
            stack.append(env[op])
        else:
            y = stack.pop()
            x = stack.pop()
            stack.append(table[x * n + y])
    return stack[0]


def check_identity(n, table, lhs, rhs, nvars):
    """True iff the two postfix programs agree under all n**nvars assignments."""
    env = [0] * nvars
    while True:
        if eval_postfix(lhs, table, n, env) != eval_postfix(rhs, table, n, env):
            return False
        k = nvars - 1
        while k >= 0 and env[k] == n - 1:
            env[k] = 0
            k -= 1
        if k < 0:
            return True
        env[k] += 1


def free_closure(n, table, cap):
    """Closure of the two projections under pointwise application.

    Returns (tables, parents, truncated): tables are n²-tuples in frontier-BFS
    discovery order starting with π₁, π₂; parents[k] is the (i, j) pair with
    tables[k] = pointwise f(tables[i], tables[j]), or None for the projections.
    """
    nn = n * n
    pi1 = tuple(i // n for i in range(nn))
    pi2 = tuple(i % n for i in range(nn))
    tables = [pi1]
    parents = [None]
    index = {pi1: 0}
    if pi2 not in index:
        index[pi2] = 1
        tables.append(pi2)
        parents.append(None)
    prev = 0
    while True:
        hi = len(tables)
        if prev == hi:
            return tables, parents, False
        for i in range(hi):
            g = tables[i]
            for j in range(max(i, prev), hi):
                h = tables[j]
                t = tuple(table[g[k] * n + h[k]] for k in range(nn))
                if t not in index:
                    index[t] = len(tables)
                    tables.append(t)
                    parents.append((i, j))
                t = tuple(table[h[k] * n + g[k]] for k in range(nn))
                if t not in index:
                    index[t] = len(tables)
                    tables.append(t)
                    parents.append((j, i))
                if len(tables) > cap:
                    return tables, parents, True
        prev = hi
