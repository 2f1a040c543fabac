"""Finite groupoids as flat operation tables, plus the elementary toolkit:
subuniverses, congruences, products, quotients, homomorphism and
isomorphism search, and the two-element subquotient gates.

Elements are dense indices 0..n-1 throughout; names are presentation-layer
only and never affect equality.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from . import _kernels as K
from .errors import CongruenceError, SizeCapError, TableFormatError

SUBQUOTIENT_CAP = 8


@dataclass(frozen=True)
class Groupoid:
    n: int
    table: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def op(self, a: int, b: int) -> int:
        return self.table[a * self.n + b]

    def row(self, a: int) -> tuple[int, ...]:
        return self.table[a * self.n : (a + 1) * self.n]

    def name_of(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def __repr__(self):
        return f"Groupoid(n={self.n})"


def make_groupoid(table, names=None) -> Groupoid:
    """Validate and build a Groupoid from a square matrix of element indices."""
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise TableFormatError("empty table")
    flat = []
    for r in rows:
        if len(r) != n:
            raise TableFormatError(f"ragged table: row of length {len(r)}, expected {n}")
        for v in r:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise TableFormatError(f"entry {v!r} out of range 0..{n - 1}")
            flat.append(v)
    if names is not None:
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise TableFormatError(f"{len(names)} names for {n} elements")
        if len(set(names)) != n:
            raise TableFormatError("element names must be distinct")
    return Groupoid(n, tuple(flat), names)


def is_idempotent(g: Groupoid) -> bool:
    return all(g.table[a * g.n + a] == a for a in range(g.n))


def projection_kind(g: Groupoid) -> int | None:
    """1 or 2 if the operation is that projection, else None."""
    n = g.n
    if all(g.table[a * n + b] == a for a in range(n) for b in range(n)):
        return 1
    if all(g.table[a * n + b] == b for a in range(n) for b in range(n)):
        return 2
    return None


def is_projection_algebra(g: Groupoid) -> bool:
    return projection_kind(g) is not None


def opposite(g: Groupoid) -> Groupoid:
    n = g.n
    return Groupoid(n, tuple(g.table[b * n + a] for a in range(n) for b in range(n)), g.names)


def subuniverse_generated(g: Groupoid, seed) -> frozenset[int]:
    """Smallest subset containing `seed` and closed under the operation."""
    seed = list(seed)
    if not seed:
        raise ValueError("seed must be nonempty")
    for a in seed:
        if not 0 <= a < g.n:
            raise ValueError(f"element {a} out of range")
    return frozenset(K.close_subset(g.n, g.table, seed))


def all_subuniverses(g: Groupoid) -> list[frozenset[int]]:
    """Every nonempty closed subset, smallest first. Desk scale (2^n scan)."""
    n = g.n
    out = []
    for mask in range(1, 1 << n):
        elems = [a for a in range(n) if mask >> a & 1]
        if all(mask >> g.table[a * n + b] & 1 for a in elems for b in elems):
            out.append(frozenset(elems))
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def subgroupoid(g: Groupoid, elems) -> Groupoid:
    """Restrict to a closed subset, re-indexed in ascending element order."""
    sub = sorted(set(elems))
    idx = {e: i for i, e in enumerate(sub)}
    m = len(sub)
    table = []
    for a in sub:
        for b in sub:
            c = g.op(a, b)
            if c not in idx:
                raise ValueError(f"{set(elems)} is not closed: {a}·{b} = {c}")
            table.append(idx[c])
    names = tuple(g.name_of(e) for e in sub) if g.names else None
    return Groupoid(m, tuple(table), names)


def product(g: Groupoid, h: Groupoid) -> Groupoid:
    """Direct product; element (a,b) sits at index a*h.n + b."""
    n, m = g.n, h.n
    table = []
    for a in range(n):
        for b in range(m):
            for c in range(n):
                for d in range(m):
                    table.append(g.op(a, c) * m + h.op(b, d))
    names = None
    if g.names and h.names:
        names = tuple(f"{g.names[a]},{h.names[b]}" for a in range(n) for b in range(m))
    return Groupoid(n * m, tuple(table), names)


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks; normalized so each block is sorted and blocks are
    ordered by smallest element."""

    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(blocks) -> "Partition":
        norm = tuple(sorted(tuple(sorted(set(b))) for b in blocks if b))
        seen: set[int] = set()
        for b in norm:
            for e in b:
                if e in seen:
                    raise ValueError(f"element {e} in two blocks")
                seen.add(e)
        return Partition(norm)

    def block_index(self, n: int) -> list[int]:
        idx = [-1] * n
        for i, b in enumerate(self.blocks):
            for e in b:
                if e >= n:
                    raise ValueError(f"element {e} outside universe 0..{n - 1}")
                idx[e] = i
        if any(i < 0 for i in idx):
            raise ValueError("blocks do not cover the universe")
        return idx

    def __len__(self):
        return len(self.blocks)


def is_congruence(g: Groupoid, p: Partition) -> bool:
    n = g.n
    idx = p.block_index(n)
    for b1 in p.blocks:
        for b2 in p.blocks:
            target = idx[g.op(b1[0], b2[0])]
            for a in b1:
                for b in b2:
                    if idx[g.op(a, b)] != target:
                        return False
    return True


def congruence_generated(g: Groupoid, pairs) -> Partition:
    """Smallest congruence relating every given pair."""
    n = g.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    work = [(a, b) for a, b in pairs]
    for a, b in work:
        union(a, b)
    changed = True
    while changed:
        changed = False
        roots = {}
        for e in range(n):
            roots.setdefault(find(e), []).append(e)
        for members in roots.values():
            rep = members[0]
            for other in members[1:]:
                for c in range(n):
                    if union(g.op(rep, c), g.op(other, c)):
                        changed = True
                    if union(g.op(c, rep), g.op(c, other)):
                        changed = True
    blocks: dict[int, list[int]] = {}
    for e in range(n):
        blocks.setdefault(find(e), []).append(e)
    return Partition.from_blocks(blocks.values())


def all_congruences(g: Groupoid) -> list[Partition]:
    """The full congruence lattice: principal congruences closed under join."""
    n = g.n
    discrete = Partition.from_blocks([[e] for e in range(n)])
    found = {discrete}
    principals = []
    for a in range(n):
        for b in range(a + 1, n):
            principals.append(congruence_generated(g, [(a, b)]))
    found.update(principals)
    work = list(found)
    while work:
        p = work.pop()
        for q in principals:
            j = _join(g, p, q)
            if j not in found:
                found.add(j)
                work.append(j)
    return sorted(found, key=lambda p: (len(p.blocks), p.blocks), reverse=True)


def _join(g: Groupoid, p: Partition, q: Partition):
    pairs = [(b[0], e) for b in p.blocks for e in b[1:]]
    pairs += [(b[0], e) for b in q.blocks for e in b[1:]]
    return congruence_generated(g, pairs)


def quotient(g: Groupoid, p: Partition) -> Groupoid:
    """Quotient by a congruence; block i is the i-th block in Partition order
    (blocks ordered by smallest element)."""
    if not is_congruence(g, p):
        raise CongruenceError("partition is not a congruence")
    idx = p.block_index(g.n)
    m = len(p.blocks)
    table = tuple(
        idx[g.op(p.blocks[i][0], p.blocks[j][0])] for i in range(m) for j in range(m)
    )
    names = None
    if g.names:
        names = tuple("{" + ",".join(g.names[e] for e in b) + "}" for b in p.blocks)
    return Groupoid(m, table, names)


def find_homomorphisms(g: Groupoid, h: Groupoid, require_surjective=False,
                       partial_assignment=None) -> list[tuple[int, ...]]:
    """All maps with hom(a·b) = hom(a)·hom(b), extending the partial assignment.

    Backtracking over elements in ascending index order with forward checking;
    results come out in lexicographic order of the image tuple.
    """
    n, m = g.n, h.n
    img = [-1] * n
    if partial_assignment:
        for a, v in dict(partial_assignment).items():
            if not (0 <= a < n and 0 <= v < m):
                raise ValueError(f"partial assignment {a}->{v} out of range")
            img[a] = v
    preimages: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            preimages[g.table[a * n + b]].append((a, b))

    def consistent_at(k):
        vk = img[k]
        for a in range(n):
            va = img[a]
            if va < 0:
                continue
            c = g.table[k * n + a]
            if img[c] >= 0 and h.table[vk * m + va] != img[c]:
                return False
            c = g.table[a * n + k]
            if img[c] >= 0 and h.table[va * m + vk] != img[c]:
                return False
        for a, b in preimages[k]:
            if img[a] >= 0 and img[b] >= 0 and h.table[img[a] * m + img[b]] != vk:
                return False
        return True

    for a in range(n):
        if img[a] >= 0 and not consistent_at(a):
            return []

    out = []

    def search(k):
        while k < n and img[k] >= 0:
            k += 1
        if k == n:
            if not require_surjective or len(set(img)) == m:
                out.append(tuple(img))
            return
        for v in range(m):
            img[k] = v
            if consistent_at(k):
                search(k + 1)
            img[k] = -1

    search(0)
    return out


def _iso_profile(g: Groupoid, a: int):
    n = g.n
    row = g.row(a)
    col = tuple(g.table[b * n + a] for b in range(n))
    return (
        tuple(sorted(Counter(row).values())),
        tuple(sorted(Counter(col).values())),
        row.count(a),
        col.count(a),
        sum(1 for b in range(n) if row[b] == b),
        sum(1 for b in range(n) if col[b] == b),
        g.table[a * n + a] == a,
    )


def is_isomorphic(g: Groupoid, h: Groupoid):
    """A witness bijection commuting with the tables, or None.

    Backtracking with element-profile pruning; the lexicographically
    smallest witness is returned.
    """
    if g.n != h.n:
        return None
    n = g.n
    gp = [_iso_profile(g, a) for a in range(n)]
    hp = [_iso_profile(h, a) for a in range(n)]
    if sorted(gp) != sorted(hp):
        return None
    candidates = [[b for b in range(n) if hp[b] == gp[a]] for a in range(n)]
    img = [-1] * n
    used = [False] * n

    def consistent_at(k):
        vk = img[k]
        for a in range(n):
            va = img[a]
            if va < 0:
                continue
            if img[g.table[k * n + a]] >= 0 and h.table[vk * n + va] != img[g.table[k * n + a]]:
                return False
            if img[g.table[a * n + k]] >= 0 and h.table[va * n + vk] != img[g.table[a * n + k]]:
                return False
        return True

    def search(k):
        if k == n:
            return True
        for v in candidates[k]:
            if used[v]:
                continue
            img[k] = v
            used[v] = True
            if consistent_at(k) and search(k + 1):
                return True
            img[k] = -1
            used[v] = False
        return False

    return tuple(img) if search(0) else None


def two_element_type(g: Groupoid, a: int, b: int) -> str:
    """Kind of the restricted table on {a, b}.

    One of not-closed / projection-first / projection-second /
    semilattice-to-a / semilattice-to-b / other.
    """
    if a == b:
        raise ValueError("need two distinct elements")
    pair = {a, b}
    if {g.op(a, a), g.op(b, b), g.op(a, b), g.op(b, a)} - pair:
        return "not-closed"
    if g.op(a, a) != a or g.op(b, b) != b:
        return "other"
    ab, ba = g.op(a, b), g.op(b, a)
    if (ab, ba) == (a, b):
        return "projection-first"
    if (ab, ba) == (b, a):
        return "projection-second"
    if (ab, ba) == (a, a):
        return "semilattice-to-a"
    return "semilattice-to-b"


def _two_block_subquotient(g: Groupoid, want_projection: bool) -> bool:
    """Search pair-generated subuniverses for a 2-block congruence whose
    quotient is a projection algebra (or a semilattice).

    Pair-generated subuniverses suffice: restricting such a congruence of
    B to Sg{p, q} with p, q in different blocks yields another one.
    """
    if g.n > SUBQUOTIENT_CAP:
        raise SizeCapError(
            f"two-element subquotient search is size-capped at n <= {SUBQUOTIENT_CAP}"
        )
    n = g.n
    seen_subs = set()
    for a in range(n):
        for b in range(a + 1, n):
            sub = K.close_subset(n, g.table, (a, b))
            if len(sub) < 2 or sub in seen_subs:
                continue
            seen_subs.add(sub)
            m = len(sub)
            local = [[g.op(x, y) for y in sub] for x in sub]
            pos = {e: i for i, e in enumerate(sub)}
            for mask in range(1, 1 << (m - 1)):
                inq = [(mask >> (i - 1)) & 1 if i else 0 for i in range(m)]
                proj1 = proj2 = semi_p = semi_q = True
                for i in range(m):
                    for j in range(m):
                        k = inq[pos[local[i][j]]]
                        if inq[i] == inq[j]:
                            if k != inq[i]:
                                proj1 = proj2 = semi_p = semi_q = False
                        else:
                            if k != inq[i]:
                                proj1 = False
                            if k != inq[j]:
                                proj2 = False
                            if k != 0:
                                semi_p = False
                            if k != 1:
                                semi_q = False
                    if not (proj1 or proj2 or semi_p or semi_q):
                        break
                if want_projection and (proj1 or proj2):
                    return True
                if not want_projection and (semi_p or semi_q):
                    return True
    return False


def has_two_element_projection_subquotient(g: Groupoid) -> bool:
    """Taylor gate, complemented: G is Taylor iff this returns False."""
    return _two_block_subquotient(g, want_projection=True)


def has_two_element_semilattice_subquotient(g: Groupoid) -> bool:
    return _two_block_subquotient(g, want_projection=False)


# ---------------------------------------------------------------------------
# Operation-table file formats


def parse_table_text(text: str) -> Groupoid:
    """Plain-text format: first line n, then n whitespace-separated rows."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise TableFormatError("empty input")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise TableFormatError(f"first line must be the size, got {lines[0]!r}") from None
    if n <= 0:
        raise TableFormatError("size must be positive")
    if len(lines) != n + 1:
        raise TableFormatError(f"expected {n} rows after the size line, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != n:
            raise TableFormatError(f"ragged row {ln!r}: expected {n} entries")
        try:
            rows.append([int(t) for t in toks])
        except ValueError:
            raise TableFormatError(f"non-integer entry in row {ln!r}") from None
    return make_groupoid(rows)


def parse_table_json(text: str) -> Groupoid:
    """JSON format: {"size": n, "table": [[...], ...], "names": optional}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "table" not in doc:
        raise TableFormatError('expected an object with a "table" field')
    table = doc["table"]
    if not isinstance(table, list):
        raise TableFormatError('"table" must be a list of rows')
    if "size" in doc and doc["size"] != len(table):
        raise TableFormatError(f'"size" is {doc["size"]} but the table has {len(table)} rows')
    return make_groupoid(table, names=doc.get("names"))


def parse_table(text: str) -> Groupoid:
    """Sniff the format: JSON if the first non-space character is '{'."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_table_json(text)
    return parse_table_text(text)


def format_table_text(g: Groupoid) -> str:
    rows = "\n".join(" ".join(str(v) for v in g.row(a)) for a in range(g.n))
    return f"{g.n}\n{rows}\n"


def format_table_json(g: Groupoid) -> str:
    doc = {"size": g.n, "table": [list(g.row(a)) for a in range(g.n)]}
    if g.names:
        doc["names"] = list(g.names)
    return json.dumps(doc, sort_keys=True)
