"""Khovanov homology over GF(2) by scanning the braid one crossing at a time.

Partial closures are complexes of crossingless (b, b)-tangles with dotted
cobordisms as differentials. Closed loops are removed by delooping and
identity entries are cancelled by Gaussian elimination after every crossing,
so the complex stays small. The closure is evaluated with the Frobenius
algebra GF(2)[X]/X^2, where 1 plays the role of u_+ and X of u_-.

A loop-free tangle is a matching ``m`` on points ``0..2b-1``: left endpoints
``0..b-1`` (start of the braid), right endpoints ``b..2b-1``. A morphism
between tangles ``A`` and ``B`` is a set of dot patterns; each pattern is a
bitmask over the cycles of ``A`` union ``B`` (bit = smallest point of the
cycle), meaning the disjoint union of one disk per cycle, dotted where set.
"""
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .braid import BraidWord
from .linalg import SparseGF2Matrix, gf2_rank

Matching = Tuple[int, ...]
Morphism = frozenset

ONE, X = 0, 1  # delooping / closure labels: ONE ~ u_+ (q + 1), X ~ u_- (q - 1)


def identity_tangle(b: int) -> Matching:
    return tuple(list(range(b, 2 * b)) + list(range(b)))


def turnback_tangle(b: int, level: int) -> Matching:
    m = list(identity_tangle(b))
    a = level - 1
    m[a], m[a + 1] = a + 1, a
    m[b + a], m[b + a + 1] = b + a + 1, b + a
    return tuple(m)


def cycles(m1: Matching, m2: Matching) -> List[int]:
    """For each point, the smallest point on its cycle of ``m1`` union ``m2``."""
    n = len(m1)
    out = [-1] * n
    for start in range(n):
        if out[start] >= 0:
            continue
        members = []
        p = start
        while True:
            members.append(p)
            q = m1[p]
            members.append(q)
            p = m2[q]
            if p == start:
                break
        low = min(members)
        for x in members:
            out[x] = low
    return out


class _UF:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class _Surface:
    """Component bookkeeping for a glued surface built from disks.

    ``pieces`` are disks; each glue along an arc lowers the Euler
    characteristic by one. ``boundary`` lists, per boundary circle, the piece
    it lies on. After :meth:`finish`, components with positive genus make the
    whole surface vanish.
    """

    def __init__(self, npieces: int, used=None):
        self.n = npieces
        self.used = sorted(used) if used is not None else list(range(npieces))
        self.uf = _UF(npieces)
        self.glue_at: List[int] = []
        self.boundary: List[int] = []

    def glue(self, a: int, b: int):
        self.uf.union(a, b)
        self.glue_at.append(a)

    def finish(self):
        roots = sorted({self.uf.find(p) for p in self.used})
        index = {r: k for k, r in enumerate(roots)}
        self.comp = [index.get(self.uf.find(p), -1) for p in range(self.n)]
        k = len(roots)
        chi = [0] * k
        for p in self.used:
            chi[self.comp[p]] += 1
        for a in self.glue_at:
            chi[self.comp[a]] -= 1
        bnd: List[List[int]] = [[] for _ in range(k)]
        for j, p in enumerate(self.boundary):
            bnd[self.comp[p]].append(j)
        self.ncomp = k
        self.bnd = bnd
        self.vanishes = any(2 - chi[c] - len(bnd[c]) != 0 for c in range(k))
        return self

    def outputs(self, dots: Sequence[int]) -> List[int]:
        """Dot patterns on the boundary circles (bit j = circle j dotted).

        ``dots[c]`` is the dot count of component ``c``.
        """
        if self.vanishes:
            return []
        results = [0]
        for c in range(self.ncomp):
            d = dots[c]
            if d >= 2:
                return []
            circles = self.bnd[c]
            if not circles:
                if d != 1:
                    return []
                continue
            full = 0
            for j in circles:
                full |= 1 << j
            if d == 1:
                options = [full]
            else:
                options = [full ^ (1 << j) for j in circles]
            results = [r | o for r in results for o in options]
        return results


_VCACHE: Dict[Tuple[Matching, Matching, Matching], tuple] = {}


def _vertical_structure(a: Matching, b: Matching, c: Matching):
    key = (a, b, c)
    hit = _VCACHE.get(key)
    if hit is not None:
        return hit
    n = len(a)
    cab, cbc, cac = cycles(a, b), cycles(b, c), cycles(a, c)
    # pieces: f-disks at ids 0..n-1, g-disks at n..2n-1
    surf = _Surface(2 * n, set(cab) | {n + p for p in cbc})
    for p in range(n):
        if p < b[p]:
            surf.glue(cab[p], n + cbc[p])
    out_ids = sorted(set(cac))
    for low in out_ids:
        surf.boundary.append(cab[low])
    surf.finish()
    fcomp = [0] * n
    gcomp = [0] * n
    for p in set(cab):
        fcomp[p] = surf.comp[p]
    for p in set(cbc):
        gcomp[p] = surf.comp[n + p]
    hit = (surf, set(cab), set(cbc), fcomp, gcomp, out_ids)
    _VCACHE[key] = hit
    return hit


def _dot_counts(ncomp, pattern, ids, comp, counts):
    for p in ids:
        if pattern >> p & 1:
            counts[comp[p]] += 1


def compose(a: Matching, b: Matching, c: Matching, f: Morphism, g: Morphism) -> Morphism:
    """``g`` after ``f`` for ``f: a -> b`` and ``g: b -> c``."""
    if not f or not g:
        return frozenset()
    surf, fids, gids, fcomp, gcomp, out_ids = _vertical_structure(a, b, c)
    if surf.vanishes:
        return frozenset()
    acc = set()
    for pf in f:
        for pg in g:
            counts = [0] * surf.ncomp
            _dot_counts(surf.ncomp, pf, fids, fcomp, counts)
            _dot_counts(surf.ncomp, pg, gids, gcomp, counts)
            for bits in surf.outputs(counts):
                pat = 0
                for j, low in enumerate(out_ids):
                    if bits >> j & 1:
                        pat |= 1 << low
                acc ^= {pat}
    return frozenset(acc)


def concat(d: Matching, t: Matching) -> Tuple[Matching, List[Tuple[int, ...]]]:
    """Glue the right side of ``d`` to the left side of ``t``.

    Returns the new matching and the closed loops, each given by the sorted
    middle positions it passes through.
    """
    n = len(d)
    b = n // 2
    out = [-1] * n

    def walk(side, p):
        # side 0: point p of d, side 1: point p of t; move along arcs until outer
        while True:
            if side == 0:
                q = d[p]
                if q < b:
                    return q
                side, p = 1, q - b
            else:
                q = t[p]
                if q >= b:
                    return q
                side, p = 0, q + b

    for p in range(b):
        if out[p] < 0:
            q = walk(0, p)
            out[p] = q
            out[q] = p
    for p in range(b, n):
        if out[p] < 0:
            q = walk(1, p)
            out[p] = q
            out[q] = p
    seen = [False] * b
    # middle points already used by outer paths
    for p in range(b):
        side, x = 0, p
        while True:
            if side == 0:
                q = d[x]
                if q < b:
                    break
                seen[q - b] = True
                side, x = 1, q - b
                q2 = t[x]
                if q2 >= b:
                    break
                seen[q2] = True
                side, x = 0, q2 + b
            else:
                break
    for p in range(b, n):
        x = p
        while True:
            q = t[x]
            if q >= b:
                break
            seen[q] = True
            q2 = d[q + b]
            if q2 < b:
                break
            seen[q2 - b] = True
            x = q2 - b
    loops = []
    for k in range(b):
        if seen[k]:
            continue
        members = []
        x = k
        while True:
            seen[x] = True
            members.append(x)
            y = t[x]  # t-left point y
            seen[y] = True
            members.append(y)
            x = d[y + b] - b
            if x == k:
                break
        loops.append(tuple(sorted(set(members))))
    loops.sort()
    return tuple(out), loops


_HCACHE: Dict[tuple, tuple] = {}


def _horizontal_structure(d1, d2, t1, t2):
    key = (d1, d2, t1, t2)
    hit = _HCACHE.get(key)
    if hit is not None:
        return hit
    n = len(d1)
    b = n // 2
    m1, loops1 = concat(d1, t1)
    m2, loops2 = concat(d2, t2)
    cd, ct = cycles(d1, d2), cycles(t1, t2)
    cm = cycles(m1, m2)
    nl1, nl2 = len(loops1), len(loops2)
    # pieces: f-disks 0..n-1, g-disks n..2n-1, source caps, target caps
    surf = _Surface(2 * n + nl1 + nl2, set(cd) | {n + p for p in ct}
                    | set(range(2 * n, 2 * n + nl1 + nl2)))
    for k in range(b):
        surf.glue(cd[b + k], n + ct[k])
    for j, loop in enumerate(loops1):
        surf.uf.union(2 * n + j, cd[b + loop[0]])
    for j, loop in enumerate(loops2):
        surf.uf.union(2 * n + nl1 + j, cd[b + loop[0]])
    out_ids = sorted(set(cm))
    for low in out_ids:
        surf.boundary.append(cd[low] if low < b else n + ct[low])
    surf.finish()
    hit = (surf, m1, loops1, m2, loops2, sorted(set(cd)), sorted(set(ct)), out_ids)
    _HCACHE[key] = hit
    return hit


def tensor(d1: Matching, d2: Matching, t1: Matching, t2: Matching, f: Morphism, g: Morphism):
    """Horizontal composite of ``f: d1 -> d2`` and ``g: t1 -> t2``, delooped.

    Returns ``(m1, loops1, m2, loops2, entries)`` where ``entries`` maps
    ``(source labels, target labels)`` to a morphism ``m1 -> m2``.
    """
    surf, m1, loops1, m2, loops2, fids, gids, out_ids = _horizontal_structure(d1, d2, t1, t2)
    entries: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], set] = {}
    if surf.vanishes or not f or not g:
        return m1, loops1, m2, loops2, {}
    n = len(d1)
    nl1, nl2 = len(loops1), len(loops2)
    comp = surf.comp
    for pf in f:
        for pg in g:
            base = [0] * surf.ncomp
            for p in fids:
                if pf >> p & 1:
                    base[comp[p]] += 1
            for p in gids:
                if pg >> p & 1:
                    base[comp[n + p]] += 1
            for ls in product((ONE, X), repeat=nl1):
                for lt in product((ONE, X), repeat=nl2):
                    counts = list(base)
                    for j, lab in enumerate(ls):
                        if lab == X:  # dotted cup
                            counts[comp[2 * n + j]] += 1
                    for j, lab in enumerate(lt):
                        if lab == ONE:  # dotted cap
                            counts[comp[2 * n + nl1 + j]] += 1
                    outs = surf.outputs(counts)
                    if not outs:
                        continue
                    cell = entries.setdefault((ls, lt), set())
                    for bits in outs:
                        pat = 0
                        for j, low in enumerate(out_ids):
                            if bits >> j & 1:
                                pat |= 1 << low
                        cell ^= {pat}
    clean = {k: frozenset(v) for k, v in entries.items() if v}
    return m1, loops1, m2, loops2, clean


def _label_shift(labels) -> int:
    return sum(1 if lab == ONE else -1 for lab in labels)


class TangleComplex:
    """Complex of loop-free tangles; objects are ``(matching, h, q)``."""

    def __init__(self, b: int):
        self.b = b
        self.objects: List[Tuple[Matching, int, int]] = [(identity_tangle(b), 0, 0)]
        self.d: Dict[int, Dict[int, Morphism]] = {0: {}}

    def add_crossing(self, k: int):
        b = self.b
        ident = identity_tangle(b)
        turn = turnback_tangle(b, abs(k))
        res = (ident, turn) if k > 0 else (turn, ident)
        saddle = frozenset([0])
        new_objects: List[Tuple[Matching, int, int]] = []
        index: Dict[tuple, int] = {}
        for o, (m, h, q) in enumerate(self.objects):
            for r in (0, 1):
                mm, loops = concat(m, res[r])
                for labs in product((ONE, X), repeat=len(loops)):
                    index[(o, r, labs)] = len(new_objects)
                    new_objects.append((mm, h + r, q + r + _label_shift(labs)))
        nd: Dict[int, Dict[int, Morphism]] = {i: {} for i in range(len(new_objects))}

        def add(src, tgt, mor):
            row = nd[src]
            cur = row.get(tgt)
            val = mor if cur is None else cur ^ mor
            if val:
                row[tgt] = frozenset(val)
            elif cur is not None:
                del row[tgt]

        for o1, row in self.d.items():
            m1 = self.objects[o1][0]
            for o2, f in row.items():
                m2 = self.objects[o2][0]
                for r in (0, 1):
                    t = res[r]
                    idt = frozenset([0])
                    _, _, _, _, entries = tensor(m1, m2, t, t, f, idt)
                    for (ls, lt), mor in entries.items():
                        add(index[(o1, r, ls)], index[(o2, r, lt)], mor)
        for o, (m, _, _) in enumerate(self.objects):
            _, _, _, _, entries = tensor(m, m, res[0], res[1], frozenset([0]), saddle)
            for (ls, lt), mor in entries.items():
                add(index[(o, 0, ls)], index[(o, 1, lt)], mor)
        self.objects = new_objects
        self.d = nd
        self.reduce()

    def reduce(self):
        """Cancel identity entries by Gaussian elimination, then renumber."""
        objs = self.objects
        out = self.d
        inn: Dict[int, set] = {i: set() for i in out}
        for s, row in out.items():
            for t in row:
                inn[t].add(s)
        ident = frozenset([0])
        alive = set(out)
        progress = True
        while progress:
            progress = False
            for x in sorted(alive):
                if x not in alive:
                    continue
                mx, hx, qx = objs[x]
                target = None
                for y, mor in out[x].items():
                    my, hy, qy = objs[y]
                    if my == mx and qy == qx and mor == ident:
                        target = y
                        break
                if target is None:
                    continue
                y = target
                sources = [u for u in inn[y] if u != x]
                targets = [(w, g) for w, g in out[x].items() if w != y]
                for u in sources:
                    delta = out[u][y]
                    mu = objs[u][0]
                    for w, gam in targets:
                        comp = compose(mu, mx, objs[w][0], delta, gam)
                        if not comp:
                            continue
                        cur = out[u].get(w)
                        val = comp if cur is None else cur ^ comp
                        if val:
                            out[u][w] = frozenset(val)
                            inn[w].add(u)
                        else:
                            del out[u][w]
                            inn[w].discard(u)
                for z in (x, y):
                    for w in list(out[z]):
                        inn[w].discard(z)
                    for u in list(inn[z]):
                        del out[u][z]
                    del out[z]
                    del inn[z]
                    alive.discard(z)
                progress = True
        order = sorted(alive)
        renum = {old: k for k, old in enumerate(order)}
        self.objects = [objs[i] for i in order]
        self.d = {renum[s]: {renum[t]: mor for t, mor in sorted(out[s].items())} for s in order}


def _closure_circles(m: Matching) -> List[int]:
    b = len(m) // 2
    uf = _UF(2 * b)
    for p in range(2 * b):
        uf.union(p, m[p])
    for p in range(b):
        uf.union(p, b + p)
    return [uf.find(p) for p in range(2 * b)]


def _closed_map(m1: Matching, m2: Matching, pattern: int, c1: List[int], c2: List[int]):
    """Linear map of a closed-up dotted cobordism, as a function on label tuples."""
    n = len(m1)
    b = n // 2
    cyc = cycles(m1, m2)
    surf = _Surface(n, set(cyc))
    for p in range(b):
        surf.glue(cyc[p], cyc[b + p])
    src = sorted(set(c1))
    tgt = sorted(set(c2))
    for low in src:
        surf.boundary.append(cyc[low])
    for low in tgt:
        surf.boundary.append(cyc[low])
    surf.finish()
    counts0 = [0] * surf.ncomp
    for p in set(cyc):
        if pattern >> p & 1:
            counts0[surf.comp[p]] += 1
    ns = len(src)

    def apply(labels: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        if surf.vanishes:
            return []
        counts = list(counts0)
        for j, lab in enumerate(labels):
            if lab == X:
                counts[surf.comp[surf.boundary[j]]] += 1
        # inputs are absorbed like dots; outputs follow the coproduct rule
        results = [[None] * len(tgt)]
        for c in range(surf.ncomp):
            d = counts[c]
            if d >= 2:
                return []
            outs = [j - ns for j in surf.bnd[c] if j >= ns]
            if not outs:
                if d != 1:
                    return []
                continue
            if d == 1:
                options = [{j: X for j in outs}]
            else:
                options = [{j: (ONE if j == k else X) for j in outs} for k in outs]
            nxt = []
            for r in results:
                for opt in options:
                    rr = list(r)
                    for j, lab in opt.items():
                        rr[j] = lab
                    nxt.append(rr)
            results = nxt
        return [tuple(r) for r in results]

    return apply


def khovanov_table(w: BraidWord, reduced: bool = True, marked_strand: int = 0) -> Dict[Tuple[int, int], int]:
    """Nonzero dims of Khovanov homology of the closure, graded like the cube complex."""
    b = w.strands
    cx = TangleComplex(b)
    for k in w.letters:
        cx.add_crossing(k)
    n_plus, n_minus = w.n_plus, w.n_minus
    gens: Dict[Tuple[int, int], List[Tuple[int, Tuple[int, ...]]]] = {}
    circles = []
    for o, (m, h, q) in enumerate(cx.objects):
        cl = _closure_circles(m)
        circles.append(cl)
        ids = sorted(set(cl))
        marked = ids.index(cl[marked_strand])
        for labs in product((ONE, X), repeat=len(ids)):
            if reduced and labs[marked] != X:
                continue
            key = (h - n_minus, q + _label_shift(labs) + n_plus - 2 * n_minus)
            gens.setdefault(key, []).append((o, labs))
    where = {}
    for key, lst in gens.items():
        for k, g in enumerate(lst):
            where[g] = (key, k)
    cols: Dict[Tuple[int, int], List[int]] = {key: [0] * len(lst) for key, lst in gens.items()}
    for o1, row in cx.d.items():
        m1 = cx.objects[o1][0]
        for o2, mor in row.items():
            m2 = cx.objects[o2][0]
            maps = [_closed_map(m1, m2, pat, circles[o1], circles[o2]) for pat in sorted(mor)]
            ids1 = sorted(set(circles[o1]))
            marked = ids1.index(circles[o1][marked_strand])
            for labs in product((ONE, X), repeat=len(ids1)):
                if reduced and labs[marked] != X:
                    continue
                key, col = where[(o1, labs)]
                for fmap in maps:
                    for img in fmap(labs):
                        tkey, trow = where[(o2, img)]
                        cols[key][col] ^= 1 << trow
    dims = {}
    ranks = {}
    for (i, q), lst in gens.items():
        tgt = gens.get((i + 1, q), [])
        ranks[(i, q)] = gf2_rank(SparseGF2Matrix.from_columns(len(tgt), cols[(i, q)])) if tgt else 0
    for (i, q), lst in gens.items():
        dim = len(lst) - ranks[(i, q)] - ranks.get((i - 1, q), 0)
        if dim:
            dims[(i, q)] = dim
    return dict(sorted(dims.items()))
