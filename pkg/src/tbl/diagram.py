"""Closed-braid diagrams and classical invariants from the checkerboard (Goeritz) form."""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .braid import BraidWord
from .errors import UnsupportedInput
from .linalg import IntSymMatrix, int_det, symmetric_signature


@dataclass(frozen=True)
class Crossing:
    position: int  # 1-based time along the word
    level: int
    sign: int


@dataclass(frozen=True)
class Arc:
    """Strand segment at braid position ``strand`` leaving crossing ``start``.

    ``start`` and ``end`` are 0-based crossing indices; both are None for a strand
    that meets no crossing. ``wraps`` marks arcs passing through the closure.
    """

    ident: int
    strand: int
    start: Optional[int]
    end: Optional[int]
    wraps: bool


@dataclass(frozen=True)
class LinkDiagram:
    strands: int
    crossings: Tuple[Crossing, ...]
    arcs: Tuple[Arc, ...]
    in_arcs: Tuple[Tuple[int, int], ...]
    out_arcs: Tuple[Tuple[int, int], ...]
    components: int
    word: BraidWord

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for c in self.crossings if c.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for c in self.crossings if c.sign < 0)

    def closure_arc(self, strand: int) -> int:
        """Arc at ``strand`` that runs through the closure."""
        for a in self.arcs:
            if a.strand == strand and (a.wraps or a.start is None):
                return a.ident
        raise AssertionError("every strand has a closure arc")


def permutation_cycles(strands: int, letters) -> int:
    perm = list(range(strands))
    for k in letters:
        i = abs(k)
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    seen = [False] * strands
    count = 0
    for s in range(strands):
        if seen[s]:
            continue
        count += 1
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
    return count


def close_braid(w: BraidWord) -> LinkDiagram:
    """Diagram of the braid closure.

    Crossing ``t`` at level ``i`` touches positions ``i-1`` and ``i`` (0-based);
    its outgoing arcs have ids ``2t`` and ``2t+1``. A strand with no crossing
    gets the free arc ``2n + strand``.
    """
    b = w.strands
    n = len(w.letters)
    crossings = tuple(Crossing(t + 1, abs(k), 1 if k > 0 else -1) for t, k in enumerate(w.letters))
    touching: Dict[int, List[int]] = {p: [] for p in range(b)}
    for t, k in enumerate(w.letters):
        touching[abs(k) - 1].append(t)
        touching[abs(k)].append(t)
    arcs: List[Arc] = []
    ends: Dict[Tuple[int, int], int] = {}  # (crossing, side) -> arc ending there
    by_id: Dict[int, Arc] = {}
    for t, k in enumerate(w.letters):
        lo = abs(k) - 1
        for side in (0, 1):
            p = lo + side
            ts = touching[p]
            j = ts.index(t)
            nxt = ts[(j + 1) % len(ts)]
            arc = Arc(2 * t + side, p, t, nxt, nxt <= t)
            by_id[arc.ident] = arc
            nside = 0 if abs(w.letters[nxt]) - 1 == p else 1
            ends[(nxt, nside)] = arc.ident
    for p in range(b):
        if not touching[p]:
            arc = Arc(2 * n + p, p, None, None, True)
            by_id[arc.ident] = arc
    arcs = [by_id[k] for k in sorted(by_id)]
    in_arcs = tuple((ends[(t, 0)], ends[(t, 1)]) for t in range(n))
    out_arcs = tuple((2 * t, 2 * t + 1) for t in range(n))
    return LinkDiagram(b, crossings, tuple(arcs), in_arcs, out_arcs,
                       permutation_cycles(b, w.letters), w)


def is_alternating_braid_diagram(w: BraidWord) -> bool:
    signs: Dict[int, int] = {}
    for k in w.letters:
        s = 1 if k > 0 else -1
        if signs.setdefault(abs(k), s) != s:
            return False
    for i, s in signs.items():
        if signs.get(i + 1, -s) == s:
            return False
    return True


def split_blocks(w: BraidWord) -> List[Tuple[int, int]]:
    """Maximal runs ``(lo, hi)`` of positions joined by occupied levels."""
    used = w.levels()
    blocks = []
    lo = 0
    for p in range(1, w.strands):
        if p not in used:
            blocks.append((lo, p - 1))
            lo = p
    blocks.append((lo, w.strands - 1))
    return blocks


def split_components(w: BraidWord) -> List[BraidWord]:
    """The word restricted to each split block, with levels renumbered from 1."""
    out = []
    for lo, hi in split_blocks(w):
        letters = tuple((abs(k) - lo) * (1 if k > 0 else -1)
                        for k in w.letters if lo < abs(k) <= hi)
        out.append(BraidWord(hi - lo + 1, letters))
    return out


@dataclass(frozen=True)
class GoeritzData:
    matrix: IntSymMatrix
    mu: int
    split_components: int = 1


def _goeritz_connected(w: BraidWord, alternate: bool, drop: int = 0) -> Tuple[List[List[int]], int]:
    """Goeritz matrix of a diagram with every level occupied.

    Gap ``j`` lies between positions ``j-1`` and ``j``; gap ``b`` is the unbounded
    region and is black. A crossing in a white gap joins the regions on either
    side of it in time; a crossing in a black gap joins the white gaps above and
    below and counts toward ``mu``.
    """
    b = w.strands
    levels: Dict[int, List[int]] = {}
    for t, k in enumerate(w.letters):
        levels.setdefault(abs(k), []).append(t)

    def white(j):
        return ((b - j) % 2 == 1) != alternate

    def region(j, t, after=False):
        ts = levels.get(j) if 0 < j < b else None
        if not ts:
            return (j, 0)
        before = [x for x in ts if x < t or (after and x == t)]
        return (j, before[-1] if before else ts[-1])

    edges = []
    mu = 0
    for t, k in enumerate(w.letters):
        i = abs(k)
        s = 1 if k > 0 else -1
        if white(i):
            edges.append((region(i, t), region(i, t, True), -s))
        else:
            edges.append((region(i - 1, t), region(i + 1, t), s))
            mu += s
    regions = set()
    for j in range(b + 1):
        if not white(j):
            continue
        if 0 < j < b and levels.get(j):
            regions.update((j, x) for x in levels[j])
        else:
            regions.add((j, 0))
    order = sorted(regions)
    idx = {r: a for a, r in enumerate(order)}
    m = len(order)
    g = [[0] * m for _ in range(m)]
    for u, v, eta in edges:
        if u == v:
            continue
        a, c = idx[u], idx[v]
        g[a][c] -= eta
        g[c][a] -= eta
    for a in range(m):
        g[a][a] = -sum(g[a][c] for c in range(m) if c != a)
    if m == 0:
        return [], mu
    drop %= m
    return [row[:drop] + row[drop + 1:] for k, row in enumerate(g) if k != drop], mu


def goeritz(d: LinkDiagram, alternate: bool = False, drop: int = 0) -> GoeritzData:
    """Goeritz form with the unbounded region black (``alternate`` flips the coloring).

    A split diagram is handled one split block at a time; the blocks are combined
    block-diagonally with one zero row per extra block, so the cokernel still
    presents H1 of the double branched cover. ``drop`` picks which white
    region of each block is deleted (the first by default).
    """
    pieces = split_components(d.word)
    blocks = []
    mu = 0
    for piece in pieces:
        g, m = _goeritz_connected(piece, alternate, drop)
        blocks.append(g)
        mu += m
    blocks.extend([[0]] for _ in range(len(pieces) - 1))
    size = sum(len(g) for g in blocks)
    out = [[0] * size for _ in range(size)]
    off = 0
    for g in blocks:
        for i, row in enumerate(g):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(g)
    return GoeritzData(IntSymMatrix(tuple(map(tuple, out))), mu, len(pieces))


def determinant(d: LinkDiagram) -> int:
    """Link determinant; 0 for split links."""
    return abs(int_det(goeritz(d).matrix.entries))


def signature(d: LinkDiagram) -> int:
    """Knot signature, negative for positive knots (right trefoil gives -2)."""
    if d.components != 1:
        raise UnsupportedInput(f"signature is implemented for knots only; diagram has "
                               f"{d.components} components")
    g = goeritz(d)
    return symmetric_signature(g.matrix) - g.mu
