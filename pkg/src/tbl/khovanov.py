"""Khovanov cube of resolutions over GF(2), reduced homology and the transverse class psi."""
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import LinkDiagram
from .errors import ResourceCapExceeded, UnsupportedInput
from .linalg import SparseGF2Matrix, gf2_in_image, gf2_rank

FULL_CAP = 20
WINDOW_CAP = 24

MINUS, PLUS = 0, 1  # circle labels u_-, u_+

Bigrading = Tuple[int, int]
Generator = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (state bits, labels by circle)


@dataclass(frozen=True)
class ResolutionState:
    bits: Tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.bits)


@dataclass(frozen=True)
class CircleSet:
    count: int
    membership: Tuple[int, ...]  # arc id -> circle id, -1 for unused ids
    representatives: Tuple[int, ...]  # smallest arc of each circle
    marked_circle: Optional[int] = None


def _bits(v) -> Tuple[int, ...]:
    return v.bits if isinstance(v, ResolutionState) else tuple(v)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def resolve(d: LinkDiagram, v, marked_strand: int = 0) -> CircleSet:
    """Circles of the complete smoothing ``v``.

    At a positive crossing the 0-smoothing follows the orientation (parallel
    strands); at a negative crossing the 1-smoothing does.
    """
    bits = _bits(v)
    if len(bits) != d.n:
        raise UnsupportedInput(f"state has {len(bits)} bits, diagram has {d.n} crossings")
    size = 2 * d.n + d.strands
    parent = list(range(size))

    def union(a, b):
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    for t, c in enumerate(d.crossings):
        ia, ib = d.in_arcs[t]
        oa, ob = d.out_arcs[t]
        if (bits[t] == 0) == (c.sign > 0):
            union(ia, oa)
            union(ib, ob)
        else:
            union(ia, ib)
            union(oa, ob)
    present = [a.ident for a in d.arcs]
    roots = sorted({_find(parent, a) for a in present})
    # union by smaller id keeps each root equal to the smallest member arc
    cid = {r: k for k, r in enumerate(roots)}
    membership = [-1] * size
    for a in present:
        membership[a] = cid[_find(parent, a)]
    marked = membership[d.closure_arc(marked_strand)]
    return CircleSet(len(roots), tuple(membership), tuple(roots), marked)


def oriented_state(d: LinkDiagram) -> ResolutionState:
    return ResolutionState(tuple(0 if c.sign > 0 else 1 for c in d.crossings))


def _q_of(labels: Sequence[int], weight: int, n_plus: int, n_minus: int) -> int:
    plus = sum(labels)
    return 2 * plus - len(labels) + weight + n_plus - 2 * n_minus


class _Cube:
    """Cached resolutions and edge maps for one diagram."""

    def __init__(self, d: LinkDiagram, marked_strand: int = 0):
        self.d = d
        self.marked_strand = marked_strand
        self._circles: Dict[Tuple[int, ...], CircleSet] = {}

    def circles(self, bits: Tuple[int, ...]) -> CircleSet:
        cs = self._circles.get(bits)
        if cs is None:
            cs = resolve(self.d, bits, self.marked_strand)
            self._circles[bits] = cs
        return cs

    def edge(self, bits: Tuple[int, ...], t: int, labels: Tuple[int, ...]):
        """Images of a generator under the edge map flipping crossing ``t`` from 0 to 1."""
        target = bits[:t] + (1,) + bits[t + 1:]
        src = self.circles(bits)
        dst = self.circles(target)
        arcs = self.d.in_arcs[t] + self.d.out_arcs[t]
        new = [None] * dst.count
        touched_src = {src.membership[a] for a in arcs}
        touched_dst = sorted({dst.membership[a] for a in arcs})
        for c in range(src.count):
            if c not in touched_src:
                new[dst.membership[src.representatives[c]]] = labels[c]
        if dst.count == src.count - 1:
            a, b = sorted(touched_src)
            la, lb = labels[a], labels[b]
            (y,) = touched_dst
            if la == MINUS and lb == MINUS:
                return target, []
            new[y] = PLUS if (la == PLUS and lb == PLUS) else MINUS
            return target, [tuple(new)]
        (x,) = touched_src
        y1, y2 = touched_dst
        if labels[x] == MINUS:
            new[y1] = new[y2] = MINUS
            return target, [tuple(new)]
        out = []
        for p1, p2 in ((PLUS, MINUS), (MINUS, PLUS)):
            new[y1], new[y2] = p1, p2
            out.append(tuple(new))
        return target, out


@dataclass
class ChainComplexGF2:
    """Bigraded complex; ``differentials[(i, q)]`` maps C^{i,q} to C^{i+1,q}."""

    generators: Dict[Bigrading, List[Generator]]
    differentials: Dict[Bigrading, SparseGF2Matrix]
    reduced: bool
    marked_strand: int = 0
    n_plus: int = 0
    n_minus: int = 0

    def index(self, grading: Bigrading) -> Dict[Generator, int]:
        return {g: k for k, g in enumerate(self.generators.get(grading, []))}

    def check_d_squared(self) -> None:
        for (i, q), d0 in self.differentials.items():
            d1 = self.differentials.get((i + 1, q))
            if d1 is None or d0.ncols == 0:
                continue
            if not d1.matmul(d0).is_zero():
                raise AssertionError(f"d^2 != 0 at bigrading {(i, q)}")


def _check_cap(n: int, windowed: bool, max_crossings: Optional[int]):
    cap = max_crossings if max_crossings is not None else (WINDOW_CAP if windowed else FULL_CAP)
    if n > cap:
        kind = "single-q" if windowed else "full"
        raise ResourceCapExceeded(f"{n} crossings exceed the {kind} cube cap of {cap}")


def _labelings(m: int, fixed: Optional[int], plus_count: Optional[int]):
    """Labelings in lexicographic order (u_- < u_+), optionally with a fixed number of u_+."""
    free = [c for c in range(m) if c != fixed]
    if plus_count is None:
        for combo in product((MINUS, PLUS), repeat=len(free)):
            lab = [MINUS] * m
            for c, x in zip(free, combo):
                lab[c] = x
            yield tuple(lab)
        return
    if plus_count < 0 or plus_count > len(free):
        return
    out = []
    for chosen in combinations(free, plus_count):
        lab = [MINUS] * m
        for c in chosen:
            lab[c] = PLUS
        out.append(tuple(lab))
    yield from sorted(out)


def _states(n: int, weights: Optional[Sequence[int]] = None):
    if weights is None:
        yield from product((0, 1), repeat=n)
        return
    out = []
    for w in weights:
        if 0 <= w <= n:
            for ones in combinations(range(n), w):
                bits = [0] * n
                for t in ones:
                    bits[t] = 1
                out.append(tuple(bits))
    yield from sorted(out)


def _collect(cube: _Cube, reduced: bool, qs: Optional[Sequence[int]], weights=None):
    d = cube.d
    gens: Dict[Bigrading, List[Generator]] = {}
    np_, nm = d.n_plus, d.n_minus
    for bits in _states(d.n, weights):
        cs = cube.circles(bits)
        weight = sum(bits)
        i = weight - nm
        fixed = cs.marked_circle if reduced else None
        if qs is None:
            for lab in _labelings(cs.count, fixed, None):
                gens.setdefault((i, _q_of(lab, weight, np_, nm)), []).append((bits, lab))
            continue
        for q in qs:
            # q = 2*plus - m + weight + n_plus - 2 n_minus
            twice = q + cs.count - weight - np_ + 2 * nm
            if twice % 2:
                continue
            for lab in _labelings(cs.count, fixed, twice // 2):
                gens.setdefault((i, q), []).append((bits, lab))
    for key in gens:
        gens[key].sort()
    return gens


def _differential(cube: _Cube, source: List[Generator], target: List[Generator]) -> SparseGF2Matrix:
    index = {g: k for k, g in enumerate(target)}
    cols = []
    for bits, lab in source:
        col = 0
        for t in range(len(bits)):
            if bits[t]:
                continue
            tgt, images = cube.edge(bits, t, lab)
            for img in images:
                col ^= 1 << index[(tgt, img)]
        cols.append(col)
    return SparseGF2Matrix.from_columns(len(target), cols)


def build_complex(d: LinkDiagram, reduced: bool = True, q_window: Optional[Tuple[int, int]] = None,
                  max_crossings: Optional[int] = None, marked_strand: int = 0,
                  check: bool = True) -> ChainComplexGF2:
    """Cube complex, optionally restricted to quantum gradings in ``q_window`` (inclusive)."""
    if q_window is not None and q_window[0] > q_window[1]:
        raise UnsupportedInput(f"empty q window {q_window}")
    _check_cap(d.n, q_window is not None, max_crossings)
    cube = _Cube(d, marked_strand)
    qs = None if q_window is None else list(range(q_window[0], q_window[1] + 1))
    gens = _collect(cube, reduced, qs)
    diffs = {}
    for (i, q), src in gens.items():
        tgt = gens.get((i + 1, q), [])
        diffs[(i, q)] = _differential(cube, src, tgt)
    cx = ChainComplexGF2(gens, diffs, reduced, marked_strand, d.n_plus, d.n_minus)
    if check:
        cx.check_d_squared()
    return cx


def homology_dims(c: ChainComplexGF2) -> Dict[Bigrading, int]:
    """Nonzero entries of dim H^{i,q} = dim ker d^{i,q} - rank d^{i-1,q}."""
    ranks = {key: gf2_rank(m) for key, m in c.differentials.items()}
    out = {}
    for (i, q), gens in c.generators.items():
        dim = len(gens) - ranks.get((i, q), 0) - ranks.get((i - 1, q), 0)
        if dim:
            out[(i, q)] = dim
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class PsiChain:
    state: ResolutionState
    labeling: Tuple[int, ...]
    i: int
    q: int
    reduced: bool


def psi_chain(d: LinkDiagram, reduced: bool = True, marked_strand: int = 0) -> PsiChain:
    """All-u_- labeling of the oriented resolution, checked to be a cycle."""
    cube = _Cube(d, marked_strand)
    v = oriented_state(d)
    cs = cube.circles(v.bits)
    lab = (MINUS,) * cs.count
    for t in range(d.n):
        if v.bits[t] == 0:
            _, images = cube.edge(v.bits, t, lab)
            if images:
                raise AssertionError("psi is not a cycle")
    weight = v.weight
    i = weight - d.n_minus
    q = _q_of(lab, weight, d.n_plus, d.n_minus)
    return PsiChain(v, lab, i, q, reduced)


def psi_nonzero(d: LinkDiagram, max_crossings: Optional[int] = None, marked_strand: int = 0) -> bool:
    """Whether psi survives in reduced homology; only one quantum slice is built."""
    _check_cap(d.n, True, max_crossings)
    psi = psi_chain(d, True, marked_strand)
    if d.n_minus == 0:
        return True
    cube = _Cube(d, marked_strand)
    nm = d.n_minus
    gens = _collect(cube, True, [psi.q], weights=[nm - 1, nm])
    src = gens.get((-1, psi.q), [])
    tgt = gens.get((0, psi.q), [])
    m = _differential(cube, src, tgt)
    pos = {g: k for k, g in enumerate(tgt)}[(psi.state.bits, psi.labeling)]
    hit, _ = gf2_in_image(m, 1 << pos)
    return not hit


def table_from_complex(d: LinkDiagram, reduced: bool = True,
                       max_crossings: Optional[int] = None) -> Dict[Bigrading, int]:
    return homology_dims(build_complex(d, reduced, None, max_crossings))


TANGLE_CAP = 64
ENGINES = ("tangle", "cube")


def homology_table(d: LinkDiagram, reduced: bool = True, engine: str = "tangle",
                   q_window: Optional[Tuple[int, int]] = None,
                   max_crossings: Optional[int] = None) -> Dict[Bigrading, int]:
    """Khovanov homology dims by either engine; both use the cube's gradings.

    The tangle engine scans the braid with delooping and Gaussian elimination
    and handles far larger words than the cube; the cube is the reference.
    """
    if engine == "cube":
        cx = build_complex(d, reduced, q_window, max_crossings)
        return homology_dims(cx)
    if engine != "tangle":
        raise UnsupportedInput(f"unknown engine {engine!r}")
    if q_window is not None and q_window[0] > q_window[1]:
        raise UnsupportedInput(f"empty q window {q_window}")
    cap = max_crossings if max_crossings is not None else TANGLE_CAP
    if d.n > cap:
        raise ResourceCapExceeded(f"{d.n} crossings exceed the tangle engine cap of {cap}")
    from .tangle import khovanov_table
    table = khovanov_table(d.word, reduced)
    if q_window is not None:
        table = {k: v for k, v in table.items() if q_window[0] <= k[1] <= q_window[1]}
    return table
