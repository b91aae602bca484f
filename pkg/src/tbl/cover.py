"""Contact surgery presentation of the branched double cover of a closed braid.

The word is viewed as the distinguished unknot ``U`` (the first positive
crossing at each level) plus one chord per remaining crossing. Each chord
lifts to a Legendrian unknot with contact framing -1 (positive crossing) or
+1 (negative crossing); the smooth framings are -2 and 0.

Linking numbers come from the symmetrized Seifert form of the braided
surface made of ``b`` disks and one band per crossing. Each chord is
paired with its *anchor*, the nearest earlier positive crossing on the same
level (cyclically), and the lifted curve runs from the anchor band to the
chord band. This basis gives the chain of -2 spheres for the torus links
``T(2, n)``.
"""
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .braid import BraidWord, self_linking
from .diagram import close_braid, determinant
from .errors import DeterminantMismatch, UnsupportedInput
from .linalg import IntSymMatrix, int_det, smith_normal_form, symmetric_signature


@dataclass(frozen=True)
class Chord:
    position: int  # 1-based position in the normalized word
    level: int
    sign: int
    anchor: int  # 1-based position of the anchoring positive crossing


@dataclass(frozen=True)
class ChordPresentation:
    word: BraidWord
    normalized: Tuple[int, ...]
    appended_levels: Tuple[int, ...]
    distinguished: Dict[int, int]
    chords: Tuple[Chord, ...]
    endpoint_order: Tuple[Tuple[int, int], ...]


def chord_presentation(w: BraidWord) -> ChordPresentation:
    letters = list(w.letters)
    appended = []
    if w.strands >= 2:
        for i in range(1, w.strands):
            if i not in letters:
                letters += [i, -i]
                appended.append(i)
    n = len(letters)
    dist: Dict[int, int] = {}
    for t, k in enumerate(letters):
        if k > 0 and k not in dist:
            dist[k] = t
    chords = []
    for t, k in enumerate(letters):
        i = abs(k)
        if dist.get(i) == t:
            continue
        a = (t - 1) % n
        while letters[a] != i:
            a = (a - 1) % n
        chords.append(Chord(t + 1, i, 1 if k > 0 else -1, a + 1))
    # traverse the closure of U from the top of strand 1, recording chord feet
    where = {c.position - 1: j for j, c in enumerate(chords)}
    distinguished_at = {t: i for i, t in dist.items()}
    events = []
    pos = 0
    for _ in range(max(w.strands, 1)):
        for t in range(n):
            if t in distinguished_at:
                i = distinguished_at[t]
                if pos == i - 1:
                    pos = i
                elif pos == i:
                    pos = i - 1
            elif t in where:
                i = chords[where[t]].level
                if pos == i - 1:
                    events.append((where[t], 0))
                elif pos == i:
                    events.append((where[t], 1))
    return ChordPresentation(w, tuple(letters), tuple(appended),
                             {i + 0: t + 1 for i, t in sorted(dist.items())},
                             tuple(chords), tuple(events))


def _framing(c: Chord) -> int:
    return -2 if c.sign > 0 else 0


def _in_arc(x: int, s: int, e: int, n: int) -> bool:
    return 0 < (x - s) % n < (e - s) % n


def _anchored_rule(cp: ChordPresentation) -> List[List[int]]:
    """Linking numbers of lifted chords in the anchored basis."""
    n = len(cp.normalized)
    chords = cp.chords
    m = len(chords)
    q = [[0] * m for _ in range(m)]
    pos = [c.position - 1 for c in chords]
    anchor = [c.anchor - 1 for c in chords]
    for a, c in enumerate(chords):
        q[a][a] = _framing(c)
    for a, c in enumerate(chords):
        start = cp.distinguished[c.level] - 1
        for e, d in enumerate(chords):
            if e == a:
                continue
            if d.level == c.level and a < e:
                # order by cyclic distance from the distinguished crossing
                if (pos[a] - start) % n < (pos[e] - start) % n:
                    x, y = a, e
                else:
                    x, y = e, a
                if anchor[y] == pos[x]:
                    v = 1
                elif anchor[x] == anchor[y]:
                    v = -1
                else:
                    v = 0
                q[a][e] = q[e][a] = v
            elif d.level == c.level + 1:
                # intersection sign of the two curves on the band at level i+1 side
                s1, e1 = pos[a], anchor[a]
                in1 = _in_arc(anchor[e], s1, e1, n)
                in2 = _in_arc(pos[e], s1, e1, n)
                v = 1 if (in1 and not in2) else (-1 if (in2 and not in1) else 0)
                q[a][e] = q[e][a] = v
    return q


def _chain_rule(cp: ChordPresentation) -> List[List[int]]:
    """Time-consecutive chain rule with all linked pairs set to +1."""
    chords = cp.chords
    m = len(chords)
    q = [[0] * m for _ in range(m)]
    letters = cp.normalized
    for a, c in enumerate(chords):
        q[a][a] = _framing(c)
    for a, c in enumerate(chords):
        for e, d in enumerate(chords):
            if e <= a:
                continue
            lo, hi = sorted((c.position - 1, d.position - 1))
            if c.level == d.level:
                lv = {c.level}
            elif abs(c.level - d.level) == 1:
                lv = {c.level, d.level}
            else:
                continue
            between = [t for t in range(lo + 1, hi) if abs(letters[t]) in lv]
            if not between:
                q[a][e] = q[e][a] = 1
    return q


LINKING_RULES: Dict[str, Callable[[ChordPresentation], List[List[int]]]] = {
    "anchored": _anchored_rule,
    "chain": _chain_rule,
}
DEFAULT_RULE = "anchored"


def normalize_signs(q: List[List[int]]) -> Tuple[List[List[int]], bool]:
    """Flip basis vectors so off-diagonal entries are nonnegative where possible.

    A spanning forest of the linking graph is made positive; the result is
    congruent to the input. Returns the matrix and whether every entry
    ended up nonnegative.
    """
    m = len(q)
    flip = [0] * m
    seen = [False] * m
    for root in range(m):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for e in range(m):
                if e != a and q[a][e] and not seen[e]:
                    seen[e] = True
                    flip[e] = flip[a] ^ (q[a][e] < 0)
                    queue.append(e)
    out = [[q[a][e] * (-1 if flip[a] ^ flip[e] else 1) for e in range(m)] for a in range(m)]
    clean = all(out[a][e] >= 0 for a in range(m) for e in range(m) if a != e)
    return out, clean


@dataclass(frozen=True)
class SurgeryComponent:
    chord: Chord
    contact_coeff: int
    smooth_framing: int


@dataclass(frozen=True)
class SurgeryPresentation:
    chords: ChordPresentation
    components: Tuple[SurgeryComponent, ...]
    linking_matrix: IntSymMatrix
    rule: str
    signs_nonnegative: bool


def linking_matrix(cp: ChordPresentation, rule: str = DEFAULT_RULE,
                   check: bool = True) -> SurgeryPresentation:
    """Surgery presentation; the determinant is cross-checked against the diagram."""
    try:
        fn = LINKING_RULES[rule]
    except KeyError:
        raise UnsupportedInput(f"unknown linking rule {rule!r}") from None
    raw = fn(cp)
    q, clean = normalize_signs(raw)
    if check:
        want = determinant(close_braid(cp.word))
        got = abs(int_det(q))
        if got != want:
            raise DeterminantMismatch(
                f"rule {rule!r}: |det| of linking matrix is {got}, diagram determinant is {want} "
                f"for {cp.word.text()}")
    comps = tuple(SurgeryComponent(c, -1 if c.sign > 0 else 1, _framing(c)) for c in cp.chords)
    return SurgeryPresentation(cp, comps, IntSymMatrix(tuple(map(tuple, q))), rule, clean)


@dataclass(frozen=True)
class H1Group:
    torsion: Tuple[int, ...]
    free_rank: int

    @property
    def finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        if not self.finite:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def h1(sp: SurgeryPresentation) -> H1Group:
    """Cokernel of the linking matrix."""
    mat = sp.linking_matrix.entries
    if not mat:
        return H1Group((), 0)
    diag = smith_normal_form(mat).diagonal
    return H1Group(tuple(abs(x) for x in diag if abs(x) > 1), sum(1 for x in diag if x == 0))


def sigma_x(sp: SurgeryPresentation) -> int:
    """Signature of the 4-manifold given by the surgery diagram."""
    return symmetric_signature(sp.linking_matrix)


CALIBRATED_CONSTANT = Fraction(-1)
PRINTED_CONSTANT = Fraction(-1, 2)


def d3(sp: SurgeryPresentation, sl: int, paper_constant: bool = False) -> Fraction:
    """Hopf invariant ``-(3/4) sigma(X) - sl/2 + C`` of the contact plane field.

    ``C = -1`` places the standard tight sphere at -1/2; ``paper_constant``
    switches to ``C = -1/2``. The first Chern class vanishes, so the value is
    defined even when H1 has free part.
    """
    const = PRINTED_CONSTANT if paper_constant else CALIBRATED_CONSTANT
    return Fraction(-3, 4) * sigma_x(sp) - Fraction(sl, 2) + const


@dataclass(frozen=True)
class HomotopyInvariants:
    c1_is_zero: bool
    d3: Fraction
    h1: H1Group
    sl: int
    sigma_x: int


def homotopy_invariants(w: BraidWord, rule: str = DEFAULT_RULE,
                        paper_constant: bool = False) -> HomotopyInvariants:
    sp = linking_matrix(chord_presentation(w), rule)
    sl = self_linking(w)
    return HomotopyInvariants(True, d3(sp, sl, paper_constant), h1(sp), sl, sigma_x(sp))
