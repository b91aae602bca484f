"""Garside left normal form for the braid group.

A positive simple braid is stored as a permutation tuple ``p`` where
``p[k]`` is the starting position of the strand that ends at position ``k``.
A braid is ``Delta**power * f_1 * ... * f_r`` with every ``f_j`` a proper,
nontrivial simple element and each consecutive pair left-weighted.
Two words are equal in the braid group iff their normal forms agree.
"""
from typing import List, Sequence, Tuple

Perm = Tuple[int, ...]
NormalForm = Tuple[int, Tuple[Perm, ...]]


def _identity(n: int) -> List[int]:
    return list(range(n))


def _delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def _swap(k: int, i: int) -> int:
    # transposition of positions i-1 and i (0-based), generator sigma_i
    if k == i - 1:
        return i
    if k == i:
        return i - 1
    return k


def _times_gen(p: Sequence[int], i: int) -> Perm:
    """Permutation of ``A * sigma_i`` given that of ``A``."""
    return tuple(p[_swap(k, i)] for k in range(len(p)))


def _gen_inv_times(p: Sequence[int], i: int) -> Perm:
    """Permutation of ``sigma_i^-1 * B`` given that of ``B``."""
    return tuple(_swap(x, i) for x in p)


def _inverse(p: Sequence[int]) -> List[int]:
    inv = [0] * len(p)
    for k, x in enumerate(p):
        inv[x] = k
    return inv


def finishing_set(p: Sequence[int]) -> List[int]:
    """Generators ``i`` such that the simple element ends with ``sigma_i``."""
    return [i for i in range(1, len(p)) if p[i - 1] > p[i]]


def starting_set(p: Sequence[int]) -> List[int]:
    """Generators ``i`` such that the simple element starts with ``sigma_i``."""
    inv = _inverse(p)
    return [i for i in range(1, len(p)) if inv[i - 1] > inv[i]]


def _tau(p: Sequence[int]) -> Perm:
    """Conjugation by Delta, which sends sigma_i to sigma_{n-i}."""
    n = len(p)
    return tuple((n - 1) - p[(n - 1) - k] for k in range(n))


def _left_weight(a: Perm, b: Perm) -> Tuple[Perm, Perm, bool]:
    changed = False
    while True:
        fin = set(finishing_set(a))
        move = [i for i in starting_set(b) if i not in fin]
        if not move:
            return a, b, changed
        i = move[0]
        a = _times_gen(a, i)
        b = _gen_inv_times(b, i)
        changed = True


def left_normal_form(strands: int, letters: Sequence[int]) -> NormalForm:
    """Return ``(power, factors)`` for the braid word on ``strands`` strands."""
    n = max(strands, 1)
    ident = tuple(range(n))
    delta = _delta(n)
    power = 0
    factors: List[Perm] = []
    for k in letters:
        i = abs(k)
        if k > 0:
            factors.append(_times_gen(ident, i))
        else:
            # sigma_i^-1 = Delta^-1 * (Delta sigma_i^-1); move Delta^-1 to the front
            factors = [_tau(f) for f in factors]
            factors.append(_times_gen(delta, i))
            power -= 1
    changed = True
    while changed:
        changed = False
        for j in range(len(factors) - 2, -1, -1):
            a, b, moved = _left_weight(factors[j], factors[j + 1])
            if moved:
                factors[j], factors[j + 1] = a, b
                changed = True
        kept = []
        for f in factors:
            if f == ident:
                continue
            kept.append(f)
        if len(kept) != len(factors):
            changed = True
        factors = kept
        while factors and factors[0] == delta:
            factors.pop(0)
            power += 1
            changed = True
    return power, tuple(factors)


def words_equal(strands: int, u: Sequence[int], v: Sequence[int]) -> bool:
    """Exact equality of two braid words in the braid group on ``strands`` strands."""
    return left_normal_form(strands, u) == left_normal_form(strands, v)


def positive_word(strands: int, letters: Sequence[int]):
    """A positive word for the braid when its normal form has nonnegative power, else None."""
    power, factors = left_normal_form(strands, letters)
    if power < 0:
        return None
    n = max(strands, 1)
    out: List[int] = []
    for p in [_delta(n)] * power + list(factors):
        out.extend(_positive_letters(p))
    return tuple(out)


def _positive_letters(p: Sequence[int]) -> List[int]:
    """Reduced word of a simple element, read off by peeling finishing generators."""
    p = tuple(p)
    out: List[int] = []
    while True:
        fin = finishing_set(p)
        if not fin:
            break
        i = fin[0]
        out.append(i)
        p = _times_gen(p, i)
    return out[::-1]
