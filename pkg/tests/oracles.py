"""Independent reference implementations used only by the tests."""
import random
from itertools import product

import numpy as np
import sympy

from tbl.braid import BraidWord


def random_word(rng: random.Random, b: int, n: int, positive_bias: float = 0.5) -> BraidWord:
    if b < 2:
        return BraidWord(max(b, 1), ())
    letters = []
    for _ in range(n):
        k = rng.randint(1, b - 1)
        letters.append(k if rng.random() < positive_bias else -k)
    return BraidWord(b, tuple(letters))


# --- Artin action on the free group: faithful, so it decides braid equality ---

def _reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _inv(word):
    return tuple(-x for x in reversed(word))


def artin_image(strands, letters):
    """Images of the free generators x_1..x_b under the braid automorphism."""
    images = [(j + 1,) for j in range(strands)]
    for k in letters:
        i = abs(k) - 1
        a, b = images[i], images[i + 1]
        if k > 0:
            # sigma_i: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
            images[i], images[i + 1] = _reduce(a + b + _inv(a)), a
        else:
            images[i], images[i + 1] = b, _reduce(_inv(b) + a + b)
    return tuple(images)


def artin_equal(strands, u, v):
    return artin_image(strands, u) == artin_image(strands, v)


# --- Kauffman bracket / Jones polynomial straight from the braid ---

def _circles(strands, letters, bits):
    """Circle count of a smoothing, tracking endpoints column by column."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    n = len(letters)
    # node (t, p): strand position p just before time t; time n wraps to 0
    for t, k in enumerate(letters):
        a = abs(k) - 1
        oriented = (bits[t] == 0) == (k > 0)
        nxt = (t + 1) % n if n else 0
        for p in range(strands):
            if p not in (a, a + 1):
                union((t, p), (nxt, p))
        if oriented:
            union((t, a), (nxt, a))
            union((t, a + 1), (nxt, a + 1))
        else:
            union((t, a), (t, a + 1))
            union((nxt, a), (nxt, a + 1))
    if n == 0:
        return strands
    return len({find((t, p)) for t in range(n) for p in range(strands)})


def khovanov_euler(w: BraidWord):
    """Sum over states of (-1)^i q^j (q + q^-1)^m, i.e. the graded Euler characteristic."""
    q = sympy.Symbol("q")
    n = len(w.letters)
    total = 0
    for bits in product((0, 1), repeat=n):
        m = _circles(w.strands, w.letters, bits)
        h = sum(bits)
        total += (-1) ** (h - w.n_minus) * q ** (h + w.n_plus - 2 * w.n_minus) * (q + 1 / q) ** m
    return sympy.expand(total)


def euler_of_table(table):
    q = sympy.Symbol("q")
    return sympy.expand(sum((-1) ** i * dim * q ** j for (i, j), dim in table.items()))


# --- determinant through the Burau representation ---

def burau_determinant(w: BraidWord) -> int:
    """|Alexander polynomial at -1| from the reduced Burau matrix."""
    t = sympy.Symbol("t")
    b = w.strands
    if b == 1:
        return 1
    size = b - 1

    def gen(i, inverse):
        m = sympy.eye(size)
        j = i - 1
        m[j, j] = -t
        if j > 0:
            m[j, j - 1] = t
        if j < size - 1:
            m[j, j + 1] = 1
        return m.inv() if inverse else m

    mat = sympy.eye(size)
    for k in w.letters:
        mat = mat * gen(abs(k), k < 0)
    poly = sympy.cancel((sympy.eye(size) - mat).det() * (1 - t) / (1 - t ** b))
    return abs(int(sympy.simplify(poly.subs(t, -1))))


# --- numeric cross-checks ---

def numpy_signature(mat) -> int:
    if len(mat) == 0:
        return 0
    ev = np.linalg.eigvalsh(np.array(mat, dtype=float))
    return int(np.sum(ev > 1e-9) - np.sum(ev < -1e-9))


def sympy_invariant_factors(mat):
    from sympy.matrices.normalforms import smith_normal_form
    from sympy.polys.domains import ZZ
    if len(mat) == 0:
        return []
    s = smith_normal_form(sympy.Matrix(mat), domain=ZZ)
    return sorted(abs(s[i, i]) for i in range(min(s.shape)))


def sympy_det(mat) -> int:
    if len(mat) == 0:
        return 1
    return int(sympy.Matrix(mat).det())
