"""Braid words, self-linking number, stabilization and syntactic detectors."""
import re
import string
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .errors import BadTokenError, GeneratorRangeError, UnsupportedInput, ZeroGeneratorError
from .garside import words_equal

ALPHABET = string.ascii_lowercase


@dataclass(frozen=True)
class BraidWord:
    """A word in the standard generators; ``k > 0`` is sigma_k, ``k < 0`` its inverse."""

    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(k) for k in self.letters))
        if self.strands < 1:
            raise UnsupportedInput(f"strand count must be positive, got {self.strands}")
        for k in self.letters:
            if k == 0 or abs(k) > self.strands - 1:
                raise GeneratorRangeError(
                    f"generator {k} invalid on {self.strands} strands", token=str(k))

    @property
    def n_plus(self) -> int:
        return sum(1 for k in self.letters if k > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for k in self.letters if k < 0)

    def __len__(self) -> int:
        return len(self.letters)

    def levels(self) -> set:
        return {abs(k) for k in self.letters}

    def text(self) -> str:
        """Normalized text form, e.g. ``b=3: 1 -2 1``."""
        body = " ".join(str(k) for k in self.letters)
        return f"b={self.strands}: {body}".rstrip()

    def __str__(self) -> str:
        return self.text()


_SPLIT = re.compile(r"[\s,]+")


def _alphabetic(text: str) -> Optional[str]:
    compact = _SPLIT.sub("", text)
    if compact and all(c in string.ascii_letters for c in compact):
        return compact
    return None


def parse_braid(text: str, strands_override: Optional[int] = None) -> BraidWord:
    """Parse ``"1 -2 1"``, ``"1,-2,1"`` or the alphabetic form ``"aBa"``.

    An optional ``b=N:`` prefix, as produced by :meth:`BraidWord.text`, sets
    the strand count unless ``strands_override`` is given.
    """
    text = text.strip().replace("−", "-")
    m = re.match(r"^b\s*=\s*(\d+)\s*:", text)
    if m:
        if strands_override is None:
            strands_override = int(m.group(1))
        text = text[m.end():]
    letters = []
    alpha = _alphabetic(text)
    if alpha is not None:
        for c in alpha:
            k = ALPHABET.index(c.lower()) + 1
            letters.append(k if c.islower() else -k)
    else:
        for tok in _SPLIT.split(text):
            if not tok:
                continue
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise BadTokenError(f"unparseable token {tok!r}", token=tok)
            k = int(tok)
            if k == 0:
                raise ZeroGeneratorError(f"zero is not a generator (token {tok!r})", token=tok)
            letters.append(k)
    if strands_override is not None:
        if strands_override < 1:
            raise GeneratorRangeError(f"strand count {strands_override} is not positive",
                                      token=str(strands_override))
        for k in letters:
            if abs(k) >= strands_override:
                raise GeneratorRangeError(
                    f"token {k} needs at least {abs(k) + 1} strands, got {strands_override}",
                    token=str(k))
        strands = strands_override
    else:
        strands = max((abs(k) for k in letters), default=0) + 1
    return BraidWord(strands, tuple(letters))


def self_linking(w: BraidWord) -> int:
    return w.n_plus - w.n_minus - w.strands


def stabilize(w: BraidWord, positive: bool) -> BraidWord:
    """Add a strand and the crossing sigma_b (positive) or its inverse."""
    b = w.strands
    return BraidWord(b + 1, w.letters + ((b if positive else -b),))


def cyclic_permute(w: BraidWord, k: int) -> BraidWord:
    if not w.letters:
        return w
    k %= len(w.letters)
    return BraidWord(w.strands, w.letters[k:] + w.letters[:k])


def detect_isolated_negative_level(w: BraidWord) -> Optional[int]:
    """Smallest level that occurs only with negative sign, or None."""
    pos = {k for k in w.letters if k > 0}
    neg = sorted({-k for k in w.letters if k < 0})
    for i in neg:
        if i not in pos:
            return i
    return None


def detect_negative_kink(w: BraidWord) -> bool:
    """Top level occurs exactly once and negatively: the closure is a negative stabilization.

    Letter counts are unchanged by cyclic permutation, so one scan covers all rotations.
    """
    top = w.strands - 1
    if top < 1:
        return False
    hits = [k for k in w.letters if abs(k) == top]
    return hits == [-top]


def inverse_letters(letters: Sequence[int]) -> Tuple[int, ...]:
    return tuple(-k for k in reversed(letters))


@dataclass(frozen=True)
class QuasipositiveCertificate:
    """Product of conjugates ``w_j sigma_{i_j} w_j^-1``."""

    factors: Tuple[Tuple[Tuple[int, ...], int], ...]

    def __post_init__(self):
        object.__setattr__(self, "factors",
                           tuple((tuple(int(k) for k in w), int(i)) for w, i in self.factors))

    def expand(self) -> Tuple[int, ...]:
        out = []
        for w, i in self.factors:
            out.extend(w)
            out.append(i)
            out.extend(inverse_letters(w))
        return tuple(out)


def verify_quasipositive_certificate(w: BraidWord, cert: QuasipositiveCertificate) -> bool:
    """Decide whether the certificate multiplies out to ``w`` in the braid group."""
    top = w.strands - 1
    for conj, i in cert.factors:
        if i < 1 or i > top:
            raise GeneratorRangeError(f"certificate generator {i} invalid on {w.strands} strands",
                                      token=str(i))
        for k in conj:
            if k == 0 or abs(k) > top:
                raise GeneratorRangeError(
                    f"certificate letter {k} invalid on {w.strands} strands", token=str(k))
    return words_equal(w.strands, cert.expand(), w.letters)


def is_positive(w: BraidWord) -> bool:
    return all(k > 0 for k in w.letters)


def bm_pair(p: int, q: int, r: int) -> Tuple[BraidWord, BraidWord]:
    """The two 3-braids of a Birman-Menasco pair.

    ``K1 = s1^(2p+1) s2^(2r) s1^(2q) s2^-1`` and
    ``K2 = s1^(2p+1) s2^-1 s1^(2q) s2^(2r)``.
    """
    for name, val in (("p", p), ("q", q), ("r", r)):
        if val < 1:
            raise UnsupportedInput(f"{name} must be positive, got {val}")
    if not (p > 1 and q > 1 and r > 1 and p + 1 != q and q != r):
        warnings.warn(f"(p, q, r) = ({p}, {q}, {r}) is outside the Birman-Menasco hypothesis",
                      stacklevel=2)
    k1 = (1,) * (2 * p + 1) + (2,) * (2 * r) + (1,) * (2 * q) + (-2,)
    k2 = (1,) * (2 * p + 1) + (-2,) + (1,) * (2 * q) + (2,) * (2 * r)
    return BraidWord(3, k1), BraidWord(3, k2)


def bm_triples(values: Iterable[int] = (2, 3, 4)):
    """All triples from ``values`` satisfying the pair hypothesis, sorted by size."""
    vals = list(values)
    out = [(p, q, r) for p in vals for q in vals for r in vals
           if p > 1 and q > 1 and r > 1 and p + 1 != q and q != r]
    return sorted(out, key=lambda t: (sum(t), t))
