"""Rule-based verdicts on fillability and the contact invariant of the branched cover."""
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .braid import (BraidWord, QuasipositiveCertificate, detect_isolated_negative_level,
                    detect_negative_kink, is_positive, self_linking,
                    verify_quasipositive_certificate)
from .cover import DEFAULT_RULE, H1Group, chord_presentation, d3, h1, linking_matrix, sigma_x
from .diagram import close_braid, determinant
from .errors import ResourceCapExceeded
from .garside import positive_word
from .khovanov import psi_nonzero


class Fillability(str, enum.Enum):
    STEIN_FILLABLE = "SteinFillable"
    OVERTWISTED = "Overtwisted"
    UNKNOWN = "Unknown"


class ContactClass(str, enum.Enum):
    ZERO = "Zero"
    NONZERO = "Nonzero"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Rule:
    ident: str
    statement: str


RULES = {
    "R1": Rule("R1", "quasipositive braid (positive word, braid equal to a positive word, or "
                     "verified certificate): "
                     "the cover is Stein fillable and its contact invariant is nonzero"),
    "R2": Rule("R2", "top generator occurs once, negatively: the closure is a transverse "
                     "stabilization, so the cover is overtwisted and its contact invariant vanishes"),
    "R3": Rule("R3", "some generator occurs only with negative exponent: the contact "
                     "invariant vanishes"),
    "R4": Rule("R4", "positive torus braid followed by negative stabilizations: sl is below "
                     "the maximum for the torus link, so the cover is overtwisted"),
}

CONJECTURE_NOTE = ("psi is nonzero while no rule decides the contact invariant; the conjectured "
                   "correspondence between psi and the contact invariant would predict a nonzero "
                   "invariant (not asserted)")


@dataclass(frozen=True)
class ContactReport:
    word: BraidWord
    sl: int
    h1: H1Group
    d3: Fraction
    c1_is_zero: bool
    sigma_x: int
    determinant: int
    fillability: Fillability
    c_invariant: ContactClass
    psi_nonzero: Optional[bool]
    rules_fired: Tuple[Rule, ...]
    conjecture_note: Optional[str] = None
    skipped: Tuple[str, ...] = ()

    def check(self) -> None:
        """Structural consistency; raises AssertionError when violated."""
        if self.fillability == Fillability.STEIN_FILLABLE:
            assert self.c_invariant != ContactClass.ZERO
        if self.fillability == Fillability.OVERTWISTED:
            assert self.c_invariant != ContactClass.NONZERO
        if self.fillability != Fillability.UNKNOWN or self.c_invariant != ContactClass.UNKNOWN:
            assert self.rules_fired
        if self.conjecture_note is not None:
            assert self.psi_nonzero and self.c_invariant == ContactClass.UNKNOWN


def torus_stabilization(w: BraidWord) -> Optional[Tuple[int, int, int]]:
    """Recognize ``(s1 ... s_{p-1})^q`` followed by ``s >= 1`` negative stabilizations.

    Returns ``(p, q, s)`` or None. Only the literal form is recognized.
    """
    letters = w.letters
    b = w.strands
    for p in range(2, b):
        s = b - p
        tail = tuple(-(p + j) for j in range(s))
        if len(letters) < s or letters[len(letters) - s:] != tail:
            continue
        head = letters[:len(letters) - s]
        unit = tuple(range(1, p))
        if not head or len(head) % len(unit):
            continue
        q = len(head) // len(unit)
        if head == unit * q:
            return p, q, s
    return None


def classify(w: BraidWord, cert: Optional[QuasipositiveCertificate] = None,
             max_crossings: Optional[int] = None, paper_constant: bool = False,
             rule: str = DEFAULT_RULE) -> ContactReport:
    sp = linking_matrix(chord_presentation(w), rule)
    sl = self_linking(w)
    fired: List[Rule] = []
    fill = Fillability.UNKNOWN
    cls = ContactClass.UNKNOWN
    skipped: List[str] = []

    quasi = is_positive(w) or (cert is not None and verify_quasipositive_certificate(w, cert))
    if not quasi:
        # a braid equal to a positive word certifies itself
        pos = positive_word(w.strands, w.letters)
        if pos is not None:
            auto = QuasipositiveCertificate(tuple(((), i) for i in pos))
            quasi = verify_quasipositive_certificate(w, auto)
    if quasi:
        fired.append(RULES["R1"])
        fill = Fillability.STEIN_FILLABLE
        cls = ContactClass.NONZERO
    else:
        if detect_negative_kink(w):
            fired.append(RULES["R2"])
            fill = Fillability.OVERTWISTED
            cls = ContactClass.ZERO
        if detect_isolated_negative_level(w) is not None:
            fired.append(RULES["R3"])
            cls = ContactClass.ZERO
        torus = torus_stabilization(w)
        if torus is not None:
            p, q, _ = torus
            if sl < p * q - p - q:
                fired.append(RULES["R4"])
                fill = Fillability.OVERTWISTED
                cls = ContactClass.ZERO

    psi: Optional[bool]
    try:
        psi = psi_nonzero(close_braid(w), max_crossings)
    except ResourceCapExceeded as exc:
        psi = None
        skipped.append(f"psi: {exc}")
    note = CONJECTURE_NOTE if (psi and cls == ContactClass.UNKNOWN) else None
    rep = ContactReport(w, sl, h1(sp), d3(sp, sl, paper_constant), True, sigma_x(sp),
                        determinant(close_braid(w)), fill, cls, psi, tuple(fired), note,
                        tuple(skipped))
    rep.check()
    return rep
