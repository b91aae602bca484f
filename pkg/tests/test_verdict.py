import random
from fractions import Fraction

from oracles import random_word
from tbl.braid import BraidWord, QuasipositiveCertificate, bm_pair, bm_triples, parse_braid
from tbl.verdict import ContactClass, Fillability, classify, torus_stabilization


def _ids(rep):
    return [r.ident for r in rep.rules_fired]


def test_positive_trefoil():
    rep = classify(parse_braid("1 1 1"))
    assert rep.fillability == Fillability.STEIN_FILLABLE
    assert rep.c_invariant == ContactClass.NONZERO
    assert rep.psi_nonzero is True
    assert rep.d3 == 0
    assert _ids(rep) == ["R1"]


def test_stabilized_trefoil():
    rep = classify(parse_braid("1 1 1 -2"))
    assert rep.fillability == Fillability.OVERTWISTED
    assert rep.c_invariant == ContactClass.ZERO
    assert rep.psi_nonzero is False
    assert "R2" in _ids(rep)


def test_negative_trefoil():
    rep = classify(parse_braid("-1 -1 -1"))
    assert rep.c_invariant == ContactClass.ZERO
    assert rep.fillability == Fillability.UNKNOWN
    assert _ids(rep) == ["R3"]


def test_negative_unknot_report():
    rep = classify(parse_braid("-1"))
    assert rep.sl == -3 and str(rep.h1) == "0" and rep.d3 == Fraction(1, 2)
    assert rep.fillability == Fillability.OVERTWISTED
    assert rep.c_invariant == ContactClass.ZERO
    assert {"R2", "R3"} <= set(_ids(rep))


def test_certificate_and_conjecture_note():
    w = parse_braid("-1 2 2 1 -2 1 2")
    rep = classify(w)
    assert rep.c_invariant == ContactClass.UNKNOWN and rep.psi_nonzero
    assert rep.conjecture_note is not None
    cert = QuasipositiveCertificate((((-1,), 2), ((-1,), 2), ((-2,), 1)))
    rep = classify(w, cert)
    assert rep.fillability == Fillability.STEIN_FILLABLE
    assert rep.c_invariant == ContactClass.NONZERO
    assert rep.conjecture_note is None


def test_braid_equal_to_positive_word():
    rep = classify(parse_braid("1 1 -1 1"))
    assert rep.fillability == Fillability.STEIN_FILLABLE and _ids(rep) == ["R1"]


def test_torus_recognizer():
    assert torus_stabilization(BraidWord(4, (1, 2, 1, 2, -3))) == (3, 2, 1)
    assert torus_stabilization(BraidWord(4, (1, 1, 1, -2, -3))) == (2, 3, 2)
    assert torus_stabilization(BraidWord(3, (1, 1, 1))) is None
    assert torus_stabilization(BraidWord(4, (1, 2, 2, 1, -3))) is None
    rep = classify(BraidWord(4, (1, 1, 1, -2, -3)))
    assert "R4" in _ids(rep) and rep.fillability == Fillability.OVERTWISTED


def test_cap_skip_is_recorded():
    rep = classify(parse_braid("1 -2 1 -2"), max_crossings=3)
    assert rep.psi_nonzero is None
    assert rep.skipped and rep.skipped[0].startswith("psi:")


def test_report_consistency_random():
    rng = random.Random(1)
    for _ in range(500):
        w = random_word(rng, rng.randint(1, 5), rng.randint(0, 10))
        rep = classify(w)
        rep.check()
        assert not (rep.fillability == Fillability.STEIN_FILLABLE
                    and rep.c_invariant == ContactClass.ZERO)
        assert not (rep.fillability == Fillability.OVERTWISTED
                    and rep.c_invariant == ContactClass.NONZERO)
        if rep.c_invariant == ContactClass.ZERO:
            assert rep.psi_nonzero is False
        if rep.c_invariant == ContactClass.NONZERO:
            assert rep.psi_nonzero is True


def test_bm_pairs_get_identical_reports():
    for p, q, r in bm_triples():
        k1, k2 = bm_pair(p, q, r)
        a, b = classify(k1), classify(k2)
        fields = ("sl", "h1", "d3", "sigma_x", "determinant", "fillability", "c_invariant",
                  "psi_nonzero", "rules_fired", "conjecture_note")
        assert all(getattr(a, f) == getattr(b, f) for f in fields)
