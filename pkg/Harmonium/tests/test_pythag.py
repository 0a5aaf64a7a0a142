import random
from fractions import Fraction

import pytest
from Harmonium.core.pcset import CATALOG_NAMES, maxlevel, named_word
from Harmonium.core.tonality import CadenceRule, degrees_of
from Harmonium.tuning.euler import pitch_of_ratio
from Harmonium.tuning.pythag import (
    FIFTH_COMMA_RATIO, Construction, PytLetter, PytOp, PytTonality, comma_equivalent,
    comma_modulations, cycle_lower, cycle_raise, fifth_cycle_precedes, pyt_alphabet, pyt_freq,
    pyt_invert, pyt_letter, pyt_modulations, pyt_natural_context, pyt_pivotal, pyt_scale,
    pyt_standard_context, pyt_tonality, pyt_transform, pyt_translate, pyt_word,
)
from Harmonium.utils.validation import CycleUnderflowError, HarmoniumError, IndexOutOfRangeError

C_MAJOR = named_word("major")

# sorted frequencies of cycles 0, 1 and 2 from C = 132 Hz
BLOCK_LISTING = (
    (
        "132", "140.958984375",
        "148.5", "158.578857421875",
        "167.0625", "178.401214599609375",
        "187.9453125", "198",
        "211.4384765625", "222.75",
        "237.8682861328125", "250.59375",
    ),
    (
        "133.80091094970703125", "142.8821251206099987030029296875",
        "150.52602481842041015625", "160.7423907606862485408782958984375",
        "169.34177792072296142578125", "180.8351896057720296084880828857421875",
        "190.50950016081333160400390625", "200.701366424560546875",
        "214.32318768091499805450439453125", "225.789037227630615234375",
        "241.11358614102937281131744384765625", "254.012666881084442138671875",
    ),
    (
        "135.626392204329022206366062164306640625", "144.83150378460330642838016501627862453460693359375",
        "152.579691229870149982161819934844970703125", "162.93544175767871973192768564331345260143280029296875",
        "171.652152633603918729932047426700592041015625", "183.30237197738855969841864634872763417661190032958984375",
        "193.108671712804408571173553355038166046142578125", "203.4395883064935333095490932464599609375",
        "217.247255676904959642570247524417936801910400390625", "228.8695368448052249732427299022674560546875",
        "244.403162636518079597891528464970178902149200439453125", "257.4782289504058780948980711400508880615234375",
    ),
)

def test_pyt_letter():
    assert pyt_letter(14, 2) == PytLetter(2, 2)
    with pytest.raises(CycleUnderflowError):
        pyt_letter(0, -1)

def test_pyt_word():
    assert pyt_word(C_MAJOR) == tuple(PytLetter(x, 0) for x in C_MAJOR)
    assert pyt_word((), 3) == ()

def test_fifth_cycle_order():
    assert fifth_cycle_precedes(PytLetter(11, 0), PytLetter(0, 1))
    assert not fifth_cycle_precedes(PytLetter(0, 1), PytLetter(11, 0))
    letters = pyt_alphabet(2)
    assert len(letters) == 36
    assert all(fifth_cycle_precedes(a, b) for a, b in zip(letters, letters[1:]))
    assert len(pyt_alphabet(10)) == 132

def test_pyt_freq_spot_values():
    for construction in Construction:
        assert pyt_freq(PytLetter(1, 0), construction) == Fraction(140958984375, 10 ** 9)
        assert pyt_freq(PytLetter(0, 1), construction) == Fraction(13380091094970703125, 10 ** 17)
        assert pyt_freq(PytLetter(0, 0), construction) == 132

@pytest.mark.parametrize("cycle", [0, 1, 2])
def test_block_frequencies(cycle):
    expected = [Fraction(x) for x in BLOCK_LISTING[cycle]]
    assert [pyt_freq(PytLetter(pc, cycle), Construction.BLOCK) for pc in range(12)] == expected

def test_constructions_agree_up_to_cycle_3():
    for l in pyt_alphabet(3):
        assert pyt_freq(l, Construction.CHAIN) == pyt_freq(l, Construction.BLOCK)

def test_constructions_part_ways_at_cycle_4():
    wrapped = pyt_freq(PytLetter(0, 4), Construction.BLOCK)
    assert wrapped == Fraction(132 * 3 ** 53, 2 ** 84)
    assert f"{float(wrapped):.13f}".startswith("132.2759214534")
    assert wrapped != pyt_freq(PytLetter(0, 4), Construction.CHAIN)
    assert pyt_freq(PytLetter(11, 10), Construction.BLOCK) != pyt_freq(PytLetter(11, 10), Construction.CHAIN)

def test_chain_shift_is_one_fifth_comma():
    for cycle in range(10):
        for pc in range(12):
            low = pyt_freq(PytLetter(pc, cycle))
            high = pyt_freq(PytLetter(pc, cycle + 1))
            assert high / low == FIFTH_COMMA_RATIO
            assert pitch_of_ratio(high, low) == pytest.approx(23.46, abs=0.01)

def test_pyt_scale():
    freqs = pyt_scale(1, reference=Fraction(1))
    assert len(freqs) == 24
    assert freqs[0] == 1
    assert freqs[12] == FIFTH_COMMA_RATIO

def test_cycle_raise():
    raised = cycle_raise(pyt_word(C_MAJOR), 5)
    assert raised == (PytLetter(0, 0), PytLetter(2, 0), PytLetter(4, 0), PytLetter(5, 0),
                      PytLetter(7, 1), PytLetter(9, 0), PytLetter(11, 0))
    assert cycle_lower(raised, 5) == pyt_word(C_MAJOR)
    with pytest.raises(IndexOutOfRangeError):
        cycle_raise(raised, 8)
    with pytest.raises(CycleUnderflowError):
        cycle_lower(raised, 1)

def test_pyt_transform():
    w = pyt_word(C_MAJOR, 1)
    assert pyt_transform(w, PytOp.TRANSLATE, 0) == w
    assert pyt_transform(w, PytOp.TRANSLATE, 7) == pyt_translate(w, 7)
    assert pyt_transform(w, PytOp.INVERT) == pyt_invert(w)
    assert all(l.cycle == 1 for l in pyt_transform(w, PytOp.INVERT))
    assert pyt_transform(w, PytOp.RAISE, 2)[1] == PytLetter(2, 2)
    assert pyt_transform(w, PytOp.LOWER, 2)[1] == PytLetter(2, 0)
    with pytest.raises(HarmoniumError):
        pyt_transform(w, PytOp.RAISE)

def test_pyt_tonality():
    t = pyt_tonality(pyt_word(C_MAJOR, 2), 1)
    assert isinstance(t, PytTonality)
    assert t.degree_chords[0] == (PytLetter(0, 2), PytLetter(4, 2), PytLetter(7, 2))
    assert t.to_dict()["degrees"][0][0] == {"pc": 0, "cycle": 2}

def test_pyt_tonality_translate_keeps_cycles():
    t = pyt_tonality(pyt_word(C_MAJOR, 2), 1)
    assert t.translate(7) == pyt_tonality(pyt_word(named_word("major", 7), 2), 1)

def test_pyt_natural_context():
    ctx = pyt_natural_context(pyt_word(C_MAJOR, 1), 1)
    assert len(ctx) == 12
    assert all(l.cycle == 1 for t in ctx for l in t.word)

def test_pyt_standard_context():
    ctx = pyt_standard_context("major", 1, cycle=2)
    assert len(ctx) == 12
    assert ctx.name == "major@2"

def test_pivots_across_cycles():
    t2 = pyt_tonality(pyt_word(C_MAJOR, 2), 1)
    t3 = pyt_tonality(pyt_word(C_MAJOR, 3), 1)
    assert pyt_pivotal(t2, t3) == []
    assert pyt_modulations(t2, t3) == []

@pytest.mark.parametrize("name", [n for n in CATALOG_NAMES if len(named_word(n)) >= 5])
def test_no_pivot_between_different_cycles(name):
    x = named_word(name)
    y = named_word("major", 5)
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            t1 = pyt_tonality(pyt_word(x, i), 1)
            t2 = pyt_tonality(pyt_word(y, j), 1)
            assert pyt_pivotal(t1, t2) == []
            assert pyt_pivotal(t1, pyt_tonality(pyt_word(x, j), maxlevel(x))) == []

def test_comma_equivalent():
    pw1 = pyt_word(C_MAJOR)
    assert comma_equivalent(pw1, cycle_raise(pw1, 6))
    assert comma_equivalent(pw1, pw1)
    assert not comma_equivalent(pw1, pyt_word(named_word("major", 7)))
    assert not comma_equivalent(pw1, pw1[:6])

def test_comma_equivalence_is_an_equivalence():
    rng = random.Random(5)
    pw = pyt_word(C_MAJOR, 1)

    def shuffle(w):
        for _ in range(6):
            i = rng.randint(1, 7)
            w = cycle_raise(w, i) if rng.random() < 0.5 or w[i - 1].cycle == 0 else cycle_lower(w, i)
        return w

    for _ in range(50):
        a, b, c = shuffle(pw), shuffle(pw), shuffle(pw)
        assert comma_equivalent(a, a)
        assert comma_equivalent(a, b) == comma_equivalent(b, a)
        assert comma_equivalent(a, b) and comma_equivalent(b, c)
        assert comma_equivalent(a, c)

def test_comma_modulations_need_comma_equivalent_words():
    ctx = pyt_standard_context("major", 1)
    t1 = pyt_tonality(pyt_word(C_MAJOR), 1)
    t2 = pyt_tonality(pyt_word(named_word("major", 7)), 1)
    assert comma_modulations(t1, t2, ctx, maxlen=1) == []

def test_comma_modulations_everywhere_shifted():
    ctx = pyt_standard_context("major", 1)
    t1 = pyt_tonality(pyt_word(C_MAJOR), 1)
    shifted = pyt_tonality(pyt_word(C_MAJOR, 1), 1)
    assert comma_modulations(t1, shifted, ctx, maxlen=2) == []

def test_comma_modulation_after_raising_the_sixth():
    ctx = pyt_standard_context("major", 1)
    t = pyt_tonality(pyt_word(C_MAJOR), 1)
    raised = pyt_tonality(cycle_raise(t.word, 6), 1)
    found = comma_modulations(t, raised, ctx, maxlen=1)
    assert [m.pivot.source_degree for m in found] == [1, 3, 5, 7]
    assert {degrees_of(raised, m.cadence) for m in found} == {(7,)}

def test_comma_modulation_rules_differ_outside_the_context():
    ctx = pyt_standard_context("major", 1)
    t = pyt_tonality(pyt_word(C_MAJOR), 1)
    raised = pyt_tonality(cycle_raise(t.word, 6), 1)
    assert raised not in ctx
    strict = comma_modulations(t, raised, ctx, maxlen=1, rule=CadenceRule.STRICT)
    assert {degrees_of(raised, m.cadence) for m in strict} == {(2,), (4,), (6,)}

def test_comma_modulation_to_dict_keeps_cycles():
    ctx = pyt_standard_context("major", 1)
    t = pyt_tonality(pyt_word(C_MAJOR), 1)
    raised = pyt_tonality(cycle_raise(t.word, 6), 1)
    d = comma_modulations(t, raised, ctx, maxlen=1)[0].to_dict()
    assert d["pivot"]["chord"] == [{"pc": 0, "cycle": 0}, {"pc": 4, "cycle": 0}, {"pc": 7, "cycle": 0}]
    assert d["cadence"] == [[{"pc": 11, "cycle": 0}, {"pc": 2, "cycle": 0}, {"pc": 5, "cycle": 0}]]

def test_minimal_comma_modulations():
    ctx = pyt_standard_context("major", 1)
    t = pyt_tonality(pyt_word(C_MAJOR), 1)
    raised = pyt_tonality(cycle_raise(t.word, 6), 1)
    found = comma_modulations(t, raised, ctx, maxlen=2, minimal=True)
    assert len(found) == 4 * 3
    assert {degrees_of(raised, m.cadence) for m in found} == {(1, 7), (3, 7), (5, 7)}
