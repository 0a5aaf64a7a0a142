import pytest
from Harmonium.core.pcset import CATALOG_NAMES, maxlevel, named_word
from Harmonium.core.tonality import (
    CadenceRule, Context, HarmonicWord, cadence_degrees, cadences, check_translation_invariance,
    contains, count_all_tonalities, count_tonalities_by_size, degree_of, harmonic_words,
    hw_from_degrees, is_cadence, is_translation_invariant, law_resolution_on_tonic, make_tonality,
    natural_context, pivot_degree_lists, pivotal_degrees, standard_context,
)
from Harmonium.utils.validation import (
    DegreeOutOfRangeError, DuplicateTonalityError, EmptyContextError, NotADegreeError,
    SearchBudgetExceededError, UnknownNameError,
)

C_MAJOR = named_word("major")

def c_major(level=1):
    return make_tonality(C_MAJOR, level)

def test_make_tonality_major():
    t = c_major()
    assert t.degree_chords == ((0, 4, 7), (2, 5, 9), (4, 7, 11), (5, 9, 0),
                               (7, 11, 2), (9, 0, 4), (11, 2, 5))
    assert len(t) == 7

def test_make_tonality_jewish():
    t = make_tonality(named_word("jewish"), 1)
    assert t.degree_chords == ((0, 4, 7), (1, 5, 8), (4, 7, 10), (5, 8, 0),
                               (7, 10, 1), (8, 0, 4), (10, 1, 5))

def test_make_tonality_pentatonic():
    t = make_tonality(named_word("majorpentatonic"), 3)
    assert t.degree_chords[0] == (0, 4, 9, 2, 7)

def test_tonality_identity_is_word_and_level():
    assert c_major() == make_tonality(C_MAJOR, 1)
    assert c_major(1) != c_major(2)
    dorian_rotation = make_tonality((2, 4, 5, 7, 9, 11, 0), 1)
    assert dorian_rotation != c_major()
    assert dorian_rotation.chord_set == c_major().chord_set

def test_to_dict():
    d = c_major().to_dict()
    assert d["word"] == list(C_MAJOR)
    assert d["level"] == 1
    assert d["degrees"][4] == [7, 11, 2]

def test_harmonic_words():
    t = c_major()
    assert len(harmonic_words(t, 1)) == 7
    assert len(harmonic_words(t, 2)) == 49
    words = harmonic_words(t, 2, upto=True)
    assert len(words) == 56
    assert words[7] == HarmonicWord([(0, 4, 7), (0, 4, 7)])

def test_contains():
    t = c_major()
    assert contains(t, [(0, 4, 7), (7, 11, 2)])
    assert not contains(t, [(0, 4, 8)])
    assert contains(t, [])
    # chords compare as ordered tuples
    assert not contains(t, [(4, 7, 0)])

def test_degree_of():
    t = c_major()
    assert degree_of(t, (7, 11, 2)) == 5
    assert degree_of(t, (0, 4, 7)) == 1
    with pytest.raises(NotADegreeError):
        degree_of(t, (1, 5, 8))

@pytest.mark.parametrize("name", [n for n in CATALOG_NAMES if len(named_word(n)) >= 5])
def test_degree_of_inverts_chord_at(name):
    w = named_word(name)
    for level in range(1, maxlevel(w) + 1):
        t = make_tonality(w, level)
        for i in range(1, len(t) + 1):
            assert degree_of(t, t.chord_at(i)) == i

def test_hw_from_degrees():
    assert hw_from_degrees(c_major(), [2, 5, 1]) == HarmonicWord([(2, 5, 9), (7, 11, 2), (0, 4, 7)])
    jewish = make_tonality(named_word("jewish"), 1)
    assert hw_from_degrees(jewish, [2, 5, 1]) == HarmonicWord([(1, 5, 8), (7, 10, 1), (0, 4, 7)])
    with pytest.raises(DegreeOutOfRangeError):
        hw_from_degrees(c_major(), [8])

def test_pivotal_degrees_c_to_g():
    g_major = make_tonality(named_word("major", 7), 1)
    pivots = pivotal_degrees(c_major(), g_major)
    assert pivot_degree_lists(pivots) == ((1, 3, 5, 6), (4, 6, 1, 2))

def test_pivotal_degrees_vanish_at_level_5():
    assert pivotal_degrees(c_major(5), make_tonality(named_word("major", 7), 5)) == []

def test_pivotal_degrees_with_itself():
    pivots = pivotal_degrees(c_major(), c_major())
    assert pivot_degree_lists(pivots) == (tuple(range(1, 8)), tuple(range(1, 8)))

def test_pivotal_degrees_symmetric_as_chords():
    for root in range(12):
        for level in (1, 2, 3):
            t1 = c_major(level)
            t2 = make_tonality(named_word("minor", root), level)
            forward = sorted(p.chord for p in pivotal_degrees(t1, t2))
            backward = sorted(p.chord for p in pivotal_degrees(t2, t1))
            assert forward == backward

def test_is_cadence():
    majors = standard_context("major", 1)
    assert is_cadence([(11, 2, 5)], c_major(), majors)
    assert not is_cadence([(0, 4, 7)], c_major(), majors)
    assert not is_cadence([], c_major(), majors)

def test_perfect_and_plagal_are_not_cadences_at_level_1():
    majors = standard_context("major", 1)
    assert not is_cadence([(7, 11, 2), (0, 4, 7)], c_major(), majors)
    assert not is_cadence([(5, 9, 0), (0, 4, 7)], c_major(), majors)

def test_plagal_cadence_at_level_4():
    t = c_major(4)
    assert is_cadence(hw_from_degrees(t, [4, 1]), t, standard_context("major", 4))

@pytest.mark.parametrize("level, expected", [
    (1, [(7,)]),
    (2, [(5,), (7,)]),
    (3, [(3,), (5,), (7,)]),
    (4, [(1,), (3,), (4,), (5,), (7,)]),
    (5, [(1,), (2,), (3,), (4,), (5,), (6,), (7,)]),
])
def test_one_letter_cadences_of_c_major(level, expected):
    assert cadence_degrees(c_major(level), standard_context("major", level), maxlen=1) == expected

def test_no_one_letter_cadence_against_classical():
    assert cadences(c_major(), standard_context("classical", 1), maxlen=1) == []

MINIMAL_PAIRS = {
    1: [(1, 7), (2, 3), (2, 5), (2, 7), (3, 2), (3, 4), (3, 7), (4, 3), (4, 5), (4, 7),
        (5, 2), (5, 4), (5, 7), (6, 7)],
    2: [(1, 2), (1, 4), (1, 5), (1, 7), (2, 1), (2, 3), (2, 5), (2, 7), (3, 2), (3, 4),
        (3, 5), (3, 7), (4, 1), (4, 3), (4, 5), (4, 7), (6, 5), (6, 7)],
    3: [(1, 2), (1, 3), (1, 4), (1, 5), (1, 7), (2, 1), (2, 3), (2, 5), (2, 6), (2, 7),
        (4, 1), (4, 3), (4, 5), (4, 6), (4, 7), (6, 2), (6, 3), (6, 4), (6, 5), (6, 7)],
    4: [(2, 1), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (6, 1), (6, 2), (6, 3), (6, 4),
        (6, 5), (6, 7)],
    5: [],
}

@pytest.mark.parametrize("level", sorted(MINIMAL_PAIRS))
def test_minimal_two_letter_cadences_of_c_major(level):
    found = cadence_degrees(c_major(level), standard_context("major", level), maxlen=2, minimal=True)
    assert found == MINIMAL_PAIRS[level]

def test_jewish_cadences():
    jewish = named_word("jewish")
    assert cadence_degrees(make_tonality(jewish, 1), standard_context("jewish", 1), maxlen=1) == [(6,)]
    assert cadence_degrees(make_tonality(jewish, 2), standard_context("jewish", 2), maxlen=1) == \
        [(i,) for i in range(1, 8)]

def test_jewish_minimal_pairs():
    found = cadence_degrees(make_tonality(named_word("jewish"), 1), standard_context("jewish", 1),
                            maxlen=2, minimal=True)
    expected = [(i, j) for i in range(1, 8) for j in range(1, 8) if i != j and i != 6]
    assert len(found) == 36
    assert found == expected

def test_minimal_cadences_are_cadences_without_cadential_prefix():
    t = c_major(2)
    majors = standard_context("major", 2)
    for hw in cadences(t, majors, maxlen=3, minimal=True):
        assert is_cadence(hw, t, majors)
        assert not any(is_cadence(hw[:k], t, majors) for k in range(1, len(hw)))

def test_cadences_shrink_when_the_context_grows():
    t = c_major(2)
    small = set(cadences(t, standard_context("major", 2), maxlen=2))
    large = set(cadences(t, standard_context("classical", 2), maxlen=2))
    assert large <= small

def test_cadences_are_translation_equivariant():
    t = c_major(2)
    majors = standard_context("major", 2)
    base = cadences(t, majors, maxlen=2)
    for z in (1, 5, 7):
        moved = cadences(t.translate(z), majors.translate(z), maxlen=2)
        assert moved == [hw.translate(z) for hw in base]

def test_rules_agree_when_the_tonality_belongs_to_the_context():
    t = c_major(1)
    majors = standard_context("major", 1)
    assert cadences(t, majors, maxlen=2, rule=CadenceRule.STRICT) == \
        cadences(t, majors, maxlen=2, rule=CadenceRule.UNIQUE)

def test_rules_differ_outside_the_context():
    t = make_tonality(named_word("minor"), 1)
    majors = standard_context("major", 1)
    # the minor tonality never declares itself while a major holds the same chords
    assert cadences(t, majors, maxlen=1, rule=CadenceRule.STRICT) == []
    assert cadences(t, majors, maxlen=1, rule=CadenceRule.UNIQUE) != []

def test_cadence_budget():
    with pytest.raises(SearchBudgetExceededError):
        cadences(c_major(), standard_context("major", 1), maxlen=3, budget=100)

@pytest.mark.parametrize("name", ["gregorian", "classical"])
def test_no_go_for_cadences(name):
    ctx = standard_context(name, 1)
    for t in ctx:
        assert cadences(t, ctx, maxlen=3) == []
        assert cadences(t, ctx, maxlen=3, minimal=True) == []

def test_natural_context():
    assert len(natural_context(C_MAJOR, 1)) == 12
    assert len(natural_context(named_word("chromatic"), 1)) == 1
    assert len(natural_context(named_word("jewish"), 2)) == 12
    assert c_major() in natural_context(C_MAJOR, 1)

def test_standard_context_sizes():
    sizes = {"major": 12, "minor": 12, "classical": 24, "gregorian": 84, "jewish": 12}
    for name, size in sizes.items():
        assert len(standard_context(name, 1)) == size

def test_mazzola_context():
    assert len(standard_context("mazzola", 1)) == 792

def test_unknown_context():
    with pytest.raises(UnknownNameError):
        standard_context("baroque", 1)

def test_context_validation():
    with pytest.raises(EmptyContextError):
        Context([])
    with pytest.raises(DuplicateTonalityError):
        Context([c_major(), c_major()])

def test_count_all_tonalities():
    assert count_all_tonalities() == 10100
    strata = count_tonalities_by_size()
    assert strata[7] == 3960
    assert strata[12] == 4

def test_law_resolution_on_tonic():
    t = c_major()
    assert law_resolution_on_tonic([(7, 11, 2), (0, 4, 7)], t)
    assert not law_resolution_on_tonic([(0, 4, 7), (7, 11, 2)], t)
    assert not law_resolution_on_tonic([], t)

def test_translation_invariance_of_laws():
    t = c_major()
    hw = [(7, 11, 2), (0, 4, 7)]
    assert check_translation_invariance(law_resolution_on_tonic, hw, t, 5)
    assert check_translation_invariance(law_resolution_on_tonic, hw, t, 0)
    assert is_translation_invariant(law_resolution_on_tonic, hw, t)
    assert is_translation_invariant(lambda hw, t: False, hw, t)
