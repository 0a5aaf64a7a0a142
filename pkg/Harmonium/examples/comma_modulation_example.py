from Harmonium.core.pcset import named_word
from Harmonium.core.tonality import degrees_of
from Harmonium.tuning.pythag import (
    cycle_raise, pyt_cadences, pyt_pivotal, pyt_standard_context, pyt_tonality, pyt_word,
)

def main():
    context = pyt_standard_context("major", 1, cycle=0)
    pt1 = pyt_tonality(pyt_word(named_word("major")), 1)
    for i in (5, 6, 7):
        pt2 = pyt_tonality(cycle_raise(pt1.word, i), 1)
        pivots = [p.source_degree for p in pyt_pivotal(pt1, pt2)]
        found = [degrees_of(pt2, hw) for hw in pyt_cadences(pt2, context, maxlen=2)]
        print(f"raise letter {i}: pivots {pivots}, cadences {found}")

if __name__ == "__main__":
    main()
