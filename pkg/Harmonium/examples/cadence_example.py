from Harmonium.core.pcset import named_word
from Harmonium.core.tonality import cadence_degrees, make_tonality, pivotal_degrees, pivot_degree_lists, standard_context

def main():
    majors = standard_context("major", 2)
    c_major = make_tonality(named_word("major", 0), 2)
    g_major = make_tonality(named_word("major", 7), 2)
    print("cadences of C major:", cadence_degrees(c_major, majors, maxlen=1))
    print("minimal 2-cadences:", cadence_degrees(c_major, majors, maxlen=2, minimal=True))
    print("pivots C -> G:", pivot_degree_lists(pivotal_degrees(c_major, g_major)))

if __name__ == "__main__":
    main()
