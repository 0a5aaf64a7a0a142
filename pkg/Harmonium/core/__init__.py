from .pcset import TIMap, chord, enumerate_words, maxlevel, mode, named_word
from .tonality import CadenceRule, Context, HarmonicWord, Tonality, cadences, make_tonality
from .modulation import Modulation, Piece, modulations, validate_piece
