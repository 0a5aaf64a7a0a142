# Informações da versão
__version__ = '0.1.0'
__author__ = 'Miguel Araújo Julio'
__email__ = 'Julioaraujo.guel@gmail.com'
__license__ = 'MIT'

import logging

logging.getLogger(__name__).addHandler(logging.NullHandler())

# Importações principais
from .core.pcset import (
    TIMap, chord, enumerate_words, interval_vector, maxlevel, mode, named_word, word_transform,
)
from .core.tonality import (
    CadenceRule, Context, HarmonicWord, Tonality, cadences, is_cadence, make_tonality,
    natural_context, pivotal_degrees, standard_context,
)
from .core.modulation import Piece, fifths_cycle_piece, modulations, validate_piece

from .tuning.euler import EulerPoint, commas, gradus, point_from_ratio
from .tuning.scales import rescale_to_range, scale_at_fixed_interval
from .tuning.pythag import PytLetter, PytTonality, pyt_freq, pyt_tonality

from .acoustics.consonance import Sound, Spectrum, commensurable, consonance_index

from .audio.render import TimedPiece, render_wav
from .utils.config import Config, load_config
from .utils.validation import HarmoniumError
