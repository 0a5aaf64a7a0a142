from .consonance import Sound, Spectrum, commensurable, consonance_index, ideal_spectrum, pure_oscillator
