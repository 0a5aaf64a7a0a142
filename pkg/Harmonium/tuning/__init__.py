from .euler import EulerPoint, commas, gradus, point_from_ratio
from .scales import GeneratedScale, rescale_to_range, scale_at_fixed_interval
from .pythag import PytLetter, PytTonality, pyt_freq
