from .render import TimedEvent, TimedPiece, render_wav, synthesize
