from .main import dispatch, main
