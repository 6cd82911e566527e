from ._ltvnorm import *  # noqa: F401,F403
