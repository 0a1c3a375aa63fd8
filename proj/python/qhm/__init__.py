from ._qhm import *  # noqa: F401,F403
