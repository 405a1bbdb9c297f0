from ._voltspec import *  # noqa: F401,F403
