from ._latspec import *  # noqa: F401,F403
from ._latspec import __doc__  # noqa: F401
