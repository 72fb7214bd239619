"""Python bindings for the tempercore diffusion-limit MCMC toolkit."""

from ._tempercore import *  # noqa: F401,F403
from ._tempercore import __doc__  # noqa: F401
