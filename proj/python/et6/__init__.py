"""Six-field extended thermodynamics for polyatomic gases."""

from ._et6 import *  # noqa: F401,F403
from ._et6 import __doc__  # noqa: F401
