"""Eliminants, solution boxes and Nash equilibrium enumeration."""

from .boxes import DEFAULT_TOL, RootBox, exact_sign_at, solve_boxes
from .eliminate import Eliminant, eliminate, eliminate_all
from .ne import NEReport, SupportPattern, enumerate_ne
from .resultants import DegenerateSystem
