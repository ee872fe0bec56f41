"""Linear equations near z0 and their power-series solutions.

Public surface:
    - :class:`OdeSpec`, :func:`ode_from_spec`
    - :func:`solve_series`, :func:`manufacture_coefficient`
    - :func:`forcing_of`, :func:`shift_solution`
    - :func:`expand_operator`, :func:`taylor_series`
"""

from .errors import RecurrenceBreakdown, ResidualTooLarge
from .manufacture import equation_residual, log_derivative_trees, manufacture_coefficient
from .ode import EquationDocument, OdeSpec, forcing_of, ode_from_spec, shift_solution
from .operator import OperatorExpansion, expand_operator
from .recurrence import solve_series
from .taylor import initial_values, series_of, taylor_series

__all__ = [
    "EquationDocument",
    "OdeSpec",
    "OperatorExpansion",
    "RecurrenceBreakdown",
    "ResidualTooLarge",
    "equation_residual",
    "expand_operator",
    "forcing_of",
    "initial_values",
    "log_derivative_trees",
    "manufacture_coefficient",
    "ode_from_spec",
    "series_of",
    "shift_solution",
    "solve_series",
    "taylor_series",
]
