from ..errors import InvalidDims
from ..formulations.handles import Formulation


def count_rows_closed_form(formulation: Formulation | str, N: int, T: int, W: int) -> int:
    """Rows each formulation adds per long-duration storage. Sign restrictions are variable
    bounds and never counted; anything involving two or more variables is a row."""
    if not (N >= W >= 1 and T >= 2):
        raise InvalidDims(f"need N >= W >= 1 and T >= 2 (got N={N}, T={T}, W={W})")
    formulation = Formulation(formulation)
    if formulation is Formulation.EXPLICIT_HOURLY:
        return 2 * N * T
    if formulation is Formulation.IMPLICIT_HOURLY:
        return W * (T - 1) + N + 2 * N * T
    if formulation is Formulation.IMPLICIT_MINMAX:
        return W * (4 * T - 1) + 3 * N
    return W * (2 * T + 1) + 2 * N


def count_variables_closed_form(formulation: Formulation | str, N: int, T: int, W: int) -> int:
    """Variables each formulation adds per long-duration storage."""
    formulation = Formulation(formulation)
    if formulation is Formulation.EXPLICIT_HOURLY:
        return N * T
    if formulation is Formulation.IMPLICIT_HOURLY:
        return W * T + N
    if formulation is Formulation.IMPLICIT_MINMAX:
        return W * T + N + 3 * W
    return W * T + N + W
