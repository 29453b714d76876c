"""Python interface to the nested-bound resource allocation solver."""

from ._rapnc import (
    DomainError,
    InfeasibleError,
    Instance,
    SvorexModel,
    check_feasibility,
    dp_solve,
    gen_instance,
    lot_sizing_to_instance,
    make_synthetic_ordinal,
    solve,
    solve_continuous,
    solve_integer,
    speed_opt_to_instance,
    svorex_train,
    validate,
)

__all__ = [
    "DomainError",
    "InfeasibleError",
    "Instance",
    "SvorexModel",
    "check_feasibility",
    "dp_solve",
    "gen_instance",
    "lot_sizing_to_instance",
    "make_synthetic_ordinal",
    "solve",
    "solve_continuous",
    "solve_integer",
    "speed_opt_to_instance",
    "svorex_train",
    "validate",
]
