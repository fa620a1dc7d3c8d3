"""Network models, their operads and algebras, with brute-force law checkers."""

from .errors import (ArityError, BudgetExceeded, CarrierError, ConstraintError, ModelMismatch,
                     NetopError, ProfileError, TermError)
from .perm import Permutation, block_induced, block_sum, block_swap, compose as compose_perms

__version__ = "0.1.0"

__all__ = [
    "ArityError", "BudgetExceeded", "CarrierError", "ConstraintError", "ModelMismatch",
    "NetopError", "ProfileError", "TermError", "Permutation", "block_induced", "block_sum",
    "block_swap", "compose_perms", "__version__",
]
