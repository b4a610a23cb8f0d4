"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid parameter combination (degree out of range, h not a proper divisor, ...)."""


class ConstructionError(ValueError):
    """A field could not be built from the given modulus."""


class DomainError(ArithmeticError):
    """Operation undefined at the given element, e.g. the inverse of zero."""


class ConsistencyError(RuntimeError):
    """A closed form produced an impossible value (negative multiplicity, ...)."""


class BudgetExceeded(RuntimeError):
    """Refusal to run an enumeration whose estimated cost exceeds the ceiling."""

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"{what} needs about {required} table lookups; budget is {budget}"
        )
