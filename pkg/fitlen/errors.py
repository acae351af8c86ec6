"""Exception types raised by the toolkit."""


class FitlenError(Exception):
    """Base class for all toolkit errors."""


class UsageError(FitlenError, ValueError):
    """Invalid arguments supplied by the caller."""


class DegreeMismatchError(UsageError):
    """Permutations or groups of different degrees were combined."""


class ExpressionSyntaxError(UsageError):
    """Group expression text could not be parsed."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class InvalidCoverError(UsageError):
    """A family of prime subsets is not a cover."""


class ContainmentError(FitlenError, ValueError):
    """An element is not contained in the ambient group."""

    def __init__(self, message: str, element: str):
        super().__init__(f"{message}: {element}")
        self.element = element


class NotSolubleError(FitlenError, ValueError):
    """A series stalled above the trivial group."""


class DegreeBudgetError(FitlenError, ValueError):
    """A construction needs more points than the configured maximum degree."""

    def __init__(self, message: str, required_degree: int, max_degree: int):
        super().__init__(
            f"degree budget exceeded: {message} needs degree {required_degree}, "
            f"maximum is {max_degree}"
        )
        self.required_degree = required_degree
        self.max_degree = max_degree


class OracleScaleError(FitlenError, ValueError):
    """Group too large for brute-force enumeration."""


class PairBudgetError(FitlenError, ValueError):
    """Product-set enumeration would exceed the pair budget."""


class SylowSystemCorruptError(FitlenError, RuntimeError):
    """A Sylow system does not produce Hall subgroups of the right order."""


class HallSearchError(FitlenError, RuntimeError):
    """Brute-force search failed to locate a Hall subgroup."""


class MissingProfileEntryError(FitlenError, KeyError):
    """A bound needs h(G_sigma) for a prime set absent from the profile."""


class FaithfulnessError(FitlenError, RuntimeError):
    """A constructed group is smaller than its expression predicts."""
