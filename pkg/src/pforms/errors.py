"""Exception types shared across the package."""


class PFormsError(Exception):
    """Base class for all library errors."""


class ContextMismatchError(PFormsError, ValueError):
    """Operands live over different coordinate contexts."""


class NotAPowerError(PFormsError, ValueError):
    """An element is not a p^t-th power."""


class NotClosedError(PFormsError, ValueError):
    """The Cartier operator was applied to a form with nonzero differential."""


class HypothesisError(PFormsError, ValueError):
    """A closed-form construction was called outside its hypotheses.

    ``hypothesis`` is a short stable tag naming the violated condition; the
    CLI reports it and exits with status 2.
    """

    def __init__(self, hypothesis, message):
        super().__init__(f"[{hypothesis}] {message}")
        self.hypothesis = hypothesis
        self.detail = message


class DegenerateStepError(HypothesisError):
    """A tower step adjoins a root of an element that is already a p-th power."""

    def __init__(self, message):
        super().__init__("step-not-p-th-power", message)
