class GraphFAError(Exception):
    """Base class for all errors raised by graphfa."""


class ParseError(GraphFAError):
    def __init__(self, message, line=None, col=None, source=None):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        where = ""
        if line is not None:
            where = f"{line}:{col}: "
            if source:
                where = f"{source}:{where}"
        super().__init__(where + message)


class TypeMismatchError(GraphFAError):
    """Two typed objects were combined although their interface ranks differ."""


class PreconditionError(GraphFAError):
    """An operation was called on input outside its documented domain."""


class ResourceLimitExceeded(GraphFAError):
    """The backtracking search hit its configuration budget."""

    def __init__(self, budget, explored):
        self.budget = budget
        self.explored = explored
        super().__init__(f"search budget of {budget} configurations exhausted")
