"""Exception hierarchy.

``InputError`` subclasses describe bad user input (CLI exit code 1);
``ComputationError`` subclasses describe budget or resource failures on
valid input (CLI exit code 2).
"""


class GraphvnError(Exception):
    pass


class InputError(GraphvnError):
    pass


class ComputationError(GraphvnError):
    pass


class GraphFormatError(InputError):
    pass


class GraphInvalid(InputError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NonComposable(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"edge at position {index} does not continue the path")


class UnknownEdge(InputError):
    def __init__(self, edge_id):
        self.edge_id = edge_id
        super().__init__(f"unknown edge {edge_id!r}")


class VertexMismatch(InputError):
    pass


class NotBalancedError(InputError):
    pass


class DeltaMismatch(InputError):
    pass


class SizeMismatch(InputError, ValueError):
    pass


class PreconditionViolated(InputError, ValueError):
    pass


class WeightNotFactorable(ComputationError):
    pass


class BasisTooLarge(ComputationError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"Fock basis would have {size} entries (cap {cap})")


class WordExceedsDepth(ComputationError):
    def __init__(self, length, depth):
        self.length = length
        self.depth = depth
        super().__init__(f"word of length {length} exceeds Fock depth {depth}")
