"""Exception types raised by qtcolor."""


class QuadtreeError(ValueError):
    """Base class for invalid quadtree input."""


class KeyRangeError(QuadtreeError):
    pass


class PartitionError(QuadtreeError):
    """Leaves do not form an exact partition of the unit square.

    ``witness`` holds either an overlapping ``(ancestor, descendant)`` pair
    or a single uncovered square.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotALeaf(QuadtreeError):
    pass


class DepthLimit(QuadtreeError):
    pass


class BudgetExceeded(RuntimeError):
    """A search ran out of budget; the answer is unknown (not negative)."""


class NonCanonicalOrder(QuadtreeError):
    pass


class OverlapError(ValueError):
    pass


class EmptySubset(ValueError):
    pass


class UnbalancedInput(ValueError):
    pass


class MissingAssignment(KeyError):
    def __init__(self, key):
        super().__init__(key)
        self.key = key

    def __str__(self):
        return f"no color assigned to square {tuple(self.key)}"


class DegeneracyExceeded(RuntimeError):
    def __init__(self, vertex, degree):
        super().__init__(f"every remaining vertex has degree > bound "
                         f"(vertex {vertex} has degree {degree})")
        self.vertex = vertex
        self.degree = degree


class InternalInvariantBroken(AssertionError):
    pass
