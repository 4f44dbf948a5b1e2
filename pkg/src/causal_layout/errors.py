class ResourceCapExceeded(RuntimeError):
    """Raised when path extraction would hold more partial paths than allowed."""


class LayoutDivergence(FloatingPointError):
    """A vertex position became non-finite during the force simulation."""

    def __init__(self, iteration: int):
        super().__init__(f"non-finite vertex position at iteration {iteration}")
        self.iteration = iteration


class GenerationError(RuntimeError):
    """The synthetic generator could not satisfy its construction constraints."""
