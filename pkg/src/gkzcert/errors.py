"""Exception types raised at the API boundary."""


class HypothesisError(ValueError):
    """An input violates a hypothesis the hypergeometric constructions rely on."""

    hypothesis = "input hypothesis"

    def __str__(self):
        msg = super().__str__()
        return f"{msg} (violates: {self.hypothesis})"


class ZeroColumnError(HypothesisError):
    hypothesis = "every column a_i of A is nonzero"


class RankDeficientError(HypothesisError):
    hypothesis = "A is a d x n integer matrix of full rank d"


class OrbitBoundaryError(HypothesisError):
    """Raised for a point whose xi-coordinates are not all nonzero."""

    hypothesis = "transversality needs a smooth point whose xi-coordinates are all nonzero"


class InvalidInstanceError(ValueError):
    """A transversality instance whose point is not on Var(L x xi)."""
