"""Exception hierarchy shared by every module.

Every domain error carries a short machine-readable ``code`` so the CLI can
emit structured JSON without string matching.
"""


class DegSeqError(Exception):
    code = "error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


# degree_core
class OddSum(DegSeqError, ValueError):
    code = "odd_sum"


class NotGraphical(DegSeqError, ValueError):
    code = "not_graphical"


class NegativeDegree(DegSeqError, ValueError):
    code = "negative_degree"


class VertexOutOfRange(DegSeqError, IndexError):
    code = "vertex_out_of_range"


class TooSmall(DegSeqError, ValueError):
    code = "too_small"


# graph_core
class DegreeMismatch(DegSeqError, ValueError):
    code = "degree_mismatch"


class InvalidGraph(DegSeqError, ValueError):
    code = "invalid_graph"


# bounds
class InvalidConstraint(DegSeqError, ValueError):
    code = "invalid_constraint"


class EdgeInConstraint(DegSeqError, ValueError):
    code = "edge_in_constraint"


class DegenerateDenominator(DegSeqError, ZeroDivisionError):
    code = "degenerate_denominator"


class BadEll(DegSeqError, ValueError):
    code = "bad_ell"


# oracle
class BudgetExceeded(DegSeqError, RuntimeError):
    code = "budget_exceeded"


class EmptyCondition(DegSeqError, ValueError):
    code = "empty_condition"


class PreconditionViolated(DegSeqError, ValueError):
    code = "precondition_violated"


# sampler
class RejectionBudgetExhausted(DegSeqError, RuntimeError):
    code = "rejection_budget_exhausted"
