"""Exception hierarchy shared by all modules."""


class BrauerTiltError(Exception):
    """Base class; ``kind`` is a stable machine-readable tag."""

    kind = "Error"

    def to_dict(self):
        return {"error": self.kind, "message": str(self)}


class InvalidTree(BrauerTiltError):
    kind = "InvalidTree"

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(f"{i.kind}: {i.message}" for i in self.issues))

    def to_dict(self):
        d = super().to_dict()
        d["issues"] = [{"kind": i.kind, "message": i.message} for i in self.issues]
        return d


class OutOfRange(BrauerTiltError):
    kind = "OutOfRange"


class UnknownEdge(BrauerTiltError):
    kind = "UnknownEdge"


class ParseError(BrauerTiltError):
    kind = "ParseError"

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)


class MultiplicityUnsupported(BrauerTiltError):
    kind = "MultiplicityUnsupported"


class AlgebraMismatch(BrauerTiltError):
    kind = "AlgebraMismatch"


class NotTilting(BrauerTiltError):
    kind = "NotTilting"


class NonUnimodularFacet(BrauerTiltError):
    kind = "NonUnimodularFacet"


class DimensionMismatch(BrauerTiltError):
    kind = "DimensionMismatch"


class BoxTooLarge(BrauerTiltError):
    kind = "BoxTooLarge"


class DimensionTooLarge(BrauerTiltError):
    kind = "DimensionTooLarge"


class NotAFacet(BrauerTiltError):
    kind = "NotAFacet"


class OrientationAmbiguous(BrauerTiltError):
    kind = "OrientationAmbiguous"


class RankTooLarge(BrauerTiltError):
    kind = "RankTooLarge"


class NotACongruence(BrauerTiltError):
    kind = "NotACongruence"


class TooLarge(BrauerTiltError):
    kind = "TooLarge"
