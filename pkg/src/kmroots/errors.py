"""Exception hierarchy. Every domain error carries a stable machine-readable code."""


class KMRootsError(Exception):
    code = "KMRootsError"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class NotGCM(KMRootsError):
    code = "NotGCM"


class EmptySubset(KMRootsError):
    code = "EmptySubset"


class UnknownNode(KMRootsError):
    code = "UnknownNode"


class NotSymmetrizable(KMRootsError):
    code = "NotSymmetrizable"


class NotARoot(KMRootsError):
    code = "NotARoot"


class NotRealRoot(KMRootsError):
    code = "NotRealRoot"


class NotShortRoot(KMRootsError):
    code = "NotShortRoot"


class NotFiniteType(KMRootsError):
    code = "NotFiniteType"


class BoundTooLarge(KMRootsError):
    code = "BoundTooLarge"


class OutOfWindow(KMRootsError):
    code = "OutOfWindow"


class NotComparable(KMRootsError):
    code = "NotComparable"


class NotInAdjointWeights(KMRootsError):
    code = "NotInAdjointWeights"


class NotAWeight(KMRootsError):
    code = "NotAWeight"


class NotInSet(KMRootsError):
    code = "NotInSet"


class HypothesisViolated(KMRootsError):
    code = "HypothesisViolated"


class PreconditionViolated(KMRootsError):
    code = "PreconditionViolated"


class NonIntegralReflection(KMRootsError):
    code = "NonIntegralReflection"


class SupportOverlap(KMRootsError):
    code = "SupportOverlap"


class SupportViolation(KMRootsError):
    code = "SupportViolation"


class IntegralityViolation(KMRootsError):
    code = "IntegralityViolation"


class OrbitIncomplete(KMRootsError):
    code = "OrbitIncomplete"


class WJNotFinite(KMRootsError):
    code = "WJNotFinite"


class UnknownFixture(KMRootsError):
    code = "UnknownFixture"
