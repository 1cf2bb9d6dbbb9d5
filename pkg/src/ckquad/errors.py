"""Exception types raised by the geometry kernel."""


class GeometryError(ValueError):
    """Base class for every precondition or degeneracy failure."""


class ZeroVector(GeometryError):
    pass


class FullRank(GeometryError):
    pass


class RankDeficientAmbiguous(GeometryError):
    pass


class CoincidentArguments(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class NotCollinear(GeometryError):
    pass


class PCoincidesWithEndpoint(GeometryError):
    pass


class UnderDetermined(GeometryError):
    pass


class DegenerateInput(GeometryError):
    pass


class SingularConic(GeometryError):
    pass


class ZeroPolar(GeometryError):
    pass


class LineInConic(GeometryError):
    pass


class IsotropicPoint(GeometryError):
    pass


class IsotropicMirror(IsotropicPoint):
    pass


class IsotropicEndpoint(IsotropicPoint):
    pass


class IsotropicElement(IsotropicPoint):
    pass


class NotOnLine(GeometryError):
    pass


class NoProperMidpoint(GeometryError):
    pass


class DegenerateBasis(GeometryError):
    pass


class NoCircumcircle(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class DegenerateQuadrangle(GeometryError):
    pass


class KIsAbsolute(GeometryError):
    pass


class KIsCircle(GeometryError):
    pass


class PointOnConic(GeometryError):
    pass


class FrameNotRealizable(GeometryError):
    pass


class ParameterOutOfRange(GeometryError):
    pass


class LineThroughVertex(GeometryError):
    pass


class KNotThroughVertices(GeometryError):
    pass


class ParallelTangents(GeometryError):
    pass


class CoincidentMidpoints(GeometryError):
    pass


class UndefinedCentroid(GeometryError):
    pass


class CoincidentCentroids(GeometryError):
    pass


class DegenerateSymmetricInput(GeometryError):
    pass


class PNotInside(GeometryError):
    pass


class NonConvex(GeometryError):
    pass


class SideConditionViolated(GeometryError):
    pass


class InvalidScene(GeometryError):
    pass


class UnknownFixture(KeyError):
    pass


class UnrenderableElement(GeometryError):
    pass


class InvalidTheoremId(ValueError):
    pass
