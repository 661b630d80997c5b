"""Exception hierarchy shared by all modules."""


class SkeletalError(Exception):
    """Base class for every error raised by the package."""


class IncompatibleRadicands(SkeletalError, ValueError):
    pass


class NonDiscrete(SkeletalError):
    pass


class RankDeficient(SkeletalError):
    def __init__(self, rank: int, message: str | None = None):
        super().__init__(message or f"only {rank} independent translations found")
        self.rank = rank


class NotCrystallographic(SkeletalError):
    pass


class ValidationError(SkeletalError):
    """A polygonal-complex axiom fails on the interior of a window."""


class DisconnectedEdgeGraph(ValidationError):
    pass


class DisconnectedVertexFigure(ValidationError):
    def __init__(self, vertex, message: str | None = None):
        super().__init__(message or f"vertex-figure at vertex {vertex} is disconnected")
        self.vertex = vertex


class EdgeFaceDeficit(ValidationError):
    def __init__(self, edges, message: str | None = None):
        self.edges = list(edges)
        super().__init__(message or f"{len(self.edges)} interior edge(s) lie in fewer than 2 faces")


class BoundaryContact(SkeletalError):
    pass


class NotRegular(SkeletalError):
    pass


class SizeLimit(SkeletalError):
    pass


class DegenerateFace(SkeletalError):
    pass


class InvariantViolation(SkeletalError):
    pass


class NotAPolyhedron(SkeletalError):
    pass


class WindowTooSmall(SkeletalError):
    pass


class NotOrientable(SkeletalError):
    pass


class CentersRequired(SkeletalError):
    pass


class ZeroScale(SkeletalError):
    pass


class NotBipartite(SkeletalError):
    pass


class NoSolution(SkeletalError):
    pass


class UnknownFamily(SkeletalError):
    pass


class RelationViolation(SkeletalError):
    pass


class Unstable(SkeletalError):
    def __init__(self, counts, message: str | None = None):
        self.counts = tuple(counts)
        super().__init__(message or f"flag-orbit counts differ between radii: {self.counts}")


class NotEquivelar(SkeletalError):
    def __init__(self, witness, message: str | None = None):
        self.witness = witness
        super().__init__(message or f"complex is not equivelar (witness: {witness})")


class NotTwoOrbit(SkeletalError):
    pass


class NoReflectionGenerator(SkeletalError):
    pass


class UnknownEntry(SkeletalError, KeyError):
    pass


class UnsupportedFace(SkeletalError):
    pass
