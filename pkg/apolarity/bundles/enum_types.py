from enum import Enum


class BundleKind(Enum):
    """Enum for the two bundles computed on a projected curve."""

    NORMAL = "normal"
    TANGENT = "tangent"


class CodimTwoStratum(Enum):
    """Enum for the five normal-bundle strata of line projections (k = 2)."""

    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    F5 = "F5"
