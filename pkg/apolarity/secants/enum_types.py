from enum import Enum


class CodimFamily(Enum):
    """Enum for the expected-codimension formulas."""

    NORMAL = "normal"
    TANGENT = "tangent"
    RAMELLA = "ramella"
