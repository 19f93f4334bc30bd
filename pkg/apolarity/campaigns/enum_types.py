from enum import Enum


class TheoremId(Enum):
    """Enum for the statements a verification campaign can check."""

    POINT = "point"
    POINT_SPECIAL = "point-special"
    RANK3 = "rank3"
    RANK4 = "rank4"
    RANK5 = "rank5"
    CODIM3_RANK4 = "codim3-rank4"
    MAINRESULT = "mainresult"
    MAINRESULT_LITERAL = "mainresult-literal"
    MAINRESULT_TG = "mainresultTG"
    CI = "ci"
    SYLVESTER = "sylvester"
