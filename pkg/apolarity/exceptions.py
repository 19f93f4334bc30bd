class ApolarityError(Exception):
    """Base class for every error raised by the apolarity package."""


class ZeroPolynomial(ApolarityError, ValueError):
    """An operation that needs a nonzero polynomial received the zero polynomial."""


class DegreeMismatch(ApolarityError, ValueError):
    """Degrees or shapes of the operands are incompatible."""


class ZeroPoint(ApolarityError, ValueError):
    """(0, 0) was given where a projective point is required."""


class ZeroForm(ApolarityError, ValueError):
    """An operation that needs a nonzero binary form received the zero form."""


class NotSplitOverQ(ApolarityError):
    """The apolar generator has an irreducible factor of degree > 1 over the rationals."""


class LengthTooLarge(ApolarityError):
    """The canonical form is only defined when 2 * length <= degree + 1."""


class InvalidCenter(ApolarityError, ValueError):
    """The projection center is rank deficient, out of range or meets the curve."""


class DegenerateMap(ApolarityError):
    """The kernel sheaf does not have the expected rank and degree."""


class RankDeficientCombo(ApolarityError, ValueError):
    """The combination matrix of a secant center does not have full row rank."""


class RepeatedParams(ApolarityError, ValueError):
    """Two curve parameters of a secant center are the same projective point."""


class UnsupportedTheorem(ApolarityError, ValueError):
    """Unknown theorem id for a verification campaign."""


class ParameterOutOfRange(ApolarityError, ValueError):
    """(n, k, trials) outside the range a campaign supports."""


class FormatError(ApolarityError, ValueError):
    """Malformed form literal or center file."""
