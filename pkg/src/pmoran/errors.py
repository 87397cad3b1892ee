"""Exception hierarchy.

Everything a caller can fix by changing inputs derives from
``ValidationError`` (also a ``ValueError``); enumeration caps raise
``TooLarge``.
"""


class PMoranError(Exception):
    pass


class ValidationError(PMoranError, ValueError):
    pass


class TooLarge(PMoranError):
    def __init__(self, count, cap):
        super().__init__(f"enumeration of {count} intervals exceeds cap {cap}")
        self.count = count
        self.cap = cap


class WrongLength(ValidationError):
    def __init__(self, expected, got):
        super().__init__(f"expected {expected} probabilities, got {got}")
        self.expected = expected
        self.got = got


class NonPositiveEntry(ValidationError):
    def __init__(self, index, value):
        super().__init__(f"probability at index {index} is {value}, must be > 0")
        self.index = index
        self.value = value


class SumNotOne(ValidationError):
    def __init__(self, total):
        super().__init__(f"probabilities sum to {total}, not 1")
        self.total = total


class OutOfRange(ValidationError):
    pass


class BaseMismatch(ValidationError):
    pass


class InvalidDigit(ValidationError):
    pass


class InvalidBaseDigit(InvalidDigit):
    pass


class InvalidNextDigit(InvalidDigit):
    pass


class InvalidAlpha(InvalidDigit):
    pass


class NotInSet(ValidationError):
    pass


class EmptyCombo(ValidationError):
    pass


class PrefixConflict(ValidationError):
    def __init__(self, j, k):
        super().__init__(f"combination {j} is a prefix of combination {k}")
        self.j = j
        self.k = k


class EmptyRatios(ValidationError):
    pass


class RatioOutOfRange(ValidationError):
    pass


class InvalidCounts(ValidationError):
    pass


class NoRoot(ValidationError):
    pass


class DegenerateCover(ValidationError):
    pass
