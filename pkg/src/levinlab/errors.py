"""Exception types shared across the workbench."""


class DecodeError(ValueError):
    """Bit string is not a valid program."""


class MissingEnd(DecodeError):
    pass


class InvalidOpcode(DecodeError):
    pass


class UnbalancedLoop(DecodeError):
    pass


class TrailingBits(DecodeError):
    """Bits remain after the first END group."""


class ZeroMixture(ArithmeticError):
    """Both one-bit extensions have zero estimated prior mass at this budget."""


class NotFound(LookupError):
    """No enumerated program satisfied the goal within the budget."""


class NoModels(LookupError):
    """Every enumerated operator model assigns the data probability zero."""


class UnknownRecipe(KeyError):
    pass
