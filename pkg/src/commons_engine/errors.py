"""Exception types raised by engine commands.

Every command failure maps to one of these; the HTTP layer translates them
to 4xx responses and the simulation harness treats them as agent mistakes.
"""


class CommonsError(Exception):
    """Base class for all engine errors."""


class UnknownHouse(CommonsError):
    pass


class DuplicateHouse(CommonsError):
    pass


class DuplicateResident(CommonsError):
    pass


class UnknownResident(CommonsError):
    pass


class TimestampRegression(CommonsError):
    """A command carried a timestamp earlier than the log head."""


class CorruptLog(CommonsError):
    """Event log has a sequence gap, timestamp regression, or bad record."""


class InvalidWindow(CommonsError):
    pass


class UnknownKind(CommonsError):
    pass


class ProposalClosed(CommonsError):
    pass


class UnknownProposal(CommonsError):
    pass


class UnknownVoter(CommonsError):
    pass


class UnknownChore(CommonsError):
    pass


class DuplicateName(CommonsError):
    pass


class ZeroValue(CommonsError):
    pass


class MonthNotEnded(CommonsError):
    pass


class InvalidRange(CommonsError):
    pass


class SameChore(CommonsError):
    pass


class NoChores(CommonsError):
    pass


class SelfKarma(CommonsError):
    pass


class SelfChallenge(CommonsError):
    pass


class ExcessiveStake(CommonsError):
    pass


class UnknownAccount(CommonsError):
    pass


class DuplicateAccountName(CommonsError):
    pass


class InsufficientFunds(CommonsError):
    pass


class NonPositivePrice(CommonsError):
    pass


class ConfigInvalid(CommonsError):
    """Bad configuration; the message carries the offending field path."""


class StoreUnavailable(CommonsError):
    pass


class InvalidScenario(CommonsError):
    pass


class EmptyLog(CommonsError):
    pass


class EmptyWindow(CommonsError):
    pass
