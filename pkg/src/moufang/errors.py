"""Exception hierarchy shared by all modules."""


class MoufangError(Exception):
    pass


# fields
class NotPrime(MoufangError, ValueError):
    pass


class BadDegree(MoufangError, ValueError):
    pass


class MixedFields(MoufangError, ValueError):
    pass


class DivisionByZero(MoufangError, ZeroDivisionError):
    pass


class FieldTooLarge(MoufangError, ValueError):
    pass


# Zorn algebra
class NotAUnit(MoufangError, ValueError):
    pass


# loops
class NotLatin(MoufangError, ValueError):
    pass


class NoIdentity(MoufangError, ValueError):
    pass


class NotASubloop(MoufangError, ValueError):
    pass


class NotNormal(MoufangError, ValueError):
    pass


class NotMoufang(MoufangError, ValueError):
    pass


class NotAssociative(MoufangError, ValueError):
    pass


class CenterMismatch(MoufangError, RuntimeError):
    pass


# loop algebras
class Mismatch(MoufangError, ValueError):
    pass


class NotPLoop(MoufangError, ValueError):
    pass


class NotNilpotent(MoufangError, ValueError):
    pass


class UnknownName(MoufangError, KeyError):
    pass
