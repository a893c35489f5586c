"""Exception hierarchy shared by every module."""


class DihedralError(ValueError):
    pass


class ModulusMismatch(DihedralError):
    pass


class NonCoprimeModulus(DihedralError):
    pass


class InvalidDiscriminant(DihedralError):
    pass


class InvalidForm(DihedralError):
    pass


class BoundExceeded(DihedralError):
    pass


class InertPrime(DihedralError):
    pass


class ImaginaryField(DihedralError):
    pass


class NotDihedral(DihedralError):
    pass


class RamifiedPrime(DihedralError):
    pass


class RamifiedAtP(DihedralError):
    pass


class UnsupportedSignature(DihedralError):
    pass


class SmallDiscriminant(DihedralError):
    pass


class SearchExhausted(DihedralError):
    pass


class BadPrime(DihedralError):
    pass


class InsufficientPrecision(DihedralError):
    pass


class RingMismatch(DihedralError):
    pass


class NonSquarefreeLevel(DihedralError):
    pass


class BadCharacteristic(DihedralError):
    pass


class InvalidCharacter(DihedralError):
    pass
