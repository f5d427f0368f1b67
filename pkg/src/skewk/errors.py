"""Exception types.  Each carries the stable code printed by the CLI."""


class SkewKError(ValueError):
    code = "ERROR"


class NonPrime(SkewKError):
    code = "NON_PRIME"


class FieldBoundExceeded(SkewKError):
    code = "FIELD_BOUND"


class NoEmbedding(SkewKError):
    code = "NO_EMBEDDING"


class NotCoprime(SkewKError):
    code = "NOT_COPRIME"


class InvalidAutomorphism(SkewKError):
    code = "INVALID_AUTOMORPHISM"


class GroupMismatch(SkewKError):
    code = "GROUP_MISMATCH"


class IncompatibleAction(SkewKError):
    code = "INCOMPATIBLE_ACTION"


class MaschkeViolated(SkewKError):
    code = "MASCHKE_VIOLATED"


class DecompositionFailure(SkewKError):
    code = "DECOMPOSITION_FAILED"


class InvalidTwist(SkewKError):
    code = "INVALID_TWIST"


class InvalidDegree(SkewKError):
    code = "INVALID_DEGREE"


class SplittingFailure(SkewKError):
    code = "SPLITTING_FAILED"


class OracleBoundExceeded(SkewKError):
    code = "ORACLE_BOUND"


class UsageError(SkewKError):
    code = "USAGE"


class UnknownLabel(SkewKError):
    code = "UNKNOWN_LABEL"


class TowerHypothesisViolated(SkewKError):
    code = "TOWER_HYPOTHESIS"


class NonSquareDimension(SkewKError):
    code = "NON_SQUARE_DIMENSION"


class NotCommutative(SkewKError):
    code = "NOT_COMMUTATIVE"


class ElPrimeEqualsP(SkewKError):
    code = "ELL_EQUALS_P"
