class CodingError(Exception):
    """Base class for every error raised by the engine."""

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    @property
    def kind(self):
        return type(self).__name__


class ValidationError(CodingError):
    """Input does not describe a well-formed value."""


class DecodeError(CodingError):
    """A word or stream cannot be traced through a code tree."""


class UsageError(Exception):
    """The command line asks for something impossible; not an engine error."""


# partition_core
class EmptyBlock(ValidationError):
    pass


class OverlappingBlocks(ValidationError):
    pass


class IncompleteCover(ValidationError):
    pass


class UnknownElement(ValidationError):
    pass


class UniverseMismatch(ValidationError):
    pass


class UniverseTooLarge(ValidationError):
    pass


class InvalidUniverse(ValidationError):
    pass


# codes
class InvalidAlphabet(ValidationError):
    pass


class BlockCountMismatch(ValidationError):
    pass


class NonDiscretizingChain(ValidationError):
    def __init__(self, message, elements=(), **context):
        super().__init__(message, elements=tuple(elements), **context)
        self.elements = tuple(elements)


class UnrealizableCode(ValidationError):
    pass


class NoSuchBranch(DecodeError):
    pass


class WordTooShort(DecodeError):
    pass


class WordTooLong(DecodeError):
    pass


class UnknownLetter(DecodeError):
    pass


class TrailingPartialWord(DecodeError):
    pass


# entropy
class IncompleteModel(ValidationError):
    pass


class NonNormalizedNode(ValidationError):
    pass


class TooFewSamples(ValidationError):
    pass


# mechanisms
class InvalidSwitchSpace(ValidationError):
    pass


class CodeLengthMismatch(ValidationError):
    pass


class UnknownPosition(ValidationError):
    pass


class EmptyCandidates(ValidationError):
    pass


class AllZeroFitness(ValidationError):
    pass


class InvalidPolicy(ValidationError):
    pass


class OutcomeMismatchPrecondition(ValidationError):
    pass


class AmbiguousOptimum(CodingError):
    """Several candidates share the maximal fitness (raised only in strict mode)."""


class DidNotConverge(CodingError):
    """Selection hit its round cap with more than one survivor."""


# genetic
class InvalidCodon(ValidationError):
    pass


class UnknownAminoAcid(ValidationError):
    pass


class InvalidPermutation(ValidationError):
    pass


# documents
class DocumentError(ValidationError):
    """A JSON document is malformed; `field` addresses the offending entry."""

    def __init__(self, message, field="", **context):
        super().__init__(f"{field}: {message}" if field else message, field=field, **context)
        self.field = field
