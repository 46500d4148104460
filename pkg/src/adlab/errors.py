"""Domain error hierarchy.

Every error carries a short stable ``code`` so the service and CLI can
surface it without string-matching messages.
"""


class AdlabError(Exception):
    code = "domain-error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class GroupSpecError(AdlabError):
    code = "group-spec"


class OrderBoundError(AdlabError):
    code = "order-bound"


class NotPGroupError(AdlabError):
    code = "not-p-group"


class NotPrimeError(AdlabError):
    code = "not-prime"


class FieldParseError(AdlabError):
    code = "field-parse"


class NotSubfieldError(AdlabError):
    code = "not-subfield"


class BadResidueError(AdlabError):
    code = "bad-residue"


class NonZeroSumError(AdlabError):
    code = "nonzero-sum"


class MissingRelativeDataError(AdlabError):
    code = "missing-relative-data"


class BadSlotError(AdlabError):
    code = "bad-slot"


class BadConditionError(AdlabError):
    code = "bad-condition"


class UnknownExampleError(AdlabError):
    code = "unknown-example"


class BadParametersError(AdlabError):
    code = "bad-parameters"


class BadCertificateError(AdlabError):
    code = "bad-certificate"
