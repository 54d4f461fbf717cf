"""Exception hierarchy shared across the studio modules."""

from __future__ import annotations


class QuizStudioError(Exception):
    """Base class for all studio errors.

    Every error carries a stable machine-readable ``code`` so the HTTP layer
    can map it into a problem document without string matching.
    """

    code = "internal_error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details


# --- gateway ---------------------------------------------------------------

class ProviderUnavailable(QuizStudioError):
    code = "provider_unavailable"


class SchemaViolationExhausted(QuizStudioError):
    code = "schema_violation_exhausted"


class GatewayTimeout(QuizStudioError):
    code = "timeout"


class InvalidRequest(QuizStudioError):
    code = "invalid_request"


# --- template store --------------------------------------------------------

class MalformedManifest(QuizStudioError):
    code = "malformed_manifest"


class EmptyStore(QuizStudioError):
    code = "empty_store"


class NoMatch(QuizStudioError):
    code = "no_match"


# --- question pipeline -----------------------------------------------------

class ExtractionSchemaViolation(QuizStudioError):
    code = "extraction_schema_violation"


class GenerationFailed(QuizStudioError):
    code = "generation_failed"


class UnknownVersion(QuizStudioError):
    code = "unknown_version"


class NoOpRevision(QuizStudioError):
    code = "no_op_revision"


class NoData(QuizStudioError):
    code = "no_data"


# --- student simulation ----------------------------------------------------

class ConstraintInfeasible(QuizStudioError):
    code = "constraint_infeasible"


class EmptySelection(QuizStudioError):
    code = "empty_selection"


class EmptyCohort(QuizStudioError):
    code = "empty_cohort"


class RosterImportError(QuizStudioError):
    code = "roster_import_error"


# --- analytics -------------------------------------------------------------

class KTooLarge(QuizStudioError):
    code = "k_too_large"


class CanonicalizationFailed(QuizStudioError):
    code = "canonicalization_failed"


class AssignmentMismatch(QuizStudioError):
    code = "assignment_mismatch"


# --- service ---------------------------------------------------------------

class UnknownProject(QuizStudioError):
    code = "unknown_project"


class UnknownRun(QuizStudioError):
    code = "unknown_run"
