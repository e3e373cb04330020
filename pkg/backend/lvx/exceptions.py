from django.core.management.base import CommandError
import logging

logger = logging.getLogger(__name__)


class LVXError(Exception):
    default_detail = "Something went wrong"
    default_code = "lvx_error"

    def __init__(self, detail=None, *, type_="about:blank", instance=None):
        self.detail = detail or self.default_detail
        super().__init__(self.detail)
        self.type_ = type_
        self.instance = instance

    def get_full_details(self):
        return {
            "type": self.type_,
            "title": self.default_code.replace("_", " ").title(),
            "detail": self.detail,
            "instance": self.instance or "",
        }


class DimensionError(LVXError):
    default_detail = "Array dimensions do not match"
    default_code = "dimension_error"


class NumericError(LVXError):
    default_detail = "Non-finite value encountered"
    default_code = "numeric_error"


class InvalidInputError(LVXError):
    default_detail = "Invalid input"
    default_code = "validation_error"


class SchemaError(LVXError):
    default_detail = "CSV columns do not match the expected schema"
    default_code = "schema_error"

    def __init__(self, detail=None, *, column=None, **kwargs):
        super().__init__(detail, **kwargs)
        self.column = column


class CSVParseError(LVXError):
    default_detail = "Could not parse CSV cell"
    default_code = "parse_error"

    def __init__(self, detail=None, *, row=None, column=None, **kwargs):
        super().__init__(detail, **kwargs)
        self.row = row
        self.column = column


class CheckpointFormatError(LVXError):
    default_detail = "Checkpoint file is malformed"
    default_code = "format_error"


class UndefinedMetricError(LVXError):
    default_detail = "Metric is undefined for single-class input"
    default_code = "undefined_metric"


class MissingCellError(LVXError):
    default_detail = "Report grid is incomplete"
    default_code = "missing_cell"

    def __init__(self, detail=None, *, cell=None, **kwargs):
        super().__init__(detail, **kwargs)
        self.cell = cell


class ModelKindError(LVXError):
    default_detail = "Operation not supported for this model kind"
    default_code = "kind_error"


def command_error_handler(exc, command=None):
    """
    Convert an LVXError raised inside a management command into a CommandError.

    Args:
        exc: The exception raised by the command body
        command: Name of the command, used for the log line

    Returns:
        CommandError carrying the problem details and a non-zero return code
    """
    logger.error(f"Exception in {command or 'command'}: {exc}")
    if not isinstance(exc, LVXError):
        return CommandError(str(exc), returncode=1)

    details = exc.get_full_details()
    return CommandError(f"{details['title']}: {details['detail']}", returncode=2)
