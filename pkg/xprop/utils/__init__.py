from .output import MANIFEST_NAME, OutputManager, file_sha256
from .progress import NullProgress, ProgressReporter, progress_or_null
from .reports import read_csv, to_jsonable, write_csv, write_json

__all__ = [
    "MANIFEST_NAME",
    "NullProgress",
    "OutputManager",
    "ProgressReporter",
    "file_sha256",
    "progress_or_null",
    "read_csv",
    "to_jsonable",
    "write_csv",
    "write_json",
]
