"""Word-category relative information gain."""

from ._core import (
    Analysis,
    Error,
    InputError,
    InvalidArgument,
    analyse,
    cell,
    run_pipeline,
    stem,
    tokenize,
)

__all__ = [
    "Analysis",
    "Error",
    "InputError",
    "InvalidArgument",
    "analyse",
    "cell",
    "run_pipeline",
    "stem",
    "tokenize",
]
