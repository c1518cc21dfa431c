from ._core import (
    InputError,
    PrerequisiteError,
    analyze,
    certify,
    digest,
    matching,
    missing_weight,
    normalize,
    subgroup,
    verify,
    word_problem,
)

__all__ = [
    "InputError",
    "PrerequisiteError",
    "analyze",
    "certify",
    "digest",
    "matching",
    "missing_weight",
    "normalize",
    "subgroup",
    "verify",
    "word_problem",
]
