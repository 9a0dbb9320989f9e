"""Discriminant-direction training and evaluation for binary iris codes."""

from ._core import (
    Dataset,
    DegenerateDirectionError,
    DimensionError,
    Error,
    EvalRun,
    IoError,
    Model,
    ParseError,
    SynthConfig,
    TrainConfig,
    ValidationError,
    defuzzification_delta,
    evaluate,
    generate,
    hamming_similarity,
    merge,
    projection_score,
    read_dataset,
    read_model,
    report_json,
    theorem1_check,
    train,
    write_dataset,
    write_model,
)

__version__ = "0.1.0"
