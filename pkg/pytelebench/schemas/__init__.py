"""
Pandera models for every table the package emits.
"""

from .curve_schema import (
    ComparisonFigureSchema,
    EstimatorCurveSchema,
    EstimatorFigureSchema,
    FidelityCurveSchema,
    ParticleEstimatorFigureSchema,
    ParticleFigureSchema,
    ProjectiveFigureSchema,
    ValidationReportSchema,
)

__all__ = [
    "FidelityCurveSchema",
    "EstimatorCurveSchema",
    "ValidationReportSchema",
    "ProjectiveFigureSchema",
    "EstimatorFigureSchema",
    "ParticleEstimatorFigureSchema",
    "ComparisonFigureSchema",
    "ParticleFigureSchema",
]
