import math

import pandas as pd
import pandera as pa
from pandera.typing import Series

# Slack on range checks for values that are exact only up to rounding.
EDGE = 1e-9

STRATEGIES = ["do-nothing", "projective", "povm", "no-prior", "asymptotic"]


class FidelityCurveSchema(pa.DataFrameModel):
    # n_particles is float so that the N -> infinity curve can carry inf
    n_particles: Series[float] = pa.Field(ge=1)
    kappa: Series[float] = pa.Field(gt=0, nullable=True)
    mean_n: Series[float] = pa.Field(gt=0)
    strategy: Series[str] = pa.Field(isin=STRATEGIES)
    theta0: Series[float] = pa.Field(ge=0, le=math.pi / 2 + EDGE, nullable=True)
    fidelity: Series[float] = pa.Field(ge=0, le=1 + EDGE)

    @pa.dataframe_check
    def benchmarks_above_half(cls, df: pd.DataFrame) -> pd.Series:
        # Guessing the pole for N > 1 qubits may fall below 1/2; every other strategy
        # is at least as good as a random guess.
        return (df["strategy"] == "do-nothing") | (df["fidelity"] >= 0.5 - EDGE)

    @pa.dataframe_check
    def mean_n_below_half_n(cls, df: pd.DataFrame) -> pd.Series:
        # N/2 itself is reached only by rounding, for kappa below about 1e-16
        return df["mean_n"] <= 0.5 * df["n_particles"]

    class Config:
        strict = True
        coerce = True


class EstimatorCurveSchema(pa.DataFrameModel):
    n_particles: Series[int] = pa.Field(ge=1)
    kappa: Series[float] = pa.Field(gt=0)
    mean_n: Series[float] = pa.Field(gt=0)
    theta_m: Series[float] = pa.Field(ge=0, le=math.pi + EDGE)
    theta_tilde: Series[float] = pa.Field(ge=0, le=math.pi + EDGE)
    small_angle_gain: Series[float] = pa.Field()

    class Config:
        strict = True
        coerce = True


class ValidationReportSchema(pa.DataFrameModel):
    n_particles: Series[int] = pa.Field(ge=1)
    kappa: Series[float] = pa.Field(gt=0)
    mean_n: Series[float] = pa.Field(gt=0)
    strategy: Series[str] = pa.Field(isin=["do-nothing", "projective", "povm"])
    theta0: Series[float] = pa.Field(ge=0, le=math.pi / 2 + EDGE, nullable=True)
    analytic: Series[float] = pa.Field()
    mc_mean: Series[float] = pa.Field(ge=0, le=1)
    mc_std_error: Series[float] = pa.Field(ge=0)
    n_samples: Series[int] = pa.Field(ge=1000)
    seed: Series[int] = pa.Field(ge=0)
    z_score: Series[float] = pa.Field()
    verdict: Series[str] = pa.Field(isin=["PASS", "FAIL"])

    class Config:
        strict = True
        coerce = True


class ProjectiveFigureSchema(pa.DataFrameModel):
    curve: Series[str] = pa.Field()
    theta0: Series[float] = pa.Field(ge=0, le=math.pi / 2 + EDGE, nullable=True)
    kappa: Series[float] = pa.Field(gt=0)
    mean_n: Series[float] = pa.Field(gt=0, lt=0.5)
    fidelity: Series[float] = pa.Field(ge=0.5 - EDGE, le=1 + EDGE)

    class Config:
        strict = True
        coerce = True


class EstimatorFigureSchema(pa.DataFrameModel):
    curve: Series[str] = pa.Field()
    kappa: Series[float] = pa.Field(gt=0)
    mean_n: Series[float] = pa.Field(gt=0)
    theta_m: Series[float] = pa.Field(ge=0, le=math.pi + EDGE)
    theta_tilde: Series[float] = pa.Field(ge=0, le=math.pi + EDGE)

    class Config:
        strict = True
        coerce = True


class ParticleEstimatorFigureSchema(EstimatorFigureSchema):
    n_particles: Series[int] = pa.Field(ge=1)


class ComparisonFigureSchema(pa.DataFrameModel):
    kappa: Series[float] = pa.Field(gt=0)
    mean_n: Series[float] = pa.Field(gt=0, lt=0.5)
    povm: Series[float] = pa.Field(ge=0.5 - EDGE, le=1 + EDGE)
    projective: Series[float] = pa.Field(ge=0.5 - EDGE, le=1 + EDGE)
    do_nothing: Series[float] = pa.Field(ge=0.5 - EDGE, le=1 + EDGE)
    uniform: Series[float] = pa.Field()
    difference: Series[float] = pa.Field(ge=-EDGE)

    class Config:
        strict = True
        coerce = True


class ParticleFigureSchema(pa.DataFrameModel):
    curve: Series[str] = pa.Field()
    n_particles: Series[float] = pa.Field(ge=1)
    kappa: Series[float] = pa.Field(gt=0, nullable=True)
    mean_n: Series[float] = pa.Field(gt=0)
    fidelity: Series[float] = pa.Field(ge=0.5 - EDGE, le=1 + EDGE)

    class Config:
        strict = True
        coerce = True
