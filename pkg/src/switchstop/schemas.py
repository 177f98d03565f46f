"""Serialization schemas for solutions, reports, and service requests.

These models are the single wire format: the HTTP service accepts and returns
them, the CLI writes them as JSON artifacts, and a dumped solution can be
reconstructed losslessly for re-verification.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .model import GameParams, Thresholds
from .smoothfit import CoefficientSet, ReducedSolution, SmoothFitSolution
from .spectral import SpectralData

SWEEPABLE_PARAMS = ("r", "sigma1", "sigma2", "K1", "K2",
                    "Ktilde1", "Ktilde2", "lambda1", "lambda2")


class ParamsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    r: float
    sigma1: float
    sigma2: float
    K1: float
    K2: float
    Ktilde1: float
    Ktilde2: float
    lambda1: float
    lambda2: float

    def to_params(self) -> GameParams:
        return GameParams(**self.model_dump())

    @classmethod
    def from_params(cls, params: GameParams) -> "ParamsModel":
        return cls(r=params.r, sigma1=params.sigma1, sigma2=params.sigma2,
                   K1=params.K1, K2=params.K2,
                   Ktilde1=params.Ktilde1, Ktilde2=params.Ktilde2,
                   lambda1=params.lambda1, lambda2=params.lambda2)


class ThresholdsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a1: float
    a2: float
    b1: float
    b2: float

    def to_thresholds(self) -> Thresholds:
        return Thresholds(a1=self.a1, a2=self.a2, b1=self.b1, b2=self.b2)

    @classmethod
    def from_thresholds(cls, th: Thresholds) -> "ThresholdsModel":
        return cls(a1=th.a1, a2=th.a2, b1=th.b1, b2=th.b2)


class SpectralModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    beta: List[float]
    rho: List[float]
    gamma: List[float]
    gamma_tilde: List[float]
    p: float
    q: float
    p_tilde: float
    q_tilde: float

    def to_spectral(self) -> SpectralData:
        return SpectralData(beta=np.array(self.beta), rho=np.array(self.rho),
                            gamma=np.array(self.gamma),
                            gamma_tilde=np.array(self.gamma_tilde),
                            p=self.p, q=self.q,
                            p_tilde=self.p_tilde, q_tilde=self.q_tilde)

    @classmethod
    def from_spectral(cls, sd: SpectralData) -> "SpectralModel":
        return cls(beta=sd.beta.tolist(), rho=sd.rho.tolist(),
                   gamma=sd.gamma.tolist(), gamma_tilde=sd.gamma_tilde.tolist(),
                   p=sd.p, q=sd.q, p_tilde=sd.p_tilde, q_tilde=sd.q_tilde)


class CoefficientsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    A: List[float]
    B: List[float]
    C: List[float]
    Ctilde: List[float]

    def to_coefficients(self) -> CoefficientSet:
        return CoefficientSet(A=np.array(self.A), B=np.array(self.B),
                              C=np.array(self.C), Ctilde=np.array(self.Ctilde))

    @classmethod
    def from_coefficients(cls, coeffs: CoefficientSet) -> "CoefficientsModel":
        return cls(A=coeffs.A.tolist(), B=coeffs.B.tolist(),
                   C=coeffs.C.tolist(), Ctilde=coeffs.Ctilde.tolist())


class SolutionModel(BaseModel):
    """Complete solution artifact; reconstructs to a SmoothFitSolution."""

    model_config = ConfigDict(extra="ignore")

    params: ParamsModel
    thresholds: ThresholdsModel
    coefficients: CoefficientsModel
    spectral: SpectralModel
    residual: float
    newton_residual: float
    newton_iterations: int

    def to_solution(self) -> SmoothFitSolution:
        return SmoothFitSolution(
            params=self.params.to_params(),
            thresholds=self.thresholds.to_thresholds().validate_ordering(),
            coeffs=self.coefficients.to_coefficients(),
            spectral=self.spectral.to_spectral(),
            residual=self.residual,
            newton_residual=self.newton_residual,
            newton_iterations=self.newton_iterations)

    @classmethod
    def from_solution(cls, sol: SmoothFitSolution) -> "SolutionModel":
        return cls(params=ParamsModel.from_params(sol.params),
                   thresholds=ThresholdsModel.from_thresholds(sol.thresholds),
                   coefficients=CoefficientsModel.from_coefficients(sol.coeffs),
                   spectral=SpectralModel.from_spectral(sol.spectral),
                   residual=sol.residual,
                   newton_residual=sol.newton_residual,
                   newton_iterations=sol.newton_iterations)


class SimConfigModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dt: float = 1e-4
    paths: int = 100_000
    seed: int = 12345
    antithetic: bool = True
    horizon: Optional[float] = None


class StrategyModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p1_levels: Tuple[float, float]
    p2_levels: Tuple[float, float]


# ---- requests ----

class SolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: ParamsModel
    init: Optional[ThresholdsModel] = None


class ReduceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    r: float
    sigma: float
    K: float
    Ktilde: float


class VerifyRequest(BaseModel):
    """Verify a freshly solved model, or a previously dumped solution."""

    model_config = ConfigDict(extra="forbid")

    params: Optional[ParamsModel] = None
    solution: Optional[SolutionModel] = None
    grid: Optional[int] = Field(default=None, ge=3)


class SimulateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: ParamsModel
    start_x: float
    start_regime: int
    strategy: Optional[StrategyModel] = None
    sim: SimConfigModel = SimConfigModel()


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: ParamsModel
    param: str
    values: List[float]
    parallel: bool = False


class PlotdataRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: ParamsModel
    grid: int = Field(default=2000, ge=2)


# ---- responses ----

class ReduceResponse(BaseModel):
    a: float
    b: float
    A1: float
    A2: float
    beta: float
    residual: float
    newton_iterations: int

    @classmethod
    def from_solution(cls, red: ReducedSolution) -> "ReduceResponse":
        return cls(a=red.thresholds.a, b=red.thresholds.b, A1=red.A1, A2=red.A2,
                   beta=red.beta, residual=red.residual,
                   newton_iterations=red.newton_iterations)


class SolveResponse(BaseModel):
    solution: SolutionModel
    verification: Dict


class VerifyResponse(BaseModel):
    thresholds: ThresholdsModel
    report: Dict


class SimulateResponse(BaseModel):
    estimate: float
    stderr: float
    ci95: float
    stop_distribution: Dict[str, float]
    paths_used: int
    start_x: float
    start_regime: int
    dt: float
    seed: int


class SweepRow(BaseModel):
    value: float
    a1: Optional[float] = None
    a2: Optional[float] = None
    b1: Optional[float] = None
    b2: Optional[float] = None
    error: str = ""


class SweepResponse(BaseModel):
    param: str
    rows: List[SweepRow]


class PlotdataResponse(BaseModel):
    columns: List[str]
    rows: List[List[float]]
