"""HTTP facade over the solver, verifier, and simulator.

The op_* functions implement each endpoint on plain request/response models;
the CLI calls them in-process by default and over HTTP with ``--server``.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from fastapi import FastAPI, HTTPException

from .model import Thresholds, ValidationError, validate
from .schemas import (SWEEPABLE_PARAMS, PlotdataRequest, PlotdataResponse,
                      ReduceRequest, ReduceResponse, SimulateRequest,
                      SimulateResponse, SolutionModel, SolveRequest,
                      SolveResponse, SweepRequest, SweepResponse, SweepRow,
                      ThresholdsModel, VerifyRequest, VerifyResponse)
from .smoothfit import (NoConvergenceError, OrderingError, SingularMatrixError,
                        solve_reduction, solve_thresholds)
from .mcsim import SimConfig, ThresholdStrategyPair, simulate_payoff
from .valuefn import ValueFunction
from .verify import DEFAULT_GRID_COUNT, generator_residual, verify_solution

SOLVER_ERRORS = (NoConvergenceError, OrderingError, SingularMatrixError)


def op_solve(req: SolveRequest) -> SolveResponse:
    params = validate(req.params.to_params())
    init = req.init.to_thresholds().validate_ordering() if req.init else None
    solution = solve_thresholds(params, init=init)
    report = verify_solution(ValueFunction(solution))
    return SolveResponse(solution=SolutionModel.from_solution(solution),
                         verification=report.to_dict())


def op_reduce(req: ReduceRequest) -> ReduceResponse:
    return ReduceResponse.from_solution(
        solve_reduction(req.r, req.sigma, req.K, req.Ktilde))


def op_verify(req: VerifyRequest) -> VerifyResponse:
    if req.solution is not None:
        solution = req.solution.to_solution()
    elif req.params is not None:
        solution = solve_thresholds(validate(req.params.to_params()))
    else:
        raise ValidationError(["verify requires params or a solution artifact"])
    report = verify_solution(ValueFunction(solution),
                             grid_count=req.grid or DEFAULT_GRID_COUNT)
    return VerifyResponse(
        thresholds=ThresholdsModel.from_thresholds(solution.thresholds),
        report=report.to_dict())


def op_simulate(req: SimulateRequest) -> SimulateResponse:
    params = validate(req.params.to_params())
    if req.strategy is not None:
        strat = ThresholdStrategyPair(p1_levels=tuple(req.strategy.p1_levels),
                                      p2_levels=tuple(req.strategy.p2_levels))
    else:
        strat = ThresholdStrategyPair.from_thresholds(
            solve_thresholds(params).thresholds)
    cfg = SimConfig(dt=req.sim.dt, paths=req.sim.paths, seed=req.sim.seed,
                    antithetic=req.sim.antithetic, horizon=req.sim.horizon)
    report = simulate_payoff(params, (req.start_x, req.start_regime), strat, cfg)
    return SimulateResponse(**report.to_dict())


def op_sweep(req: SweepRequest) -> SweepResponse:
    params = validate(req.params.to_params())
    if req.param not in SWEEPABLE_PARAMS:
        raise ValidationError(
            [f"sweep parameter must be one of {', '.join(SWEEPABLE_PARAMS)}, "
             f"got {req.param!r}"])
    if not req.values:
        raise ValidationError(["sweep value list must be non-empty"])
    if not all(math.isfinite(v) for v in req.values):
        raise ValidationError(["sweep values must be finite"])
    rows = []
    warm: Thresholds | None = None
    for value in req.values:
        try:
            row_params = validate(dataclasses.replace(params, **{req.param: value}))
            init = None if req.parallel else warm
            solution = solve_thresholds(row_params, init=init)
            warm = solution.thresholds
            th = solution.thresholds
            rows.append(SweepRow(value=value, a1=th.a1, a2=th.a2,
                                 b1=th.b1, b2=th.b2))
        except (ValidationError, *SOLVER_ERRORS) as exc:
            rows.append(SweepRow(value=value, error=str(exc)))
    return SweepResponse(param=req.param, rows=rows)


def op_plotdata(req: PlotdataRequest) -> PlotdataResponse:
    params = validate(req.params.to_params())
    solution = solve_thresholds(params)
    vf = ValueFunction(solution)
    th = solution.thresholds
    xs = np.linspace(th.a1 - 2.0, th.b2 + 2.0, req.grid)
    # nudge any grid point that lands exactly on a free boundary: v'' (hence
    # L v) is undefined there
    exact = np.isin(xs, np.asarray(th.as_tuple()))
    xs[exact] += 1e-9 * np.maximum(1.0, np.abs(xs[exact]))
    v1, v2 = vf.values(xs, 1), vf.values(xs, 2)
    dv1, dv2 = vf.derivs(xs, 1, 1), vf.derivs(xs, 2, 1)
    lv1, lv2 = generator_residual(vf, xs, 1), generator_residual(vf, xs, 2)
    columns = ["x", "v1", "v2", "dv1", "dv2", "upper1", "lower1",
               "upper2", "lower2", "Lv1", "Lv2", "piece1", "piece2"]
    table = np.column_stack([
        xs, v1, v2, dv1, dv2,
        xs - params.K1, xs - params.Ktilde1,
        xs - params.K2, xs - params.Ktilde2,
        lv1, lv2,
        vf.piece_index(xs, 1).astype(float), vf.piece_index(xs, 2).astype(float),
    ])
    return PlotdataResponse(columns=columns, rows=table.tolist())


def create_app() -> FastAPI:
    app = FastAPI(title="switchstop", version="0.1.0")

    def guarded(op, req):
        try:
            return op(req)
        except ValidationError as exc:
            raise HTTPException(status_code=400,
                                detail={"problems": exc.problems}) from exc
        except SOLVER_ERRORS as exc:
            raise HTTPException(status_code=409,
                                detail={"message": str(exc)}) from exc

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/solve", response_model=SolveResponse)
    def solve(req: SolveRequest):
        return guarded(op_solve, req)

    @app.post("/reduce", response_model=ReduceResponse)
    def reduce(req: ReduceRequest):
        return guarded(op_reduce, req)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        return guarded(op_verify, req)

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest):
        return guarded(op_simulate, req)

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(req: SweepRequest):
        return guarded(op_sweep, req)

    @app.post("/plotdata", response_model=PlotdataResponse)
    def plotdata(req: PlotdataRequest):
        return guarded(op_plotdata, req)

    return app


app = create_app()
