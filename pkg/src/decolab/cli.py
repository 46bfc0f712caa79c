"""Command-line surface: decay-curve data files, single-point convex-roof
reports, and the verification sweep.

Subcommands
-----------
curve   write a CSV of tau3/rank/PPT values on a uniform kt grid
roof    compare the tau3 lower bound against the numerical convex roof
verify  run the full acceptance sweep and report per-check results

The environment variable DECOLAB_THREADS caps curve-row concurrency
(0 = one thread per CPU).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import channels, linalg, measures, qsys, separability
from .channels import Channel, ChannelSpec, InitialState
from .convexroof import roof_minimize


class BadConfigError(ValueError):
    """A run-configuration field failed validation."""


class RankTooHighError(ValueError):
    """Convex-roof request on a state of rank > 4 without the override."""


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration of one curve run."""

    state: InitialState
    channel: Channel
    kt_max: float
    points: int
    mode: str = "analytic"
    dt: float = 1e-3
    seed: int = 0
    output_path: str = "curve.csv"

    def __post_init__(self):
        if not self.kt_max > 0.0:
            raise BadConfigError(f"kt_max must be positive, got {self.kt_max!r}")
        if self.points < 2:
            raise BadConfigError(f"points must be at least 2, got {self.points!r}")
        if self.mode not in ("analytic", "numeric"):
            raise BadConfigError(f"mode must be analytic or numeric, got {self.mode!r}")
        if self.mode == "numeric" and not self.dt > 0.0:
            raise BadConfigError(f"dt must be positive in numeric mode, got {self.dt!r}")


@dataclass(frozen=True)
class CurveRow:
    kt: float
    tau3_raw: float
    tau3_normalized: float
    rank: int
    ppt_min: float


CSV_HEADER = "kt,tau3_raw,tau3_normalized,rank,ppt_min"


def _thread_count(n_tasks: int) -> int:
    raw = os.environ.get("DECOLAB_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError as exc:
        raise BadConfigError(f"DECOLAB_THREADS must be an integer, got {raw!r}") from exc
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, min(n, n_tasks))


def _evolved(config: RunConfig, kt: float) -> np.ndarray:
    if config.mode == "analytic":
        rho = channels.evolve_analytic(config.state, config.channel, kt)
    else:
        rho = channels.evolve_numeric(
            qsys.density(channels.initial_state(config.state)),
            ChannelSpec(config.channel, 1.0),
            kt,
            config.dt,
        )
    return qsys.validate_density(rho)


def _row(config: RunConfig, kt: float) -> CurveRow:
    rho = _evolved(config, kt)
    result = measures.tau3(rho, family=config.state)
    return CurveRow(
        kt=kt,
        tau3_raw=result.raw,
        tau3_normalized=result.normalized,
        rank=linalg.numerical_rank(rho),
        ppt_min=float(separability.ppt_report(rho).per_cut_min_eigenvalue.min()),
    )


def compute_curve(config: RunConfig) -> list[CurveRow]:
    """All rows of the kt grid, in grid order regardless of scheduling."""
    kts = [config.kt_max * i / (config.points - 1) for i in range(config.points)]
    workers = _thread_count(len(kts))
    if workers == 1:
        return [_row(config, kt) for kt in kts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda kt: _row(config, kt), kts))


def format_rows(rows: list[CurveRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.kt:.12g},{r.tau3_raw:.12g},{r.tau3_normalized:.12g},"
            f"{r.rank:d},{r.ppt_min:.12g}"
        )
    return "\n".join(lines) + "\n"


def cmd_curve(config: RunConfig) -> None:
    text = format_rows(compute_curve(config))
    with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_roof(state, channel, kt: float, restarts: int, seed: int,
             allow_rank8: bool = False, out=None) -> None:
    out = sys.stdout if out is None else out
    rho = qsys.validate_density(channels.evolve_analytic(state, channel, kt))
    rank = linalg.numerical_rank(rho)
    if rank > 4 and not allow_rank8:
        raise RankTooHighError(
            f"evolved state has rank {rank} > 4; the roof search over "
            "rank-8 states is exploratory, pass --allow-rank8 to run it"
        )
    bound = measures.tau3(rho, family=state)
    roof = roof_minimize(rho, family=state, restarts=restarts, seed=seed)
    print(f"state/channel      {InitialState(state).value}/{Channel(channel).value}", file=out)
    print(f"kt                 {kt:.12g}", file=out)
    print(f"rank               {rank}", file=out)
    print(f"tau3_normalized    {bound.normalized:.12g}", file=out)
    print(f"roof_normalized    {roof.value_normalized:.12g}", file=out)
    print(f"difference         {roof.value_normalized - bound.normalized:.12g}", file=out)
    print(f"restarts_used      {roof.restarts_used}", file=out)
    print(f"converged          {roof.converged}", file=out)


def cmd_verify(out=None) -> int:
    out = sys.stdout if out is None else out
    from . import acceptance

    results = acceptance.run_checks()
    failures = 0
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"{tag}  {res.number:2d} {res.name}: {res.detail}", file=out)
        failures += 0 if res.passed else 1
    print(f"{len(results) - failures}/{len(results)} checks passed", file=out)
    return 0 if failures == 0 else 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decolab",
        description="Three-qubit entanglement decay in Pauli/depolarizing channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    states = [s.value for s in InitialState]
    chans = [c.value for c in Channel]

    p_curve = sub.add_parser("curve", help="write tau3 decay-curve data as CSV")
    p_curve.add_argument("--state", choices=states, required=True)
    p_curve.add_argument("--channel", choices=chans, required=True)
    p_curve.add_argument("--kt-max", type=float, default=1.5)
    p_curve.add_argument("--points", type=int, default=151)
    p_curve.add_argument("--mode", choices=["analytic", "numeric"], default="analytic")
    p_curve.add_argument("--dt", type=float, default=1e-3)
    p_curve.add_argument("--seed", type=int, default=0)
    p_curve.add_argument("--out", default="curve.csv")

    p_roof = sub.add_parser("roof", help="compare tau3 with the numerical convex roof")
    p_roof.add_argument("--state", choices=states, required=True)
    p_roof.add_argument("--channel", choices=chans, required=True)
    p_roof.add_argument("--kt", type=float, required=True)
    p_roof.add_argument("--restarts", type=int, default=32)
    p_roof.add_argument("--seed", type=int, default=0)
    p_roof.add_argument("--allow-rank8", action="store_true")

    sub.add_parser("verify", help="run the acceptance sweep")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "curve":
            config = RunConfig(
                state=InitialState(args.state),
                channel=Channel(args.channel),
                kt_max=args.kt_max,
                points=args.points,
                mode=args.mode,
                dt=args.dt,
                seed=args.seed,
                output_path=args.out,
            )
            cmd_curve(config)
            return 0
        if args.command == "roof":
            cmd_roof(args.state, args.channel, args.kt,
                     restarts=args.restarts, seed=args.seed,
                     allow_rank8=args.allow_rank8)
            return 0
        return cmd_verify()
    except (BadConfigError, RankTooHighError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
