import json
import os
from datetime import timedelta
from time import time

import numpy as np
import pandas as pd
from tensorboardX import SummaryWriter
from tqdm import tqdm

from satsync.analysis import (
    BOUNDARY_PAIR,
    certificate_for,
    epsilon_margin,
    gain_zone_check,
    lyapunov_series,
    sync_metrics,
    zone_grid,
)
from satsync.cli.manifest import RunManifest
from satsync.errors import GainError, ValidationError
from satsync.sim import build_case, load_config, run
from satsync.util import save_csv, save_json, to_jsonable

DEFAULT_SEEDS = tuple(range(1, 11))


def elapsed(start_time):
    return str(timedelta(seconds=int(time() - start_time)))


def cmd_zone(args):
    if args.grid:
        frame = zone_grid(resolution=args.resolution, allow_boundary_pair=args.allow_boundary)
        text = save_csv(frame, args.out)
        if args.out is None:
            print(text, end="")
        else:
            print(f"Grid: {args.resolution}x{args.resolution}   Inside: {int(frame['inside'].sum())}   Out: {args.out}")
        return 0

    if args.k1 is None or args.k2 is None:
        raise ValidationError("zone needs K1 and K2 unless --grid is given")
    if args.allow_boundary and (args.k1, args.k2) == BOUNDARY_PAIR:
        print("boundary pair accepted")
        return 0
    if gain_zone_check(args.k1, args.k2):
        print(f"inside, epsilon={epsilon_margin(args.k1, args.k2)!r}")
        return 0
    print("outside")
    return 1


def resolve_config(args):
    """
    Config from a file or a named case, with command-line overrides applied.
    """
    if (args.config is None) == (args.case is None):
        raise ValidationError("give either a CONFIG file or --case")
    if args.case is not None:
        cfg = build_case(args.case, coupling=getattr(args, "coupling", None) or "partial")
    else:
        cfg = load_config(args.config)
        if getattr(args, "coupling", None):
            cfg = cfg.replace(coupling=args.coupling)
    if getattr(args, "seed", None) is not None:
        cfg = cfg.replace(seed=args.seed)
    return cfg


def cmd_certify(args):
    cfg = resolve_config(args)
    cert = certificate_for(cfg)
    record = cert.to_record()
    if args.out is None:
        print(json.dumps(to_jsonable(record), indent=2))
    else:
        save_json(record, args.out)
        print(f"Rho: {record['rho']:<8.4g}   Residual: {record['lyapunov_residual']:<10.3e}   Out: {args.out}")
    return 0 if record["sound"] else 1


def trajectory_frame(traj):
    """
    One row per agent per step: k, agent, x1..., x2..., u, sigma_u.
    """
    traj.require("x", "u", "sigma_u")
    num_steps, num_agents, dim = traj.x.shape
    n = traj.n
    suffix = [""] if n == 1 else [f"_{c + 1}" for c in range(n)]

    columns = {
        "k": np.repeat(np.arange(num_steps), num_agents),
        "agent": np.tile(np.arange(1, num_agents + 1), num_steps),
    }
    x = traj.x.reshape(num_steps * num_agents, dim)
    u = traj.u.reshape(num_steps * num_agents, n)
    sigma_u = traj.sigma_u.reshape(num_steps * num_agents, n)
    for c, s in enumerate(suffix):
        columns[f"x1{s}"] = x[:, c]
    for c, s in enumerate(suffix):
        columns[f"x2{s}"] = x[:, n + c]
    for c, s in enumerate(suffix):
        columns[f"u{s}"] = u[:, c]
    for c, s in enumerate(suffix):
        columns[f"sigma_u{s}"] = sigma_u[:, c]
    return pd.DataFrame(columns)


def cmd_simulate(args):
    cfg = resolve_config(args)
    if args.record_lyapunov:
        if cfg.coupling != "full":
            raise ValidationError("--record-lyapunov needs full-state coupling (--coupling full)")
        cfg = cfg.replace(record=cfg.record._replace(lyapunov=True))
        if not gain_zone_check(cfg.gains.k1, cfg.gains.k2):
            raise GainError("the Lyapunov series needs gains inside the open solvable zone")

    out_dir = args.out or os.path.join("out", "simulate")
    os.makedirs(out_dir, exist_ok=True)

    # Time to start simulating.
    start_time = time()
    cert = None
    if gain_zone_check(cfg.gains.k1, cfg.gains.k2):
        cert = certificate_for(cfg)
    writer = SummaryWriter(log_dir=os.path.join(out_dir, "summary")) if args.summary else None

    traj = run(cfg, writer=writer)
    metrics = sync_metrics(traj, threshold=cfg.threshold, dwell=cfg.dwell)
    outputs = {}
    record = metrics.to_dict()

    if traj.has("x") and traj.has("u"):
        outputs["trajectory"] = os.path.join(out_dir, "trajectory.csv")
        save_csv(trajectory_frame(traj), outputs["trajectory"])

    if cfg.record.lyapunov:
        series = lyapunov_series(traj, cert)
        dv = np.append(series.dv, np.nan)
        outputs["lyapunov"] = os.path.join(out_dir, "lyapunov.csv")
        save_csv(
            pd.DataFrame({"k": traj.steps, "V1": series.v1, "V2": series.v2, "V": series.v, "dV": dv}),
            outputs["lyapunov"],
        )
        record["lyapunov"] = series.summary()
        if writer is not None:
            for k in traj.steps:
                writer.add_scalar("lyapunov/V", series.v[k], k)
                if k < len(series.dv):
                    writer.add_scalar("lyapunov/dV", series.dv[k], k)

    if writer is not None:
        writer.close()
        outputs["summary"] = os.path.join(out_dir, "summary")
    outputs["metrics"] = os.path.join(out_dir, "metrics.json")
    save_json(record, outputs["metrics"])

    label = args.case or os.path.basename(args.config)
    print(
        f"Case: {label:<6} Seed: {cfg.seed:<4} Converged: {metrics.converged!s:<6} "
        f"Settling: {metrics.settling_step!s:<6} Time: {elapsed(start_time)}"
    )

    summary = {k: v for k, v in record.items() if k != "disagreement"}
    RunManifest(
        "simulate",
        cfg.to_dict(),
        certificate=None if cert is None else cert.to_record(),
        metrics=summary,
        outputs=outputs,
        duration=time() - start_time,
    ).save(out_dir)
    return 0


def cmd_reproduce(args):
    cfg = build_case(args.case, coupling=args.coupling or "partial")
    seeds = tuple(args.seeds) if args.seeds else DEFAULT_SEEDS
    out_dir = args.out or os.path.join("out", f"case{args.case}")
    os.makedirs(out_dir, exist_ok=True)

    # Time to start simulating.
    start_time = time()
    curves = {"k": np.arange(cfg.horizon + 1)}
    summary = {"seed": [], "converged": [], "settling_step": [], "final_disagreement": []}

    bar = tqdm(seeds)
    bar.set_description(f"Case {args.case}")
    for seed in bar:
        traj = run(cfg.replace(seed=seed))
        metrics = sync_metrics(traj, threshold=cfg.threshold, dwell=cfg.dwell)
        curves[f"seed{seed}"] = metrics.disagreement
        summary["seed"].append(seed)
        summary["converged"].append(metrics.converged)
        summary["settling_step"].append(-1 if metrics.settling_step is None else metrics.settling_step)
        summary["final_disagreement"].append(metrics.final_disagreement)
        tqdm.write(
            f"Case: {args.case:<6} Seed: {seed:<4} Converged: {metrics.converged!s:<6} "
            f"Settling: {metrics.settling_step!s:<6} Time: {elapsed(start_time)}"
        )

    outputs = {
        "curves": os.path.join(out_dir, "curves.csv"),
        "summary": os.path.join(out_dir, "summary.csv"),
    }
    save_csv(pd.DataFrame(curves), outputs["curves"])
    save_csv(pd.DataFrame(summary), outputs["summary"])

    converged = int(np.sum(summary["converged"]))
    print(f"Case: {args.case:<6} Converged: {converged}/{len(seeds)}   Time: {elapsed(start_time)}")
    RunManifest(
        "reproduce",
        cfg.to_dict(),
        certificate=certificate_for(cfg).to_record(),
        metrics={"seeds": list(seeds), "converged": converged},
        outputs=outputs,
        duration=time() - start_time,
    ).save(out_dir)
    return 0
