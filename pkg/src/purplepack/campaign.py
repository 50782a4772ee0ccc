"""Experiment campaigns: generate or load instances, solve, audit, cross-check.

A campaign streams JSON-lines result records.  Each record starts with its
``kind``, carries the content digest of the instance, the parameters needed to
replay it, an outcome payload and the wall time.  Records are sorted on
everything except wall time, so equal configs give equal record streams.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Optional

from . import generators
from .analyzer import audit_claim41, audit_claim42, audit_nbound
from .formats import graph_digest, read_instance
from .model import PackingInstance, condition_profile
from .oracle import exact_pack
from .solver import solve_multistart

OUTPUT_ENV = "PURPLEPACK_OUTPUT_DIR"
KINDS = ("gen", "pack", "pack-exact", "audit", "constants", "campaign")
REGIMES = {
    "sauer_spencer": generators.sauer_spencer_pair,
    "bec": generators.bec_pair,
    "girth": generators.girth_pair,
    "small": generators.small_pair,
}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    kind: str = "campaign"
    regime: Optional[str] = None
    count: int = 0
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    delta_max: Optional[int] = None
    instances: list[str] = field(default_factory=list)
    seed: int = 0
    restarts: int = 5
    policy: str = "full"
    t_grid: list[int] = field(default_factory=lambda: [2, 5, 15])
    audit_pairs: int = 0
    oracle_limit: int = 8
    output: Optional[str] = None
    workers: Optional[int] = None

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExperimentConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path: str | Path) -> ExperimentConfig:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: config must be a flat JSON object")
        return cls.from_dict(data)

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown kind {self.kind!r}")
        if self.regime is not None and self.regime not in REGIMES:
            raise ConfigError(f"unknown regime {self.regime!r}; expected one of {sorted(REGIMES)}")
        if self.count and self.regime is None:
            raise ConfigError("count given without a regime")
        if self.restarts < 1:
            raise ConfigError("restarts must be at least 1")
        if any(t < 2 for t in self.t_grid):
            raise ConfigError("every t must be at least 2")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def make_record(kind: str, digest: Optional[str], params: dict, payload: dict, wall_time: float) -> dict:
    return {"kind": kind, "digest": digest, "params": params, "payload": payload, "wall_time": wall_time}


def canonical_key(record: dict) -> str:
    body = {k: v for k, v in record.items() if k != "wall_time"}
    return json.dumps(body, sort_keys=True)


def _gen_kwargs(cfg: ExperimentConfig) -> dict:
    return {k: getattr(cfg, k) for k in ("n_min", "n_max", "delta_max") if getattr(cfg, k) is not None}


def _task_seed(cfg: ExperimentConfig, index: int) -> int:
    return random.Random(f"{cfg.seed}:{index}").getrandbits(63)


def _load_task(cfg: ExperimentConfig, task: tuple[str, Any]):
    source, ref = task
    if source == "file":
        blue, red, perm = read_instance(ref)
        return blue, red, perm, {"path": str(ref)}
    seed = _task_seed(cfg, ref)
    kwargs = _gen_kwargs(cfg)
    if cfg.regime == "small":
        kwargs.pop("delta_max", None)
    blue, red = REGIMES[cfg.regime](seed, **kwargs)
    return blue, red, None, {"regime": cfg.regime, "index": ref, "seed": seed, **kwargs}


def run_instance(cfg: ExperimentConfig, task: tuple[str, Any]) -> list[dict]:
    """Full pipeline for one instance; returns its records."""
    start = time.perf_counter()
    blue, red, _, params = _load_task(cfg, task)
    inst = PackingInstance(blue, red)
    digest = graph_digest(inst.blue, inst.red)
    seed = params.get("seed", cfg.seed)
    conds = condition_profile(inst)
    props: dict[str, bool] = {}
    records = []

    out = solve_multistart(inst, cfg.restarts, seed, policy=cfg.policy)
    solve_payload = {
        "n": inst.n,
        "delta1": inst.delta1,
        "delta2": inst.delta2,
        "conditions": conds,
        "status": out.status,
        "purple": out.purple_final.count,
        "max_purple_degree": out.purple_final.max_purple_degree,
        "swaps": len(out.swap_trace),
        "final_perm": list(out.final_labelling.perm),
        "certificate": asdict(out.stuck_certificate) if out.stuck_certificate else None,
    }
    if conds["sauer_spencer"]:
        props["sauer_spencer_packed"] = out.status == "packed"
    if conds["bec"]:
        props["bec_near_packing"] = out.purple_final.max_purple_degree <= 1
    cert = out.stuck_certificate
    if cert is not None and cfg.policy == "full":
        props["certificate_claims"] = cert.claim31_ok and cert.claim32_ok
    if cert is not None:
        u, v = cert.purple_edge
        lab = out.final_labelling
        nb = audit_nbound(inst, lab, u, v, cfg.t_grid[0])
        if cert.claim31_ok:
            props["cover_at_stuck"] = nb.covers
        solve_payload["nbound"] = asdict(nb)
        solve_payload["claim42"] = {
            str(t): audit_claim42(inst, lab, u, v, t).quantities for t in cfg.t_grid
        }
    records.append(make_record("solve", digest, params, solve_payload, 0.0))

    if cfg.audit_pairs and inst.n >= 2:
        rng = random.Random(seed)
        lab = out.final_labelling
        holds = q_ok = True
        audited = 0
        for _ in range(cfg.audit_pairs):
            a, b = rng.sample(range(inst.n), 2)
            for t in cfg.t_grid:
                audit = audit_claim41(inst, lab, a, b, t)
                audited += 1
                holds &= audit.all_ok
                q_ok &= audit.parts["q_t"].ok and audit.mirror.parts["q_t"].ok
                if not audit.all_ok:
                    records.append(
                        make_record(
                            "audit_failure",
                            digest,
                            {**params, "a": a, "b": b, "t": t, "perm": list(lab.perm)},
                            audit.to_dict(),
                            0.0,
                        )
                    )
        props["claim41_holds"] = holds
        props["q_t_bound"] = q_ok
        records.append(make_record("audit", digest, params, {"audits": audited, "all_ok": holds}, 0.0))

    if inst.n <= cfg.oracle_limit:
        ex = exact_pack(inst, limit=cfg.oracle_limit)
        props["oracle_consistent"] = not (out.status == "packed" and ex.packable is False) and (
            not ex.complete or ex.min_purple <= out.purple_final.count
        )
        records.append(
            make_record(
                "oracle",
                digest,
                params,
                {"packable": ex.packable, "min_purple": ex.min_purple, "complete": ex.complete},
                0.0,
            )
        )

    records.append(make_record("properties", digest, params, props, 0.0))
    elapsed = time.perf_counter() - start
    for rec in records:
        rec["wall_time"] = elapsed
    return records


def _tasks(cfg: ExperimentConfig) -> list[tuple[str, Any]]:
    tasks: list[tuple[str, Any]] = [("file", p) for p in cfg.instances]
    if cfg.regime is not None:
        tasks.extend(("gen", i) for i in range(cfg.count))
    return tasks


def summarize(records: list[dict]) -> dict:
    props: dict[str, dict[str, int]] = {}
    statuses: dict[str, int] = {}
    for rec in records:
        if rec["kind"] == "properties":
            for name, ok in rec["payload"].items():
                entry = props.setdefault(name, {"checked": 0, "failed": 0})
                entry["checked"] += 1
                entry["failed"] += 0 if ok else 1
        elif rec["kind"] == "solve":
            s = rec["payload"]["status"]
            statuses[s] = statuses.get(s, 0) + 1
    failures = sum(p["failed"] for p in props.values())
    return {
        "kind": "summary",
        "instances": sum(statuses.values()),
        "statuses": dict(sorted(statuses.items())),
        "properties": dict(sorted(props.items())),
        "ok": failures == 0,
    }


def run_campaign(cfg: ExperimentConfig, sink=None) -> tuple[dict, list[dict]]:
    """Run every configured instance; returns ``(summary, sorted records)``.

    When ``sink`` (a text stream) is given, sorted records and then the summary
    are written to it as JSON lines.
    """
    cfg.validate()
    tasks = _tasks(cfg)
    for path in cfg.instances:
        if not Path(path).is_file():
            raise FileNotFoundError(path)
    workers = cfg.workers or os.cpu_count() or 1
    records: list[dict] = []
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            records.extend(run_instance(cfg, task))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for recs in pool.map(run_instance, [cfg] * len(tasks), tasks, chunksize=4):
                records.extend(recs)
    records.sort(key=canonical_key)
    summary = summarize(records)
    if sink is not None:
        for rec in records:
            sink.write(json.dumps(rec, sort_keys=False) + "\n")
        sink.write(json.dumps(summary) + "\n")
    return summary, records


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "."))
