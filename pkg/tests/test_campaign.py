import io
import json

import pytest

from purplepack.campaign import (
    ConfigError,
    ExperimentConfig,
    canonical_key,
    run_campaign,
    run_instance,
)
from purplepack.formats import write_instance
from purplepack.generators import standard_family


def test_empty_campaign():
    summary, records = run_campaign(ExperimentConfig(workers=1))
    assert records == [] and summary["instances"] == 0 and summary["ok"]


def test_config_round_trip(tmp_path):
    cfg = ExperimentConfig(regime="bec", count=3, seed=5, t_grid=[2, 5])
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert ExperimentConfig.load(path) == cfg


@pytest.mark.parametrize(
    "data",
    [{"bogus": 1}, {"kind": "dance"}, {"count": 3}, {"restarts": 0}, {"t_grid": [1]}],
)
def test_config_validation(data):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(data)


def test_config_must_be_object(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        ExperimentConfig.load(path)


def test_missing_instance_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        run_campaign(ExperimentConfig(instances=[str(tmp_path / "nope.txt")], workers=1))


def test_sauer_spencer_campaign_packs_everything():
    cfg = ExperimentConfig(regime="sauer_spencer", count=60, seed=3, restarts=1, workers=1)
    summary, _ = run_campaign(cfg)
    assert summary["statuses"] == {"packed": 60}
    assert summary["properties"]["sauer_spencer_packed"] == {"checked": 60, "failed": 0}
    assert summary["ok"]


def test_girth_audit_campaign():
    cfg = ExperimentConfig(
        regime="girth", count=3, n_min=40, n_max=90, delta_max=4, audit_pairs=10, seed=2, workers=1
    )
    summary, records = run_campaign(cfg)
    assert summary["properties"]["claim41_holds"] == {"checked": 3, "failed": 0}
    assert not [r for r in records if r["kind"] == "audit_failure"]


def test_records_are_canonical_and_replayable(tmp_path):
    path = tmp_path / "k13.txt"
    write_instance(path, standard_family("matching", 4), standard_family("star", 4))
    cfg = ExperimentConfig(regime="small", count=8, seed=7, instances=[str(path)], workers=1)
    sink = io.StringIO()
    summary, records = run_campaign(cfg, sink=sink)
    again = run_campaign(cfg)[1]
    assert [canonical_key(r) for r in records] == [canonical_key(r) for r in again]
    assert [canonical_key(r) for r in records] == sorted(canonical_key(r) for r in records)
    assert sink.getvalue().splitlines()[-1] == json.dumps(summary)
    oracle = [r for r in records if r["kind"] == "oracle" and r["params"].get("path") == str(path)]
    assert oracle[0]["payload"]["packable"] is False
    for rec in records:
        assert set(rec) == {"kind", "digest", "params", "payload", "wall_time"}
        assert "seed" in rec["params"] or "path" in rec["params"]


def test_parallel_matches_serial():
    cfg = ExperimentConfig(regime="bec", count=8, seed=11, restarts=2, workers=1)
    serial = run_campaign(cfg)[1]
    cfg.workers = 2
    parallel = run_campaign(cfg)[1]
    assert [canonical_key(r) for r in serial] == [canonical_key(r) for r in parallel]


def test_run_instance_single_task():
    cfg = ExperimentConfig(regime="small", count=1, seed=0, workers=1)
    recs = run_instance(cfg, ("gen", 0))
    kinds = [r["kind"] for r in recs]
    assert kinds[0] == "solve" and kinds[-1] == "properties"
    assert len({r["wall_time"] for r in recs}) == 1
