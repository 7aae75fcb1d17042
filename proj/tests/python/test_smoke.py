import json
import math

import pytest

import tfrom


@pytest.fixture
def small():
    return tfrom.Instance([[4, 3, 2, 1], [4, 3, 2, 1]], [0, 0, 1, 1])


def test_instance_shape(small):
    assert (small.customers, small.items, small.providers) == (2, 4, 2)
    assert small.provider_of(2) == 1
    assert small.score(1, 0) == 4.0
    assert small.provider_relevance() == [14.0, 6.0]


def test_invalid_input_raises():
    with pytest.raises(tfrom.Error, match="EmptyRow"):
        tfrom.Instance([[0, 0, 0]], [0, 0, 0])
    with pytest.raises(ValueError):
        tfrom.Instance([[1, float("nan")]], [0, 1])


def test_formulas(small):
    assert tfrom.position_weight(2) == pytest.approx(1 / math.log2(3), rel=1e-12)
    assert tfrom.total_exposure(2, 2) == pytest.approx(3.261859507142915, rel=1e-12)
    assert tfrom.online_total_exposure(0, 3) == 0.0
    assert tfrom.fair_targets(small, 10.0, "quality-weighted") == pytest.approx([7.0, 3.0])
    assert tfrom.ndcg(small, 0, [0, 1]) == 1.0
    assert tfrom.dcg(small, 0, [3]) == 1.0


def test_offline_matches_golden_table(small):
    run = tfrom.tfrom_offline(small, 2, "uniform", 42)
    assert run["lists"] == [[2, 3], [0, 1]]
    assert sum(run["exposure"]) == pytest.approx(tfrom.total_exposure(2, 2))
    assert run["metrics"]["exposure_variance"] == pytest.approx(0.0)


def test_online_cold_start_and_snapshot():
    inst = tfrom.generate_synthetic(customers=30, items=60, providers=6, seed=3)
    rec = tfrom.OnlineRecommender(inst, 3, "uniform")
    assert rec.serve(5) == tfrom.top_k(inst, 5, 3)
    rec.serve(7)
    snap = rec.snapshot()
    assert json.loads(snap)["requests"] == 2

    other = tfrom.OnlineRecommender(inst, 3, "uniform")
    other.restore(snap)
    assert other.serve(9) == rec.serve(9)
    assert other.exposure == rec.exposure
    assert rec.rec_time[9] == 1


def test_baselines(small):
    assert tfrom.top_k(small, 0, 2) == [0, 1]
    drawn = tfrom.all_random(small, 0, 4, 7)
    assert sorted(drawn) == [0, 1, 2, 3]
    items, ledger = tfrom.minimum_exposure(small, 0, 2, [5.0, 0.0])
    assert small.provider_of(items[0]) == 1
    assert ledger[1] > 0.0


def test_experiments():
    inst = tfrom.generate_synthetic(customers=20, items=40, providers=4, seed=1)
    rows = tfrom.run_offline(inst, [2, 4], ["tfrom", "topk"])
    assert [(r["step"], r["algorithm"]) for r in rows] == [(2, "tfrom"), (2, "topk"), (4, "tfrom"), (4, "topk")]
    assert all(r["total_quality"] == pytest.approx(20.0) for r in rows if r["algorithm"] == "topk")

    stream = tfrom.run_online(inst, 3, ["tfrom", "minexp"], stream_multiplier=2)
    assert {r["step"] for r in stream} == {20, 40}
    with pytest.raises(tfrom.Error, match="InvalidConfig"):
        tfrom.run_offline(inst, [2], ["nope"])


def test_load_instance(tmp_path):
    (tmp_path / "p.csv").write_text("customer,item,score\na,x,1\na,y,2\nb,x,3\nb,y,0\n")
    (tmp_path / "q.csv").write_text("item,provider\nx,P\ny,Q\n")
    inst = tfrom.load_instance(str(tmp_path / "p.csv"), str(tmp_path / "q.csv"))
    assert (inst.customers, inst.items, inst.providers) == (2, 2, 2)
    with pytest.raises(tfrom.Error, match="IoError"):
        tfrom.load_instance(str(tmp_path / "missing.csv"), str(tmp_path / "q.csv"))
