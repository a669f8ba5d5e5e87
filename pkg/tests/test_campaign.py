import numpy as np
import pytest

from spectral_schwarz.campaign import (
    CampaignConfig,
    example_table,
    example_table_ok,
    run_campaign,
    run_trial,
    subharmonicity_check,
)
from spectral_schwarz.errors import InvalidInputError
from spectral_schwarz.extremal import example_map
from spectral_schwarz.linalg import spectral_radius
from spectral_schwarz.maps import DiscMapSpec, sample_disc_map, sample_omega


def test_empty_campaign():
    rep = run_campaign(CampaignConfig("thm1", trials=0))
    assert rep.min_slack is None and rep.to_dict()["trials"] == 0 and rep.exit_code() == 0


def test_config_validation():
    with pytest.raises(InvalidInputError):
        CampaignConfig("thm3")
    with pytest.raises(InvalidInputError):
        CampaignConfig("thm1", n=(1,))
    with pytest.raises(InvalidInputError):
        CampaignConfig("thm1", seed=-1)
    assert CampaignConfig("subharmonic").tolerance == 1e-6


@pytest.mark.parametrize("theorem", ["thm1", "thm2", "globevnik", "ransford-white", "sharpness", "counterexample"])
def test_campaign_kinds_pass(theorem):
    rep = run_campaign(CampaignConfig(theorem, trials=30, seed=5))
    assert rep.exit_code() == 0 and rep.min_slack >= -1e-9


def test_trials_replay_independently():
    cfg = CampaignConfig("thm2", trials=10, seed=11, per_trial=True)
    rep = run_campaign(cfg)
    alone = run_trial(cfg, 7)
    assert alone.report.to_dict() == rep.results[7].report.to_dict()


def test_parallel_matches_serial():
    cfg = CampaignConfig("thm1", trials=12, seed=3)
    serial = run_campaign(cfg).to_json(wall_time=False)
    parallel = run_campaign(CampaignConfig("thm1", trials=12, seed=3, jobs=2)).to_json(wall_time=False)
    assert serial == parallel


def test_csv_output():
    text = run_campaign(CampaignConfig("counterexample", trials=3)).to_csv().splitlines()
    assert text[0] == "trial,lhs,rhs,slack,pass" and len(text) == 4
    assert text[1].startswith("0,") and text[1].endswith(",true")


def test_subharmonic_examples(rng):
    C = sample_omega(3, rng)
    const = DiscMapSpec(C[None])
    assert all(r.slack == 0 for r in subharmonicity_check(const, 0.2, [0.3, 0.5]))
    A = sample_omega(3, rng)
    lin = DiscMapSpec(np.stack([np.zeros((3, 3)), A]))
    (rep,) = subharmonicity_check(lin, 0, [0.5])
    assert rep.lhs == 0 and abs(rep.slack - 0.5 * spectral_radius(A)) <= 1e-12
    (rep,) = subharmonicity_check(example_map(3, 2), 0, [0.25])
    assert abs(rep.rhs - 0.5) <= 1e-12 and rep.slack > 0
    with pytest.raises(InvalidInputError):
        subharmonicity_check(lin, 0.5, [0.6])


def test_quadrature_is_converged():
    # the 720-point rule should agree with a 4x refinement well inside tol_quad
    for seed in range(5):
        F = sample_disc_map(3, 3, rng_seed=seed)
        coarse = subharmonicity_check(F, 0.1, [0.8], 720)[0].rhs
        fine = subharmonicity_check(F, 0.1, [0.8], 2880)[0].rhs
        assert abs(coarse - fine) <= 1e-6


def test_example_table():
    rows = example_table()
    assert len(rows) == 21 * (1 + 2 + 3)
    assert example_table_ok(rows)
    bad = [dict(rows[1], error=1e-6)]
    assert not example_table_ok(bad)
