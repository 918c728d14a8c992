import io
import json

import numpy as np
import pytest

from conftest import EX1_A, EX1_B, EX2_A, EX2_B
from mmv.explore import (
    SearchConfig,
    SweepTable,
    UnknownId,
    builtin_example,
    perturb_symmetric,
    random_pair,
    random_psd,
    read_csv,
    save_witness,
    search_counterexample,
    sweep_strip,
    sweep_t,
    trial_rng,
    write_csv,
)
from mmv.matcore import hermitian, load_matrix
from mmv.means import MeanPair, bourin_mean, heinz_sum, mean_pair
from mmv.norms import FROBENIUS, OPERATOR, norm, schatten
from mmv.verify import GridSpec


def test_builtin_examples():
    p1, p2 = builtin_example("example1"), builtin_example("example2")
    assert p1.A.data[0, 0] == 1141 and p1.B.data[1, 2] == 370
    np.testing.assert_array_equal(p1.A.data, EX1_A)
    np.testing.assert_array_equal(p1.B.data, EX1_B)
    np.testing.assert_array_equal(p2.A.data, EX2_A)
    np.testing.assert_array_equal(p2.B.data, EX2_B)
    assert np.trace(p2.A.data + p2.B.data).real == 14634
    assert p1.A.pd and p1.B.pd and p2.A.pd and p2.B.pd
    assert np.all(p1.B.eigenvalues > 0)
    with pytest.raises(UnknownId):
        builtin_example("example3")


# -- sweeps --------------------------------------------------------------------


def test_sweep_t_example1(ex1):
    table = sweep_t(ex1, OPERATOR, 0.0, 0.5, 101)
    assert table.columns == ("t", "norm_b", "norm_h", "f", "tau_ab_minus_ftrace")
    t = table.column("t")
    i = int(np.argmin(np.abs(t - 0.15)))
    assert abs(t[i] - 0.15) < 1e-12
    assert -2.4 <= table.column("f")[i] <= -2.2


def test_sweep_t_commuting():
    pair = mean_pair(np.diag([1.0, 5.0, 2.0]), np.diag([3.0, 0.5, 8.0]))
    table = sweep_t(pair, schatten(3), 0.0, 1.0, 21)
    assert np.max(np.abs(table.column("f"))) <= 1e-9 * np.max(table.column("norm_h"))


def test_sweep_t_frobenius_sign_matches_trace_gap(ex1):
    for pair in (ex1, builtin_example("example2")):
        table = sweep_t(pair, FROBENIUS, 0.0, 1.0, 41)
        f, gap = table.column("f"), table.column("tau_ab_minus_ftrace")
        scale = np.max(table.column("norm_h"))
        big = np.abs(f) > 1e-9 * scale
        assert np.all(np.sign(f[big]) == np.sign(gap[big]))


def test_sweep_cache_is_observationally_pure(ex1):
    table = sweep_t(ex1, OPERATOR, 0.0, 1.0, 11)
    for t, nb, nh, f, gap in table.rows:
        # new wrappers decompose A and B again for this point only
        fresh = MeanPair(hermitian(EX1_A, psd=True), hermitian(EX1_B, psd=True))
        expect_b = norm(bourin_mean(fresh, t), OPERATOR)
        expect_h = norm(heinz_sum(fresh, t), OPERATOR)
        assert abs(nb - expect_b) <= 1e-10 * expect_b
        assert abs(nh - expect_h) <= 1e-10 * expect_h


def test_sweep_rejects_bad_range(ex1):
    with pytest.raises(ValueError):
        sweep_t(ex1, OPERATOR, 0.5, 0.5, 3)
    with pytest.raises(ValueError):
        sweep_t(ex1, OPERATOR, 0.0, 1.0, 1)


def test_sweep_strip_example1(ex1):
    table = sweep_strip(ex1, GridSpec(0.25, 0.75, 5, 5.0, 11))
    assert table.columns == ("re_z", "im_z", "f_value", "bound", "margin")
    assert len(table) == 55
    assert np.all(table.column("margin") > 0)


def test_sweep_strip_commuting():
    pair = mean_pair(np.diag([1.0, 5.0]), np.diag([3.0, 0.5]))
    table = sweep_strip(pair, GridSpec())
    assert np.max(np.abs(table.column("margin"))) <= 1e-9 * table.column("bound")[0]


def test_sweep_strip_symmetry():
    grid = GridSpec(0.25, 0.75, 5, 3.0, 7)
    for i in range(5):
        rng = trial_rng(31, i)
        pair = random_pair(4, rng, "dense")
        fwd = sweep_strip(pair, grid)
        # 1 - conj(z) = (1 - x) + iy: reverses the real-part blocks, keeps imaginary order
        back = sweep_strip(pair.swapped(), grid)
        shape = (grid.re_steps, grid.im_steps)

        def mirrored(name):
            return back.column(name).reshape(shape)[::-1].ravel()

        np.testing.assert_allclose(mirrored("re_z"), 1 - fwd.column("re_z"), atol=1e-15)
        np.testing.assert_array_equal(mirrored("im_z"), fwd.column("im_z"))
        diff = np.abs(fwd.column("f_value") - mirrored("f_value"))
        assert np.max(diff) <= 1e-9 * fwd.column("bound")[0]


def test_sweep_table_invariants():
    with pytest.raises(ValueError):
        SweepTable(("a", "b"), [(1.0,)])
    with pytest.raises(ValueError):
        SweepTable(("a",), [(1.0,), (1.0,)])
    SweepTable(("a", "b", "c"), [(0.0, 1.0, 5.0), (0.0, 2.0, 5.0), (1.0, 0.0, 5.0)], keys=2)


# -- CSV -----------------------------------------------------------------------------


def test_csv_header_only():
    buf = io.StringIO()
    write_csv(SweepTable(("t", "x")), buf)
    assert buf.getvalue() == "t,x\n"


def test_csv_round_trip(ex1, tmp_path):
    table = sweep_t(ex1, OPERATOR, 0.0, 0.5, 51)
    path = tmp_path / "sweep.csv"
    write_csv(table, path)
    text = path.read_text()
    assert text.endswith("\n")
    again = read_csv(path)
    assert again.columns == table.columns
    assert again.rows == [tuple(float(v) for v in row) for row in table.rows]
    assert text.splitlines()[2].split(",")[0] == "0.01"


# -- random generation -------------------------------------------------------------------


def test_random_psd_deterministic():
    a = random_psd(5, trial_rng(7, 3), "dense").data
    b = random_psd(5, trial_rng(7, 3), "dense").data
    assert a.tobytes() == b.tobytes()
    assert random_psd(5, trial_rng(7, 4), "dense").data.tobytes() != a.tobytes()


def test_random_psd_dense_min_eigenvalue(rng):
    lowest = min(np.linalg.eigvalsh(random_psd(4, rng, "dense").data)[0] for _ in range(1000))
    assert lowest >= 1e-6 - 1e-9


def test_random_psd_diagonal_range(rng):
    for _ in range(100):
        d = np.diag(random_psd(6, rng, "diagonal").data).real
        assert np.all(d >= 1e-2 * (1 - 1e-12)) and np.all(d <= 1e4 * (1 + 1e-12))


def test_random_psd_rejects():
    with pytest.raises(ValueError):
        random_psd(0, trial_rng(0, 0))
    with pytest.raises(ValueError):
        random_psd(2, trial_rng(0, 0), "sparse")


def test_perturb_symmetric(rng):
    P = perturb_symmetric(EX1_B, rng)
    np.testing.assert_array_equal(P, P.T)
    ratio = P / EX1_B
    assert np.all(np.abs(ratio - 1) <= 0.01)
    # zero entries stay zero
    np.testing.assert_array_equal(perturb_symmetric(EX1_A, rng)[EX1_A == 0], 0)


# -- search --------------------------------------------------------------------------------


def test_search_finds_example1_neighbourhood():
    for seed in (0, 1, 2**63 + 5):
        cfg = SearchConfig(trials=100, seed=seed, style="perturb-example1", norm=OPERATOR, t_grid=(0.15,))
        res = search_counterexample(cfg)
        assert res.found
        rep = res.witness.report
        assert not rep.holds and rep.margin < -1e-9 * rep.rhs


def test_search_singular_dominance_example2():
    cfg = SearchConfig(trials=100, seed=5, style="perturb-example2", target="singular_dominance", t_grid=(0.5,))
    res = search_counterexample(cfg)
    assert res.found and res.witness.report.context["j"] == 3


def test_search_frobenius_theorem_backed():
    cfg = SearchConfig(dim=3, trials=500, seed=9, style="diagonal-vs-dense", norm=FROBENIUS, t_grid=(0.25, 0.5, 0.75))
    res = search_counterexample(cfg)
    assert not res.found and res.trials_used == 500


def test_search_independent_of_workers():
    cfg = SearchConfig(dim=3, trials=300, seed=3, style="dense", norm=OPERATOR, t_grid=(0.05, 0.1))
    serial = search_counterexample(cfg, workers=1, chunk=16)
    threaded = search_counterexample(cfg, workers=3, chunk=16)
    assert serial.found == threaded.found and serial.trials_used == threaded.trials_used
    if serial.found:
        assert serial.witness.A.tobytes() == threaded.witness.A.tobytes()


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(t_grid=(1.0,))
    with pytest.raises(ValueError):
        SearchConfig(style="other")
    with pytest.raises(ValueError):
        SearchConfig(target="other")
    with pytest.raises(ValueError):
        SearchConfig(seed=-1)
    with pytest.raises(ValueError):
        SearchConfig(dim=1)


def test_save_witness(tmp_path):
    cfg = SearchConfig(trials=10, seed=11, style="perturb-example1", norm=OPERATOR, t_grid=(0.15,))
    res = search_counterexample(cfg)
    paths = save_witness(res, cfg, tmp_path / "w")
    assert [p.rsplit("/", 1)[1] for p in paths] == ["A.json", "B.json", "witness.json"]
    np.testing.assert_array_equal(load_matrix(paths[0]), res.witness.A)
    meta = json.loads(open(paths[2]).read())
    assert meta["seed"] == 11 and meta["t"] == 0.15 and meta["norm"] == "op"
    assert meta["margin"] == res.witness.report.margin < 0
    empty = search_counterexample(SearchConfig(trials=2, seed=0, norm=FROBENIUS, t_grid=(0.5,)))
    assert save_witness(empty, cfg, tmp_path / "none") == []
