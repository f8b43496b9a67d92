import pytest

from shiftedq.cartan import build_cartan
from shiftedq.lweight import generator
from shiftedq.modrep import (
    build_module,
    check_coproduct,
    check_relations,
    component_series,
    t_series_ratio,
)
from shiftedq.scalars import ExactScalar, ONE, qnum

A1 = build_cartan("A1")
B2 = build_cartan("B2")


def test_component_series_matches_geometric():
    # 1/(1 - z q): coefficients q^k
    ser = component_series(ONE, [], [1], 4, 1)
    for k in range(5):
        assert ser[k] == ExactScalar.q_power(k)
    # z^{-1} side: 1/(1-zq) = -z^{-1}q^{-1}(1 + (zq)^{-1} + ...)
    ser = component_series(ONE, [], [1], 3, -1)
    assert ser[-1] == -ExactScalar.q_power(-1)
    assert ser[-2] == -ExactScalar.q_power(-2)
    # polynomials agree in both directions
    sp = component_series(ONE, [2, -1], [], 4, 1)
    sm = component_series(ONE, [2, -1], [], 4, -1)
    assert sp == sm


def test_osc_verma_actions():
    m = build_module("osc_verma_plus", {"gamma_exp": 3}, cutoff=5)
    denom = ExactScalar.q_power(1) - ExactScalar.q_power(-1)
    # f.v_r = gamma q^{-r} [r+1]_q/(q-q^{-1}) v_{r+1}
    for r in range(4):
        want = ExactScalar.q_power(3 - r) * qnum(r + 1) / denom
        assert m.matrix("f")[(r + 1, r)] == want
    assert m.matrix("e")[(0, 1)] == ONE
    assert m.matrix("k")[(2, 2)] == ExactScalar.q_power(3 - 4)
    # truncation pollution: the top raising entry is dropped, flagged in note
    assert (5, 4) in m.matrix("f") and (6, 5) not in m.matrix("f")
    assert "polluted" in m.cutoff_note


@pytest.mark.parametrize("kind,gexp", [("osc_verma_plus", 2), ("osc_verma_minus", -1)])
def test_oscillator_relations(kind, gexp):
    m = build_module(kind, {"gamma_exp": gexp}, cutoff=8)
    rep = check_relations(m)
    assert rep["ok"], rep
    assert rep["weight_grading_ok"]


def test_eval_sl2_phi_eigenvalue_fixture():
    # phi^{+-}(z) v_j = gamma q^{-2j} (1-q^2 za)/((1-q^{2-2j}az)(1-q^{-2j}az)) v_j
    g, s = 1, 0
    m = build_module("eval_sl2", {"gamma_exp": g, "shift": s}, cutoff=3, mode_window=2)
    for j in range(3):
        want = component_series(
            ExactScalar.q_power(g - 2 * j), [s + 2], [s + 2 - 2 * j, s - 2 * j], 3, 1
        )
        for mm in range(3):
            got = m.matrix(("phi+", 1, mm)).get((j, j), ExactScalar.from_int(0))
            assert got == want.get(mm, ExactScalar.from_int(0))


def test_eval_sl2_relations():
    m = build_module("eval_sl2", {"gamma_exp": 1, "shift": 0}, cutoff=6, mode_window=3)
    rep = check_relations(m)
    assert rep["ok"], [f for f in rep["families"] if f["failures"]]


def test_psitilde_b2_relations():
    m = build_module("psitilde", {"type": "B2", "node": 1, "shift": 0},
                     cutoff=4, mode_window=2)
    rep = check_relations(m)
    assert rep["ok"], [f for f in rep["families"] if f["failures"]]
    fams = {f["family"] for f in rep["families"]}
    assert {"un", "deux", "trois", "hdd", "phix", "seq"} <= fams


def test_psistar_action_and_relations():
    m = build_module("psistar", {"type": "B2", "node": 1, "shift": 0}, mode_window=3)
    # x^-_{i,m} v_0 = a^m v_1 and x^+_{i,m} v_1 = a^m q_i^{-1} v_0
    assert m.matrix(("x-", 1, 2))[(1, 0)] == ONE  # a = q^0
    assert m.matrix(("x+", 1, 2))[(0, 1)] == ExactScalar.q_power(-2)
    rep = check_relations(m)
    assert rep["ok"], [f for f in rep["families"] if f["failures"]]


def test_psitilde_pmz_coefficient_check():
    # relation (trois)/(pmz) modes on v_m, m <= N-1, via an independent
    # symbolic evaluation of both sides
    mod = build_module("psitilde", {"type": "A1", "node": 1, "shift": 1},
                       cutoff=4, mode_window=2)
    denom = ExactScalar.q_power(1) - ExactScalar.q_power(-1)
    for r in (-2, 0, 2):
        for s in (-1, 1):
            for col in range(mod.size - 1):
                lhs = {}
                for (row, c), val in mod.matrix(("x+", 1, r)).items():
                    pass
                vec = mod.apply_word([("x+", 1, r), ("x-", 1, s)], col)
                vec2 = mod.apply_word([("x-", 1, s), ("x+", 1, r)], col)
                comm = {k: vec.get(k, ExactScalar.from_int(0)) - vec2.get(k, ExactScalar.from_int(0))
                        for k in set(vec) | set(vec2)}
                pp = mod.matrix(("phi+", 1, r + s)).get((col, col), ExactScalar.from_int(0))
                pm = mod.matrix(("phi-", 1, r + s)).get((col, col), ExactScalar.from_int(0))
                want = (pp - pm) / denom
                got = comm.get(col, ExactScalar.from_int(0))
                assert got == want
                assert all(not v for k, v in comm.items() if k != col)


def test_invalid_module_params():
    with pytest.raises(ValueError):
        build_module("nope")
    with pytest.raises(ValueError):
        build_module("eval_sl2", {}, cutoff=0)


def test_coproducts():
    assert check_coproduct(+1, 2, -1, cutoff=5)["ok"]
    assert check_coproduct(-1, 0, 3, cutoff=5)["ok"]


# --- T-series ratios --------------------------------------------------------

def test_t_ratio_trivial():
    head = generator(A1, "Y", 1, 0)
    r = t_series_ratio(head, head, 1)
    assert r == {"minus_roots": [], "plus_roots": []}


def test_t_ratio_square_head_weight_zero():
    # L(Y^2), weight-0 path A_{1,q}^{-1}: T^- ratio (1 - z q^{-1})
    head = generator(A1, "Y", 1, 0).pow(2)
    target = head.combine(generator(A1, "A", 1, 1), -1)
    r = t_series_ratio(target, head, 1)
    assert r["minus_roots"] == [-1]
    assert r["plus_roots"] == [1]


def test_t_ratio_neg_prefund_ladder():
    # path A_{1,1} A_{1,q^{-2}} ... : (1-z^{-+1})^{-+1}(1-z^{-+1}q^{-+2})^{-+1}...
    head = generator(A1, "Psi", 1, 0).pow(-1)
    cur = head
    for j in range(1, 4):
        cur = cur.combine(generator(A1, "A", 1, -2 * (j - 1)), -1)
        r = t_series_ratio(cur, head, 1)
        assert r["minus_roots"] == sorted(2 * l for l in range(j))
        assert r["plus_roots"] == sorted(-2 * l for l in range(j))


def test_t_ratio_multiplicative_along_paths():
    head = generator(B2, "Y", 1, 0) * generator(B2, "Y", 2, 1)
    mid = head.combine(generator(B2, "A", 1, 2), -1)
    bot = mid.combine(generator(B2, "A", 1, -2), -1).combine(
        generator(B2, "A", 2, 0), -1
    )
    r_head_mid = t_series_ratio(mid, head, 1)
    r_mid_bot = t_series_ratio(bot, mid, 1)
    r_full = t_series_ratio(bot, head, 1)
    assert sorted(r_head_mid["minus_roots"] + r_mid_bot["minus_roots"]) == r_full["minus_roots"]


def test_t_ratio_incomparable_rejected():
    head = generator(A1, "Y", 1, 0)
    above = head * generator(A1, "A", 1, 1)
    with pytest.raises(ValueError):
        t_series_ratio(above, head, 1)


# --- reference operator-matrix fixtures --------------------------------------

def _zpoly_mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = out.get(k, ExactScalar.from_int(0)) + va * vb
    return {k: v for k, v in out.items() if v}


def test_matrix_fixture_diagonal_matches_t_ratio():
    from shiftedq.modrep import load_matrix_fixture
    from shiftedq.qchar import qc_frenkel_mukhin

    fx = load_matrix_fixture()
    tmin = fx["t_minus_ratio"]["entries"]
    heights = fx["weights_alpha_heights"]
    # the diagonal is (1 - z q^{-1})^{ht} per alpha-height, as produced by
    # the T-series eigenvalue ratios on L(Y^2)
    x = qc_frenkel_mukhin(A1, {(1, 0): 2}, 8)
    head = x.head
    by_h = {}
    for m in x.terms:
        path = x.paths[m]
        by_h[sum(path.values())] = t_series_ratio(m, head, 1)
    for j in range(4):
        h = heights[j]
        ratio = by_h[h]
        assert ratio["minus_roots"] == [-1] * h
        want = {0: ONE}
        for root in ratio["minus_roots"]:
            want = _zpoly_mul(want, {0: ONE, 1: -ExactScalar.q_power(root)})
        assert tmin[(j, j)] == want


def test_matrix_fixture_constant_operator_not_diagonalizable():
    from shiftedq.modrep import load_matrix_fixture

    fx = load_matrix_fixture()
    cop = fx["constant_operator"]["entries"]
    assert cop[(1, 2)] == {0: ONE}  # nilpotent part: a genuine Jordan block
    assert cop[(1, 1)] == cop[(2, 2)] == {0: -ExactScalar.q_power(-1)}
    assert cop[(3, 3)] == {0: ExactScalar.q_power(-2)}


def test_matrix_fixture_truncation_series_relations():
    # A^{Z,+}(z) = (z q^{-1})^2 A^{Z,-}(z) and A^+(0) A^-(inf) = q^2 Id
    from shiftedq.modrep import load_matrix_fixture

    fx = load_matrix_fixture()
    am = fx["a_minus_shifted"]["entries"]
    ap = fx["a_plus_shifted"]["entries"]
    keys = set(am) | set(ap)
    for rc in keys:
        lhs = ap.get(rc, {})
        rhs = {k + 2: v for k, v in am.get(rc, {}).items()}  # (zq q^{-1})^2 = z^2
        assert lhs == rhs, rc
    for j in range(4):
        a0 = ap[(j, j)].get(0)
        ainf = am[(j, j)].get(0)
        assert a0 * ainf == ExactScalar.q_power(2)
    # off-diagonal nilpotent entries cancel in the product at the ends
    assert ap[(1, 2)].get(0) is None
