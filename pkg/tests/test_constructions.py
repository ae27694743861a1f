"""Moore systems, witness solver, h-scattered towers, case systems."""

import random

import pytest

from ranksat.errors import (
    InvalidCaseParams,
    InvalidParams,
    RankTooSmall,
    ShiftNotCoprime,
)
from ranksat.gf import field_create
from ranksat.constructions import (
    MooreParams,
    case_system,
    contains_vector,
    hscattered_moore,
    moore_saturate_witness,
    moore_system,
    normalized_alphas,
    normalized_betas,
    rank5_example,
    thin_to_saturating,
)
from ranksat.linalg import fqm_rank, system_create
from ranksat.linset import (
    Point,
    fqm_subspace,
    is_h_scattered,
    linear_set,
    max_h_scattered_bound,
    weight,
)
from ranksat.rankcov import one_saturated, lower_bound, saturating_index

F4 = field_create(2, 1, 2)
F8 = field_create(2, 1, 3)
F16 = field_create(2, 1, 4)


def test_moore_params_validation():
    with pytest.raises(InvalidParams):
        MooreParams(F4, rho=3, t=1)  # rho > m
    with pytest.raises(ShiftNotCoprime):
        MooreParams(field_create(2, 1, 4), rho=2, t=2, shifts=(2,))
    with pytest.raises(InvalidParams):
        MooreParams(F8, rho=0, t=2)


def test_moore_t1_is_prime_block():
    u = moore_system(MooreParams(F8, rho=2, t=1))
    assert u.rank == 2
    assert all(all(z in (0, 1) for z in b) for b in u.basis)


def test_moore_rank_formula_grid():
    for (p, a, m, rho, t) in ((2, 1, 2, 2, 2), (2, 1, 3, 2, 2), (3, 1, 2, 2, 2),
                              (2, 1, 3, 3, 2), (2, 1, 4, 2, 3)):
        fld = field_create(p, a, m)
        u = moore_system(MooreParams(fld, rho, t))
        assert u.rank == m * (t - 1) + rho
        # rank matches the q>2 branch of the lower bound at k = rho*t
        if fld.q > 2:
            assert u.rank == lower_bound(fld.q, m, rho * t, rho)


def test_moore_saturating_small():
    fld = field_create(2, 1, 2)
    u = moore_system(MooreParams(fld, 2, 2))
    assert saturating_index(u) == 2
    fld8 = field_create(2, 1, 3)
    u8 = moore_system(MooreParams(fld8, 2, 2))
    assert u8.rank == 5
    assert saturating_index(u8) == 2  # brute force over the 585 points


def test_moore_minimality_bound():
    # rank at rho-1 would undercut the lower bound, so the index is minimal
    for (q, m, rho, t) in ((2, 2, 2, 2), (2, 3, 2, 2), (3, 2, 2, 2), (2, 3, 3, 2)):
        if rho - 1 >= 1:
            assert m * (t - 1) + rho < lower_bound(q, m, rho * t, rho - 1)


def test_witness_solver_random():
    rng = random.Random(17)
    for (p, a, m, rho, t) in ((2, 1, 2, 2, 2), (2, 1, 3, 2, 2), (3, 1, 2, 2, 2),
                              (2, 1, 3, 3, 2)):
        fld = field_create(p, a, m)
        params = MooreParams(fld, rho, t)
        u = moore_system(params)
        k = rho * t
        for _ in range(120):
            v = [rng.randrange(fld.order) for _ in range(k)]
            ws = moore_saturate_witness(params, v)
            assert len(ws) == rho
            assert all(contains_vector(u, w) for w in ws)
            rows = [list(w) for w in ws]
            assert fqm_rank(fld, rows + [v]) == fqm_rank(fld, rows)


def test_witness_member_shortcut():
    fld = field_create(2, 1, 3)
    params = MooreParams(fld, 2, 2)
    u = moore_system(params)
    v = list(u.basis[0])
    ws = moore_saturate_witness(params, v)
    assert tuple(v) == ws[0]


def test_witness_zero_tail():
    # tail block zero: s = 0, any independent family works
    fld = field_create(2, 1, 3)
    params = MooreParams(fld, 2, 2)
    g = fld.generator
    v = [g, 3, 0, 0]
    ws = moore_saturate_witness(params, v)
    rows = [list(w) for w in ws]
    assert fqm_rank(fld, rows + [v]) == fqm_rank(fld, rows)


def test_shifted_moore_same_profile():
    fld = field_create(2, 1, 5)
    base = moore_system(MooreParams(fld, 2, 2))
    for s in (2, 3, 4):
        shifted = moore_system(MooreParams(fld, 2, 2, shifts=(s,)))
        assert shifted.rank == base.rank == 7


def test_hscattered_moore_examples():
    u = hscattered_moore(F8, h=1, t=1)
    assert u.rank == 3 == max_h_scattered_bound(2, 3, 1)
    ok, _ = is_h_scattered(u, 1)
    assert ok
    u2 = hscattered_moore(F16, h=2, t=1)  # rank 4 in V(3,16), 2-scattered
    assert u2.rank == 4 == max_h_scattered_bound(3, 4, 2)
    ok, _ = is_h_scattered(u2, 2)
    assert ok
    with pytest.raises(InvalidParams):
        hscattered_moore(F4, h=2, t=1)  # m < h+1


def test_thinning_pipeline_small():
    fld = F8
    w = hscattered_moore(fld, h=1, t=2)  # rank 6 in V(4, 8)
    assert w.rank == 6
    u = thin_to_saturating(w, 1)
    assert u.rank == (fld.m * 3) // 2 + 1 == 5
    idx = saturating_index(u)
    assert idx is not None and idx <= 2
    smaller = system_create(fld, 4, u.basis[:4])
    with pytest.raises(RankTooSmall):
        thin_to_saturating(smaller, 1)


def test_case_systems_shapes():
    for q in (2, 4):
        fld = field_create(2, 1 if q == 2 else 2, 4)
        assert case_system(fld, 1).rank == 4
        a = normalized_alphas(fld)[1] if q > 2 else fld.subfield_elements("mid")[1]
        assert case_system(fld, 2, alpha=3).rank == 4
        assert case_system(fld, 3, alpha=a).rank == 4
        assert case_system(fld, 4, alpha=a, beta=3).rank == 4
    with pytest.raises(InvalidCaseParams):
        case_system(F8, 1)
    with pytest.raises(InvalidCaseParams):
        case_system(F16, 2, alpha=0)


def test_case1_designated_point_unsaturated():
    u = case_system(F16, 1)
    ls = linear_set(u)
    assert not one_saturated(F16, ls.points, Point(F16, (0, 0, 1)))


def test_case3_alpha1_weight_two_point():
    u = case_system(F16, 3, alpha=1)
    assert weight(u, Point(F16, (1, 0, 1))) == 2


def test_normalized_parameter_counts():
    for q, a in ((2, 1), (4, 2)):
        fld = field_create(2, a, 4)
        assert len(normalized_alphas(fld)) == q + 1
        assert len(normalized_betas(fld)) == (q * q + 1) * (q - 1)


def test_rank5_example_q2():
    u = rank5_example(F16)
    assert u.rank == 5
    line = fqm_subspace(F16, 3, [[1, 0, 0], [0, 1, 0]])
    assert weight(u, line) == 4
    assert saturating_index(u) == 2
