import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import F, brute_matching, rank1_pencil, skew_pencil, subset_degdet_max
from degdet.errors import CapExceeded, NonSquare, Unbounded
from degdet.fields import GF, MINUS_INF, QQ
from degdet.linalg import ratmatrix
from degdet.mvsp import mvsp_bruteforce
from degdet.pencil import LaurentMatrix, LinearPencil, commutative_degdet_oracle
from degdet.solver import (
    AssignmentDual,
    combinatorial_relaxation,
    max_deg_subdet,
    mvmp_sigma_dual,
    optimality_certificate,
    sda_degdet,
    valuated_exchange_check,
)


def pencil(field, n, terms, nprime=None):
    return LinearPencil.from_terms(field, n, n if nprime is None else nprime, terms)


ALL_RUNS = [
    lambda P: sda_degdet(P),
    lambda P: sda_degdet(P, variant="kappa"),
    lambda P: combinatorial_relaxation(P),
]


# ------------------------------------------------------------ sda_degdet


@pytest.mark.parametrize("c", [(1, 2, 3), (0, 4, 0), (-2, 1, 5)])
@pytest.mark.parametrize("run", ALL_RUNS)
def test_skew_value(c, run):
    assert run(skew_pencil(F, c)).value == sum(c)


def test_identity_pencil_needs_no_iterations():
    res = sda_degdet(pencil(F, 3, [F.eye(3).tolist()]))
    assert res.value == 0 and res.iterations == 0


def test_laurent_input_and_negative_weights():
    A = pencil(F, 2, {1: [["t^-3", "0"], ["0", "0"]], 2: [["0", "0"], ["0", "t^-1 + t^-4"]]})
    for run in ALL_RUNS:
        assert run(A).value == -4


def test_singular_and_empty():
    A = pencil(F, 2, {1: [["t", "t"], ["0", "0"]]})
    for run in ALL_RUNS:
        assert run(A).value is MINUS_INF
    with pytest.raises(NonSquare):
        sda_degdet(pencil(F, 2, {1: [["1", "0", "0"], ["0", "1", "0"]]}, nprime=3))


def test_iteration_fuse():
    with pytest.raises(CapExceeded):
        sda_degdet(skew_pencil(F, (1, 2, 3)), max_iterations=1)


def test_stop_after_flags_early_exit():
    res = sda_degdet(skew_pencil(F, (1, 2, 3)), stop_after=1)
    assert res.stopped_early and res.iterations == 1


def test_report_shape():
    rep = sda_degdet(skew_pencil(F, (1, 2, 3))).to_report(seed=7)
    assert rep["value"] == 6 and rep["seed"] == 7
    assert set(rep["trace"][0]) == {"r", "s", "kappa", "dstar"}
    assert sda_degdet(pencil(F, 1, {1: [["0"]]})).to_report()["value"] == "-inf"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_step_accounting_and_upper_bound(seed):
    rng = np.random.default_rng(seed)
    A = rank1_pencil(rng, int(rng.integers(1, 5)), int(rng.integers(1, 6)), 3)
    truth = commutative_degdet_oracle(A)
    for variant in ("plain", "kappa"):
        res = sda_degdet(A, variant=variant)
        n = A.n
        prev = None
        for step in res.trace:
            if step["dstar"] == "-inf":
                continue
            if truth is not MINUS_INF:
                assert step["dstar"] >= truth
            if prev is not None:
                assert prev - step["dstar"] == step["kappa"] * (step["r"] + step["s"] - n)
            prev = step["dstar"]
        assert res.value == truth


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_kappa_variant_never_takes_more_steps(seed):
    rng = np.random.default_rng(seed)
    A = rank1_pencil(rng, int(rng.integers(1, 5)), int(rng.integers(1, 6)), 3)
    assert sda_degdet(A, variant="kappa").iterations <= sda_degdet(A).iterations


def test_general_pencil_against_oracle_lower_bound():
    # deg Det >= deg det always; equality is not guaranteed beyond rank one
    rng = np.random.default_rng(11)
    for _ in range(15):
        n = int(rng.integers(1, 4))
        terms = {k: LaurentMatrix.monomial(F, F.random(rng, (n, n)), int(rng.integers(0, 3))) for k in range(1, 3)}
        A = LinearPencil.from_terms(F, n, n, terms)
        val = sda_degdet(A).value
        orc = commutative_degdet_oracle(A)
        assert orc is MINUS_INF or val >= orc


# ------------------------------------------------------------ certificates


def test_optimality_certificate():
    A = skew_pencil(GF(2), (1, 2, 3))
    res = sda_degdet(A, mvsp="brute")
    assert optimality_certificate(res.pencil.leading(), res.certificate)
    start = A.shifted(None, [-3] * 3).leading()
    assert not optimality_certificate(start, mvsp_bruteforce(start))
    I = pencil(F, 2, [F.eye(2).tolist()]).leading()
    assert optimality_certificate(I, mvsp_bruteforce(LinearPencil.from_terms(GF(2), 2, 2, [np.eye(2, dtype=int).tolist()]).leading()))


# ------------------------------------------------------------ relaxation


def test_relaxation_examples():
    A = pencil(F, 2, [[["1", "2"], ["3", "4"]]])
    assert combinatorial_relaxation(A).iterations == 0
    diag = pencil(F, 3, {k + 1: [[f"t^{a}" if i == j == k else "0" for j in range(3)] for i in range(3)] for k, a in enumerate((2, 5, 1))})
    res = combinatorial_relaxation(diag)
    assert res.value == 8 and res.iterations <= 1


def test_sigma_dual_examples():
    dual, assign = mvmp_sigma_dual([[0, 0], [0, 0]])
    assert dual.p == (0, 0) and dual.q == (0, 0)
    with pytest.raises(Unbounded):
        mvmp_sigma_dual([[MINUS_INF, MINUS_INF], [0, 0]])


@settings(max_examples=60)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_sigma_dual_matches_enumeration(n, seed):
    rng = np.random.default_rng(seed)
    d = [[int(rng.integers(-9, 1)) if rng.random() < 0.7 else MINUS_INF for _ in range(n)] for _ in range(n)]
    truth = brute_matching(d)
    if truth is MINUS_INF:
        with pytest.raises(Unbounded):
            mvmp_sigma_dual(d)
        return
    dual, assign = mvmp_sigma_dual(d)
    assert isinstance(dual, AssignmentDual) and dual.is_feasible(d)
    assert dual.weight == truth == sum(d[i][assign[i]] for i in range(n))
    assert sorted(assign) == list(range(n))


# ------------------------------------------------------------ subdeterminants


def test_max_deg_subdet_examples():
    A = skew_pencil(F, (1, 2, 3))
    assert max_deg_subdet(A)[0] == 6
    B = pencil(F, 2, [[["1", "0", "t", "0"], ["0", "1", "0", "t"]]], nprime=4)
    value, cols = max_deg_subdet(B)
    assert value == 2 and cols == [2, 3]
    Z = pencil(F, 2, [[["1", "0"], ["1", "0"]]])
    assert max_deg_subdet(Z) == (MINUS_INF, None)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_max_deg_subdet_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 3))
    A = rank1_pencil(rng, n, int(rng.integers(1, 5)), 3, nprime=int(rng.integers(n, 6)))
    assert max_deg_subdet(A)[0] == subset_degdet_max(A, commutative_degdet_oracle)


def test_valuated_exchange_examples():
    assert valuated_exchange_check(QQ, ratmatrix(QQ, [["1", "0", "1", "0"], ["0", "1", "0", "1"]]))
    # columns 1 and 3 parallel: w(13) is -inf and the other two pairings tie
    B = ratmatrix(F, [["1", "t", "t", "3"], ["t^2", "1", "t^3", "t"]])
    assert valuated_exchange_check(F, B)
    with pytest.raises(ValueError):
        valuated_exchange_check(F, ratmatrix(F, [["1", "0", "1"], ["0", "1", "0"]]))
