import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import space, symbols  # noqa: E402

from hidalp.characters import DirichletCharacter, enumerate_characters  # noqa: E402
from hidalp.congruence import AtLeast  # noqa: E402
from hidalp.measure import (EulerFactorContext, NotOrdinaryError, SymbolMeasure,  # noqa: E402
                            UnsupportedCharacterError, corollary_chain, euler_factor, euler_product,
                            evaluate_at_character, lfun_congruence_check, log_index_table, old_new_comparison,
                            ordinary_projection, series_truncation, specialize, two_path_values)
from hidalp.padic import CyclotomicElement, LocalRing  # noqa: E402
from hidalp.series import PadicPowerSeries  # noqa: E402


def prim(D):
    return [c for c in enumerate_characters(D) if c.is_primitive()]


def apply(P, f, space):
    """Values of f o P on the basis generators."""
    vals = [f.values[g] for g in space.basis]
    return [sum((v * int(x) for v, x in zip(vals, row) if x), f.ring.zero()) for row in P]


@pytest.mark.parametrize("N,p", [(11, 5), (14, 5), (11, 3), (15, 7)])
def test_ordinary_projection_is_an_idempotent_commuting_with_u(N, p):
    S = space(N, 2)
    P = ordinary_projection(S, p, prec=8)
    mod = p ** 8
    assert np.array_equal(P.dot(P) % mod, P)
    U = np.array([[int(x) for x in row] for row in S.hecke_operator(p).to_list()], dtype=object)
    assert np.array_equal(P.dot(U) % mod, U.dot(P) % mod)


def test_projection_fixes_ordinary_and_kills_supersingular_symbols():
    for N, sign, a_p in ((11, 1, 1), (14, 1, 0)):
        S = space(N, 2)
        (f,) = symbols(N, 2, sign, 5)
        assert f.exact_eigenvalue(5) == (a_p,)
        P = ordinary_projection(S, 5, prec=8)
        image = apply(P, f, S)
        for b, v in enumerate(image):
            want = f.values[S.basis[b]] if a_p else f.ring.zero()
            assert (v - want).ord() is None or (v - want).ord() >= 8


def test_measure_rejects_non_ordinary_and_bad_input():
    with pytest.raises(NotOrdinaryError):
        SymbolMeasure(symbols(14, 2, 1, 5)[0])
    with pytest.raises(ValueError):
        SymbolMeasure(symbols(5, 4, 1, 3)[0])
    with pytest.raises(ValueError):
        SymbolMeasure(symbols(11, 2, 1, 5)[0], M=5)


@pytest.mark.parametrize("M", [1, 2, 3])
def test_distribution_relation_with_tame_level(M):
    for sign in (1, -1):
        mu = SymbolMeasure(symbols(11, 2, sign, 5)[0], M=M)
        for r in range(3):
            for a in range(5 ** r * M):
                assert mu.distribution_defect(a, r).is_zero()


def test_level_zero_value_is_the_stabilized_path():
    (f,) = symbols(11, 2, 1, 5)
    mu = SymbolMeasure(f)
    from hidalp.special_values import evaluate_path
    assert mu.measure_value(0, 0) == evaluate_path(f, 0, 0, 1) - mu.stabilizer * evaluate_path(f, 0, 0, 1)
    # the unit root of x^2 - a_5 x + 5
    assert (mu.alpha * mu.alpha - f.eigenvalue(5) * mu.alpha + f.ring(5)).is_zero()
    with pytest.raises(ValueError):
        mu.measure_value(1, -1)
    with pytest.raises(ValueError):
        mu.measure_value(1, 100)


def test_evaluate_at_character_error_paths():
    mu = SymbolMeasure(symbols(11, 2, 1, 5)[0])
    with pytest.raises(UnsupportedCharacterError):
        evaluate_at_character(mu, prim(7)[0])
    with pytest.raises(UnsupportedCharacterError):
        evaluate_at_character(mu, DirichletCharacter.trivial(1))
    with pytest.raises(ValueError):
        evaluate_at_character(mu, prim(15)[0])          # tame part 3, measure has M = 1
    with pytest.raises(ValueError):
        evaluate_at_character(mu, prim(5)[0].extend(25))


@pytest.mark.parametrize("p,D", [(3, 3), (3, 9), (3, 27), (5, 5), (5, 25)])
def test_two_paths_agree(p, D):
    mu = {s: SymbolMeasure(symbols(11, 2, s, p)[0]) for s in (1, -1)}
    for chi in prim(D):
        v = two_path_values(mu[chi.parity()], chi)
        assert v["series"] == v["riemann"] == v["formal"] == v["special"]


def test_two_paths_with_tame_level():
    mu = {s: SymbolMeasure(symbols(11, 2, s, 5)[0], M=3) for s in (1, -1)}
    for chi in prim(15):
        v = two_path_values(mu[chi.parity()], chi)
        assert v["series"] == v["riemann"] == v["formal"] == v["special"]


def test_log_index_table():
    for p, n in ((3, 3), (5, 2), (7, 2)):
        t = log_index_table(p, n)
        assert len(t) == p ** n
        for x, s in t.items():
            assert pow(1 + p, s, p ** (n + 1)) == x
    with pytest.raises(ValueError):
        log_index_table(2, 3)


def test_series_truncations_are_compatible():
    # L at depth n and depth n - 1 agree at T = zeta - 1 for zeta^(p^(n-1)) = 1
    p = 3
    mu = SymbolMeasure(symbols(11, 2, 1, p)[0])
    for psi in enumerate_characters(p):
        if psi.parity() != 1:
            continue
        deep = series_truncation(mu, psi, 2)
        shallow = series_truncation(mu, psi, 1)
        assert deep.n == 9 and shallow.n == 3
        assert specialize(deep, mu.ring.one()) == specialize(shallow, mu.ring.one())
        R = LocalRing.cyclotomic(p, 1, 12)
        d1, s1 = series_truncation(mu, psi, 2, R), series_truncation(mu, psi, 1, R)
        zeta = R.one() + R.pi()
        assert specialize(d1, zeta) == specialize(s1, zeta)


def test_depth_zero_is_the_total_pairing():
    mu = SymbolMeasure(symbols(11, 2, 1, 5)[0])
    psi = DirichletCharacter.trivial(5)
    L0 = series_truncation(mu, psi, 0)
    total = sum((mu.measure_value(a, 1) for a in range(1, 5)), mu.ring.zero())
    assert L0.n == 1 and L0.coeffs[0] == total
    with pytest.raises(ValueError):
        series_truncation(mu, DirichletCharacter.trivial(7), 1)


def test_lfun_congruence_self_and_23():
    (f,) = symbols(11, 2, 1, 5)
    rep = lfun_congruence_check(f, f, depth=1, precision=10)
    assert isinstance(rep.t, AtLeast) and rep.verdict == "consistent"
    f, g = symbols(23, 2, 1, 5)
    rep = lfun_congruence_check(f, g, depth=1, precision=10)
    assert rep.t == rep.r_q == 1
    assert rep.chain and all(row["identity"] and row["bound"] for row in rep.chain)
    assert rep.to_json()["t"] == 1


def test_corollary_chain_on_a_constructed_difference():
    R = LocalRing(5, 12)
    # D = 5^2 (T^2 + 5 T + 5)
    D = PadicPowerSeries.from_ints(R, [125, 125, 25], 10)
    rows = corollary_chain(D, 2)
    for row in rows:
        assert row["r"] == 2 and row["deg_P"] == 2
        assert row["v_P"] == row["expected"] == Fraction(2, 4 * 5 ** (row["s"] - 1))
        assert row["identity"] and row["bound"]
    assert not any(row["bound"] for row in corollary_chain(D, 4))


def test_euler_factor_examples():
    triv = DirichletCharacter.trivial(1)
    assert euler_product(EulerFactorContext((), 11, 2, {}), triv) == CyclotomicElement(1, [1])
    ctx = EulerFactorContext((3,), 11, 2, {3: (-1, 1)})
    # 1 - a_3/3 + <3>/27 with a_3 = -1 and <3> = 3^2
    assert euler_factor(ctx, triv, 3) == CyclotomicElement(1, [Fraction(5, 3)])
    chi3 = prim(3)[0]
    ctx33 = EulerFactorContext((3,), 33, 2, {3: (-1, 1)})
    assert euler_factor(ctx33, chi3, 3) == CyclotomicElement(chi3.order, [1])
    assert euler_factor(ctx33, triv, 3) == CyclotomicElement(1, [Fraction(4, 3)])
    with pytest.raises(ValueError):
        EulerFactorContext((3,), 11, 2, {})
    with pytest.raises(ValueError):
        euler_factor(ctx, triv, 7)


def test_euler_factor_exponent_is_configurable():
    triv = DirichletCharacter.trivial(1)
    ctx = EulerFactorContext((3,), 11, 2, {3: (-1, 1)}, l_power=2)
    assert euler_factor(ctx, triv, 3) == CyclotomicElement(1, [Fraction(1) + Fraction(1, 3) + 1])


def test_old_new_trivial_and_wrong_ratio():
    (f,) = symbols(11, 2, 1, 5)
    chars = prim(5) + prim(13)
    chars = [c for c in chars if c.parity() == 1]
    empty = EulerFactorContext((), 11, 2, {})
    v = old_new_comparison(f, f, empty, chars)
    assert v.passed and v.unit_valuation == 0
    v = old_new_comparison(f.scale(f.ring(5)), f, empty, chars)
    assert not v.passed and v.unit_valuation == 1
