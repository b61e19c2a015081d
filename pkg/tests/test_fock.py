from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etaxi.fock import ETA, NS, R, XI, BasisState, apply_mode, enumerate_basis, sector_from_name


# -- independent oracle: reduce a word of modes acting on the vacuum ----------


def _annihilates(kind, label):
    return label > 0 if kind == XI else label >= 0


def _rank(letter):
    kind, label = letter
    if _annihilates(kind, label):
        return (2, 0)
    return (0, label) if kind == XI else (1, label)


def reduce_word(word):
    """Bubble a word of modes into canonical order with {xi_a, eta_b} = delta_{a+b,0}."""
    out: dict[tuple, int] = {}
    stack = [(1, tuple(word))]
    while stack:
        coef, w = stack.pop()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a == b:
                break
            if _rank(a) > _rank(b):
                rest = w[:i] + (b, a) + w[i + 2 :]
                stack.append((-coef, rest))
                if a[0] != b[0] and a[1] + b[1] == 0:
                    stack.append((coef, w[:i] + w[i + 2 :]))
                break
        else:
            if w and _annihilates(*w[-1]):
                continue
            out[w] = out.get(w, 0) + coef
    return {k: v for k, v in out.items() if v}


def word_of(state: BasisState):
    w = [(XI, -n) for n in state.p1]
    if state.b:
        w.append((XI, Fraction(0)))
    w += [(ETA, -m) for m in state.p2]
    return tuple(w)


def state_of(word) -> BasisState:
    p1 = tuple(sorted((-l for k, l in word if k == XI and l < 0), reverse=True))
    p2 = tuple(sorted((-l for k, l in word if k == ETA), reverse=True))
    b = int(any(k == XI and l == 0 for k, l in word))
    return BasisState(p1, p2, b)


def oracle_apply(kind, label, state):
    reduced = reduce_word(((kind, Fraction(label)),) + word_of(state))
    return {state_of(w): c for w, c in reduced.items()}


# -----------------------------------------------------------------------------


def test_small_block_sizes():
    assert {k: len(v) for k, v in enumerate_basis(NS, 1).blocks.items()} == {0: 2, 1: 4}
    assert {k: len(v) for k, v in enumerate_basis(R, Fraction(1, 2)).blocks.items()} == {0: 1, Fraction(1, 2): 2}


def test_ns_dimension_matches_generating_function():
    # NS with zero mode: 2 * prod_n (1 + x^n)^2
    lam = 8
    coeffs = [1] + [0] * lam
    for n in range(1, lam + 1):
        for _ in range(2):
            coeffs = [c + (coeffs[i - n] if i >= n else 0) for i, c in enumerate(coeffs)]
    assert len(enumerate_basis(NS, lam)) == 2 * sum(coeffs)


def test_basis_is_ordered_and_indexed():
    basis = enumerate_basis(NS, 4)
    keys = [s.sort_key() for s in basis.states]
    assert keys == sorted(keys)
    assert all(basis.index[s] == i for i, s in enumerate(basis.states))


def test_max_part_and_diagram_sector():
    basis = enumerate_basis(NS, 6, max_part=2, zero_modes=False)
    assert all(s.b == 0 and all(p <= 2 for p in s.p1 + s.p2) for s in basis.states)
    assert len(basis) == 16


def test_charge_and_level():
    s = BasisState((3, 1), (2,), 1)
    assert s.level == 6 and s.charge == 2


def test_lattice_check():
    with pytest.raises(ValueError):
        apply_mode(XI, Fraction(1, 2), BasisState(), NS)
    with pytest.raises(ValueError):
        apply_mode(XI, 1, BasisState(), R)
    with pytest.raises(ValueError):
        sector_from_name("X")


def test_vacuum_conventions():
    assert apply_mode(ETA, 0, BasisState()) == {}
    assert apply_mode(XI, 0, BasisState()) == {BasisState((), (), 1): 1}
    assert apply_mode(XI, 0, BasisState((), (), 1)) == {}


STATES = enumerate_basis(NS, 5).states
R_STATES = enumerate_basis(R, Fraction(9, 2)).states


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(STATES), st.sampled_from([XI, ETA]), st.integers(min_value=-4, max_value=4))
def test_apply_mode_matches_word_reduction(state, kind, label):
    assert apply_mode(kind, label, state) == oracle_apply(kind, label, state)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(R_STATES), st.sampled_from([XI, ETA]), st.integers(min_value=-4, max_value=3))
def test_apply_mode_matches_word_reduction_r(state, kind, n):
    label = Fraction(2 * n + 1, 2)
    assert apply_mode(kind, label, state, R) == oracle_apply(kind, label, state)
