"""Finitized characters: brute-force traces over diagrams against product formulas.

Traces run over the b = 0 diagram sector.  Diagrams have parts bounded by the
cutoff L (labels n - delta/2 for n = 1..L), which already bounds their length.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .fock import NS, BasisState, Sector, enumerate_basis
from .scalars import hurwitz_zeta_negative


def _exact(x):
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class MonomialSeries:
    """Finite sum of monomials prod_i q_i^{e_i} with integer coefficients.

    Exponent vectors are tuples of exact rationals of a fixed length ``nvars``.
    Integral exponents may be stored as ``int``; they hash and compare equal
    to the matching Fraction, and skipping the conversion keeps traces fast.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms: dict[tuple, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(_exact(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent vector {e} has wrong length for {nvars} variables")
            if c:
                self.terms[e] = self.terms.get(e, 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def one(cls, nvars: int) -> MonomialSeries:
        return cls(nvars, {(Fraction(0),) * nvars: 1})

    @classmethod
    def monomial(cls, exps) -> MonomialSeries:
        exps = tuple(exps)
        return cls(len(exps), {exps: 1})

    def _check(self, other: MonomialSeries):
        if self.nvars != other.nvars:
            raise ValueError("series in different numbers of variables")

    def __add__(self, other: MonomialSeries) -> MonomialSeries:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MonomialSeries(self.nvars, out)

    def __mul__(self, other: MonomialSeries) -> MonomialSeries:
        self._check(other)
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MonomialSeries(self.nvars, out)

    def __eq__(self, other):
        return isinstance(other, MonomialSeries) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items())

    def evaluate_at_ones(self) -> int:
        return sum(self.terms.values())

    def specialize(self, exponent_map) -> MonomialSeries:
        """Substitute q_i -> prod_j p_j^{exponent_map[i][j]} into a series in new variables p_j."""
        if len(exponent_map) != self.nvars:
            raise ValueError("exponent map must cover every variable")
        new_n = len(exponent_map[0]) if exponent_map else 0
        out: dict[tuple, int] = {}
        for e, c in self.terms.items():
            ne = tuple(
                sum((e[i] * Fraction(exponent_map[i][j]) for i in range(self.nvars)), Fraction(0)) for j in range(new_n)
            )
            out[ne] = out.get(ne, 0) + c
        return MonomialSeries(new_n, out)

    def truncate(self, var: int, max_degree) -> MonomialSeries:
        return MonomialSeries(self.nvars, {e: c for e, c in self.terms.items() if e[var] <= max_degree})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"q{i}^{x}" if x != 1 else f"q{i}" for i, x in enumerate(e) if x != 0)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def to_records(self) -> list[dict]:
        return [{"exponents": [str(x) for x in e], "coefficient": c} for e, c in self.sorted_terms()]

    def to_json(self) -> str:
        return json.dumps(self.to_records(), sort_keys=True)

    def to_csv(self) -> str:
        if self.nvars != 1:
            raise ValueError("CSV output is only defined for single-variable series")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent", "coefficient"])
        for e, c in self.sorted_terms():
            w.writerow([str(e[0]), c])
        return buf.getvalue()


@dataclass(frozen=True)
class CharacterSpec:
    sector: Sector = NS
    L: int = 4
    K: int = 2
    normalize: bool = False
    regularize: bool = False

    def __post_init__(self):
        if self.L < 0 or self.K < 1:
            raise ValueError("need L >= 0 and K >= 1")

    @property
    def labels(self) -> list[Fraction]:
        return self.sector.positive_labels(Fraction(self.L) - Fraction(self.sector.offset, 2))


def diagrams(sector: Sector, L: int) -> tuple[BasisState, ...]:
    """Every two-column diagram with labels up to the cutoff, b = 0 sector."""
    cap = Fraction(L) - Fraction(sector.offset, 2)
    labels = sector.positive_labels(cap)
    total = 2 * sum(labels, Fraction(0))
    return enumerate_basis(sector, total, max_part=cap if L > 0 else 0, zero_modes=False).states


def iom_eigenvalue(state: BasisState, k: int) -> Fraction:
    """Eigenvalue of I_k on a diagram: sum over P1 of n^k plus (-1)^(k+1) times the sum over P2."""
    s1 = sum((Fraction(n) ** k for n in state.p1), Fraction(0))
    s2 = sum((Fraction(n) ** k for n in state.p2), Fraction(0))
    return s1 + (-1) ** (k + 1) * s2


def regularized_shifts(K: int, sector: Sector = NS) -> dict[int, Fraction]:
    """zeta(-i, 1 - delta/2) for the odd indices i < K."""
    a = 1 - Fraction(sector.offset, 2)
    return {i: hurwitz_zeta_negative(i, a) for i in range(1, K, 2)}


def normalization_exponents(spec: CharacterSpec) -> list[Fraction]:
    """Exponents of N (even i) and, if requested, of the zeta shift (odd i)."""
    labels = spec.labels
    out = []
    shifts = regularized_shifts(spec.K, spec.sector) if spec.regularize else {}
    for i in range(spec.K):
        if i % 2 == 0:
            out.append(sum((n**i for n in labels), Fraction(0)) if spec.normalize else Fraction(0))
        else:
            out.append(shifts.get(i, Fraction(0)))
    return out


def char_bruteforce(spec: CharacterSpec) -> MonomialSeries:
    """Sum over diagrams of prod_i q_i^{I_i(D)}, with the normalizations added per diagram."""
    K = spec.K
    powers = {n: [_exact(n**i) for i in range(K)] for n in spec.labels}
    shifts = regularized_shifts(K, spec.sector) if spec.regularize else {}
    offset = []
    for i in range(K):
        # the even I_i count eta-labels negatively; N restores them
        norm = sum(powers[n][i] for n in powers) if spec.normalize and i % 2 == 0 else 0
        offset.append(norm + shifts.get(i, 0))
    terms: dict[tuple, int] = {}
    for d in diagrams(spec.sector, spec.L):
        e = []
        for i in range(K):
            sign = 1 if i % 2 else -1
            x = offset[i]
            for n in d.p1:
                x += powers[n][i]
            for n in d.p2:
                x += sign * powers[n][i]
            e.append(x)
        e = tuple(e)
        terms[e] = terms.get(e, 0) + 1
    return MonomialSeries(K, terms)


def char_product(spec: CharacterSpec) -> MonomialSeries:
    """prod_n (1 + prod_i q_i^{n^i}) (1 + prod_i q_i^{(-1)^(i+1) n^i}), times the normalizations."""
    K = spec.K
    out = MonomialSeries.monomial(normalization_exponents(spec))
    for n in spec.labels:
        xi = tuple(n**i for i in range(K))
        eta = tuple((-1) ** (i + 1) * n**i for i in range(K))
        out = out * (MonomialSeries.one(K) + MonomialSeries.monomial(xi))
        out = out * (MonomialSeries.one(K) + MonomialSeries.monomial(eta))
    return out


def d0t_eigenvalue(state: BasisState, t: Fraction) -> Fraction:
    """t^-1 (sum_{P1} t^{-2n} - sum_{P2} t^{2n})."""
    t = Fraction(t)
    return (sum((t ** (-2 * n) for n in state.p1), Fraction(0)) - sum((t ** (2 * n) for n in state.p2), Fraction(0))) / t


def _rational_power(t: Fraction, e: Fraction) -> Fraction:
    if e.denominator != 1:
        raise ValueError(f"non-integer power {e} of a rational")
    return Fraction(t) ** int(e)


def char_D0t(t, sector: Sector = NS, L: int = 3) -> tuple[MonomialSeries, MonomialSeries]:
    """Brute-force trace of q^{D_0(t)} and the finitized product, both single-variable."""
    t = Fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    terms: dict[tuple, int] = {}
    for d in diagrams(sector, L):
        e = (d0t_eigenvalue(d, t),)
        terms[e] = terms.get(e, 0) + 1
    brute = MonomialSeries(1, terms)
    delta = sector.offset
    prod = MonomialSeries.one(1)
    for n in range(1, L + 1):
        pre = -_rational_power(t, Fraction(2 * n - 1 - delta))
        prod = prod * MonomialSeries.monomial((pre,))
        prod = prod * (MonomialSeries.one(1) + MonomialSeries.monomial((_rational_power(t, Fraction(-2 * n - 1 + delta)),)))
        prod = prod * (MonomialSeries.one(1) + MonomialSeries.monomial((_rational_power(t, Fraction(2 * n - 1 - delta)),)))
    return brute, prod


def continuum_prefactor(t, sector: Sector = NS) -> Fraction:
    """Exponent t^(1-delta) / (t^2 - 1) of the L -> infinity prefactor."""
    t = Fraction(t)
    if t * t == 1:
        raise ValueError("continuum prefactor undefined at t = +-1")
    return t ** (1 - sector.offset) / (t * t - 1)


def d0k_exponent_map(k: int, K: int) -> list[list[Fraction]]:
    """q_s -> q^{(-1)^k 2^s C(k,s) / k!} for s <= k, q_s -> 1 beyond."""
    if K < k + 1:
        raise ValueError(f"need at least {k + 1} variables for order {k}")
    return [[Fraction((-1) ** k * 2**s * comb(k, s), factorial(k)) if s <= k else Fraction(0)] for s in range(K)]


def d0k_eigenvalue(state: BasisState, k: int) -> Fraction:
    """hbar^k coefficient of D_0(e^hbar) on a diagram, read off the exponentials directly."""
    xi = sum((Fraction(-(1 + 2 * n)) ** k for n in state.p1), Fraction(0))
    eta = sum((Fraction(2 * n - 1) ** k for n in state.p2), Fraction(0))
    return (xi - eta) / factorial(k)


def char_D0k_specialize(k: int, base: MonomialSeries) -> MonomialSeries:
    return base.specialize(d0k_exponent_map(k, base.nvars))


def char_D0k_direct(k: int, sector: Sector = NS, L: int = 3) -> MonomialSeries:
    terms: dict[tuple, int] = {}
    for d in diagrams(sector, L):
        e = (d0k_eigenvalue(d, k),)
        terms[e] = terms.get(e, 0) + 1
    return MonomialSeries(1, terms)


def d0q_eigenvalue_string(state: BasisState) -> str:
    """q^{-1}(sum_{P1} q^{-2n} - sum_{P2} q^{2n}) expanded into monomials."""
    terms = [(Fraction(-2 * n - 1), 1) for n in state.p1] + [(Fraction(2 * n - 1), -1) for n in state.p2]
    if not terms:
        return "0"
    out = []
    for e, c in sorted(terms):
        out.append(("- " if c < 0 else "+ ") + ("q" if e == 1 else f"q^{e}"))
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
