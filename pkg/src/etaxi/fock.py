"""Truncated graded Fock space of the eta-xi system, NS and R sectors.

A basis state is the canonical word

    xi_{-n_1} ... xi_{-n_l} xi_0^b eta_{-m_1} ... eta_{-m_r} |vac>

with ``n_1 > ... > n_l`` and ``m_1 > ... > m_r``.  Every sign in the package
comes from anticommuting a mode through this one word.  The untwisted vacuum
obeys ``eta_0 |vac> = 0``, so ``|vac>`` and ``xi_0 |vac>`` are the two vacua.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

XI = "xi"
ETA = "eta"

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Sector:
    tag: str
    offset: int  # delta: 0 for NS, 1 for R

    @property
    def has_zero_modes(self) -> bool:
        return self.offset == 0

    def is_label(self, label) -> bool:
        label = Fraction(label)
        if self.offset == 0:
            return label.denominator == 1
        return label.denominator == 2

    def positive_labels(self, max_part) -> list[Fraction]:
        """Mode labels n - delta/2 for n >= 1, not exceeding ``max_part``."""
        out = []
        n = 1
        while True:
            lab = Fraction(n) - Fraction(self.offset, 2)
            if lab > max_part:
                return out
            out.append(lab)
            n += 1

    def __str__(self):
        return self.tag


NS = Sector("NS", 0)
R = Sector("R", 1)


def sector_from_name(name: str) -> Sector:
    key = name.strip().upper()
    if key == "NS":
        return NS
    if key == "R":
        return R
    raise ValueError(f"unknown sector {name!r}")


@dataclass(frozen=True, order=False)
class BasisState:
    """Occupied xi-labels ``p1``, eta-labels ``p2`` (both decreasing), zero-mode bit ``b``."""

    p1: tuple = ()
    p2: tuple = ()
    b: int = 0

    @property
    def level(self) -> Fraction:
        return sum(self.p1, Fraction(0)) + sum(self.p2, Fraction(0))

    @property
    def charge(self) -> int:
        return len(self.p1) - len(self.p2) + self.b

    @property
    def fermion_parity(self) -> int:
        return (len(self.p1) + len(self.p2) + self.b) % 2

    def sort_key(self):
        return (self.level, self.charge, self.p1, self.p2, self.b)

    def __str__(self):
        def col(p):
            return ",".join(str(x) for x in p)

        s = f"({col(self.p1)}|{col(self.p2)})"
        return s + "xi0" if self.b else s


VACUUM = BasisState()


def level(state: BasisState) -> Fraction:
    return state.level


def charge(state: BasisState) -> int:
    return state.charge


def strict_partitions_upto(labels: list[Fraction], max_total) -> dict[Fraction, list[tuple]]:
    """Strict partitions (decreasing tuples) with parts in ``labels``, grouped by size <= max_total."""
    out: dict[Fraction, list[tuple]] = {}

    def rec(top: int, acc: tuple, s: Fraction):
        out.setdefault(s, []).append(acc)
        for j in range(top, -1, -1):
            if s + labels[j] <= max_total:
                rec(j - 1, acc + (labels[j],), s + labels[j])

    rec(len(labels) - 1, (), Fraction(0))
    return out


@dataclass(frozen=True)
class GradedBasis:
    sector: Sector
    max_level: Fraction
    max_part: Fraction | None
    zero_modes: bool
    blocks: dict = field(hash=False, compare=False)
    states: tuple = field(hash=False, compare=False)
    index: dict = field(hash=False, compare=False, repr=False)

    @property
    def levels(self) -> list[Fraction]:
        return sorted(self.blocks)

    def block(self, lvl) -> tuple:
        return self.blocks.get(Fraction(lvl), ())

    def __contains__(self, state) -> bool:
        return state in self.index

    def __len__(self):
        return len(self.states)


def enumerate_basis(sector: Sector, max_level, max_part=None, zero_modes: bool = True) -> GradedBasis:
    """Every state of level <= ``max_level``, parts <= ``max_part`` if given.

    ``zero_modes=False`` keeps only the b = 0 copy (the diagram sector used by
    characters).  In the R sector there is no zero mode and b is always 0.
    """
    max_level = Fraction(max_level)
    if max_level < 0:
        raise ValueError("max_level must be non-negative")
    cap = max_level if max_part is None else min(Fraction(max_part), max_level)
    labels = sector.positive_labels(cap)
    parts = strict_partitions_upto(labels, max_level)
    bits = (0, 1) if (zero_modes and sector.has_zero_modes) else (0,)
    states = []
    for s1, ps1 in parts.items():
        for s2, ps2 in parts.items():
            if s1 + s2 > max_level:
                continue
            for p1 in ps1:
                for p2 in ps2:
                    for b in bits:
                        states.append(BasisState(p1, p2, b))
    states.sort(key=BasisState.sort_key)
    blocks: dict[Fraction, list] = {}
    for st in states:
        blocks.setdefault(st.level, []).append(st)
    return GradedBasis(
        sector=sector,
        max_level=max_level,
        max_part=None if max_part is None else Fraction(max_part),
        zero_modes=zero_modes and sector.has_zero_modes,
        blocks={k: tuple(v) for k, v in blocks.items()},
        states=tuple(states),
        index={st: i for i, st in enumerate(states)},
    )


def _insert_desc(col: tuple, lab) -> tuple[int, tuple] | None:
    """Position and new column after inserting ``lab``; None if already occupied."""
    pos = 0
    for x in col:
        if x == lab:
            return None
        if x > lab:
            pos += 1
        else:
            break
    return pos, col[:pos] + (lab,) + col[pos:]


def apply_mode_raw(kind: str, label, state: BasisState) -> tuple[int, BasisState] | None:
    """Single mode on a basis state: ``(sign, state)`` or None for zero.

    No lattice check; callers pass labels already known to be valid.
    """
    p1, p2, b = state.p1, state.p2, state.b
    if kind == XI:
        if label < 0:
            ins = _insert_desc(p1, -label)
            if ins is None:
                return None
            pos, new = ins
            return (-1 if pos & 1 else 1), BasisState(new, p2, b)
        if label == 0:
            if b:
                return None
            return (-1 if len(p1) & 1 else 1), BasisState(p1, p2, 1)
        # annihilator: contracts with eta_{-label}
        try:
            j = p2.index(label)
        except ValueError:
            return None
        passed = len(p1) + b + j
        return (-1 if passed & 1 else 1), BasisState(p1, p2[:j] + p2[j + 1 :], b)
    if kind == ETA:
        if label < 0:
            ins = _insert_desc(p2, -label)
            if ins is None:
                return None
            pos, new = ins
            passed = len(p1) + b + pos
            return (-1 if passed & 1 else 1), BasisState(p1, new, b)
        if label == 0:
            if not b:
                return None
            return (-1 if len(p1) & 1 else 1), BasisState(p1, p2, 0)
        try:
            j = p1.index(label)
        except ValueError:
            return None
        return (-1 if j & 1 else 1), BasisState(p1[:j] + p1[j + 1 :], p2, b)
    raise ValueError(f"unknown mode kind {kind!r}")


def apply_mode(kind: str, label, state: BasisState, sector: Sector = NS) -> dict:
    """Act with ``xi_label`` or ``eta_label``; returns a state vector ``{state: coeff}``."""
    label = Fraction(label)
    if not sector.is_label(label):
        raise ValueError(f"label {label} not in the {sector} mode lattice")
    res = apply_mode_raw(kind, label, state)
    if res is None:
        return {}
    sign, out = res
    return {out: sign}
