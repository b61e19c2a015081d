"""Bilinear currents of the eta-xi system as sparse graded operators.

An :class:`OperatorHandle` stores, for every source basis state, its image as
a sparse vector.  An operator of weight ``n`` lowers the level by ``n``.  It
is only trusted on its validity window: source levels whose every
intermediate level stays at or below ``max_level``.  Intermediate levels
below zero need no guard: those states are absent from the full Fock space
too, so the truncated product is exact there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .fock import ETA, XI, BasisState, GradedBasis, apply_mode_raw
from .scalars import HbarSeries, LaurentPoly, RingMismatch, exp_series, ring_of, scalar_pow


class WindowEmpty(ValueError):
    """The truncation is too small for the requested product to be exact."""


ZERO_MODE_RULES = ("lambda", "omit", "bare")


@dataclass(frozen=True)
class NormalOrderConvention:
    """How ``:xi_0 eta_0:`` is read.

    ``lambda``: ``lam*eta_0 xi_0 + (lam - 1)*xi_0 eta_0``, literally.
    ``omit``: the pair is dropped from every current.
    ``bare``: the pair is kept as the plain product ``xi_0 eta_0``.
    """

    lam: Fraction = Fraction(1)
    zero_mode: str = "omit"

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.zero_mode not in ZERO_MODE_RULES:
            raise ValueError(f"zero_mode must be one of {ZERO_MODE_RULES}")

    def label(self) -> str:
        if self.zero_mode == "lambda":
            return f"lambda={self.lam}"
        return self.zero_mode


DEFAULT_CONVENTION = NormalOrderConvention(Fraction(1), "omit")
# xi_0 eta_0 kept verbatim: the reading under which the mode brackets close
ALGEBRA_CONVENTION = NormalOrderConvention(Fraction(1), "bare")


def is_annihilator(kind: str, label) -> bool:
    """Kills the untwisted vacuum: xi_k for k > 0, eta_k for k >= 0."""
    if kind == XI:
        return label > 0
    return label >= 0


def normal_ordered_pair(a: tuple, b: tuple, convention: NormalOrderConvention = DEFAULT_CONVENTION):
    """Expand ``:A B:`` for two mode letters ``(kind, label)``.

    Returns a list of ``(coefficient, word)``; a word is read left to right
    as an operator product, so its last letter acts first.
    """
    if a == (XI, 0) and b == (ETA, 0):
        rule = convention.zero_mode
        if rule == "omit":
            return []
        if rule == "bare":
            return [(1, (a, b))]
        lam = convention.lam
        out = []
        if lam:
            out.append((lam, (b, a)))
        if lam - 1:
            out.append((lam - 1, (a, b)))
        return out
    if is_annihilator(*a) and not is_annihilator(*b):
        return [(-1, (b, a))]
    return [(1, (a, b))]


def falling(x, a: int):
    out = 1
    for i in range(a):
        out *= x - i
    return out


class OperatorHandle:
    """Sparse map ``source state -> {target state: scalar}`` on a truncated basis."""

    __slots__ = ("basis", "weight", "data", "window", "name", "ring")

    def __init__(self, basis: GradedBasis, weight, data: dict, window, name: str = "", ring: str = "rational"):
        self.basis = basis
        self.weight = Fraction(weight)
        self.data = data
        self.window = (Fraction(window[0]), Fraction(window[1]))
        self.name = name
        self.ring = ring

    @property
    def window_empty(self) -> bool:
        return self.window[0] > self.window[1]

    def in_window(self, lvl) -> bool:
        return self.window[0] <= lvl <= self.window[1]

    def window_states(self):
        return [s for s in self.basis.states if self.in_window(s.level)]

    def column(self, state: BasisState) -> dict:
        return self.data.get(state, {})

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for s, c in vec.items():
            for t, d in self.data.get(s, {}).items():
                v = out.get(t, 0) + c * d
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        return out

    def entry(self, target: BasisState, source: BasisState):
        return self.data.get(source, {}).get(target, 0)

    def block(self, lvl) -> dict:
        """The (level -> level - weight) block as ``{(target, source): entry}``."""
        lvl = Fraction(lvl)
        return {(t, s): c for s in self.basis.block(lvl) for t, c in self.data.get(s, {}).items()}

    # -- algebra ---------------------------------------------------------

    def _check(self, other: "OperatorHandle"):
        if other.basis != self.basis:
            raise ValueError("operators live on different bases")
        rings = {self.ring, other.ring} - {"rational"}
        if len(rings) > 1:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
        return rings.pop() if rings else "rational"

    def _combine(self, other: "OperatorHandle", sign: int) -> "OperatorHandle":
        ring = self._check(other)
        if other.weight != self.weight:
            raise ValueError(f"cannot add weights {self.weight} and {other.weight}")
        out = {s: dict(col) for s, col in self.data.items()}
        for s, col in other.data.items():
            tgt = out.setdefault(s, {})
            for t, c in col.items():
                v = tgt.get(t, 0) + sign * c
                if v:
                    tgt[t] = v
                else:
                    tgt.pop(t, None)
            if not tgt:
                out.pop(s)
        win = (max(self.window[0], other.window[0]), min(self.window[1], other.window[1]))
        return OperatorHandle(self.basis, self.weight, out, win, ring=ring)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "OperatorHandle":
        r = ring_of(c)
        ring = self.ring
        if r != "rational":
            if ring not in ("rational", r):
                raise RingMismatch(f"ring mismatch: {ring} vs {r}")
            ring = r
        out = {}
        if c:
            for s, col in self.data.items():
                new = {t: v * c for t, v in col.items()}
                new = {t: v for t, v in new.items() if v}
                if new:
                    out[s] = new
        return OperatorHandle(self.basis, self.weight, out, self.window, self.name, ring)

    def __mul__(self, c):
        if isinstance(c, OperatorHandle):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: "OperatorHandle") -> "OperatorHandle":
        ring = self._check(other)
        lo = other.window[0]
        if self.window[0] > 0:
            lo = max(lo, self.window[0] + other.weight)
        hi = min(other.window[1], self.window[1] + other.weight)
        out = {}
        for s, col in other.data.items():
            if not (lo <= s.level <= hi):
                continue
            img = self.apply(col)
            if img:
                out[s] = img
        return OperatorHandle(self.basis, self.weight + other.weight, out, (lo, hi), ring=ring)

    def restrict(self, window) -> "OperatorHandle":
        win = (max(self.window[0], window[0]), min(self.window[1], window[1]))
        return OperatorHandle(self.basis, self.weight, self.data, win, self.name, self.ring)

    def parity_part(self, parity: int) -> "OperatorHandle":
        """Entries that change fermion parity by ``parity`` (0 even, 1 odd)."""
        out = {}
        for s, col in self.data.items():
            new = {t: c for t, c in col.items() if (t.fermion_parity - s.fermion_parity) % 2 == parity}
            if new:
                out[s] = new
        return OperatorHandle(self.basis, self.weight, out, self.window, self.name, self.ring)

    def map_entries(self, fn, ring: str) -> "OperatorHandle":
        out = {}
        for s, col in self.data.items():
            new = {t: fn(c) for t, c in col.items()}
            new = {t: v for t, v in new.items() if v}
            if new:
                out[s] = new
        return OperatorHandle(self.basis, self.weight, out, self.window, self.name, ring)

    def differences(self, other: "OperatorHandle", window=None, limit: int | None = None) -> list:
        """``(source, target, mine, theirs)`` wherever the two differ on the shared window."""
        lo = max(self.window[0], other.window[0])
        hi = min(self.window[1], other.window[1])
        if window is not None:
            lo, hi = max(lo, window[0]), min(hi, window[1])
        diffs = []
        for s in self.basis.states:
            if not (lo <= s.level <= hi):
                continue
            a = self.data.get(s, {})
            b = other.data.get(s, {})
            for t in sorted(set(a) | set(b), key=BasisState.sort_key):
                x, y = a.get(t, 0), b.get(t, 0)
                if x != y:
                    diffs.append((s, t, x, y))
                    if limit is not None and len(diffs) >= limit:
                        return diffs
        return diffs

    def equals_on_window(self, other: "OperatorHandle", window=None) -> bool:
        return not self.differences(other, window, limit=1)

    def is_zero_on_window(self) -> bool:
        return all(not self.data.get(s) for s in self.window_states())

    def scalar_multiple_of_identity(self):
        """The scalar ``c`` with ``self == c*Id`` on the window, or None if not such."""
        if self.weight != 0:
            return None if not self.is_zero_on_window() else 0
        c = None
        for s in self.window_states():
            col = self.data.get(s, {})
            if any(t != s for t in col):
                return None
            v = col.get(s, 0)
            if c is None:
                c = v
            elif v != c:
                return None
        return 0 if c is None else c

    def to_matrix(self, level_from, level_to=None):
        """Dense list-of-lists block in the basis order (rows: targets)."""
        level_from = Fraction(level_from)
        level_to = level_from - self.weight if level_to is None else Fraction(level_to)
        src = self.basis.block(level_from)
        tgt = self.basis.block(level_to)
        return [[self.entry(t, s) for s in src] for t in tgt]

    def __repr__(self):
        return f"<OperatorHandle {self.name or '?'} weight={self.weight} window={self.window[0]}..{self.window[1]} ring={self.ring}>"


# -- construction ------------------------------------------------------------


def default_window(basis: GradedBasis, weight) -> tuple:
    weight = Fraction(weight)
    lam = basis.max_level
    return (Fraction(0), min(lam, lam + weight))


def operator_from_words(basis: GradedBasis, weight, words, name: str = "") -> OperatorHandle:
    """Sum of ``coeff * word`` over the basis; images outside the basis are dropped."""
    weight = Fraction(weight)
    ring = "rational"
    for c, _ in words:
        r = ring_of(c)
        if r != "rational":
            if ring not in ("rational", r):
                raise RingMismatch("mixed scalar rings in one operator")
            ring = r
    data = {}
    index = basis.index
    for s in basis.states:
        img: dict = {}
        for c, word in words:
            cur = s
            sign = 1
            for kind, lab in reversed(word):
                res = apply_mode_raw(kind, lab, cur)
                if res is None:
                    cur = None
                    break
                sign *= res[0]
                cur = res[1]
            if cur is None or cur not in index:
                continue
            v = img.get(cur, 0) + (c if sign > 0 else -c)
            if v:
                img[cur] = v
            else:
                img.pop(cur, None)
        if img:
            data[s] = img
    return OperatorHandle(basis, weight, data, default_window(basis, weight), name, ring)


def _labels(basis: GradedBasis, span) -> list[Fraction]:
    """All sector labels with |label| <= span."""
    off = Fraction(basis.sector.offset, 2)
    out = []
    k = -int(span) - 2
    while k <= int(span) + 2:
        lab = Fraction(k) - off
        if abs(lab) <= span:
            out.append(lab)
        k += 1
    return out


def bilinear_words(basis: GradedBasis, n, coef, kinds=(XI, ETA), convention=DEFAULT_CONVENTION):
    """Words of ``sum_k coef(k) :A_k B_{n-k}:`` restricted to modes that can act on the basis."""
    n = Fraction(n)
    span = basis.max_level + abs(n) + 1
    words = []
    for k in _labels(basis, span):
        l = n - k
        if abs(l) > span:
            continue
        c = coef(k)
        if not c:
            continue
        for sgn, word in normal_ordered_pair((kinds[0], k), (kinds[1], l), convention):
            words.append((c * sgn, word))
    return words


def bilinear(basis, n, coef, name="", kinds=(XI, ETA), convention=DEFAULT_CONVENTION, tail=()) -> OperatorHandle:
    """Operator ``sum_k coef(k) :A_k B_{n-k}: + sum tail``; ``tail`` holds ``(coeff, word)`` pairs."""
    words = bilinear_words(basis, n, coef, kinds, convention) + list(tail)
    return operator_from_words(basis, n, words, name)


def mode_operator(basis: GradedBasis, kind: str, label) -> OperatorHandle:
    label = Fraction(label)
    if not basis.sector.is_label(label):
        raise ValueError(f"label {label} not in the {basis.sector} lattice")
    return operator_from_words(basis, label, [(1, ((kind, label),))], f"{kind}_{label}")


def identity(basis: GradedBasis, c=1) -> OperatorHandle:
    data = {s: {s: c} for s in basis.states} if c else {}
    return OperatorHandle(basis, 0, data, (0, basis.max_level), "Id", ring_of(c))


def zero(basis: GradedBasis, weight=0) -> OperatorHandle:
    return OperatorHandle(basis, weight, {}, default_window(basis, weight), "0")


# -- the currents -------------------------------------------------------------


def _field_coef(a: int, b: int):
    """Mode weights of :d^a xi d^b eta:, i.e. ff(-k, a) * ff(-l-1, b)."""

    def coef_for(n):
        return lambda k: falling(-k, a) * falling(-(n - k) - 1, b)

    return coef_for


@lru_cache(maxsize=None)
def build_field_xi_eta(basis, a: int, b: int, n, convention=DEFAULT_CONVENTION) -> OperatorHandle:
    """n-th mode of :d^a xi d^b eta:, a field of weight a + b + 1."""
    n = Fraction(n)
    return bilinear(basis, n, _field_coef(a, b)(n), f"[d{a}xi d{b}eta]_{n}", convention=convention)


def t_field_derivatives(s: int) -> tuple[int, int]:
    """(xi-derivatives, eta-derivatives) of T_s: T_2n = d^n xi d^(n-1) eta, T_(2n-1) = d^(n-1) xi d^(n-1) eta."""
    if s < 1:
        raise ValueError("T_s needs s >= 1")
    if s % 2 == 0:
        return s // 2, s // 2 - 1
    return (s - 1) // 2, (s - 1) // 2


@lru_cache(maxsize=None)
def build_standard(name: str, basis: GradedBasis, n=0, param=None, convention=DEFAULT_CONVENTION) -> OperatorHandle:
    """Currents by name.

    ``J``, ``L``: U(1) current and stress tensor modes ``J_n``, ``L_n``.
    ``Lalpha``: ``L_n + (n+1)(alpha/2) J_n`` with ``param=alpha``.
    ``V``: ``V^p_n = sum_k (-k)^p :xi_k eta_{n-k}:`` with ``param=p``.
    ``T``: modes of ``T_s`` with ``param=s``.
    ``W0``, ``W+``, ``W-``: the three spin-3 fields.
    ``N+``, ``N-``: number operators at ``param=m`` (``n`` ignored).
    ``I``: integral of motion ``I_k`` with ``param=k`` (weight 0).
    """
    n = Fraction(n)
    if name == "J":
        return bilinear(basis, n, lambda k: 1, f"J_{n}", convention=convention)
    if name == "L":
        return bilinear(basis, n, lambda k: -k, f"L_{n}", convention=convention)
    if name == "Lalpha":
        alpha = param
        half = alpha * Fraction(n + 1, 2)
        return bilinear(basis, n, lambda k: -k + half, f"Lalpha_{n}", convention=convention)
    if name == "V":
        p = int(param)
        return bilinear(basis, n, lambda k: (-k) ** p, f"V^{p}_{n}", convention=convention)
    if name == "T":
        a, b = t_field_derivatives(int(param))
        return build_field_xi_eta(basis, a, b, n, convention)
    if name == "W0":
        # (1/2)(:d eta d xi: + :d^2 xi eta:), with :d eta d xi: = -:d xi d eta:
        def coef(k):
            l = n - k
            return Fraction(-falling(-k, 1) * falling(-l - 1, 1) + falling(-k, 2), 2)

        return bilinear(basis, n, coef, f"W0_{n}", convention=convention)
    if name == "W+":
        # :d eta eta:
        return bilinear(basis, n, lambda l: falling(-l - 1, 1), f"W+_{n}", kinds=(ETA, ETA), convention=convention)
    if name == "W-":
        # :d^2 xi d xi:
        return bilinear(
            basis, n, lambda k: falling(-k, 2) * falling(-(n - k), 1), f"W-_{n}", kinds=(XI, XI), convention=convention
        )
    if name in ("N+", "N-"):
        m = Fraction(param)
        word = ((XI, -m), (ETA, m)) if name == "N+" else ((ETA, -m), (XI, m))
        return operator_from_words(basis, 0, [(1, word)], f"{name}_{m}")
    if name == "I":
        k = int(param)
        words = []
        for m in basis.sector.positive_labels(basis.max_level):
            words.append((m**k, ((XI, -m), (ETA, m))))
            words.append(((-1) ** (k + 1) * m**k, ((ETA, -m), (XI, m))))
        return operator_from_words(basis, 0, words, f"I_{k}")
    raise ValueError(f"unknown current {name!r}")


def derivative_modes(op: OperatorHandle, field_weight) -> OperatorHandle:
    """Modes of the derivative field: (dO)_n = -(n + h) O_n for O of weight h."""
    out = op.scale(-(op.weight + Fraction(field_weight)))
    out.name = f"d({op.name})"
    return out


def _check_param(x):
    r = ring_of(x)
    if r == "rational" and Fraction(x) == 0:
        raise ZeroDivisionError("D_n(q) needs an invertible parameter")
    if r == "laurent" and not x.is_monomial():
        raise ZeroDivisionError("D_n(q) needs a monomial parameter in the Laurent ring")
    if r == "hbar":
        x.inverse()
    return x


@lru_cache(maxsize=None)
def build_D(n, param, basis: GradedBasis, convention=DEFAULT_CONVENTION) -> OperatorHandle:
    """D_n(q) = q^(-n-1) sum_k q^(2k) :xi_k eta_{n-k}:."""
    n = Fraction(n)
    _check_param(param)
    if isinstance(param, (int, Fraction)):
        param = Fraction(param)
    cache: dict = {}

    def coef(k):
        e = int(2 * k - n - 1)
        if e not in cache:
            cache[e] = scalar_pow(param, e)
        return cache[e]

    op = bilinear(basis, n, coef, f"D_{n}({param})", convention=convention)
    return op


def build_D_tilde(n, param, basis: GradedBasis, convention=DEFAULT_CONVENTION) -> OperatorHandle:
    """D~_n(q) = D_n(q) - 2 q^(-n-1) eta_n."""
    n = Fraction(n)
    d = build_D(n, param, basis, convention)
    tail = mode_operator(basis, ETA, n).scale(-2 * scalar_pow(param, int(-n - 1)))
    out = d + tail
    out.name = f"D~_{n}({param})"
    return out


def build_L_tilde(n, delta_T, basis: GradedBasis, convention=DEFAULT_CONVENTION) -> OperatorHandle:
    """L~_n = L_n - delta_T (n+1) eta_n, the modes of T_2 + delta_T d(eta)."""
    n = Fraction(n)
    op = build_standard("L", basis, n, convention=convention) + mode_operator(basis, ETA, n).scale(
        -Fraction(delta_T) * (n + 1)
    )
    op.name = f"L~_{n}"
    return op


def build_tilde(which: str, n, param, basis: GradedBasis, convention=DEFAULT_CONVENTION) -> OperatorHandle:
    if which == "L":
        return build_L_tilde(n, param, basis, convention)
    if which == "D":
        return build_D_tilde(n, param, basis, convention)
    raise ValueError(f"unknown tilde current {which!r}")


def commutator(a: OperatorHandle, b: OperatorHandle) -> OperatorHandle:
    """AB - BA on the window where all four intermediate levels are inside the truncation."""
    out = (a @ b) - (b @ a)
    if out.window_empty:
        raise WindowEmpty(f"empty validity window for [{a.name}, {b.name}]")
    out.name = f"[{a.name},{b.name}]"
    return out


def anticommutator(a: OperatorHandle, b: OperatorHandle) -> OperatorHandle:
    out = (a @ b) + (b @ a)
    if out.window_empty:
        raise WindowEmpty(f"empty validity window for {{{a.name}, {b.name}}}")
    out.name = f"{{{a.name},{b.name}}}"
    return out


def supercommutator(a: OperatorHandle, b: OperatorHandle) -> OperatorHandle:
    """Graded bracket: odd-odd pieces anticommute, everything else commutes."""
    total = None
    for pa in (0, 1):
        ea = a.parity_part(pa)
        for pb in (0, 1):
            eb = b.parity_part(pb)
            piece = anticommutator(ea, eb) if pa and pb else commutator(ea, eb)
            total = piece if total is None else total + piece
    total.name = f"[{a.name},{b.name}}}"
    return total


def hbar_expand(n, gamma, order: int, basis: GradedBasis, convention=DEFAULT_CONVENTION):
    """Coefficient operators D_n^(m), m = 0..order, of D_n(exp(gamma*hbar))."""
    n = Fraction(n)
    gamma = Fraction(gamma)
    series_op = build_D_hbar(n, gamma, order, basis, convention)
    return [series_op.map_entries(lambda c, m=m: c[m], "rational") for m in range(order + 1)]


def build_D_hbar(n, gamma, order: int, basis: GradedBasis, convention=DEFAULT_CONVENTION) -> OperatorHandle:
    """D_n(q) at q = exp(gamma*hbar) with entries truncated at hbar^order."""
    return build_D(Fraction(n), exp_series(gamma, order), basis, convention)


def dq_central(n: int, x):
    """((x)^n - x^(-n)) / (x - 1/x) as a finite sum; x is the scalar standing for qt."""
    n = int(n)
    if n == 0:
        return 0
    p = abs(n)
    total = 0
    for j in range(p):
        total = total + scalar_pow(x, p - 1 - 2 * j)
    return total if n > 0 else -total


def v_central(n: int, r: int, m: int, s: int) -> Fraction:
    """Central sum of [V^n_r, V^m_s]; negative r by antisymmetry of the bracket."""
    if r + s != 0 or r == 0:
        return Fraction(0)
    if r < 0:
        return -v_central(m, s, n, r)
    return Fraction(sum((-j) ** n * (r - j) ** m for j in range(1, r + 1)))


def binomial(n: int, k: int) -> int:
    return comb(n, k)


__all__ = [
    "ALGEBRA_CONVENTION",
    "DEFAULT_CONVENTION",
    "HbarSeries",
    "NormalOrderConvention",
    "OperatorHandle",
    "WindowEmpty",
    "anticommutator",
    "bilinear",
    "build_D",
    "build_D_hbar",
    "build_D_tilde",
    "build_L_tilde",
    "build_standard",
    "build_tilde",
    "commutator",
    "derivative_modes",
    "dq_central",
    "hbar_expand",
    "identity",
    "mode_operator",
    "normal_ordered_pair",
    "operator_from_words",
    "supercommutator",
    "v_central",
]
