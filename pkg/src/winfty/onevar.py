"""The one-variable specialization: t^i D f(D) normal form and its checks.

Covers the closed-form bracket on elements t^i D f(D), the d/dt calculus
(d/dt = t^(-1) D, so t^(i+j)(d/dt)^j = t^i [D]_j), the named operator
identities used to control the matrices Q_i, and desk-scale certification of
the generation claim: brackets of t^(i0)D, t^(i0+1)D, t^(i0)D^2 and a tail
of one-variable polynomials reach every t^k D^m in a truncation window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .printer import format_element
from .report import VerificationReport
from .weyl import Weyl, WeylElement, bracket, mul

Poly = Dict[int, Fraction]  # univariate polynomial in D, exponent -> coefficient


def poly(coeffs: Union[Poly, Sequence]) -> Poly:
    if isinstance(coeffs, dict):
        return {e: Fraction(c) for e, c in coeffs.items() if c != 0}
    return {e: Fraction(c) for e, c in enumerate(coeffs) if c != 0}


def poly_shift(f: Poly, c: Union[int, Fraction]) -> Poly:
    """f(D + c), expanded exactly via the binomial theorem."""
    c = Fraction(c)
    out: Poly = {}
    for e, a in f.items():
        for j in range(e + 1):
            out[j] = out.get(j, Fraction(0)) + a * math.comb(e, j) * c ** (e - j)
    return {e: a for e, a in out.items() if a != 0}


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for e1, a in f.items():
        for e2, b in g.items():
            out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + a * b
    return {e: a for e, a in out.items() if a != 0}


def poly_sub(f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for e, b in g.items():
        out[e] = out.get(e, Fraction(0)) - b
    return {e: a for e, a in out.items() if a != 0}


_D: Poly = {1: Fraction(1)}


@dataclass(frozen=True)
class DfElement:
    """t^degree * D * f(D) with f a rational polynomial in D."""

    degree: int
    f: Tuple[Tuple[int, Fraction], ...]

    @classmethod
    def of(cls, degree: int, f: Union[Poly, Sequence]) -> "DfElement":
        p = poly(f)
        return cls(degree, tuple(sorted(p.items())))

    @property
    def f_poly(self) -> Poly:
        return dict(self.f)

    def is_zero(self) -> bool:
        return not self.f

    def to_weyl(self, weyl: Weyl) -> WeylElement:
        out = weyl.zero()
        for e, c in self.f:
            out = out + weyl.monomial((self.degree,), (e + 1,), c)
        return out

    @classmethod
    def from_weyl(cls, x: WeylElement) -> "DfElement":
        """Inverse of to_weyl; requires a homogeneous W^(1) element."""
        if x.is_zero():
            return cls.of(0, {})
        if x.weyl.n != 1:
            raise ValueError("one-variable elements only")
        deg = x.grade()
        if deg is None:
            raise ValueError("element is not homogeneous")
        f: Poly = {}
        for (_g, mu), c in x.to_power().terms.items():
            if mu[0] < 1:
                raise ValueError("element has a |mu| = 0 component")
            f[mu[0] - 1] = c.as_fraction()
        if deg[0].denominator != 1:
            raise ValueError("degree is not an integer")
        return cls.of(int(deg[0]), f)


def df_bracket(i: int, f: Union[Poly, Sequence], j: int,
               g: Union[Poly, Sequence]) -> DfElement:
    """[t^i D f(D), t^j D g(D)] in closed form (one bracket, no expansion):

    t^(i+j) D ( (D+j) f(D+j) g(D) - (D+i) g(D+i) f(D) ).
    """
    f, g = poly(f), poly(g)
    left = poly_mul(poly_mul(poly_shift(_D, j), poly_shift(f, j)), g)
    right = poly_mul(poly_mul(poly_shift(_D, i), poly_shift(g, i)), f)
    return DfElement.of(i + j, poly_sub(left, right))


def ddt_power(weyl: Weyl, j: int) -> WeylElement:
    """(d/dt)^j = t^(-j) [D]_j, returned in the power basis; j >= 1."""
    if j < 1:
        raise ValueError("ddt_power needs j >= 1")
    return weyl.monomial((-j,), (j,), basis="falling").to_power()


def t_ddt(weyl: Weyl, k: int) -> WeylElement:
    """t^k d/dt = t^(k-1) D."""
    return weyl.tD((k - 1,))


def _ddt_or_zero(weyl: Weyl, j: int) -> WeylElement:
    # the "treat undefined notions as zero" convention for (d/dt)^j, j <= 0
    return ddt_power(weyl, j) if j >= 1 else weyl.zero()


NAMED_IDENTITIES = ("L23-1", "L23-2", "L23-3", "CUBE")

# L23-3 is printed with unbalanced brackets; each reading inserts the missing
# closing bracket at a different place.
L233_READINGS = ("close-inner", "close-after-t5-term", "close-at-end")


def _falling_int(a: int, j: int) -> Fraction:
    out = Fraction(1)
    for m in range(j):
        out *= a - m
    return out


def verify_named_identity(weyl: Weyl, name: str, i: int = 1) -> VerificationReport:
    """Check one of the displayed operator identities exactly.

    L23-1 : -[i+1]_4 (d/dt)^(i-2) = 3[T2,[T2,X]] + 2(2i-1)[T3,X]
    L23-2 : 0 = [T2,[T2,[T2,X]]] + (i-1)(i-2)[T4,X] + 2(i-1)[T2,[T3,X]]
    L23-3 : [i+1]_6 (d/dt)^(i-4) = 10[T3,[T3,X] ... (every reading evaluated)
    CUBE  : [(d/dt)^2, [(d/dt)^2, t^2 d/dt]] = 8 (d/dt)^3

    where Tk = t^k d/dt and X = (d/dt)^i; undefined powers are zero.
    """
    if name not in NAMED_IDENTITIES:
        raise ValueError(f"unknown identity {name!r}; choose from {NAMED_IDENTITIES}")
    T = {k: t_ddt(weyl, k) for k in range(2, 6)}
    if name == "CUBE":
        d2 = ddt_power(weyl, 2)
        lhs = bracket(d2, bracket(d2, T[2]))
        rhs = ddt_power(weyl, 3).scale(8)
        res = lhs - rhs
        return VerificationReport("CUBE", res.is_zero(),
                                  None if res.is_zero() else format_element(res))
    if i < 1:
        raise ValueError("identity index i must be >= 1")
    X = ddt_power(weyl, i)
    if name == "L23-1":
        lhs = _ddt_or_zero(weyl, i - 2).scale(-_falling_int(i + 1, 4))
        rhs = (bracket(T[2], bracket(T[2], X)).scale(3)
               + bracket(T[3], X).scale(2 * (2 * i - 1)))
        res = rhs - lhs
        return VerificationReport(f"L23-1[i={i}]", res.is_zero(),
                                  None if res.is_zero() else format_element(res))
    if name == "L23-2":
        res = (bracket(T[2], bracket(T[2], bracket(T[2], X)))
               + bracket(T[4], X).scale((i - 1) * (i - 2))
               + bracket(T[2], bracket(T[3], X)).scale(2 * (i - 1)))
        return VerificationReport(f"L23-2[i={i}]", res.is_zero(),
                                  None if res.is_zero() else format_element(res))
    # L23-3: evaluate every syntactically plausible nesting and record which
    # of them balances; the display in the source is ambiguous.
    lhs = _ddt_or_zero(weyl, i - 4).scale(_falling_int(i + 1, 6))
    t5_term = bracket(T[5], X).scale(6 * (i - 4))
    t2_term = bracket(T[2], bracket(T[4], X)).scale(15)
    readings = {
        "close-inner":
            bracket(T[3], bracket(T[3], X)).scale(10) - t5_term - t2_term,
        "close-after-t5-term":
            bracket(T[3], bracket(T[3], X) - t5_term).scale(10) - t2_term,
        "close-at-end":
            bracket(T[3], bracket(T[3], X) - t5_term - t2_term).scale(10),
    }
    outcomes = {}
    residuals = {}
    for label, rhs in readings.items():
        res = rhs - lhs
        outcomes[label] = res.is_zero()
        if not res.is_zero():
            residuals[label] = format_element(res)
    passed = any(outcomes.values())
    zero_readings = sorted(k for k, ok in outcomes.items() if ok)
    return VerificationReport(
        f"L23-3[i={i}]", passed,
        None if passed else "; ".join(f"{k}: {v}" for k, v in sorted(residuals.items())),
        details={"zero_readings": zero_readings, "outcomes": outcomes})


# -- generation claim at desk scale ---------------------------------------


MonoKey = Tuple[Fraction, int]  # (t-degree, D-exponent)

Word = Union[str, Tuple[str, int, int]]  # generator name or ("br", gen_idx, raw_idx)


def _to_vec(x: WeylElement) -> Dict[MonoKey, Fraction]:
    return {(g[0], mu[0]): c.as_fraction() for (g, mu), c in x.terms.items()}


@dataclass
class _Row:
    pivot: MonoKey
    vec: Dict[MonoKey, Fraction]
    combo: Dict[int, Fraction]  # raw-element index -> coefficient


class GeneratedSubalgebra:
    """Bracket closure of a generator list inside a truncation box.

    The truncation keeps t-degrees in [deg_lo, deg_hi] and D-exponents in
    [1, d_cap]; bracket results with any monomial outside the box are
    discarded (never silently projected), so every recorded element genuinely
    lies in the generated subalgebra.  Closure uses left-normed brackets
    [g, x] with g a generator, which span the generated subalgebra.
    """

    def __init__(self, weyl: Weyl, generators: Sequence[Tuple[str, WeylElement]],
                 deg_lo: int = 0, deg_hi: int = 40, d_cap: int = 6):
        self.weyl = weyl
        self.generators = list(generators)
        self.deg_lo, self.deg_hi, self.d_cap = deg_lo, deg_hi, d_cap
        self.raw: List[Tuple[WeylElement, Word]] = []
        self._rows: Dict[MonoKey, _Row] = {}
        self.rounds = 0
        self._grow()

    # -- linear algebra ----------------------------------------------------

    def _reduce(self, vec: Dict[MonoKey, Fraction], combo: Dict[int, Fraction]):
        vec = dict(vec)
        combo = dict(combo)
        while vec:
            pivot = max(vec)
            row = self._rows.get(pivot)
            if row is None:
                return vec, combo, pivot
            c = vec[pivot]
            for k, v in row.vec.items():
                nv = vec.get(k, Fraction(0)) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in row.combo.items():
                nv = combo.get(k, Fraction(0)) - c * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return vec, combo, None

    def _in_box(self, vec: Dict[MonoKey, Fraction]) -> bool:
        return all(self.deg_lo <= k <= self.deg_hi and 1 <= m <= self.d_cap
                   for (k, m) in vec)

    def _try_add(self, x: WeylElement, word: Word) -> bool:
        if x.is_zero():
            return False
        vec = _to_vec(x)
        if not self._in_box(vec):
            return False
        idx = len(self.raw)
        red, combo, pivot = self._reduce(vec, {idx: Fraction(1)})
        if pivot is None:
            return False
        self.raw.append((x, word))
        c = red[pivot]
        self._rows[pivot] = _Row(pivot,
                                 {k: v / c for k, v in red.items()},
                                 {k: v / c for k, v in combo.items()})
        return True

    def _grow(self):
        frontier = []
        for name, g in self.generators:
            if self._try_add(g, name):
                frontier.append(len(self.raw) - 1)
        while frontier:
            self.rounds += 1
            nxt = []
            for idx in frontier:
                x = self.raw[idx][0]
                for gi, (_name, g) in enumerate(self.generators):
                    y = bracket(g, x)
                    if self._try_add(y, ("br", gi, idx)):
                        nxt.append(len(self.raw) - 1)
            frontier = nxt

    @property
    def dimension(self) -> int:
        return len(self._rows)

    # -- queries -----------------------------------------------------------

    def membership(self, target: WeylElement) -> Optional[List[Tuple[Fraction, int]]]:
        """A combination sum c_r * raw[r] equal to target, or None."""
        vec = _to_vec(target)
        if not self._in_box(vec):
            raise ValueError("target lies outside the truncation caps")
        red, combo, pivot = self._reduce(vec, {})
        if pivot is not None:
            return None
        # reduction expressed target - sum combo_r raw_r = 0
        return sorted(((-c, r) for r, c in combo.items()), key=lambda t: t[1])

    def word_text(self, word: Word) -> str:
        if isinstance(word, str):
            return word
        _, gi, idx = word
        return f"[{self.generators[gi][0]},{self.word_text(self.raw[idx][1])}]"

    def eval_word(self, word: Word) -> WeylElement:
        """Re-evaluate a bracket word from the generators alone."""
        if isinstance(word, str):
            for name, g in self.generators:
                if name == word:
                    return g
            raise KeyError(word)
        _, gi, idx = word
        return bracket(self.generators[gi][1], self.eval_word(self.raw[idx][1]))


def standard_generators(weyl: Weyl, i0: int, m0: int, d_cap: int = 6
                        ) -> List[Tuple[str, WeylElement]]:
    """t^(i0)D, t^(i0+1)D, t^(i0)D^2 plus the tail D f(D), deg f >= m0."""
    gens = [
        (f"t^{i0}D", weyl.tD((i0,))),
        (f"t^{i0 + 1}D", weyl.tD((i0 + 1,))),
        (f"t^{i0}D2", weyl.monomial((i0,), (2,))),
    ]
    for m in range(m0, d_cap):
        gens.append((f"D{m + 1}", weyl.monomial((0,), (m + 1,))))
    return gens


def generation_membership(weyl: Weyl, i0: int, m0: int, target: DfElement,
                          deg_hi: int = 40, d_cap: int = 6,
                          sub: Optional[GeneratedSubalgebra] = None
                          ) -> VerificationReport:
    """Certify target in the subalgebra generated per the one-variable claim.

    The returned report carries an explicit bracket-word witness whose
    re-evaluation equals the target (tests exercise this).
    """
    if sub is None:
        sub = GeneratedSubalgebra(weyl, standard_generators(weyl, i0, m0, d_cap),
                                  deg_lo=0, deg_hi=deg_hi, d_cap=d_cap)
    elt = target.to_weyl(weyl)
    name = f"generation[i0={i0},m0={m0},target=t^{target.degree}Df]"
    combo = sub.membership(elt)
    if combo is None:
        return VerificationReport(name, False, residual="target not reached within caps",
                                  details={"dimension": sub.dimension})
    witness = [(str(c), sub.word_text(sub.raw[r][1])) for c, r in combo]
    return VerificationReport(name, True, details={"witness": witness,
                                                   "combo": [(str(c), r) for c, r in combo],
                                                   "dimension": sub.dimension})
