"""Modules of the intermediate series: the weight families A_alpha and B_alpha.

Both have one basis vector y_g per lattice point g, the central element acts
as zero, and a monomial t^b D^mu acts by

    A_alpha : (t^b D^mu) y_g = (alpha + g)^mu y_(b+g)
    B_alpha : (t^b D^mu) y_g = (-1)^(|mu|+1) (alpha + b + g)^mu y_(b+g)

with alpha either rational or a formal parameter vector.  Windows are
explicit finite sets of lattice points; an action landing outside raises
rather than truncating, which would break the module axioms silently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .lattice import Lattice
from .report import VerificationReport
from .scalars import Ring, Scalar, rising
from .weyl import Weyl, WeylElement, bracket, mul

Coords = Tuple[int, ...]
ModuleVector = Dict[Coords, Scalar]

KIND_A = "A"
KIND_B = "B"


class WindowEscapeError(ValueError):
    """An action landed on a basis vector outside the module's window."""


@dataclass(frozen=True)
class IntermediateModule:
    kind: str
    alpha: Tuple[Scalar, ...]
    weyl: Weyl
    window: Optional[frozenset] = None  # coords tuples; None = unbounded

    def __post_init__(self):
        if self.kind not in (KIND_A, KIND_B):
            raise ValueError(f"kind must be A or B, got {self.kind!r}")
        if len(self.alpha) != self.weyl.lattice.rank and len(self.alpha) != self.weyl.n:
            raise ValueError("alpha has the wrong dimension")

    @property
    def lattice(self) -> Lattice:
        return self.weyl.lattice

    def alpha_numeric(self) -> Tuple[Fraction, ...]:
        return tuple(a.as_fraction() for a in self.alpha)

    def unbounded(self) -> "IntermediateModule":
        return IntermediateModule(self.kind, self.alpha, self.weyl, None)

    def basis_vector(self, coords: Sequence[int]) -> ModuleVector:
        coords = tuple(int(c) for c in coords)
        self._check_window(coords)
        return {coords: self.weyl.ring.one}

    def _check_window(self, coords: Coords):
        if self.window is not None and coords not in self.window:
            raise WindowEscapeError(f"basis index {coords} outside window")


def make_module(kind: str, alpha, weyl: Weyl, window=None) -> IntermediateModule:
    """alpha: sequence of rationals/Scalars, or the string "formal".

    "formal" requires the ring to provide symbols a1..an (or "alpha" when
    n = 1).
    """
    ring = weyl.ring
    n = weyl.n
    if alpha == "formal":
        if n == 1 and "alpha" in ring.symbols:
            avec = (ring.sym("alpha"),)
        else:
            avec = tuple(ring.sym(f"a{i + 1}") for i in range(n))
    else:
        if isinstance(alpha, (int, Fraction, Scalar)):
            alpha = [alpha]
        avec = tuple(ring.coerce(a) for a in alpha)
    win = None if window is None else frozenset(tuple(int(c) for c in w) for w in window)
    return IntermediateModule(kind, avec, weyl, win)


def box_window(lattice: Lattice, radius: int) -> frozenset:
    """All coordinate vectors with every |c_i| <= radius."""
    import itertools
    return frozenset(itertools.product(range(-radius, radius + 1), repeat=lattice.rank))


# -- the action ------------------------------------------------------------


def act(m: IntermediateModule, x: WeylElement, vec) -> ModuleVector:
    """Apply an algebra element to a module vector (or basis coords)."""
    if not isinstance(vec, dict):
        vec = m.basis_vector(vec)
    xp = x.to_power()  # central coordinate acts trivially and is dropped
    ring = m.weyl.ring
    lattice = m.lattice
    out: ModuleVector = {}
    for coords, vc in vec.items():
        g_amb = lattice.ambient(coords)
        for (b_amb, mu), c in xp.terms.items():
            if sum(mu) == 0:
                raise ValueError("|mu| = 0 monomials are not in the acting subalgebra")
            b_coords = lattice.membership(b_amb)
            if b_coords is None:
                raise ValueError(f"monomial exponent {b_amb} is not in the lattice")
            if m.kind == KIND_A:
                coeff = ring.one
                for ai, gi, mi in zip(m.alpha, g_amb, mu):
                    coeff = coeff * (ai + gi) ** mi
            else:
                coeff = ring.const((-1) ** (sum(mu) + 1))
                for ai, bi, gi, mi in zip(m.alpha, b_amb, g_amb, mu):
                    coeff = coeff * (ai + bi + gi) ** mi
            coeff = coeff * c * vc
            if coeff.is_zero():
                continue
            target = tuple(p + q for p, q in zip(coords, b_coords))
            m._check_window(target)
            out[target] = out.get(target, ring.zero) + coeff
    return {k: v for k, v in out.items() if not v.is_zero()}


def _vec_sub(a: ModuleVector, b: ModuleVector) -> ModuleVector:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        out[k] = -v if w is None else w - v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _vec_text(v: ModuleVector) -> str:
    if not v:
        return "0"
    return " + ".join(f"({v[k]})*y{list(k)}" for k in sorted(v))


def _random_monomial(weyl: Weyl, rng: random.Random, radius: int, max_mu: int) -> WeylElement:
    r = weyl.lattice.rank
    coords = tuple(rng.randint(-radius, radius) for _ in range(r))
    while True:
        mu = tuple(rng.randint(0, max_mu) for _ in range(weyl.n))
        if 1 <= sum(mu) <= max_mu:
            break
    return weyl.monomial(weyl.lattice.ambient(coords), mu)


# -- module-axiom checks ---------------------------------------------------


def lie_module_check(m: IntermediateModule, samples: int = 100, seed: int = 0,
                     radius: int = 3, max_mu: int = 3) -> VerificationReport:
    """Residual [x,y]v - (x(yv) - y(xv)) on random homogeneous x, y."""
    rng = random.Random(seed)
    mm = m.unbounded()
    failures = []
    for s in range(samples):
        x = _random_monomial(m.weyl, rng, radius, max_mu)
        y = _random_monomial(m.weyl, rng, radius, max_mu)
        gcoords = tuple(rng.randint(-radius, radius) for _ in range(m.lattice.rank))
        v = mm.basis_vector(gcoords)
        lhs = act(mm, bracket(x, y), v)
        rhs = _vec_sub(act(mm, x, act(mm, y, v)), act(mm, y, act(mm, x, v)))
        res = _vec_sub(lhs, rhs)
        if res:
            failures.append((s, _vec_text(res)))
    name = f"lie-module[{m.kind}]"
    return VerificationReport(name, not failures,
                              None if not failures else str(failures[:3]),
                              details={"samples": samples, "failures": len(failures)})


def assoc_module_check(m: IntermediateModule, samples: int = 100, seed: int = 0,
                       radius: int = 3, max_mu: int = 3) -> VerificationReport:
    """Residual (x*y)v - x(yv): zero for kind A, witnessed nonzero for kind B.

    When n = 1 the canonical pair x = y = tD acting on y_0 is always included,
    which exhibits the failure for B.
    """
    rng = random.Random(seed)
    mm = m.unbounded()
    cases = []
    if m.weyl.n == 1:
        td = m.weyl.tD((1,))
        cases.append((td, td, (0,) * m.lattice.rank))
    for _ in range(samples):
        cases.append((_random_monomial(m.weyl, rng, radius, max_mu),
                      _random_monomial(m.weyl, rng, radius, max_mu),
                      tuple(rng.randint(-radius, radius) for _ in range(m.lattice.rank))))
    witnesses = []
    for x, y, gcoords in cases:
        v = mm.basis_vector(gcoords)
        lhs = act(mm, mul(x, y), v)
        rhs = act(mm, x, act(mm, y, v))
        res = _vec_sub(lhs, rhs)
        if res:
            witnesses.append({"x": repr(x), "y": repr(y), "v": f"y{list(gcoords)}",
                              "product_action": _vec_text(lhs),
                              "staged_action": _vec_text(rhs),
                              "residual": _vec_text(res)})
    if m.kind == KIND_A:
        passed = not witnesses
        residual = None if passed else witnesses[0]["residual"]
    else:
        passed = bool(witnesses)
        residual = None if passed else "no associativity failure found for kind B"
    return VerificationReport(f"assoc-module[{m.kind}]", passed, residual,
                              details={"cases": len(cases),
                                       "witnesses": witnesses[:3]})


# -- graded submodule scanning --------------------------------------------


def _reaches(m: IntermediateModule, src: Coords, dst: Coords) -> bool:
    """Can some monomial action carry y_src onto y_dst with nonzero coefficient?"""
    alpha = m.alpha_numeric()
    lattice = m.lattice
    if m.kind == KIND_A:
        point = lattice.ambient(src)
    else:
        point = lattice.ambient(dst)
    # (alpha + point)^mu is nonzero for some |mu| >= 1 iff a component survives
    return any(a + p != 0 for a, p in zip(alpha, point))


def submodule_scan(m: IntermediateModule, window: Optional[Sequence[Coords]] = None
                   ) -> List[List[Coords]]:
    """Proper graded invariant subspaces within the window.

    Weight spaces are one-dimensional, so a graded invariant subspace is a
    subset of window indices closed under reachability; the scan returns the
    distinct proper closures of singletons, which generate all of them.
    """
    if any(not a.is_rational() for a in m.alpha):
        raise ValueError("submodule_scan needs a numeric alpha")
    if window is None:
        if m.window is None:
            raise ValueError("no window given")
        window = sorted(m.window)
    window = [tuple(w) for w in window]
    wset = set(window)
    reach: Dict[Coords, List[Coords]] = {}
    for src in window:
        reach[src] = [dst for dst in window if dst != src and _reaches(m, src, dst)]
    found = []
    for start in window:
        closure = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt in reach[cur]:
                if nxt not in closure:
                    closure.add(nxt)
                    stack.append(nxt)
        if closure != wset:
            closed = sorted(closure)
            if closed not in found:
                found.append(closed)
    # keep only maximal-information distinct subspaces, sorted for determinism
    found.sort(key=lambda s: (len(s), s))
    return found


def highest_weight_scan(m: IntermediateModule, window: Optional[Sequence[Coords]] = None
                        ) -> Optional[Dict]:
    """A basis vector killed by all positive-degree actions inside the window.

    Positivity is lexicographic on coordinates.  Weight spaces being
    one-dimensional and the action graded, any annihilated vector is
    supported on annihilated basis vectors, so scanning y_g suffices.
    """
    if any(not a.is_rational() for a in m.alpha):
        raise ValueError("highest_weight_scan needs a numeric alpha")
    if window is None:
        if m.window is None:
            raise ValueError("no window given")
        window = sorted(m.window)
    window = [tuple(w) for w in window]
    zero = (0,) * m.lattice.rank
    for g in sorted(window):
        killed = True
        hit_any = False
        for tgt in window:
            diff = tuple(a - b for a, b in zip(tgt, g))
            if diff <= zero:
                continue
            hit_any = True
            if _reaches(m, g, tgt):
                killed = False
                break
        if not killed:
            continue
        # caveat: is it also killed downward (a trivial vector)?
        trivial = all(not _reaches(m, g, tgt) for tgt in window
                      if tuple(a - b for a, b in zip(tgt, g)) < zero)
        return {"coords": g, "saw_positive_actions": hit_any,
                "also_lowest_weight": trivial}
    return None


# -- normalized bases and P/Q data ----------------------------------------


@dataclass
class PQData:
    """Scalars P_{i,k} and Q_i of the normalized one-variable basis.

    The basis is rescaled so (t^(-1)D) Y_k = Y_(k-1) across the range; then
    (t^i D) Y_k = P_{i,k} Y_(k+i) and (d/dt)^i Y_k = Q_i Y_(k-i).
    """

    kind: str
    alpha: Scalar
    k_range: Tuple[int, ...]
    p: Dict[Tuple[int, int], Scalar]  # (i, k) -> P_{i,k}
    q: Dict[int, Scalar]              # i -> Q_i (k-independent, checked)
    p1_const: Scalar
    p2_const: Scalar


class _RatFunc:
    """num/den over the scalar ring; normalized only on demand by exact_div."""

    __slots__ = ("num", "den")

    def __init__(self, num: Scalar, den: Scalar):
        if den.is_zero():
            raise ZeroDivisionError("vanishing rescale denominator")
        self.num, self.den = num, den

    def mul_scalar(self, s: Scalar) -> "_RatFunc":
        return _RatFunc(self.num * s, self.den)

    def div_scalar(self, s: Scalar) -> "_RatFunc":
        return _RatFunc(self.num, self.den * s)

    def ratio_to(self, other: "_RatFunc") -> Scalar:
        """(self / other) as an exact polynomial, or ValueError."""
        return (self.num * other.den).exact_div(self.den * other.num)


def _raw_poly_action(m: IntermediateModule, beta: int, g_coeffs: Dict[int, Fraction],
                     k: int) -> Scalar:
    """Coefficient of t^beta g(D) acting on y_k (scalar, before rescaling).

    A: g(alpha + k);  B: -g(-(alpha + beta + k)).
    """
    ring = m.weyl.ring
    a = m.alpha[0]
    if m.kind == KIND_A:
        x = a + k
        sign = 1
    else:
        x = -(a + beta + k)
        sign = -1
    out = ring.zero
    for e, c in g_coeffs.items():
        out = out + ring.const(c) * x ** e
    return out * sign


def _falling_poly(j: int) -> Dict[int, Fraction]:
    """Coefficients of D(D-1)...(D-j+1) as a polynomial in D."""
    from .weyl import _falling_coeffs
    return {e: Fraction(c) for e, c in enumerate(_falling_coeffs(j)) if c}


def normalize_ddt_basis(m: IntermediateModule, k_range: Sequence[int]) -> PQData:
    """Rescale the weight basis so (t^(-1)D) Y_k = Y_(k-1), then read off
    P_{i,k} for -1 <= i <= 5 and Q_i for 1 <= i <= 4.

    Needs rank one (n = 1, Gamma = Z); alpha may be formal.  The scale is
    anchored to 1 at the smallest k in range with a nonzero denominator.
    """
    if m.weyl.n != 1 or m.lattice.rank != 1:
        raise ValueError("normalize_ddt_basis needs the rank-one case")
    ks = sorted(int(k) for k in k_range)
    ring = m.weyl.ring
    one = ring.one
    lo, hi = ks[0] - 6, ks[-1] + 6

    def r_down(k: int) -> Scalar:
        # coefficient of (t^-1 D) on y_k
        return _raw_poly_action(m, -1, {1: Fraction(1)}, k)

    c: Dict[int, _RatFunc] = {lo: _RatFunc(one, one)}
    for k in range(lo + 1, hi + 1):
        # (t^-1 D) Y_k = Y_(k-1)  =>  c_(k-1) = c_k * r_down(k)
        r = r_down(k)
        if r.is_zero():
            raise ZeroDivisionError(f"vanishing rescale denominator at k = {k}")
        c[k] = c[k - 1].div_scalar(r)

    p: Dict[Tuple[int, int], Scalar] = {}
    for i in range(-1, 6):
        for k in ks:
            raw = _raw_poly_action(m, i, {1: Fraction(1)}, k)
            p[(i, k)] = c[k].mul_scalar(raw).ratio_to(c[k + i])

    q: Dict[int, Scalar] = {}
    for i in range(1, 6):
        vals = []
        for k in ks:
            raw = _raw_poly_action(m, -i, _falling_poly(i), k)
            vals.append(c[k].mul_scalar(raw).ratio_to(c[k - i]))
        if any(v != vals[0] for v in vals[1:]):
            raise AssertionError(f"Q_{i} depends on k: {[str(v) for v in vals]}")
        q[i] = vals[0]
    if q[1] != one:
        raise AssertionError(f"normalization broken: Q_1 = {q[1]}")

    a = m.alpha[0]
    p1_vals = [p[(1, k)] - rising(a + k, 2) for k in ks]
    p2_vals = [p[(2, k)] - rising(a + k, 3) - 3 * (a + k) * p1_vals[0] for k in ks]
    if any(v != p1_vals[0] for v in p1_vals) or any(v != p2_vals[0] for v in p2_vals):
        raise AssertionError("P_1/P_2 constants depend on k")
    return PQData(m.kind, a, tuple(ks), p, q, p1_vals[0], p2_vals[0])


def sigma_eval(m: IntermediateModule, k: int = 0) -> Scalar:
    """The scalar of (d/dt)^2 composed with (t^3 d/dt) on the weight space V_k.

    The intermediate rescale cancels, so no normalization is needed; the
    result equals rising(k+alpha, 3) * Q_2 for both kinds.
    """
    if m.weyl.n != 1 or m.lattice.rank != 1:
        raise ValueError("sigma_eval needs the rank-one case")
    r1 = _raw_poly_action(m, 2, {1: Fraction(1)}, k)          # t^3 d/dt = t^2 D
    r2 = _raw_poly_action(m, -2, _falling_poly(2), k + 2)     # (d/dt)^2 = t^-2 [D]_2
    return r1 * r2
