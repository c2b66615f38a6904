"""N-functions and complementary pairs.

An N-function is a convex even Phi: R -> [0, inf) with Phi(0) = 0,
Phi(x)/x -> 0 as x -> 0+ and Phi(x)/x -> inf as x -> inf; convexity plus
Phi(0) = 0 makes it strictly increasing on [0, inf), hence invertible.
The complementary function is the convex conjugate restricted to the
nonnegative axis,

    Psi(y) = sup{ x*|y| - Phi(x) : x >= 0 },

computed here by solving phi(x) = y on the derivative when one is
available (the supremum of a concave objective), and by golden-section
maximization otherwise. Everything is evaluated on demand; per-function
memo caches are lock-protected so values are safe to share across
threads.

Catalog (classical examples):

    power(p):          Phi(x) = x^p / p,                complement y^q / q, 1/p + 1/q = 1
    entropy():         Phi(x) = (1+x) log(1+x) - x,     complement e^y - y - 1
    cosh_minus_one():  Phi(x) = cosh(x) - 1,            complement y asinh(y) - sqrt(1+y^2) + 1

plus expression-free tabulated functions where the derivative column is
authoritative and the value column is validated against its integral.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import CapExceededError, InvalidNFunctionError
from .numerics import bisect_increasing, expand_upward, geometric_grid, golden_max, solve_increasing

# Values above this are treated as numeric overflow when locating domain caps.
OVERFLOW_GUARD = 1e300

ROOT_VALUE_TOL = 1e-12


def _domain_cap(evaluate: Callable[[float], float]) -> float:
    """Largest x (up to float range) with evaluate(x) <= OVERFLOW_GUARD."""
    x = 1.0
    while x < 1e307:
        nxt = x * 2.0
        v = evaluate(nxt)
        if not math.isfinite(v) or v > OVERFLOW_GUARD:
            break
        x = nxt
    else:
        return x
    lo, hi = x, x * 2.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        v = evaluate(mid)
        if math.isfinite(v) and v <= OVERFLOW_GUARD:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class NFunction:
    """A Young function of N-type, entered through (eval, deriv) closures.

    ``evaluate`` and ``derivative`` act on the nonnegative axis; evenness
    is structural (callers go through ``__call__``, which applies abs).
    ``derivative`` may be None, in which case conjugation falls back to
    bracketed golden-section maximization. ``derivative_inverse`` is an
    optional closed-form inverse of the derivative; a monotone
    root-finder substitutes when absent.
    """

    kind: str
    label: str
    evaluate: Callable[[float], float]
    derivative: Callable[[float], float] | None
    domain_cap: float
    params: Mapping[str, float] = field(default_factory=dict)
    derivative_inverse: Callable[[float], float] | None = None

    def __call__(self, x: float) -> float:
        a = abs(x)
        if a > self.domain_cap:
            raise CapExceededError(
                f"{self.label}: |x| = {a:g} exceeds domain cap {self.domain_cap:g}")
        return self.evaluate(a)

    def deriv(self, x: float) -> float:
        if self.derivative is None:
            raise InvalidNFunctionError(f"{self.label}: no derivative available")
        a = abs(x)
        if a > self.domain_cap:
            raise CapExceededError(
                f"{self.label}: |x| = {a:g} exceeds domain cap {self.domain_cap:g}")
        return self.derivative(a)

    def deriv_inverse(self, y: float) -> float:
        """Solve deriv(x) = y for x >= 0 (y within the derivative's range)."""
        if y < 0:
            raise ValueError("derivative inverse requires y >= 0")
        if self.derivative_inverse is not None:
            return self.derivative_inverse(y)
        if self.derivative is None:
            raise InvalidNFunctionError(f"{self.label}: no derivative available")
        if y == 0.0:
            return 0.0
        if self.derivative(self.domain_cap) < y:
            raise CapExceededError(
                f"{self.label}: derivative stays below {y:g} up to the domain cap")
        res = solve_increasing(self.derivative, y, start=min(1.0, self.domain_cap),
                               value_tol=ROOT_VALUE_TOL, prefer="best")
        return res.x

    def inverse(self, t: float) -> float:
        """Phi^{-1}(t) by doubling bracket plus bisection; |Phi(x) - t| <= 1e-12 (1+t)."""
        if t < 0:
            raise ValueError(f"{self.label}: inverse requires t >= 0, got {t:g}")
        if t == 0.0:
            return 0.0
        if t > self.evaluate(self.domain_cap):
            raise CapExceededError(
                f"{self.label}: t = {t:g} above Phi(domain cap) = "
                f"{self.evaluate(self.domain_cap):g}")
        # Run to interval collapse: downstream ratio checks need far better
        # than the contractual 1e-12 (1+t) value residual at small t.
        res = solve_increasing(self.evaluate, t, start=min(1.0, self.domain_cap),
                               value_tol=0.0, prefer="best")
        return res.x

    def deriv_range_cap(self) -> float:
        """Largest slope value reachable within the domain cap."""
        if self.derivative is not None:
            return self.derivative(self.domain_cap)
        # Secant slope lower-bounds the right derivative at the cap.
        return self.evaluate(self.domain_cap) / self.domain_cap


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def power(p: float) -> NFunction:
    """Phi(x) = x^p / p for 1 < p < inf."""
    if not p > 1.0:
        raise InvalidNFunctionError(f"power kind requires p > 1, got {p}")

    log_guard = math.log(OVERFLOW_GUARD)

    def ev(x: float) -> float:
        if x == 0.0:
            return 0.0
        if p * math.log(x) > log_guard:
            return math.inf
        return x ** p / p

    def dv(x: float) -> float:
        if x == 0.0:
            return 0.0
        if (p - 1.0) * math.log(x) > log_guard:
            return math.inf
        return x ** (p - 1.0)

    def dv_inv(y: float) -> float:
        return y ** (1.0 / (p - 1.0)) if y > 0.0 else 0.0

    cap = math.exp((log_guard + math.log(p)) / p)
    return NFunction(kind="power", label=f"power(p={p:g})", evaluate=ev, derivative=dv,
                     domain_cap=cap, params={"p": p}, derivative_inverse=dv_inv)


def entropy() -> NFunction:
    """Phi(x) = (1+x) log(1+x) - x."""

    def ev(x: float) -> float:
        if x > 1e297:
            return math.inf
        return (1.0 + x) * math.log1p(x) - x

    def dv(x: float) -> float:
        return math.log1p(x)

    def dv_inv(y: float) -> float:
        return math.expm1(y)

    cap = _domain_cap(ev)
    return NFunction(kind="entropy", label="entropy", evaluate=ev, derivative=dv,
                     domain_cap=cap, derivative_inverse=dv_inv)


def entropy_dual() -> NFunction:
    """Phi(y) = e^y - y - 1, the closed-form complement of entropy()."""

    def ev(y: float) -> float:
        if y > 709.0:
            return math.inf
        return math.expm1(y) - y

    def dv(y: float) -> float:
        if y > 709.0:
            return math.inf
        return math.expm1(y)

    def dv_inv(t: float) -> float:
        return math.log1p(t)

    cap = _domain_cap(ev)
    return NFunction(kind="entropy_dual", label="exp-minus-linear", evaluate=ev,
                     derivative=dv, domain_cap=cap, derivative_inverse=dv_inv)


def cosh_minus_one() -> NFunction:
    """Phi(x) = cosh(x) - 1."""

    def ev(x: float) -> float:
        if x > 710.0:
            return math.inf
        return math.cosh(x) - 1.0

    def dv(x: float) -> float:
        if x > 710.0:
            return math.inf
        return math.sinh(x)

    def dv_inv(y: float) -> float:
        return math.asinh(y)

    cap = _domain_cap(ev)
    return NFunction(kind="cosh", label="cosh-1", evaluate=ev, derivative=dv,
                     domain_cap=cap, derivative_inverse=dv_inv)


def cosh_dual() -> NFunction:
    """Phi(y) = y asinh(y) - sqrt(1+y^2) + 1, the closed-form complement of cosh-1."""

    def ev(y: float) -> float:
        if y > 1e150:
            return math.inf
        return y * math.asinh(y) - math.hypot(1.0, y) + 1.0

    def dv(y: float) -> float:
        return math.asinh(y)

    def dv_inv(t: float) -> float:
        return math.sinh(t) if t <= 710.0 else math.inf

    cap = _domain_cap(ev)
    return NFunction(kind="cosh_dual", label="asinh-integral", evaluate=ev,
                     derivative=dv, domain_cap=cap, derivative_inverse=dv_inv)


def from_table(rows: Sequence[Sequence[float]]) -> NFunction:
    """Expression-free N-function from (x, Phi(x), phi(x)) triples.

    The derivative column is authoritative: evaluation integrates its
    piecewise-linear interpolant exactly, which keeps (eval, deriv)
    consistent and convex by construction. The Phi column is only
    validated against that integral; a disagreement rejects the table.
    The last abscissa becomes the domain cap.
    """
    if len(rows) < 3:
        raise InvalidNFunctionError("table needs at least 3 rows")
    xs = [float(r[0]) for r in rows]
    phis = [float(r[1]) for r in rows]
    slopes = [float(r[2]) for r in rows]
    if xs[0] != 0.0 or phis[0] != 0.0 or slopes[0] != 0.0:
        raise InvalidNFunctionError("table must start with the row (0, 0, 0)")
    for i in range(1, len(xs)):
        if xs[i] <= xs[i - 1]:
            raise InvalidNFunctionError("table abscissae must be strictly increasing")
        if slopes[i] < slopes[i - 1]:
            raise InvalidNFunctionError("derivative column must be nondecreasing (convexity)")
        if slopes[i] <= 0.0:
            raise InvalidNFunctionError("derivative must be positive for x > 0 (strict growth)")
    cum = [0.0]
    for i in range(1, len(xs)):
        cum.append(cum[-1] + 0.5 * (slopes[i - 1] + slopes[i]) * (xs[i] - xs[i - 1]))
        if abs(cum[i] - phis[i]) > 1e-6 * (1.0 + abs(phis[i])):
            raise InvalidNFunctionError(
                f"table row {i}: value column {phis[i]:g} inconsistent with the "
                f"integrated derivative {cum[i]:g}")

    def dv(x: float) -> float:
        j = bisect_right(xs, x) - 1
        if j >= len(xs) - 1:
            return slopes[-1]
        t = (x - xs[j]) / (xs[j + 1] - xs[j])
        return slopes[j] + t * (slopes[j + 1] - slopes[j])

    def ev(x: float) -> float:
        j = bisect_right(xs, x) - 1
        if j >= len(xs) - 1:
            return cum[-1] + slopes[-1] * (x - xs[-1])
        return cum[j] + 0.5 * (slopes[j] + dv(x)) * (x - xs[j])

    return NFunction(kind="custom", label="tabulated", evaluate=ev, derivative=dv,
                     domain_cap=xs[-1])


# ---------------------------------------------------------------------------
# conjugation
# ---------------------------------------------------------------------------

def conjugate_value(phi: NFunction, y: float) -> tuple[float, bool]:
    """(sup_{x in [0, cap]} x|y| - Phi(x), truncated?).

    ``truncated`` is True when |y| is beyond the derivative's range within
    the domain cap, so the reported supremum is cap-limited.
    """
    a = abs(y)
    if a == 0.0:
        return 0.0, False
    if phi.derivative is not None:
        if phi.derivative(phi.domain_cap) < a:
            x = phi.domain_cap
            return x * a - phi.evaluate(x), True
        x = phi.deriv_inverse(a)
        return x * a - phi.evaluate(x), False
    # No derivative: expand until the concave objective starts decreasing.
    obj = lambda x: x * a - phi.evaluate(x)
    hi = 1.0
    while hi < phi.domain_cap and obj(hi * 2.0) >= obj(hi):
        hi *= 2.0
    if hi >= phi.domain_cap:
        x = phi.domain_cap
        return obj(x), True
    res = golden_max(obj, 0.0, min(hi * 2.0, phi.domain_cap), rel_tol=1e-14)
    if res.value < 0.0:
        raise InvalidNFunctionError(
            f"{phi.label}: conjugate objective went negative at its maximum; "
            "the function is not convex with Phi(0) = 0")
    return res.value, False


def conjugate(phi: NFunction, grid: Sequence[float] | None = None) -> NFunction:
    """Numeric complementary N-function of phi.

    Values are computed on demand and memoized (thread-safe); the
    optional ``grid`` of positive ordinates is evaluated eagerly, which
    also screens phi for convexity (the conjugate of any function is
    convex, so non-convexity shows up as a failed Young check later, and
    directly here as a decreasing increment pattern on the grid).
    """
    memo: dict[float, float] = {}
    lock = threading.Lock()

    def ev(y: float) -> float:
        with lock:
            hit = memo.get(y)
        if hit is not None:
            return hit
        value, truncated = conjugate_value(phi, y)
        if truncated:
            raise CapExceededError(
                f"conjugate of {phi.label}: y = {y:g} beyond the derivative range; "
                "use conjugate_value for the cap-limited answer")
        with lock:
            memo[y] = value
        return value

    dv = None if phi.derivative is None else (lambda y: phi.deriv_inverse(y))
    dv_inv = None if phi.derivative is None else (lambda x: phi.derivative(x))
    cap = phi.deriv_range_cap()
    psi = NFunction(kind="conjugate", label=f"conjugate({phi.label})", evaluate=ev,
                    derivative=dv, domain_cap=cap, derivative_inverse=dv_inv)
    if grid is not None:
        values = [psi.evaluate(abs(y)) for y in grid]
        finite = [v for v in values if math.isfinite(v)]
        for a, b in zip(finite, finite[1:]):
            if b < a - 1e-12 * (1.0 + abs(a)):
                raise InvalidNFunctionError(
                    f"conjugate of {phi.label} decreased along the grid; "
                    "the source function violates convex N-type axioms")
    return psi


@dataclass(frozen=True)
class ComplementaryPair:
    """A Young pair (Phi, Psi) with Psi the complement of Phi."""

    phi: NFunction
    psi: NFunction
    construction: str  # "closed-form" | "numeric"

    def swap(self) -> "ComplementaryPair":
        return ComplementaryPair(phi=self.psi, psi=self.phi, construction=self.construction)


def numeric_pair(phi: NFunction, grid: Sequence[float] | None = None) -> ComplementaryPair:
    return ComplementaryPair(phi=phi, psi=conjugate(phi, grid), construction="numeric")


def pair_power(p: float) -> ComplementaryPair:
    q = p / (p - 1.0)
    return ComplementaryPair(phi=power(p), psi=power(q), construction="closed-form")


def pair_entropy() -> ComplementaryPair:
    return ComplementaryPair(phi=entropy(), psi=entropy_dual(), construction="closed-form")


def pair_cosh() -> ComplementaryPair:
    return ComplementaryPair(phi=cosh_minus_one(), psi=cosh_dual(), construction="closed-form")


#: The four pairs exercised by the default battery.
CATALOG_PAIR_NAMES = ("power-2", "power-3", "entropy", "cosh")


def pair_from_name(name: str) -> ComplementaryPair:
    """Parse "power-<p>", "entropy" or "cosh" into a catalog pair."""
    if name == "entropy":
        return pair_entropy()
    if name == "cosh":
        return pair_cosh()
    if name.startswith("power-"):
        try:
            p = float(name.split("-", 1)[1])
        except ValueError as exc:
            raise InvalidNFunctionError(f"bad power pair name {name!r}") from exc
        return pair_power(p)
    raise InvalidNFunctionError(f"unknown catalog pair {name!r}")


# ---------------------------------------------------------------------------
# inequality checks
# ---------------------------------------------------------------------------

def young_gap(pair: ComplementaryPair, x: float, y: float) -> float:
    """Phi(|x|) + Psi(|y|) - |x||y|; nonnegative up to float slack, and ~0
    when |y| equals the derivative of Phi at |x|."""
    return pair.phi(x) + pair.psi(y) - abs(x) * abs(y)


def inverse_product_ratio(pair: ComplementaryPair, t: float) -> float:
    """Phi^{-1}(t) Psi^{-1}(t) / t; always in (1, 2] for a true pair."""
    if not t > 0.0:
        raise ValueError(f"inverse product ratio requires t > 0, got {t:g}")
    return pair.phi.inverse(t) * pair.psi.inverse(t) / t


def default_grid(phi: NFunction) -> list[float]:
    """Geometric sample of [1e-6, 1e6] clipped to the domain cap."""
    hi = min(1e6, phi.domain_cap)
    # exp/log round-tripping can overshoot the cap by one ulp
    return [min(x, hi) for x in geometric_grid(1e-6, hi, 25)]


def validate_nfunction(phi: NFunction, *, convexity_tol: float = 1e-12) -> None:
    """Desk-scale check of the N-function axioms on a geometric grid.

    Raises InvalidNFunctionError naming the first failed axiom. The limit
    conditions are checked structurally: the ratio Phi(x)/x must decrease
    decade by decade toward 0 and increase decade by decade toward the cap.
    """
    if phi(0.0) != 0.0:
        raise InvalidNFunctionError(f"{phi.label}: Phi(0) = {phi(0.0):g} != 0")
    grid = default_grid(phi)
    vals = [phi(x) for x in grid]
    for (a, fa), (b, fb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if not fa < fb:
            raise InvalidNFunctionError(
                f"{phi.label}: not strictly increasing between {a:g} and {b:g}")
        mid = phi(0.5 * (a + b))
        if mid > 0.5 * (fa + fb) + convexity_tol * (1.0 + fb):
            raise InvalidNFunctionError(
                f"{phi.label}: midpoint convexity fails between {a:g} and {b:g}")
    ratios = [v / x for x, v in zip(grid, vals)]
    lower = [r for x, r in zip(grid, ratios) if x <= 1.0]
    upper = [r for x, r in zip(grid, ratios) if x >= 1.0]
    if len(lower) >= 2 and not all(a < b for a, b in zip(lower, lower[1:])):
        raise InvalidNFunctionError(f"{phi.label}: Phi(x)/x fails to decay toward 0")
    if len(upper) >= 2 and not all(a < b for a, b in zip(upper, upper[1:])):
        raise InvalidNFunctionError(f"{phi.label}: Phi(x)/x fails to grow toward the cap")


def validate_pair(pair: ComplementaryPair, *, young_tol: float = 1e-9,
                  biconjugacy_rtol: float = 1e-6) -> None:
    """Young inequality on a grid square plus biconjugacy against phi."""
    validate_nfunction(pair.phi)
    validate_nfunction(pair.psi)
    xs = geometric_grid(1e-3, min(1e2, pair.phi.domain_cap), 9)
    ys = geometric_grid(1e-3, min(1e2, pair.psi.domain_cap), 9)
    for x in xs:
        for y in ys:
            gap = young_gap(pair, x, y)
            if gap < -young_tol * (1.0 + pair.phi(x) + pair.psi(y)):
                raise InvalidNFunctionError(
                    f"({pair.phi.label}, {pair.psi.label}): Young gap {gap:g} "
                    f"at ({x:g}, {y:g})")
    again = conjugate(pair.psi)
    for x in geometric_grid(1e-2, min(1e2, pair.phi.domain_cap), 9):
        want = pair.phi(x)
        got = again(x)
        if abs(got - want) > biconjugacy_rtol * (1.0 + abs(want)):
            raise InvalidNFunctionError(
                f"({pair.phi.label}, {pair.psi.label}): biconjugacy off at x = {x:g}: "
                f"{got:g} vs {want:g}")
