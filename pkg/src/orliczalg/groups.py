"""Measured discrete groups and finitely supported functions on them.

Two carrier families are supported, matching where the constructions
live at desk scale:

* finite groups (cyclic, direct products, explicit tables) with the
  normalized Haar weight 1/|G| stored as an exact Fraction, and
* a symmetric window [-W, W] of the integers with counting measure,
  standing in for the noncompact group Z. Operations whose true result
  depends on mass outside the window mark their output ``truncated``
  instead of failing, and set arithmetic that feeds measure comparisons
  (Leptin search) is done in unbounded integers so the counts are exact.

Only unimodular carriers arise here (finite groups and abelian discrete
groups); weights are uniform, so left invariance of the measure is
structural.

The function ``reflect`` is the check involution g(x) -> g(x^{-1});
``convolve`` computes (f*g)(x) = sum_y f(y) g(y^{-1} x) weight(y) with a
deterministic summation order (carrier order) for reproducible floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InfeasibleWindowError, ScopeError, SpecFormatError, WindowExitError

Element = object


class GroupSpace:
    """Base carrier: ordered elements, group law, uniform Haar weight."""

    def __init__(self, name: str, elements: Sequence[Element], identity: Element,
                 weight: Fraction, window_radius: int | None = None):
        self.name = name
        self.elements = tuple(elements)
        self.identity = identity
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise SpecFormatError(f"{name}: duplicate carrier elements")
        if identity not in self._index:
            raise SpecFormatError(f"{name}: identity not in carrier")
        if weight <= 0:
            raise SpecFormatError(f"{name}: weights must be positive")
        self._weight = weight
        self._weight_float = float(weight)
        self.window_radius = window_radius
        self._abelian: bool | None = None

    # -- carrier ------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def is_window(self) -> bool:
        return self.window_radius is not None

    def contains(self, x: Element) -> bool:
        return x in self._index

    def index(self, x: Element) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise SpecFormatError(f"{self.name}: {x!r} not in carrier") from None

    def weight(self, x: Element) -> Fraction:
        return self._weight

    def weight_float(self, x: Element) -> float:
        return self._weight_float

    def total_mass(self) -> Fraction:
        return self._weight * self.size

    # -- group law ----------------------------------------------------------

    def try_mul(self, a: Element, b: Element) -> Element | None:
        """Product, or None when it exits an integer window."""
        raise NotImplementedError

    def mul(self, a: Element, b: Element) -> Element:
        out = self.try_mul(a, b)
        if out is None:
            raise WindowExitError(
                f"{self.name}: product {a!r}*{b!r} exits the window")
        return out

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    # -- structure ----------------------------------------------------------

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = self.find_noncommuting_pair() is None
        return self._abelian

    def find_noncommuting_pair(self) -> tuple[Element, Element] | None:
        for a in self.elements:
            for b in self.elements:
                if self.try_mul(a, b) != self.try_mul(b, a):
                    return (a, b)
        return None

    def validate(self, *, sample_limit: int = 64, seed: int = 0) -> None:
        """Group laws: exhaustive for small carriers, seeded sample beyond.

        On windows, triples whose intermediate products exit are skipped
        (the law holds wherever both parenthesizations are defined).
        """
        e = self.identity
        for x in self.elements:
            if self.try_mul(e, x) != x or self.try_mul(x, e) != x:
                raise ScopeError(f"{self.name}: identity law fails at {x!r}")
            xi = self.inv(x)
            if not self.contains(xi):
                raise ScopeError(f"{self.name}: inverse of {x!r} not in carrier")
            if self.try_mul(xi, x) != e or self.try_mul(x, xi) != e:
                raise ScopeError(f"{self.name}: inverse law fails at {x!r}")
        if self.size <= sample_limit:
            triples: Iterable[tuple[Element, Element, Element]] = itertools.product(
                self.elements, repeat=3)
        else:
            rng = Random(seed)
            triples = (tuple(rng.choice(self.elements) for _ in range(3))
                       for _ in range(512))
        for a, b, c in triples:
            ab = self.try_mul(a, b)
            bc = self.try_mul(b, c)
            if ab is None or bc is None:
                continue
            left = self.try_mul(ab, c)
            right = self.try_mul(a, bc)
            if left is not None and right is not None and left != right:
                raise ScopeError(f"{self.name}: associativity fails at ({a!r},{b!r},{c!r})")

    def require_finite(self, what: str) -> None:
        if self.is_window:
            raise ScopeError(f"{what} needs a finite group; {self.name} is a window "
                             "surrogate for a noncompact group")

    def require_normalized(self, what: str) -> None:
        self.require_finite(what)
        if self.total_mass() != 1:
            raise ScopeError(f"{what} needs normalized Haar measure on {self.name}")

    def __repr__(self) -> str:
        return f"<GroupSpace {self.name} |G|={self.size}>"


class CyclicGroup(GroupSpace):
    def __init__(self, n: int):
        if n <= 0:
            raise SpecFormatError(f"cyclic order must be positive, got {n}")
        super().__init__(f"Z{n}", range(n), 0, Fraction(1, n))
        self.n = n
        self._abelian = True

    def try_mul(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return (-a) % self.n


class ProductGroup(GroupSpace):
    """Direct product of finite groups; elements are tuples."""

    def __init__(self, factors: Sequence[GroupSpace]):
        if not factors:
            raise SpecFormatError("product needs at least one factor")
        for f in factors:
            if f.is_window:
                raise ScopeError("window factors in products are out of scope")
        self.factors = tuple(factors)
        elements = [tuple(xs) for xs in itertools.product(*(f.elements for f in factors))]
        identity = tuple(f.identity for f in factors)
        n = len(elements)
        super().__init__("x".join(f.name for f in factors), elements, identity, Fraction(1, n))
        if all(f._abelian for f in factors):
            self._abelian = True

    def try_mul(self, a, b):
        return tuple(f.try_mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        return tuple(f.inv(x) for f, x in zip(self.factors, a))


class TableGroup(GroupSpace):
    """Finite group given by an explicit multiplication table over labels."""

    def __init__(self, name: str, elements: Sequence[Element],
                 mul_table: Sequence[Sequence[int]], identity: Element,
                 inv_table: Sequence[int] | None = None):
        n = len(elements)
        if len(mul_table) != n or any(len(row) != n for row in mul_table):
            raise SpecFormatError(f"{name}: mul table must be {n}x{n}")
        for row in mul_table:
            for v in row:
                if not (0 <= int(v) < n):
                    raise SpecFormatError(f"{name}: mul table entry {v} out of range")
        super().__init__(name, elements, identity, Fraction(1, n))
        self._mul = [[int(v) for v in row] for row in mul_table]
        if inv_table is None:
            e_idx = self.index(identity)
            inv = [-1] * n
            for i in range(n):
                for j in range(n):
                    if self._mul[i][j] == e_idx:
                        inv[i] = j
                        break
                if inv[i] < 0:
                    raise ScopeError(f"{name}: element {elements[i]!r} has no inverse")
            self._inv = inv
        else:
            self._inv = [int(v) for v in inv_table]

    def try_mul(self, a, b):
        return self.elements[self._mul[self.index(a)][self.index(b)]]

    def inv(self, a):
        return self.elements[self._inv[self.index(a)]]


class IntegerWindow(GroupSpace):
    """Symmetric slice [-W, W] of Z with counting measure."""

    def __init__(self, radius: int):
        if radius <= 0:
            raise SpecFormatError(f"window radius must be positive, got {radius}")
        super().__init__(f"Zwindow{radius}", range(-radius, radius + 1), 0,
                         Fraction(1), window_radius=radius)
        self._abelian = True

    def try_mul(self, a, b):
        s = a + b
        return s if abs(s) <= self.window_radius else None

    def inv(self, a):
        return -a


def cyclic(n: int) -> GroupSpace:
    return CyclicGroup(n)


def direct_product(*factors: GroupSpace) -> GroupSpace:
    return ProductGroup(factors)


def integer_window(radius: int) -> GroupSpace:
    return IntegerWindow(radius)


def symmetric_group3() -> GroupSpace:
    """S3 as permutation tuples of (0, 1, 2) under composition."""
    elements = sorted(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(elements)}
    compose = lambda p, q: tuple(p[q[i]] for i in range(3))
    table = [[idx[compose(p, q)] for q in elements] for p in elements]
    return TableGroup("S3", elements, table, (0, 1, 2))


# ---------------------------------------------------------------------------
# functions on a carrier
# ---------------------------------------------------------------------------

class GroupFunction:
    """Finitely supported complex function; immutable by convention.

    ``truncated`` marks results whose true value depends on mass outside
    an integer window; it propagates through every operation.
    """

    __slots__ = ("space", "_values", "truncated")

    def __init__(self, space: GroupSpace, values: Mapping[Element, complex],
                 truncated: bool = False):
        vals: dict[Element, complex] = {}
        for x, v in values.items():
            if not space.contains(x):
                raise SpecFormatError(f"{space.name}: support point {x!r} not in carrier")
            c = complex(v)
            if c != 0:
                vals[x] = c
        self.space = space
        self._values = vals
        self.truncated = truncated

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, space: GroupSpace) -> "GroupFunction":
        return cls(space, {})

    @classmethod
    def delta(cls, space: GroupSpace, x: Element, value: complex = 1.0) -> "GroupFunction":
        return cls(space, {x: value})

    @classmethod
    def indicator(cls, space: GroupSpace, points: Iterable[Element]) -> "GroupFunction":
        return cls(space, {x: 1.0 for x in points})

    @classmethod
    def constant(cls, space: GroupSpace, value: complex = 1.0) -> "GroupFunction":
        return cls(space, {x: value for x in space.elements})

    # -- access -----------------------------------------------------------

    def __call__(self, x: Element) -> complex:
        return self._values.get(x, 0j)

    @property
    def support(self) -> tuple[Element, ...]:
        return tuple(sorted(self._values, key=self.space.index))

    def items(self) -> Iterator[tuple[Element, complex]]:
        """(x, value) pairs in carrier order, for reproducible float sums."""
        for x in self.support:
            yield x, self._values[x]

    @property
    def is_zero(self) -> bool:
        return not self._values

    def sup_norm(self) -> float:
        return max((abs(v) for v in self._values.values()), default=0.0)

    def one_norm(self) -> float:
        return sum(abs(v) * self.space.weight_float(x) for x, v in self.items())

    # -- pointwise algebra --------------------------------------------------

    def scale(self, c: complex) -> "GroupFunction":
        return GroupFunction(self.space, {x: c * v for x, v in self._values.items()},
                             self.truncated)

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        _same_space(self, other)
        vals = dict(self._values)
        for x, v in other._values.items():
            vals[x] = vals.get(x, 0j) + v
        return GroupFunction(self.space, vals, self.truncated or other.truncated)

    def __sub__(self, other: "GroupFunction") -> "GroupFunction":
        return self + other.scale(-1.0)

    def __neg__(self) -> "GroupFunction":
        return self.scale(-1.0)

    def abs_values(self) -> "GroupFunction":
        return GroupFunction(self.space, {x: abs(v) for x, v in self._values.items()},
                             self.truncated)

    def max_abs_diff(self, other: "GroupFunction") -> float:
        _same_space(self, other)
        keys = set(self._values) | set(other._values)
        return max((abs(self(x) - other(x)) for x in keys), default=0.0)

    def __repr__(self) -> str:
        flag = ", truncated" if self.truncated else ""
        return f"<GroupFunction on {self.space.name}, |supp|={len(self._values)}{flag}>"


def _same_space(f: GroupFunction, g: GroupFunction) -> None:
    if f.space is not g.space:
        raise ScopeError(f"mismatched spaces: {f.space.name} vs {g.space.name}")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def convolve(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """(f*g)(x) = sum_y f(y) g(y^{-1}x) weight(y).

    On windows the values inside the carrier are exact (both factors are
    genuinely supported inside), but the result is flagged truncated when
    the support product exits, i.e. when the true convolution on Z has
    mass the window cannot hold.
    """
    _same_space(f, g)
    space = f.space
    truncated = f.truncated or g.truncated
    if space.is_window and not f.is_zero and not g.is_zero:
        w = space.window_radius
        fs, gs = f.support, g.support
        lo = fs[0] + gs[0]
        hi = fs[-1] + gs[-1]
        if lo < -w or hi > w:
            truncated = True
    out: dict[Element, complex] = {}
    supp_f = f.support
    for x in space.elements:
        acc = 0j
        for y in supp_f:
            z = space.try_mul(space.inv(y), x)
            if z is None:
                continue
            gv = g(z)
            if gv != 0:
                acc += f(y) * gv * space.weight_float(y)
        if acc != 0:
            out[x] = acc
    return GroupFunction(space, out, truncated)


def reflect(f: GroupFunction) -> GroupFunction:
    """Check involution: reflect(f)(x) = f(x^{-1}). Exact relabeling."""
    return GroupFunction(f.space, {f.space.inv(x): v for x, v in f._values.items()},
                         f.truncated)


def translate_left(t: Element, f: GroupFunction) -> GroupFunction:
    """(L_t f)(x) = f(t^{-1} x); support moves to t * supp f."""
    space = f.space
    out: dict[Element, complex] = {}
    truncated = f.truncated
    for y, v in f._values.items():
        x = space.try_mul(t, y)
        if x is None:
            truncated = True
            continue
        out[x] = v
    return GroupFunction(space, out, truncated)


def translate_right(t: Element, f: GroupFunction) -> GroupFunction:
    """(R_t f)(x) = f(x t); support moves to supp f * t^{-1}."""
    space = f.space
    ti = space.inv(t)
    out: dict[Element, complex] = {}
    truncated = f.truncated
    for y, v in f._values.items():
        x = space.try_mul(y, ti)
        if x is None:
            truncated = True
            continue
        out[x] = v
    return GroupFunction(space, out, truncated)


def set_product(space: GroupSpace, left: Iterable[Element], right: Iterable[Element]) -> frozenset:
    """{a b : a in left, b in right} in the underlying group.

    For windows this is computed in unbounded integers so that measure
    comparisons stay exact; members may lie outside the carrier.
    """
    if space.is_window:
        return frozenset(a + b for a in left for b in right)
    return frozenset(space.mul(a, b) for a in left for b in right)


def set_inverse(space: GroupSpace, points: Iterable[Element]) -> frozenset:
    if space.is_window:
        return frozenset(-a for a in points)
    return frozenset(space.inv(a) for a in points)


@dataclass(frozen=True)
class LeptinSet:
    """A set U with lam(KU) < (1 + eps) lam(U), together with the exact counts."""

    members: tuple
    lam_u: Fraction
    lam_ku: Fraction
    epsilon: float
    product_members: tuple

    @property
    def ratio(self) -> Fraction:
        return self.lam_ku / self.lam_u

    @property
    def margin(self) -> float:
        """(1 + eps) lam(U) - lam(KU), strictly positive by construction."""
        return float((1 + Fraction(self.epsilon)) * self.lam_u - self.lam_ku)


def leptin_search(space: GroupSpace, compact: Iterable[Element], epsilon: float) -> LeptinSet:
    """Find U with 0 < lam(U) < inf and lam(KU) < (1 + eps) lam(U).

    Finite groups take U = G (ratio exactly 1). Windows scan symmetric
    intervals U = [-N, N] for the smallest N that satisfies the strict
    ratio; infeasibility (U or KU poking out of the window) raises with
    the minimal radius that would work.
    """
    K = tuple(sorted(compact, key=lambda x: _key_for(space, x)))
    if not K:
        raise SpecFormatError("Leptin search needs a nonempty compact set")
    if epsilon <= 0:
        raise SpecFormatError(f"Leptin search needs epsilon > 0, got {epsilon:g}")
    if not space.is_window:
        for x in K:
            space.index(x)
        members = space.elements
        lam = space.total_mass()
        return LeptinSet(members=members, lam_u=lam, lam_ku=lam, epsilon=epsilon,
                         product_members=members)
    w = space.window_radius
    for x in K:
        space.index(x)
    one_plus = 1 + Fraction(epsilon)
    for n in itertools.count(0):
        u = range(-n, n + 1)
        ku = sorted(set_product(space, K, u))
        if Fraction(len(ku)) < one_plus * (2 * n + 1):
            needed = max(n, max(abs(ku[0]), abs(ku[-1])))
            if needed > w:
                raise InfeasibleWindowError(
                    f"{space.name}: Leptin set for eps={epsilon:g} needs radius {needed}",
                    minimal_radius=needed)
            return LeptinSet(members=tuple(u), lam_u=Fraction(2 * n + 1),
                             lam_ku=Fraction(len(ku)), epsilon=epsilon,
                             product_members=tuple(ku))
        if n > 4 * w + len(K):  # cannot happen for nonempty K; defensive stop
            raise InfeasibleWindowError(
                f"{space.name}: Leptin scan did not terminate by N={n}")


def _key_for(space: GroupSpace, x: Element):
    return space.index(x) if space.contains(x) else x


def random_function(space: GroupSpace, rng: Random, *, support_size: int | None = None,
                    amplitude: float = 1.0, complex_values: bool = True) -> GroupFunction:
    """Seeded random function for sweeps and property tests."""
    if support_size is None:
        support_size = max(1, space.size // 2)
    support_size = min(support_size, space.size)
    points = rng.sample(list(space.elements), support_size)
    vals = {}
    for x in points:
        re = rng.uniform(-amplitude, amplitude)
        im = rng.uniform(-amplitude, amplitude) if complex_values else 0.0
        vals[x] = complex(re, im)
    return GroupFunction(space, vals)
