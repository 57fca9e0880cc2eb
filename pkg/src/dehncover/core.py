"""
Exact arithmetic on Seifert invariants, lens spaces and 2-orbifolds.

Everything in this module is integer / rational arithmetic (no floats).
Manifolds are compared up to orientation-reversing homeomorphism throughout:
a Seifert fibered space and its mirror count as the same unoriented manifold,
and lens spaces are classified by q up to +-q^{+-1} mod p.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


class LensRegimeError(ValueError):
    """Raised when an operation needs >= 3 exceptional fibers but got fewer."""


def _modinv(a: int, m: int) -> int:
    return pow(a, -1, m)


# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True, order=True)
class Slope:
    """A surgery slope p/q in the homological framing.

    Normalised so that q >= 1, except the infinity slope which is stored as
    (1, 0).  p/q and (-p)/(-q) are the same slope.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if gcd(p, q) != 1:
            raise ValueError(f"slope {p}/{q} is not reduced")
        if q < 0:
            p, q = -p, -q
        if q == 0:
            p = 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class TorusKnot:
    """The positive torus knot T(r, s), r, s >= 2 coprime."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 2 or self.s < 2:
            raise ValueError("torus knot parameters must be >= 2 (no unknots)")
        if gcd(self.r, self.s) != 1:
            raise ValueError(f"T({self.r},{self.s}) is not a knot: r, s must be coprime")

    def __str__(self):
        return f"T({self.r},{self.s})"


@dataclass(frozen=True)
class SeifertInvariants:
    """Seifert invariants {b; (a1,b1), ..., (an,bn)} of an orientable Seifert
    fibration over S^2.

    The presentation is not required to be normalised; fibers are stored
    sorted so that equal presentations compare equal.  Each pair with
    alpha >= 2 must be coprime; pairs with alpha = 1 are allowed and can be
    absorbed into b.
    """

    b: int
    fibers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        fibs = tuple(sorted((int(a), int(be)) for a, be in self.fibers))
        for a, be in fibs:
            if a < 1:
                raise ValueError(f"fiber order {a} < 1")
            if a >= 2 and gcd(a, be) != 1:
                raise ValueError(f"fiber ({a},{be}) is not coprime")
        object.__setattr__(self, "fibers", fibs)

    def exceptional_fibers(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, be) for a, be in self.fibers if a >= 2)

    def base_orbifold(self) -> "Orbifold2":
        return Orbifold2(tuple(a for a, _ in self.fibers))

    def __str__(self):
        inner = ",".join(f"({a},{be})" for a, be in self.fibers)
        return "{%d;%s}" % (self.b, inner)


_SEIFERT_RE = re.compile(r"^\{(-?\d+);(\(-?\d+,-?\d+\)(?:,\(-?\d+,-?\d+\))*)?\}$")
_PAIR_RE = re.compile(r"\((-?\d+),(-?\d+)\)")


def parse_seifert(text: str) -> SeifertInvariants:
    """Parse the textual form "{b;(a1,b1),...,(an,bn)}" (whitespace ignored)."""
    compact = re.sub(r"\s+", "", text)
    m = _SEIFERT_RE.match(compact)
    if not m:
        raise ValueError(f"cannot parse Seifert invariants: {text!r}")
    b = int(m.group(1))
    fibers = tuple((int(a), int(be)) for a, be in _PAIR_RE.findall(m.group(2) or ""))
    return SeifertInvariants(b, fibers)


@dataclass(frozen=True)
class LensSpace:
    """Unoriented lens space L(p, q), stored as the canonical representative.

    The canonical q is the minimum of {q, -q, q^-1, -q^-1} mod p taken in
    [0, p).  L(-m, n) means L(m, -n).  L(0, 1) is S^2 x S^1 and L(1, 0) is
    S^3.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p < 0:
            p, q = -p, -q
        if p == 0:
            if abs(q) != 1:
                raise ValueError(f"L(0,{q}) is not a lens space")
            q = 1
        elif p == 1:
            q = 0
        else:
            q %= p
            if gcd(p, q) != 1:
                raise ValueError(f"L({p},{q}) requires gcd(p,q) = 1")
            qinv = _modinv(q, p)
            q = min(q, (-q) % p, qinv, (-qinv) % p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __str__(self):
        return f"L({self.p},{self.q})"


@dataclass(frozen=True)
class Orbifold2:
    """A 2-orbifold with underlying surface S^2 and the given cone orders.

    Order-1 cone points are removable and dropped; orders are stored sorted.
    """

    cone_orders: tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(sorted(int(v) for v in self.cone_orders if int(v) > 1))
        for v in self.cone_orders:
            if int(v) < 1:
                raise ValueError(f"cone order {v} < 1")
        object.__setattr__(self, "cone_orders", orders)

    def padded(self, k: int = 3) -> tuple[int, ...]:
        """Orders padded with 1s up to length k (requires <= k cone points)."""
        if len(self.cone_orders) > k:
            raise ValueError(f"orbifold {self} has more than {k} cone points")
        return (1,) * (k - len(self.cone_orders)) + self.cone_orders

    def __str__(self):
        return "S2(%s)" % ",".join(str(v) for v in self.cone_orders)


# ---------------------------------------------------------------------------
# Seifert invariant arithmetic


def normalize(M: SeifertInvariants) -> SeifertInvariants:
    """Unique normalised form: 0 <= beta_i < alpha_i, alpha = 1 pairs absorbed.

    Each shift (a, b) -> (a, b - a), b -> b + 1 preserves the manifold.
    """
    b = M.b
    fibers = []
    for a, be in M.fibers:
        b += be // a
        be %= a
        if a >= 2:
            fibers.append((a, be))
    return SeifertInvariants(b, tuple(fibers))


def mirror(M: SeifertInvariants) -> SeifertInvariants:
    """The orientation reversal {-b; (a_i, -beta_i)}, normalised."""
    return normalize(SeifertInvariants(-M.b, tuple((a, -be) for a, be in M.fibers)))


def euler_number(M: SeifertInvariants) -> Fraction:
    """e(M) = -(b + sum beta_i/alpha_i), exact."""
    return -(Fraction(M.b) + sum((Fraction(be, a) for a, be in M.fibers), Fraction(0)))


def h1_order(M: SeifertInvariants) -> int:
    """Order of H_1(M); 0 encodes infinite H_1.

    |(prod alpha_i) b + sum_j beta_j prod_{i != j} alpha_i|, which equals
    |prod(alpha_i) * e(M)|.
    """
    e = euler_number(M)
    total = e
    for a, _ in M.fibers:
        total *= a
    assert total.denominator == 1
    return abs(int(total))


def sfs_equivalent(M1: SeifertInvariants, M2: SeifertInvariants) -> bool:
    """Equality up to orientation-reversing homeomorphism, for small Seifert
    fibered spaces with >= 3 exceptional fibers.

    Lens-space presentations (<= 2 exceptional fibers) must be compared via
    sfs_to_lens / lens_equivalent instead.
    """
    n1, n2 = normalize(M1), normalize(M2)
    if len(n1.fibers) <= 2 or len(n2.fibers) <= 2:
        raise LensRegimeError(
            "sfs_equivalent needs >= 3 exceptional fibers; route lens "
            "presentations through sfs_to_lens"
        )
    return n1 == n2 or n1 == mirror(n2)


def _lens_from_filling_slopes(m0: tuple[int, int], m1: tuple[int, int]) -> LensSpace:
    """Unoriented lens space obtained by gluing two solid tori along a torus,
    with meridian slopes m0, m1 written in a common basis of H_1(T^2).
    """
    a0, b0 = m0
    a1, b1 = m1
    # complete m0 to a basis (m0, ell) with intersection m0 . ell = 1
    g, u, v = _xgcd(a0, b0)
    assert g == 1, "filling slope must be primitive"
    ell = (-v, u)  # det [[a0, b0], [-v, u]] = a0*u + b0*v = 1
    # m1 = q*m0 + t*ell; t = m0 . m1 up to sign, |t| = |H_1|
    x, y = ell
    q = y * a1 - x * b1
    t = a0 * b1 - b0 * a1
    if t == 0:
        return LensSpace(0, 1)
    return LensSpace(abs(t), q if t > 0 else -q)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def sfs_to_lens(M: SeifertInvariants) -> LensSpace:
    """The lens space presented by Seifert invariants with <= 2 exceptional
    fibers, via the 2x2 gluing calculus on the two fibered solid tori.
    """
    n = normalize(M)
    fibers = list(n.fibers)
    if len(fibers) > 2:
        raise LensRegimeError(f"{M} has {len(fibers)} exceptional fibers, not a lens presentation")
    while len(fibers) < 2:
        fibers.append((1, 0))
    (a1, b1), (a2, b2) = fibers
    # fold b into the first filling; the section reverses sign on the other side
    return _lens_from_filling_slopes((-a2, b2), (a1, b1 + n.b * a1))


def lens_equivalent(L1: LensSpace, L2: LensSpace) -> bool:
    """True iff p1 = p2 and q2 = +-q1^{+-1} mod p (unoriented classification).

    Constructors store canonical representatives, so this is equality.
    """
    return L1 == L2


def lens_covers(cover: LensSpace, base: LensSpace, same_torus_knot: bool = False) -> int | None:
    """Degree of the covering cover -> base between lens spaces, or None.

    The degree-d cover of L(p, q) is L(p/d, q), so in general the cover must
    both divide (p_cover | p_base) and match in q.  When both spaces arise as
    surgeries on one common torus knot the q-compatibility is automatic and
    divisibility alone decides.
    """
    if cover.p == 0 or base.p == 0:
        return 1 if cover == base else None
    if base.p % cover.p != 0:
        return None
    d = base.p // cover.p
    if not same_torus_knot:
        if not lens_equivalent(cover, LensSpace(base.p // d, base.q)):
            return None
    return d


# ---------------------------------------------------------------------------
# Quadratic form representability


def is_loeschian(n: int) -> bool:
    """True iff n = x^2 + xy + y^2 with integers x, y not both zero."""
    if n < 1:
        raise ValueError("is_loeschian needs n >= 1")
    r = isqrt(n)
    return any(
        x * x + x * y + y * y == n
        for x in range(r + 1)
        for y in range(r + 1)
    )


def is_two_square(n: int) -> bool:
    """True iff n = x^2 + y^2 with integers x, y not both zero."""
    if n < 1:
        raise ValueError("is_two_square needs n >= 1")
    r = isqrt(n)
    return any(x * x + y * y == n for x in range(r + 1) for y in range(r + 1))
