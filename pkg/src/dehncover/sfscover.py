"""
Cover calculus on Seifert fibered spaces and the end-to-end decision
"is there a covering map between two surgeries on the same torus knot?".

Every cover of Seifert fibered spaces factors as a fiberwise cover followed
by a pullback cover, so the decision runs: classify both surgeries, settle
the reducible / lens / infinite-homology cases directly, then enumerate
admissible base-orbifold covers, pull the base manifold back along each
partition system, and look for the fiberwise factor pinned by the order of
first homology.

Degrees compose as total = fiberwise x orbifold.  Under a fiberwise cover of
degree d the covered manifold scales as {d b; (a_i, d beta_i)} (so |H_1|
multiplies by d going down); under a pullback of degree d the euler number
multiplies by d going up.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .core import (
    Orbifold2,
    SeifertInvariants,
    Slope,
    TorusKnot,
    _modinv,
    euler_number,
    h1_order,
    lens_covers,
    normalize,
    sfs_equivalent,
    sfs_to_lens,
)
from .surgery import LENS, REDUCIBLE, SFS, classify_surgery, surgery_seifert_invariants
from .orbcover import (
    UNCONSTRAINED,
    PartitionSystem,
    PermWitness,
    chi_orb,
    classify_cover,
    partition_systems,
    perm_cover_oracle,
    riemann_hurwitz_degree,
)

# machine-checkable obstruction codes for NoCover decisions
REDUCIBILITY = "reducibility"
CHI_MISMATCH = "chi-mismatch"
NO_ORBIFOLD_COVER = "no-orbifold-cover"
H1_DIVISIBILITY = "h1-divisibility"
GCD_CONDITION = "gcd-condition"
LENS_DIVISIBILITY = "lens-divisibility"
REALIZATION_FAILURE = "realization-failure"
RANK = "rank"


# ---------------------------------------------------------------------------
# Fiberwise and pullback covers


def fiberwise_quotient(M: SeifertInvariants, d: int) -> SeifertInvariants:
    """The base {d b; (a_i, d beta_i)} of the degree-d fiberwise cover by M.

    Requires gcd(d, a_i) = 1 for every fiber (otherwise the scaled pairs are
    not coprime and no such cover exists).
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    for a, _ in M.fibers:
        if gcd(d, a) != 1:
            raise ValueError(f"gcd({d},{a}) != 1: no degree-{d} fiberwise cover")
    return normalize(SeifertInvariants(d * M.b, tuple((a, d * be) for a, be in M.fibers)))


def fiberwise_lift(M: SeifertInvariants, d: int) -> SeifertInvariants | None:
    """The degree-d fiberwise cover of M, or None when it does not exist.

    The beta invariants of the cover are forced modulo the fiber orders
    (beta~ = d^{-1} beta) and b~ by e(cover) = e(M)/d; the cover exists iff
    b~ comes out an integer.  Round trip: fiberwise_quotient(lift, d) is
    equivalent to M.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    n = normalize(M)
    for a, _ in n.fibers:
        if gcd(d, a) != 1:
            raise ValueError(f"gcd({d},{a}) != 1: no degree-{d} fiberwise cover")
    lifted = tuple((a, (_modinv(d, a) * be) % a) for a, be in n.fibers)
    # b~ = -e(M)/d - sum beta~/alpha must come out an integer
    total = -euler_number(n) / d - sum(
        (Fraction(bt, a) for a, bt in lifted), Fraction(0)
    )
    if total.denominator != 1:
        return None
    return SeifertInvariants(int(total), lifted)


def pullback(M: SeifertInvariants, sys: PartitionSystem) -> SeifertInvariants:
    """The pullback cover of M along the base-orbifold cover encoded by sys.

    Each fiber (a, beta) sitting over the base point of order a splits into
    one fiber (a/k, beta) per part k of that point's partition; b scales by
    the degree.  Base points of the system with equal orders are matched to
    M's fibers in sorted order (systems differing by which equal-order point
    carries which partition are distinct systems).
    """
    n = normalize(M)
    fibers = list(n.fibers)
    orders = tuple(sorted(a for a, _ in fibers))
    sys_orders = tuple(v for v in sys.base_orders if v > 1)
    if orders != sys_orders:
        raise ValueError(
            f"partition system over S2{sys_orders} does not match base orbifold S2{orders}"
        )
    new_fibers = []
    idx = 0
    for v, parts in zip(sys.base_orders, sys.partitions):
        if v == 1:
            continue
        a, be = fibers[idx]
        idx += 1
        for k in parts:
            new_fibers.append((a // k, be))
    return normalize(SeifertInvariants(sys.degree * n.b, tuple(new_fibers)))


# ---------------------------------------------------------------------------
# Decision procedure


@dataclass(frozen=True)
class CoverCertificate:
    """Witness of a covering map between two surgeries.

    total_degree = fiberwise_degree * orbifold_degree.  intermediate is the
    pullback of the base manifold along the orbifold cover (the space the
    fiberwise factor lands on); for a trivial orbifold part it is just the
    base manifold.  perm_witness cross-certifies the orbifold cover when the
    oracle budget allows.
    """

    cover_slope: Slope
    base_slope: Slope
    total_degree: int
    fiberwise_degree: int
    orbifold_degree: int
    partition_system: PartitionSystem | None = None
    perm_witness: PermWitness | None = None
    intermediate: SeifertInvariants | None = None

    def __post_init__(self):
        if self.total_degree != self.fiberwise_degree * self.orbifold_degree:
            raise ValueError("certificate degrees do not factor")


@dataclass(frozen=True)
class CoverDecision:
    covers: bool
    certificate: CoverCertificate | None = None
    reason: str | None = None
    detail: str = ""

    @property
    def degree(self) -> int | None:
        return self.certificate.total_degree if self.certificate else None


@lru_cache(maxsize=None)
def _oracle_witness(cover_orders, base_orders, degree: int, budget: int):
    """Cross-check an orbifold cover admitted by the tables with the
    permutation oracle.  Returns a witness, or None when over budget."""
    if degree > budget:
        return None
    for orb, witness in perm_cover_oracle(Orbifold2(base_orders), degree, budget):
        if orb.cone_orders == cover_orders:
            return witness
    raise RuntimeError(
        f"table admits S2{cover_orders} -> S2{base_orders} at degree {degree} "
        "but the permutation oracle finds no witness"
    )


def _lens_candidate_bases(B: Orbifold2) -> list[Orbifold2]:
    """Base orbifolds a lens space can fiber over while covering B: S^2,
    S^2(d,d) and, defensively, S^2(2,2,d)."""
    ds = {1, 2, 3, 4, 5}
    for v in B.cone_orders:
        ds.update(d for d in range(1, v + 1) if v % d == 0)
    cands = []
    for d in sorted(ds):
        cands.append(Orbifold2((d, d)) if d > 1 else Orbifold2(()))
        if d > 1:
            cands.append(Orbifold2((2, 2, d)))
    return cands


@lru_cache(maxsize=1 << 20)
def decide_cover_directed(
    K: TorusKnot, cover_slope: Slope, base_slope: Slope, budget: int = 12
) -> CoverDecision:
    """Decide whether the cover_slope surgery covers the base_slope surgery."""
    cov = classify_surgery(K, cover_slope)
    base = classify_surgery(K, base_slope)
    if cover_slope == base_slope:
        cert = CoverCertificate(cover_slope, base_slope, 1, 1, 1)
        return CoverDecision(True, cert, detail="identical surgeries")
    if cov.kind == REDUCIBLE or base.kind == REDUCIBLE:
        return CoverDecision(
            False, reason=REDUCIBILITY,
            detail="the unique reducible surgery only covers / is covered by itself",
        )
    if base_slope.p == 0:
        return CoverDecision(
            False, reason=RANK,
            detail="0-surgery (first betti number 1) is never covered by another surgery",
        )
    if cover_slope.p == 0:
        return CoverDecision(
            False, reason=H1_DIVISIBILITY,
            detail="a surgery with infinite H_1 cannot cover one with finite H_1",
        )
    if cov.kind == LENS and base.kind == LENS:
        d = lens_covers(cov.lens, base.lens, same_torus_knot=True)
        if d is None:
            return CoverDecision(
                False, reason=LENS_DIVISIBILITY,
                detail=f"{cov.lens} does not divide into {base.lens}",
            )
        cert = CoverCertificate(cover_slope, base_slope, d, d, 1)
        return CoverDecision(True, cert, detail="lens space cover")
    if base.kind == LENS:
        return CoverDecision(
            False, reason=NO_ORBIFOLD_COVER,
            detail="covers of lens spaces are lens spaces",
        )

    B = base.base_orbifold()
    h_cover = abs(cover_slope.p)
    candidates: list[tuple[int, Orbifold2]] = []
    if cov.kind == SFS:
        C_list = [cov.base_orbifold()]
    else:
        C_list = _lens_candidate_bases(B)
    for C in C_list:
        degs = classify_cover(C, B)
        if chi_orb(B) == 0:
            # unbounded self-cover family: only the trivial orbifold part is
            # searched (total degree is otherwise forced past the H_1 bound)
            admitted = [1] if 1 in degs else []
        else:
            admitted = sorted(degs.finite)
        candidates.extend((d, C) for d in admitted)
    candidates.sort(key=lambda t: (t[0], t[1].cone_orders))

    obstructions = []
    for d_o, C in candidates:
        tries = []
        for sys in partition_systems(C, B, d_o):
            inter = pullback(base.invariants, sys)
            hbar = h1_order(inter)
            if hbar % h_cover:
                obstructions.append(H1_DIVISIBILITY)
                continue
            tries.append((hbar // h_cover, sys, inter))
        for d_f, sys, inter in sorted(tries, key=lambda t: (t[0], t[1].partitions)):
            n_exc = len(inter.fibers)
            if cov.kind == LENS:
                if n_exc > 2:
                    continue  # a lens space never covers a 3-fiber SFS
                dd = lens_covers(cov.lens, sfs_to_lens(inter), same_torus_knot=False)
                if dd is None:
                    obstructions.append(LENS_DIVISIBILITY)
                    continue
                assert dd == d_f
            else:
                if n_exc <= 2:
                    continue  # a 3-fiber SFS never covers a lens space
                if any(gcd(d_f, a) != 1 for a, _ in inter.fibers):
                    obstructions.append(GCD_CONDITION)
                    continue
                lifted = fiberwise_lift(inter, d_f)
                if lifted is None or not sfs_equivalent(lifted, cov.invariants):
                    obstructions.append(REALIZATION_FAILURE)
                    continue
            cert = CoverCertificate(
                cover_slope,
                base_slope,
                d_o * d_f,
                d_f,
                d_o,
                partition_system=sys,
                perm_witness=_oracle_witness(
                    C.cone_orders, B.cone_orders, d_o, budget
                ),
                intermediate=inter,
            )
            return CoverDecision(True, cert)

    if not candidates:
        if cov.kind == SFS:
            rh = riemann_hurwitz_degree(cov.base_orbifold(), B)
            if rh is None or (rh is not UNCONSTRAINED and (rh.denominator != 1 or rh < 1)):
                return CoverDecision(
                    False, reason=CHI_MISMATCH,
                    detail="orbifold Euler characteristics admit no integer degree",
                )
        return CoverDecision(
            False, reason=NO_ORBIFOLD_COVER,
            detail="no admissible cover between the base orbifolds",
        )
    # all candidates failed; report the obstruction from the deepest stage
    for reason in (REALIZATION_FAILURE, GCD_CONDITION, LENS_DIVISIBILITY, H1_DIVISIBILITY):
        if reason in obstructions:
            return CoverDecision(False, reason=reason)
    return CoverDecision(False, reason=NO_ORBIFOLD_COVER)


def decide_cover(K: TorusKnot, slope_a: Slope, slope_b: Slope, budget: int = 12) -> CoverDecision:
    """Decide whether a covering map exists between the two surgeries, in
    either direction; the certificate names which slope is the cover.

    (The covering direction between two given surgeries is not always the
    order the caller wrote them in, so both are tried: a -> b first, then
    b -> a.)
    """
    first = decide_cover_directed(K, slope_a, slope_b, budget)
    if first.covers:
        return first
    second = decide_cover_directed(K, slope_b, slope_a, budget)
    if second.covers:
        return second
    return first


# ---------------------------------------------------------------------------
# Closed-form fast path for the generic torus knots


_EXCLUDED_KNOTS = {(3, 4), (3, 5), (4, 5), (3, 7), (3, 8)}


def torus_main_fastpath(K: TorusKnot, slope_a: Slope, slope_b: Slope) -> int | None:
    """Arithmetic cover test for T(r,s) with r,s > 2 away from the knots
    carrying exceptional orbifold covers.  Only fiberwise covers exist for
    these knots, so the test is: equal |rsq - p|, divisibility of the
    homology orders, degree coprime to the three fiber orders, and matching
    fiber data (the degree-scaled invariants of the smaller surgery must
    present the larger one, up to mirror).

    Returns the covering degree (cover = the slope with smaller |p|), or
    None.  Raises on excluded knots.
    """
    r, s = K.r, K.s
    pair = (min(r, s), max(r, s))
    if pair[0] <= 2 or pair in _EXCLUDED_KNOTS:
        raise ValueError(f"{K} is outside the fast-path hypotheses")
    n1 = abs(r * s * slope_a.q - slope_a.p)
    n2 = abs(r * s * slope_b.q - slope_b.p)
    if n1 != n2:
        return None
    n = n1
    pa, pb = slope_a.p, slope_b.p
    if pa == 0 or pb == 0:
        return 1 if slope_a == slope_b else None
    small, big = (slope_a, slope_b) if abs(pa) <= abs(pb) else (slope_b, slope_a)
    if abs(big.p) % abs(small.p):
        return None
    d = abs(big.p) // abs(small.p)
    if n == 0:
        return 1 if d == 1 else None
    if gcd(d, r * s) != 1 or gcd(d, n) != 1:
        return None
    if n == 1:
        return d
    m_small = surgery_seifert_invariants(K, small)
    m_big = surgery_seifert_invariants(K, big)
    if sfs_equivalent(fiberwise_quotient(m_small, d), m_big):
        return d
    return None
