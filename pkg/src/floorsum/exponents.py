"""Exact rational exponent-pair calculus.

Everything here is closed over Fraction: the van der Corput A/B
processes, the Bordelles-type exponent functional, the four-monomial
growth bound for the dyadic sawtooth sums, dominance of one monomial
over a window of D = x^d, and the head/tail balance that fixes the
final exponent. No floating point enters any result; decimals exist
only as display mirrors.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Tuple, Union

from .arith import format_rational, parse_rational

RationalLike = Union[Fraction, int, str]


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class ConditionViolated(ValueError):
    """A validity condition of a formula failed; names the predicate."""

    def __init__(self, predicate: str):
        self.predicate = predicate
        super().__init__(f"validity condition failed: {predicate}")


@dataclass(frozen=True)
class ExponentPair:
    """(kappa, lambda) in the classical admissibility box [0,1/2] x [1/2,1]."""

    kappa: Fraction
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "kappa", _as_fraction(self.kappa))
        object.__setattr__(self, "lam", _as_fraction(self.lam))
        if not (0 <= self.kappa <= Fraction(1, 2) <= self.lam <= 1):
            raise ValueError(
                f"({self.kappa}, {self.lam}) outside 0 <= kappa <= 1/2 <= lambda <= 1"
            )

    def __str__(self) -> str:
        return f"({format_rational(self.kappa)}, {format_rational(self.lam)})"


def a_process(p: ExponentPair) -> ExponentPair:
    """A(kappa, lambda) = (kappa/(2kappa+2), (kappa+lambda+1)/(2kappa+2))."""
    den = 2 * p.kappa + 2
    return ExponentPair(p.kappa / den, (p.kappa + p.lam + 1) / den)


def b_process(p: ExponentPair) -> ExponentPair:
    """B(kappa, lambda) = (lambda - 1/2, kappa + 1/2); an involution."""
    return ExponentPair(p.lam - Fraction(1, 2), p.kappa + Fraction(1, 2))


def bordelles_exponent(p: ExponentPair) -> Fraction:
    """14(kappa+1)/(29 kappa - lambda + 30), under its validity conditions."""
    k, lam = p.kappa, p.lam
    if not k <= Fraction(1, 6):
        raise ConditionViolated("kappa <= 1/6")
    if not lam * lam + lam + 3 - k * (5 + 9 * k - lam) > 0:
        raise ConditionViolated(
            "lambda^2 + lambda + 3 - kappa*(5 + 9*kappa - lambda) > 0"
        )
    return 14 * (k + 1) / (29 * k - lam + 30)


@dataclass(frozen=True)
class GrowthTerm:
    """Monomial x^a * D^b; affine exponent a + b*d along D = x^d."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))

    def exponent_at(self, d: RationalLike) -> Fraction:
        return self.a + self.b * _as_fraction(d)

    def __str__(self) -> str:
        return f"x^({format_rational(self.a)}) * D^({format_rational(self.b)})"


def exponent_at(term: GrowthTerm, d: RationalLike) -> Fraction:
    """x-exponent of the monomial at D = x^d."""
    return term.exponent_at(d)


@dataclass(frozen=True)
class BoundExpr:
    """max over a nonempty set of growth monomials."""

    terms: Tuple[GrowthTerm, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("BoundExpr requires at least one term")
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("BoundExpr terms must be distinct")


def prop41_bound(p: ExponentPair, p_prime: ExponentPair) -> BoundExpr:
    """The four growth monomials bounding the dyadic sawtooth sum.

    With (k, l) driving the bilinear part and (k', l') the smooth part:
    (x^{2k} D^{3+l})^{1/(4k+4)}, D^{5/6},
    (x^{3k'} D^{-2k'+2l'+1})^{1/(3k'+3)}, x^{k'} D^{(-5k'+2l'+1)/3}.
    """
    k, lam = p.kappa, p.lam
    kp, lp = p_prime.kappa, p_prime.lam
    t1 = GrowthTerm(2 * k / (4 * k + 4), (3 + lam) / (4 * k + 4))
    t2 = GrowthTerm(Fraction(0), Fraction(5, 6))
    t3 = GrowthTerm(3 * kp / (3 * kp + 3), (-2 * kp + 2 * lp + 1) / (3 * kp + 3))
    t4 = GrowthTerm(kp, (-5 * kp + 2 * lp + 1) / 3)
    return BoundExpr((t1, t2, t3, t4))


def window_edge(t1: GrowthTerm, t2: GrowthTerm) -> Fraction:
    """The d where the two monomials' exponents cross: a1+b1 d = a2+b2 d."""
    if t1.b == t2.b:
        raise ValueError("parallel terms never cross")
    return (t2.a - t1.a) / (t1.b - t2.b)


class EndpointCheck(NamedTuple):
    term: GrowthTerm
    d: Fraction
    leader_exponent: Fraction
    term_exponent: Fraction
    holds: bool


@dataclass(frozen=True)
class DominanceCertificate:
    holds: bool
    leader: GrowthTerm
    d_lo: Fraction
    d_hi: Fraction
    checks: Tuple[EndpointCheck, ...]

    def __bool__(self) -> bool:
        return self.holds


def dominance_window(
    expr: BoundExpr,
    leader: GrowthTerm,
    d_lo: RationalLike,
    d_hi: RationalLike,
) -> DominanceCertificate:
    """Does the leader dominate every term of expr for all d in [d_lo, d_hi]?

    Exponents are affine in d, so checking the two endpoints exactly is a
    complete decision procedure; the certificate records each comparison.
    """
    lo = _as_fraction(d_lo)
    hi = _as_fraction(d_hi)
    if lo > hi:
        raise ValueError("need d_lo <= d_hi")
    checks = []
    holds = True
    for term in expr.terms:
        for d in (lo, hi):
            lead_e = leader.exponent_at(d)
            term_e = term.exponent_at(d)
            ok = lead_e >= term_e
            holds = holds and ok
            checks.append(EndpointCheck(term, d, lead_e, term_e, ok))
    return DominanceCertificate(holds, leader, lo, hi, tuple(checks))


class SplitPoint(NamedTuple):
    nu: Fraction  # exponent of the balancing cutoff N = x^nu
    theta: Fraction  # resulting total error exponent (= nu at the balance)


def optimize_split(bound: GrowthTerm) -> SplitPoint:
    """Balance cutoff cost N = x^nu against the dyadic tail x^a (x/N)^b.

    The tail over D_j = x/(2^j N) is dominated by its largest range
    D = x/N, contributing x^(a + b(1-nu)); equating with x^nu gives
    nu = (a+b)/(1+b). Requires b > -1.
    """
    if bound.b <= -1:
        raise ValueError("optimize_split requires the D-exponent b > -1")
    nu = (bound.a + bound.b) / (1 + bound.b)
    return SplitPoint(nu, nu)
