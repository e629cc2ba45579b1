"""Diagonal rational quadratic forms and their local-global invariants.

A form <a_1, ..., a_n> is stored as a tuple of nonzero rationals.  The
module computes Hilbert symbols over Q_p and R, Hasse-Witt invariants,
discriminant square classes, and the classical isometry / similarity /
isotropy decisions that follow from them.

Conventions:
  * the infinite place is the float inf, finite places are primes;
  * the Hasse-Witt invariant is the product of (a_i, a_j)_v over i < j;
  * discriminants and square classes are reported through squarefree
    integer representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    factorize,
    is_prime,
    legendre_symbol,
    parse_rat,
    rat_str,
    rational_sqrt,
    squarefree_part,
)

INF = float("inf")

Place = "int | float"  # a prime, or INF


@dataclass(frozen=True)
class DiagForm:
    """A diagonal quadratic form with nonzero rational coefficients."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not cs:
            raise ValueError("a form needs at least one coefficient")
        if any(c == 0 for c in cs):
            raise ValueError("zero coefficients are not allowed")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def parse(cls, text: str) -> "DiagForm":
        body = text.strip()
        if body.startswith("<") and body.endswith(">"):
            body = body[1:-1]
        return cls(tuple(parse_rat(t) for t in body.split(",")))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def signature(self) -> tuple[int, int]:
        pos = sum(1 for c in self.coeffs if c > 0)
        return pos, len(self.coeffs) - pos

    @property
    def disc(self) -> Fraction:
        d = Fraction(1)
        for c in self.coeffs:
            d *= c
        return d

    def direct_sum(self, other: "DiagForm") -> "DiagForm":
        return DiagForm(self.coeffs + other.coeffs)

    def scaled(self, lam) -> "DiagForm":
        lam = Fraction(lam)
        if lam == 0:
            raise ValueError("scaling by zero")
        return DiagForm(tuple(lam * c for c in self.coeffs))

    def squarefree_normalized(self) -> "DiagForm":
        """Replace each coefficient by its squarefree integer representative.

        This preserves the isometry class coefficient by coefficient.
        """
        return DiagForm(tuple(squarefree_part(c)[0] for c in self.coeffs))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("form is not integral: %s" % (self,))
        return tuple(c.numerator for c in self.coeffs)

    def evaluate(self, vec) -> Fraction:
        if len(vec) != self.rank:
            raise ValueError("vector length does not match rank")
        return sum((c * Fraction(v) ** 2 for c, v in zip(self.coeffs, vec)), Fraction(0))

    def to_json_list(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    def __str__(self):
        return "<" + ",".join(rat_str(c) for c in self.coeffs) + ">"


def standard_lorentzian(n: int) -> DiagForm:
    """The form <1, ..., 1, -1> with n ones (rank n + 1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return DiagForm((1,) * n + (-1,))


def _val_unit(r: Fraction, p: int) -> tuple[int, Fraction]:
    """Split r = p**v * u with u a p-adic unit."""
    v = 0
    num, den = r.numerator, r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _unit_mod(u: Fraction, m: int) -> int:
    # u has numerator and denominator prime to m
    return u.numerator * pow(u.denominator, -1, m) % m


def hilbert_symbol(a, b, v) -> int:
    """Hilbert symbol (a, b)_v over Q_v, for v a prime or INF."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol requires nonzero arguments")
    if v == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = int(v)
    if not is_prime(p):
        raise ValueError("place must be a prime or INF, got %r" % (v,))
    alpha, ua = _val_unit(a, p)
    beta, ub = _val_unit(b, p)
    if p != 2:
        s = 1
        if (alpha & 1) and (beta & 1) and p % 4 == 3:
            s = -s
        if beta & 1:
            s *= legendre_symbol(_unit_mod(ua, p), p)
        if alpha & 1:
            s *= legendre_symbol(_unit_mod(ub, p), p)
        return s
    ea = (_unit_mod(ua, 8) - 1) // 2 % 2
    eb = (_unit_mod(ub, 8) - 1) // 2 % 2
    wa = (_unit_mod(ua, 8) ** 2 - 1) // 8 % 2
    wb = (_unit_mod(ub, 8) ** 2 - 1) // 8 % 2
    exp = ea * eb + alpha * wb + beta * wa
    return -1 if exp % 2 else 1


def is_local_square(a, v) -> bool:
    """Is a a square in Q_v?"""
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero input")
    if v == INF:
        return a > 0
    p = int(v)
    val, u = _val_unit(a, p)
    if val % 2:
        return False
    if p == 2:
        return _unit_mod(u, 8) == 1
    return legendre_symbol(_unit_mod(u, p), p) == 1


def hasse_witt(q: DiagForm, v) -> int:
    """Product of (a_i, a_j)_v over all pairs i < j."""
    s = 1
    for ai, aj in itertools.combinations(q.coeffs, 2):
        s *= hilbert_symbol(ai, aj, v)
    return s


def relevant_places(q: DiagForm) -> list:
    """2, the odd primes dividing some coefficient, and INF (sorted)."""
    ps = {2}
    for c in q.coeffs:
        for p, _ in factorize(abs(c.numerator)):
            ps.add(p)
        for p, _ in factorize(c.denominator):
            ps.add(p)
    return sorted(ps) + [INF]


@dataclass(frozen=True)
class InvariantProfile:
    """Rank, signature, discriminant class and Hasse-Witt data of a form."""

    rank: int
    signature: tuple[int, int]
    disc_class: int  # squarefree integer representative
    hasse_witt: dict  # place -> +-1, over the relevant places

    def to_json(self) -> dict:
        hw = {("inf" if p == INF else str(p)): v for p, v in self.hasse_witt.items()}
        return {
            "rank": self.rank,
            "signature": list(self.signature),
            "disc_class": self.disc_class,
            "hasse_witt": hw,
        }


def invariant_profile(q: DiagForm) -> InvariantProfile:
    places = relevant_places(q)
    hw = {p: hasse_witt(q, p) for p in places}
    disc, _ = squarefree_part(q.disc)
    return InvariantProfile(q.rank, q.signature, disc, hw)


def is_isometric_Q(q1: DiagForm, q2: DiagForm) -> bool:
    """Rational isometry decision via rank, signature, disc and Hasse-Witt."""
    if q1.rank != q2.rank:
        return False
    if q1.signature != q2.signature:
        return False
    d1, _ = squarefree_part(q1.disc)
    d2, _ = squarefree_part(q2.disc)
    if d1 != d2:
        return False
    places = sorted(set(relevant_places(q1)[:-1]) | set(relevant_places(q2)[:-1]))
    return all(hasse_witt(q1, p) == hasse_witt(q2, p) for p in places)


def _squarefree_divisors(primes_list):
    for r in range(len(primes_list) + 1):
        for combo in itertools.combinations(primes_list, r):
            d = 1
            for p in combo:
                d *= p
            yield d


def is_similar(q1: DiagForm, q2: DiagForm):
    """Return a rational lambda with q1 isometric to lambda * q2, or None.

    Candidate scalars are +-(squarefree products of the primes relevant
    to either form), tried by increasing absolute value with the
    positive sign first, so similar forms always get the smallest
    witness and is_similar(q, q) returns 1.
    """
    if q1.rank != q2.rank:
        raise ValueError("similarity needs equal ranks: %d vs %d" % (q1.rank, q2.rank))
    ps = sorted(set(relevant_places(q1)[:-1]) | set(relevant_places(q2)[:-1]))
    cands = sorted(set(_squarefree_divisors(ps)))
    for d in cands:
        for lam in (d, -d):
            if is_isometric_Q(q1, q2.scaled(lam)):
                return Fraction(lam)
    return None


def _isotropic_at(q: DiagForm, v) -> bool:
    """Isotropy of q over Q_v (rank >= 2)."""
    n = q.rank
    if v == INF:
        pos, neg = q.signature
        return pos > 0 and neg > 0
    d = q.disc
    if n == 2:
        return is_local_square(-d, v)
    if n == 3:
        return hilbert_symbol(-1, -d, v) == hasse_witt(q, v)
    if n == 4:
        if not is_local_square(d, v):
            return True
        return hasse_witt(q, v) == hilbert_symbol(-1, -1, v)
    return True  # rank >= 5 is isotropic at every finite place


def is_isotropic_Q(q: DiagForm) -> bool:
    """Does q represent zero nontrivially over Q (Hasse-Minkowski)?"""
    if q.rank < 2:
        raise ValueError("isotropy needs rank >= 2")
    pos, neg = q.signature
    if pos == 0 or neg == 0:
        return False
    if q.rank == 2:
        return rational_sqrt(-q.disc) is not None
    if q.rank >= 5:
        return True
    return all(_isotropic_at(q, p) for p in relevant_places(q))


def diagonalize_symmetric(m: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact congruence diagonalization of a symmetric rational matrix.

    Returns (P, diag) with P invertible and P^t M P = diag(diag).
    Requires M nondegenerate.
    """
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if any(a[i][j] != a[j][i] for j in range(i)):
            raise ValueError("matrix is not symmetric")
    p = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]

    def add_col(dst, src, f):
        # basis change e_dst += f * e_src, applied symmetrically
        for r in range(n):
            a[r][dst] += f * a[r][src]
        for c in range(n):
            a[dst][c] += f * a[src][c]
        for r in range(n):
            p[r][dst] += f * p[r][src]

    def swap_cols(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for c in range(n):
            a[i][c], a[j][c] = a[j][c], a[i][c]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for k in range(n):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if pivot is not None:
                swap_cols(k, pivot)
            else:
                found = next(
                    ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                    None,
                )
                if found is None:
                    raise ValueError("matrix is degenerate")
                i, j = found
                add_col(i, j, Fraction(1))
                if i != k:
                    swap_cols(k, i)
        for i in range(k + 1, n):
            if a[i][k] != 0:
                add_col(i, k, -a[i][k] / a[k][k])
    return p, [a[i][i] for i in range(n)]
