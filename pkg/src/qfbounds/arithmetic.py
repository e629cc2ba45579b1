"""Imaginary quadratic field data, quaternion ramification, covolume
formulas, and the effective index-bound constants built from them.

The chain implemented here: a signature (3,1) diagonal form determines
an imaginary quadratic field k = Q(sqrt(-d)) and a quaternion algebra
(z3*z4, z2*z4 / k).  The algebra's finite ramification set, together
with class-number and zeta data of k, feeds Borel-style covolume
formulas for Eichler and maximal arithmetic lattices.  Comparing those
covolumes against a target volume V bounds the level support S that a
maximal lattice containing a fixed lattice of covolume <= V can have,
which turns into an index bound of the shape 2**(|S|+r_f+1) * [k_A:k].
Generic (any V, any eps) and sharp (enumerated small prime norms)
variants are both provided.

Two absolute constants from the underlying effectivity results (called
A and A1 here) are never pinned numerically by the source material;
they are configuration inputs with default 1, and every output that
depends on them says so in its human-readable rendering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from .exact import factorize, is_prime, kronecker_symbol, squarefree_part
from .forms import DiagForm, hilbert_symbol


# ---------------------------------------------------------------------------
# imaginary quadratic fields


@dataclass(frozen=True)
class ImagQuadField:
    """Q(sqrt(-d)) for squarefree d >= 1, with discriminant bookkeeping."""

    d: int
    disc: int
    d_k: int
    h_k: int
    omega_dk: int

    @classmethod
    def from_d(cls, d: int) -> "ImagQuadField":
        if d < 1:
            raise ValueError("d must be a positive integer")
        s, _ = squarefree_part(d)
        if s != d:
            raise ValueError("d must be squarefree, got %d" % d)
        disc = -d if d % 4 == 3 else -4 * d
        d_k = -disc
        h_k = class_number_of_disc(disc)
        omega = len(factorize(d_k))
        return cls(d=d, disc=disc, d_k=d_k, h_k=h_k, omega_dk=omega)

    def zeta2(self, tol: float = 1e-12) -> float:
        return zeta_k_2(self, tol)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "disc": self.disc,
            "d_k": self.d_k,
            "h_k": self.h_k,
            "omega_dk": self.omega_dk,
        }


def splitting_type(K: ImagQuadField, p: int) -> str:
    """'split', 'inert', or 'ramified' for the rational prime p in K."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if K.d_k % p == 0:
        return "ramified"
    return "split" if kronecker_symbol(K.disc, p) == 1 else "inert"


def prime_norm(K: ImagQuadField, p: int) -> int:
    """Norm of (any) prime of K over p: p unless p is inert, then p**2."""
    return p * p if splitting_type(K, p) == "inert" else p


@lru_cache(maxsize=None)
def class_number_of_disc(disc: int) -> int:
    """Count of reduced primitive binary forms ax^2+bxy+cy^2 of given disc.

    Reduced: |b| <= a <= c with b >= 0 whenever |b| == a or a == c.
    """
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("not an imaginary quadratic discriminant: %d" % disc)
    count = 0
    b = disc % 2
    while b * b <= -disc // 3:
        m = (b * b - disc) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if math.gcd(a, math.gcd(b, c)) == 1:
                    count += 1
                    # (a, -b, c) is a distinct class unless b=0, a=|b|, or a=c
                    if 0 < b < a < c:
                        count += 1
            a += 1
        b += 2
    return count


def class_number(K: ImagQuadField) -> int:
    return K.h_k


def zeta_k_2(K: ImagQuadField, tol: float = 1e-12) -> float:
    """zeta_k(2) = zeta(2) * L(2, chi_disc) by truncated character sum.

    The L-sum over n <= N has tail at most d_k/N**2 (partial sums of the
    character are bounded by d_k), so N is chosen as sqrt(d_k/tol).
    Summation uses exact float accumulation for determinism.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n_terms = math.isqrt(int(K.d_k / tol)) + 1
    chi = [0] * K.d_k
    for r in range(1, K.d_k):
        chi[r] = kronecker_symbol(K.disc, r)
    terms = [chi[n % K.d_k] / (n * n) for n in range(1, n_terms + 1) if chi[n % K.d_k]]
    l_value = math.fsum(terms)
    return (math.pi ** 2 / 6.0) * l_value


def zeta_k_2_ideal_sum(K: ImagQuadField, max_norm: int) -> float:
    """Independent route: sum over n of (ideal count of norm n)/n^2.

    The count of ideals of norm n is sum_{m | n} chi(m).  Slowly
    convergent; intended as a cross-check oracle, not production use.
    """
    counts = [0] * (max_norm + 1)
    for m in range(1, max_norm + 1):
        c = kronecker_symbol(K.disc, m)
        if c:
            for n in range(m, max_norm + 1, m):
                counts[n] += c
    return math.fsum(counts[n] / (n * n) for n in range(1, max_norm + 1))


# ---------------------------------------------------------------------------
# quaternion algebras over K with rational Hilbert-symbol entries


@dataclass(frozen=True)
class QuatAlgebra:
    a: int
    b: int
    field: ImagQuadField
    ram_f: tuple  # entries (p, count_of_primes, norm_each)
    r_f: int

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "field": self.field.to_json(),
            "ram_f": [list(t) for t in self.ram_f],
            "r_f": self.r_f,
        }


def field_from_form(q: DiagForm) -> tuple[int, ImagQuadField]:
    """(d_raw, K) with d_raw = z1*z2*z3*z4 and K built on its squarefree part."""
    z = _z_entries(q)
    d_raw = z[0] * z[1] * z[2] * z[3]
    s, _ = squarefree_part(d_raw)
    return d_raw, ImagQuadField.from_d(s)


def _z_entries(q: DiagForm) -> tuple[int, int, int, int]:
    if q.rank != 4 or not q.is_integral():
        raise ValueError("expected an integral rank-4 form <z1,z2,z3,-z4>")
    cs = q.int_coeffs()
    if not (cs[0] > 0 and cs[1] > 0 and cs[2] > 0 and cs[3] < 0):
        raise ValueError("expected the sign pattern <+,+,+,->")
    return cs[0], cs[1], cs[2], -cs[3]


def quaternion_from_form(q: DiagForm) -> QuatAlgebra:
    """The algebra (z3*z4, z2*z4) over field_from_form(q), entries reduced."""
    z = _z_entries(q)
    _, K = field_from_form(q)
    a, _ = squarefree_part(z[2] * z[3])
    b, _ = squarefree_part(z[1] * z[3])
    ram, r_f = _ram_data(a, b, K)
    return QuatAlgebra(a=a, b=b, field=K, ram_f=ram, r_f=r_f)


def quaternion_algebra(a: int, b: int, K: ImagQuadField) -> QuatAlgebra:
    if a == 0 or b == 0:
        raise ValueError("algebra entries must be nonzero")
    sa, _ = squarefree_part(a)
    sb, _ = squarefree_part(b)
    ram, r_f = _ram_data(sa, sb, K)
    return QuatAlgebra(a=sa, b=sb, field=K, ram_f=ram, r_f=r_f)


def _rational_ram_primes(a: int, b: int) -> list[int]:
    ps = {2}
    for n in (a, b):
        for p, _ in factorize(abs(n)):
            ps.add(p)
    return sorted(p for p in ps if hilbert_symbol(a, b, p) == -1)


def _ram_data(a: int, b: int, K: ImagQuadField):
    """Primes of K where (a,b/k) ramifies, for rational a, b.

    A rational quaternion division algebra splits over every quadratic
    extension of Q_p, so only rational primes that split in K can carry
    ramification upstairs; each such prime contributes both primes
    above it.
    """
    ram = []
    for p in _rational_ram_primes(a, b):
        if splitting_type(K, p) == "split":
            ram.append((p, 2, p))
    r_f = sum(c for _, c, _ in ram)
    return tuple(ram), r_f


def ramified_primes(A: QuatAlgebra):
    return A.ram_f


def ram_norms(A: QuatAlgebra) -> list[int]:
    """Flat list of norms of the finitely many ramified primes of A."""
    out = []
    for _, count, norm in A.ram_f:
        out.extend([norm] * count)
    return sorted(out)


# ---------------------------------------------------------------------------
# covolume formulas


def eichler_covolume(K: ImagQuadField, A: QuatAlgebra, level: list, tol: float = 1e-12) -> float:
    """Covolume of the image of the unit group of an Eichler order.

    level is a list of (prime_norm, exponent) pairs; the empty list is a
    maximal order.  Value: (d_k^{3/2} zeta_k(2) / 4 pi^2)
    * prod over ramified primes of (Nr - 1)
    * prod over level of Nr^{n-1} (Nr + 1).
    """
    val = K.d_k ** 1.5 * zeta_k_2(K, tol) / (4 * math.pi ** 2)
    for norm in ram_norms(A):
        val *= norm - 1
    for norm, exp in level:
        if exp < 1:
            raise ValueError("level exponents must be >= 1")
        val *= norm ** (exp - 1) * (norm + 1)
    return val


@dataclass(frozen=True)
class CovolumeParams:
    S_norms: tuple = ()
    m: int | None = None  # defaults to |S| (the covolume-minimizing choice)
    deg_kA: int = 1

    def resolved_m(self) -> int:
        return len(self.S_norms) if self.m is None else self.m


def maximal_covolume(K: ImagQuadField, A: QuatAlgebra, params: CovolumeParams, tol: float = 1e-12) -> float:
    """Covolume of the maximal lattice with level support S.

    (d_k^{3/2} zeta_k(2) / (8 pi^2 [k_A:k] 2^m))
    * prod over ramified primes of ((Nr - 1)/2)
    * prod over S of (Nr + 1), with 0 <= m <= |S|.
    """
    m = params.resolved_m()
    if not 0 <= m <= len(params.S_norms):
        raise ValueError("m must satisfy 0 <= m <= |S|")
    if not 1 <= params.deg_kA <= K.h_k:
        raise ValueError("[k_A:k] must lie in [1, h_k]")
    val = K.d_k ** 1.5 * zeta_k_2(K, tol) / (8 * math.pi ** 2 * params.deg_kA * 2 ** m)
    for norm in ram_norms(A):
        val *= (norm - 1) / 2
    for norm in params.S_norms:
        val *= norm + 1
    return val


# ---------------------------------------------------------------------------
# effective constants


def c_prime_eps(eps: float) -> float:
    """14.5 + 2**(1/eps + 7)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    return 14.5 + 2.0 ** (1.0 / eps + 7)


@dataclass(frozen=True)
class BoundValue:
    """log10 of a bound, plus which configured constants parameterize it."""

    log10: float
    parameterized_by: tuple = ()

    @property
    def human(self) -> str:
        tail = (
            " (parameterized by %s)" % ", ".join(self.parameterized_by)
            if self.parameterized_by
            else ""
        )
        return "<= 10^%.6f%s" % (self.log10, tail)

    def to_json(self) -> dict:
        return {
            "log10": self.log10,
            "parameterized_by": list(self.parameterized_by),
            "human": self.human,
        }


_LOG10_2 = math.log10(2.0)


def c1_eps_bound(K: ImagQuadField, eps: float) -> BoundValue:
    """log10 of 2**(eps*C'_eps + 2) * 11^2 * d_k^{3/2}."""
    exponent = eps * c_prime_eps(eps) + 2
    return BoundValue(log10=exponent * _LOG10_2 + math.log10(121) + 1.5 * math.log10(K.d_k))


def c_eps_bound(K: ImagQuadField, eps: float, A1: float = 1.0) -> BoundValue:
    """log10 of 2**(eps*C'_eps + 2) * 11^2 * d_k^{A1*omega(d_k) + 3/2}."""
    if A1 < 0:
        raise ValueError("A1 must be nonnegative")
    exponent = eps * c_prime_eps(eps) + 2
    dk_exp = A1 * K.omega_dk + 1.5
    return BoundValue(
        log10=exponent * _LOG10_2 + math.log10(121) + dk_exp * math.log10(K.d_k),
        parameterized_by=("A1",),
    )


def c2_bound(K: ImagQuadField, type_number_one: bool = False, A1: float = 1.0) -> BoundValue:
    """C2 = 1 under an asserted type number of 1, else d_k^{omega(d_k)*A1}."""
    if type_number_one:
        return BoundValue(log10=0.0)
    return BoundValue(
        log10=A1 * K.omega_dk * math.log10(K.d_k), parameterized_by=("A1",)
    )


def generic_S_rf_bound(eps: float, V: float) -> float:
    """r_f + |S| <= eps*C'_eps + eps*log2(V)."""
    if V <= 0:
        raise ValueError("V must be positive")
    return eps * c_prime_eps(eps) + eps * math.log2(V)


def h_k_upper_bound(K: ImagQuadField) -> float:
    """Documentation bound h_k <= 242 * d_k^{3/4}."""
    return 242.0 * K.d_k ** 0.75


# ---------------------------------------------------------------------------
# sharp enumeration of level supports


def prime_norms_ascending(K: ImagQuadField, count: int, exclude_norms: list | None = None):
    """First `count` prime norms of K in increasing order, with multiplicity.

    A split rational prime p contributes two norms p, an inert prime one
    norm p**2, a ramified prime one norm p.  exclude_norms removes that
    many matching entries (used to skip quaternion-ramified primes).
    """
    remaining = list(exclude_norms or [])
    found = []
    p, horizon = 2, 64
    entries = []
    while len(found) < count:
        while p <= horizon:
            if is_prime(p):
                t = splitting_type(K, p)
                norm = p * p if t == "inert" else p
                entries.append((norm, p, 2 if t == "split" else 1))
            p += 1
        entries.sort()
        found = []
        pool = list(remaining)
        for norm, _, mult in entries:
            if norm > horizon:  # later primes could still slot below this
                break
            for _ in range(mult):
                if norm in pool:
                    pool.remove(norm)
                else:
                    found.append(norm)
        if len(found) >= count:
            return found[:count]
        horizon *= 2
    return found[:count]


@dataclass(frozen=True)
class SharpEnumeration:
    mode: str  # "V" or "eps"
    max_S_size: int | None
    coefficient: float
    r_f: int
    deg_kA: int
    norms_considered: tuple
    eps_validity_threshold: float | None = None

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "max_S_size": self.max_S_size,
            "coefficient": self.coefficient,
            "r_f": self.r_f,
            "deg_kA": self.deg_kA,
            "norms_considered": list(self.norms_considered),
            "eps_validity_threshold": self.eps_validity_threshold,
        }


def sharp_S_enumeration(
    K: ImagQuadField,
    ram_norms_list: list,
    V: float | None = None,
    deg_kA: int = 1,
    eps: float | None = None,
    tol: float = 1e-12,
) -> SharpEnumeration:
    """Sharp index coefficients from small-norm enumeration.

    V mode (V given): with m = |S| the maximal covolume is smallest, so
    S is feasible iff base * prod_{S}((Nr+1)/2) <= V with
    base = d_k^{3/2} zeta_k(2) / (8 pi^2 deg) * prod_ram((Nr-1)/2).
    Greedily packing the smallest usable norms maximizes |S|; the index
    coefficient is then 2**(|S|+r_f+1) * deg (this already accounts for
    the covolume factor V, so it multiplies nothing further).

    eps mode (eps given): drop the two smallest usable norms; every
    remaining factor is at least b = (n3+1)/2 for the third-smallest
    norm n3, giving |S| <= log_b(V) + 2 and the coefficient
    2**(r_f+3) * deg multiplying V**eps, valid for eps >= ln2/ln b.
    """
    r_f = len(ram_norms_list)
    if (V is None) == (eps is None):
        raise ValueError("provide exactly one of V (V mode) or eps (eps mode)")
    if eps is not None:
        norms = prime_norms_ascending(K, 3, exclude_norms=ram_norms_list)
        b = (norms[2] + 1) / 2
        threshold = math.log(2) / math.log(b)
        if eps < threshold:
            raise ValueError(
                "eps=%g below the validity threshold ln2/ln((n3+1)/2)=%g" % (eps, threshold)
            )
        return SharpEnumeration(
            mode="eps",
            max_S_size=None,
            coefficient=2.0 ** (r_f + 3) * deg_kA,
            r_f=r_f,
            deg_kA=deg_kA,
            norms_considered=tuple(norms),
            eps_validity_threshold=threshold,
        )
    if V <= 0:
        raise ValueError("V must be positive")
    base = K.d_k ** 1.5 * zeta_k_2(K, tol) / (8 * math.pi ** 2 * deg_kA)
    for norm in ram_norms_list:
        base *= (norm - 1) / 2
    size = 0
    used = []
    acc = base
    while True:
        cand = prime_norms_ascending(K, size + 1, exclude_norms=ram_norms_list)
        nxt = cand[size]
        if acc * (nxt + 1) / 2 > V:
            break
        acc *= (nxt + 1) / 2
        used.append(nxt)
        size += 1
        if size > 64:
            raise RuntimeError("level support enumeration did not terminate")
    return SharpEnumeration(
        mode="V",
        max_S_size=size,
        coefficient=2.0 ** (size + r_f + 1) * deg_kA,
        r_f=r_f,
        deg_kA=deg_kA,
        norms_considered=tuple(used),
    )


# ---------------------------------------------------------------------------
# assembled index bounds


def bianchi_special_index(d: int, eps: float, V: float, A1: float = 1.0) -> BoundValue:
    """log10 of 120 * C_eps * V**eps for the Bianchi-group special subgroup."""
    K = ImagQuadField.from_d(d)
    ce = c_eps_bound(K, eps, A1)
    return BoundValue(
        log10=math.log10(120) + ce.log10 + eps * math.log10(V),
        parameterized_by=ce.parameterized_by,
    )


THEOREM_PREFACTOR = 2 ** 7 * 3 ** 4 * 5  # 51840


def total_index_bound(
    log10_C: float,
    log10_D: float,
    eps: float,
    V: float,
    sharp: SharpEnumeration | None = None,
    parameterized_by: tuple = (),
) -> BoundValue:
    """log10 of the total special-subgroup index bound.

    Generic mode: 2^7 3^4 5 * C_eps * D * V**eps.
    Sharp mode (a SharpEnumeration given): its coefficient replaces the
    generic prefactor * C_eps; a V-mode coefficient already absorbs
    V**eps, an eps-mode coefficient still multiplies it.
    """
    if sharp is not None:
        log10 = math.log10(sharp.coefficient) + log10_D
        if sharp.mode == "eps":
            log10 += eps * math.log10(V)
        return BoundValue(log10=log10, parameterized_by=parameterized_by)
    return BoundValue(
        log10=math.log10(THEOREM_PREFACTOR) + log10_C + log10_D + eps * math.log10(V),
        parameterized_by=parameterized_by,
    )
