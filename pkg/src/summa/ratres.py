"""Rational-function residues for the shift and q-dilation settings.

The elliptic obstruction theory degenerates in two classical directions,
and both are implemented here on exact partial-fraction data:

* shift: tau acts by x -> x + 1.  Poles live on Z-cosets of Q; a rational
  function is a difference tau(g) - g iff, for every coset and every
  order, the coefficients along the coset sum to zero.  The polynomial
  part never obstructs (indefinite summation of polynomials is total).

* q-dilation: tau acts by x -> q*x with q rational, nonzero, |q| != 1.
  Poles live on q-power orbits of Q*, the origin is a fixed point whose
  Laurent data is graded by degree, and the obstructions are weighted
  orbit sums plus the bare constant coefficient.

A rational function is stored as a :class:`RatPF`: a Laurent table for
the part supported at the origin and infinity (the polynomial part plus,
in the q setting, the pole at zero) and a principal-part table mapping
(pole, order) to the coefficient of 1/(x - pole)**order.

:func:`pfd` builds this data from numerator/denominator coefficient
lists, provided the denominator splits into linear factors over Q; it
exists so test inputs can be written as honest rational functions.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import SchemaError, UnsplitDenominator
from .scalars import as_rat, rat_from_str, rat_to_str

# ----------------------------------------------------------------------
# exact polynomial helpers (ascending coefficient lists of Fractions)


def _strip(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_eval(c: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for k, bk in enumerate(b):
            out[i + k] += ai * bk
    return out


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] * inv
        if coef:
            q[i] = coef
            for k, bk in enumerate(b):
                a[i + k] -= coef * bk
    return _strip(q), _strip(a)


def _divmod_linear(c: list[Fraction], alpha: Fraction):
    """Divide by (x - alpha); return (quotient, remainder)."""
    n = len(c)
    if n <= 1:
        return [], (c[0] if c else Fraction(0))
    q = [Fraction(0)] * (n - 1)
    q[n - 2] = c[n - 1]
    for k in range(n - 2, 0, -1):
        q[k - 1] = c[k] + alpha * q[k]
    return q, c[0] + alpha * q[0]


def _taylor(c: list[Fraction], alpha: Fraction) -> list[Fraction]:
    """Coefficients of p(alpha + t) as a polynomial in t."""
    work = list(c)
    out = []
    for _ in range(len(c)):
        work, r = _divmod_linear(work, alpha)
        out.append(r)
    return out


def _series_inv(b: list[Fraction], n: int) -> list[Fraction]:
    """Multiplicative inverse of a power series mod t**n (b[0] != 0)."""
    inv = [Fraction(0)] * n
    inv[0] = 1 / b[0]
    for i in range(1, n):
        acc = Fraction(0)
        for k in range(1, min(i, len(b) - 1) + 1):
            acc += b[k] * inv[i - k]
        inv[i] = -acc * inv[0]
    return inv


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# ----------------------------------------------------------------------
# data model


class RatPF:
    """Laurent table plus principal parts of a rational function.

    laurent:   degree -> coefficient (any integer degree; negative
               degrees encode the pole at the origin in the q setting)
    principal: (pole, order) -> coefficient of 1/(x - pole)**order,
               order >= 1
    """

    __slots__ = ("laurent", "principal")

    def __init__(self, laurent=None, principal=None):
        self.laurent: dict[int, Fraction] = {}
        self.principal: dict[tuple[Fraction, int], Fraction] = {}
        for k, a in (laurent or {}).items():
            if not isinstance(k, int) or isinstance(k, bool):
                raise ValueError(f"laurent degree must be int, got {k!r}")
            a = as_rat(a)
            if a:
                self.laurent[k] = a
        for key, c in (principal or {}).items():
            pole, j = key
            pole = as_rat(pole)
            if not isinstance(j, int) or isinstance(j, bool) or j < 1:
                raise ValueError(f"pole order must be an integer >= 1, got {j!r}")
            c = as_rat(c)
            if c:
                self.principal[(pole, j)] = c

    @classmethod
    def zero(cls) -> "RatPF":
        return cls()

    def is_zero(self) -> bool:
        return not self.laurent and not self.principal

    def poles(self) -> list[Fraction]:
        return sorted({pole for (pole, _) in self.principal})

    def coeff(self, pole, j: int) -> Fraction:
        return self.principal.get((as_rat(pole), j), Fraction(0))

    def __add__(self, other: "RatPF") -> "RatPF":
        laurent = dict(self.laurent)
        for k, a in other.laurent.items():
            laurent[k] = laurent.get(k, Fraction(0)) + a
        principal = dict(self.principal)
        for key, c in other.principal.items():
            principal[key] = principal.get(key, Fraction(0)) + c
        return RatPF(laurent, principal)

    def __neg__(self) -> "RatPF":
        return RatPF(
            {k: -a for k, a in self.laurent.items()},
            {key: -c for key, c in self.principal.items()},
        )

    def __sub__(self, other: "RatPF") -> "RatPF":
        return self + (-other)

    def scale(self, factor) -> "RatPF":
        f = as_rat(factor)
        return RatPF(
            {k: a * f for k, a in self.laurent.items()},
            {key: c * f for key, c in self.principal.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatPF):
            return NotImplemented
        return self.laurent == other.laurent and self.principal == other.principal

    __hash__ = None

    def __repr__(self) -> str:
        bits = [f"x^{k}:{rat_to_str(a)}" for k, a in sorted(self.laurent.items())]
        bits += [
            f"({rat_to_str(p)};{j}):{rat_to_str(c)}"
            for (p, j), c in sorted(self.principal.items())
        ]
        return "RatPF(" + ", ".join(bits or ["0"]) + ")"

    def evaluate(self, x) -> Fraction:
        """Exact value at a rational sample point away from the poles."""
        x = as_rat(x)
        total = Fraction(0)
        for k, a in self.laurent.items():
            total += a * x**k
        for (pole, j), c in self.principal.items():
            total += c / (x - pole) ** j
        return total

    # wire format -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "laurent": [
                {"k": k, "a": rat_to_str(a)} for k, a in sorted(self.laurent.items())
            ],
            "principal": [
                {"pole": rat_to_str(p), "j": j, "c": rat_to_str(c)}
                for (p, j), c in sorted(self.principal.items())
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "RatPF":
        if not isinstance(obj, dict):
            raise SchemaError("rational payload must be an object")
        laurent = {}
        for i, entry in enumerate(obj.get("laurent", [])):
            if not isinstance(entry, dict) or {"k", "a"} - set(entry):
                raise SchemaError(f"laurent[{i}] must have keys k, a")
            k = entry["k"]
            if not isinstance(k, int) or isinstance(k, bool):
                raise SchemaError(f"laurent[{i}].k must be an integer")
            if k in laurent:
                raise SchemaError(f"laurent[{i}] duplicates degree {k}")
            laurent[k] = rat_from_str(entry["a"])
        principal = {}
        for i, entry in enumerate(obj.get("principal", [])):
            if not isinstance(entry, dict) or {"pole", "j", "c"} - set(entry):
                raise SchemaError(f"principal[{i}] must have keys pole, j, c")
            j = entry["j"]
            if not isinstance(j, int) or isinstance(j, bool) or j < 1:
                raise SchemaError(f"principal[{i}].j must be an integer >= 1")
            key = (rat_from_str(entry["pole"]), j)
            if key in principal:
                raise SchemaError(f"principal[{i}] duplicates {entry['pole']}, {j}")
            principal[key] = rat_from_str(entry["c"])
        return cls(laurent, principal)


# ----------------------------------------------------------------------
# the two tau actions


def tau_shift(f: RatPF, k: int = 1) -> RatPF:
    """Compose with x -> x + k: poles drop by k, polynomial re-expands."""
    if any(deg < 0 for deg in f.laurent):
        raise ValueError("shift action needs a polynomial Laurent part")
    top = max(f.laurent, default=-1)
    coeffs = [f.laurent.get(i, Fraction(0)) for i in range(top + 1)]
    shifted = _taylor(coeffs, Fraction(k))
    return RatPF(
        {i: a for i, a in enumerate(shifted)},
        {(pole - k, j): c for (pole, j), c in f.principal.items()},
    )


def check_q(q) -> Fraction:
    q = as_rat(q)
    if q == 0 or abs(q) == 1:
        raise ValueError("q must be a nonzero rational with |q| != 1")
    return q


def tau_q(f: RatPF, q, k: int = 1) -> RatPF:
    """Compose with x -> q**k * x: degrees pick up q**(deg*k), poles divide."""
    q = check_q(q)
    return RatPF(
        {deg: a * q ** (deg * k) for deg, a in f.laurent.items()},
        {(pole / q**k, j): c * q ** (-j * k) for (pole, j), c in f.principal.items()},
    )


# ----------------------------------------------------------------------
# shift-orbit residues


def _frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


def dres(f: RatPF, beta, j: int) -> Fraction:
    """Coset residue: sum of order-j coefficients over poles in beta + Z."""
    beta = as_rat(beta)
    total = Fraction(0)
    for (pole, jj), c in f.principal.items():
        if jj == j and (pole - beta).denominator == 1:
            total += c
    return total


def shift_orbit_table(f: RatPF) -> dict[tuple[Fraction, int], Fraction]:
    """All nonzero coset residues, keyed by (fractional part, order)."""
    table: dict[tuple[Fraction, int], Fraction] = {}
    for (pole, j), c in f.principal.items():
        key = (_frac_part(pole), j)
        table[key] = table.get(key, Fraction(0)) + c
    return {k: v for k, v in table.items() if v}


def shift_summable(f: RatPF) -> bool:
    """Whether f = tau(g) - g has a rational solution in the shift setting."""
    if any(deg < 0 for deg in f.laurent):
        raise ValueError("shift setting needs a polynomial Laurent part")
    return not shift_orbit_table(f)


def _binom_poly(m: int) -> list[Fraction]:
    """Coefficients of x(x-1)...(x-m+1)/m!."""
    out = [Fraction(1)]
    for i in range(m):
        out = _poly_mul(out, [Fraction(-i), Fraction(1)])
    fact = math.factorial(m)
    return [a / fact for a in out]


def _poly_antidifference(coeffs: list[Fraction]) -> list[Fraction]:
    """P with P(x+1) - P(x) = p(x), via the forward-difference basis.

    Writing p in the binomial basis, p = sum_k D_k * C(x, k) with
    D_k the k-th forward difference of p at 0, the antidifference is
    sum_k D_k * C(x, k+1).
    """
    coeffs = _strip(list(coeffs))
    if not coeffs:
        return []
    d = len(coeffs) - 1
    vals = [_poly_eval(coeffs, Fraction(i)) for i in range(d + 1)]
    out: list[Fraction] = []
    for k in range(d + 1):
        if vals[0]:
            basis = _binom_poly(k + 1)
            out = [
                (out[i] if i < len(out) else Fraction(0))
                + vals[0] * (basis[i] if i < len(basis) else Fraction(0))
                for i in range(max(len(out), len(basis)))
            ]
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    return _strip(out)


def shift_certificate(f: RatPF) -> RatPF | None:
    """A g with tau_shift(g) - g == f, or None when obstructed.

    Principal parts are summed by prefix along each Z-coset (finite iff
    the coset residue vanishes); the polynomial part always integrates.
    """
    if not shift_summable(f):
        return None
    principal: dict[tuple[Fraction, int], Fraction] = {}
    groups: dict[tuple[Fraction, int], dict[int, Fraction]] = {}
    for (pole, j), c in f.principal.items():
        rep = _frac_part(pole)
        groups.setdefault((rep, j), {})[math.floor(pole - rep)] = c
    for (rep, j), coeffs in groups.items():
        lo, hi = min(coeffs), max(coeffs)
        run = Fraction(0)
        for n in range(lo, hi):
            run += coeffs.get(n, Fraction(0))
            if run:
                principal[(rep + n + 1, j)] = run
    top = max(f.laurent, default=-1)
    poly = _poly_antidifference([f.laurent.get(i, Fraction(0)) for i in range(top + 1)])
    return RatPF({i: a for i, a in enumerate(poly)}, principal)


# ----------------------------------------------------------------------
# q-orbit residues


def q_log(q, r) -> int | None:
    """The integer l with q**l == r, if one exists."""
    q, r = as_rat(q), as_rat(r)
    if r == 0:
        return None
    try:
        num = math.log(abs(r.numerator)) - math.log(r.denominator)
        den = math.log(abs(q.numerator)) - math.log(q.denominator)
        guess = round(num / den) if den else 0
    except (ValueError, OverflowError):
        guess = 0
    for ell in (guess - 1, guess, guess + 1):
        if q**ell == r:
            return ell
    return None


def _q_orbits(f: RatPF, q: Fraction) -> dict[Fraction, list[Fraction]]:
    """Group the poles into q-power orbits keyed by their smallest member."""
    orbits: list[list[Fraction]] = []
    for pole in f.poles():
        if pole == 0:
            raise ValueError("pole at the origin must live in the Laurent part")
        for group in orbits:
            if q_log(q, pole / group[0]) is not None:
                group.append(pole)
                break
        else:
            orbits.append([pole])
    return {min(group): group for group in orbits}


def qres(f: RatPF, q, beta, j: int) -> Fraction:
    """Weighted orbit residue relative to the base point beta.

    Sums q**(-l*j) * c_j(f, q**l * beta) over all integers l hitting a
    pole.  Vanishing does not depend on the choice of beta within the
    orbit; the value itself is rescaled by q**(j*shift) under rebasing.
    """
    q, beta = check_q(q), as_rat(beta)
    if beta == 0:
        raise ValueError("base point must be nonzero")
    total = Fraction(0)
    for (pole, jj), c in f.principal.items():
        if jj != j:
            continue
        ell = q_log(q, pole / beta)
        if ell is not None:
            total += c * q ** (-ell * j)
    return total


def qres_inf(f: RatPF) -> Fraction:
    """The obstruction at the fixed points: the bare constant coefficient."""
    return f.laurent.get(0, Fraction(0))


def q_orbit_table(f: RatPF, q) -> dict[tuple[Fraction, int], Fraction]:
    """All nonzero weighted orbit residues, keyed by (orbit base, order)."""
    q = check_q(q)
    table: dict[tuple[Fraction, int], Fraction] = {}
    for base, group in _q_orbits(f, q).items():
        orders = {j for (pole, j) in f.principal if pole in group}
        for j in sorted(orders):
            value = qres(f, q, base, j)
            if value:
                table[(base, j)] = value
    return table


def q_summable(f: RatPF, q) -> bool:
    """Whether f = tau(g) - g has a rational solution in the q setting."""
    return not qres_inf(f) and not q_orbit_table(f, q)


def q_certificate(f: RatPF, q) -> RatPF | None:
    """A g with tau_q(g, q) - g == f, or None when obstructed.

    Degrees k != 0 divide by q**k - 1; the constant coefficient has no
    preimage.  Principal parts are summed by weighted prefix along each
    q-power orbit.
    """
    q = check_q(q)
    if qres_inf(f):
        return None
    laurent = {k: a / (q**k - 1) for k, a in f.laurent.items() if k != 0}
    principal: dict[tuple[Fraction, int], Fraction] = {}
    for base, group in _q_orbits(f, q).items():
        orders = {j for (pole, j) in f.principal if pole in group}
        for j in sorted(orders):
            coeffs = {}
            for pole in group:
                c = f.principal.get((pole, j))
                if c:
                    coeffs[q_log(q, pole / base)] = c
            if not coeffs:
                continue
            lo, hi = min(coeffs), max(coeffs)
            run = Fraction(0)
            for ell in range(lo, hi + 1):
                run += coeffs.get(ell, Fraction(0)) * q ** (-ell * j)
                if ell == hi:
                    if run:
                        return None  # weighted prefix never closes
                elif run:
                    principal[(base * q ** (ell + 1), j)] = run * q ** ((ell + 1) * j)
    return RatPF(laurent, principal)


# ----------------------------------------------------------------------
# partial fractions over Q


def _rational_roots(c: list[Fraction]) -> tuple[dict[Fraction, int], list[Fraction]]:
    """Extract rational roots with multiplicity; return (roots, residual)."""
    roots: dict[Fraction, int] = {}
    work = list(c)
    # the root at the origin first: count leading zero coefficients
    zero_mult = 0
    while work and work[0] == 0:
        work.pop(0)
        zero_mult += 1
    if zero_mult:
        roots[Fraction(0)] = zero_mult
    if len(work) > 1:
        # candidates p/s from the primitive integer model
        den_lcm = math.lcm(*(a.denominator for a in work))
        ints = [int(a * den_lcm) for a in work]
        content = math.gcd(*ints)
        ints = [a // content for a in ints]
        cands = sorted(
            {
                Fraction(sign * p, s)
                for p in _divisors(ints[0])
                for s in _divisors(ints[-1])
                for sign in (1, -1)
            }
        )
        for cand in cands:
            while len(work) > 1 and _poly_eval(work, cand) == 0:
                work, _ = _divmod_linear(work, cand)
                roots[cand] = roots.get(cand, 0) + 1
    return roots, work


def pfd(num, den, mode: str = "shift") -> RatPF:
    """Partial-fraction data of num/den (ascending coefficient lists).

    The denominator must split into linear factors over Q; otherwise
    UnsplitDenominator is raised.  In q mode the pole at the origin is
    folded into negative Laurent degrees; in shift mode it stays a pole.
    """
    if mode not in ("shift", "q"):
        raise ValueError(f"mode must be 'shift' or 'q', got {mode!r}")
    num = _strip([as_rat(a) for a in num])
    den = _strip([as_rat(a) for a in den])
    if not den:
        raise ZeroDivisionError("zero denominator")
    quot, rem = _poly_divmod(num, den)
    laurent = {i: a for i, a in enumerate(quot)}
    principal: dict[tuple[Fraction, int], Fraction] = {}
    if rem:
        roots, residual = _rational_roots(den)
        if len(residual) > 1:
            raise UnsplitDenominator(
                f"denominator has a degree-{len(residual) - 1} factor "
                "with no rational root"
            )
        for alpha, mult in roots.items():
            a_ser = _taylor(rem, alpha)
            e_ser = _taylor(den, alpha)
            b_ser = e_ser[mult:]  # e has an exact zero of order mult at alpha
            inv = _series_inv(b_ser, mult)
            for j in range(1, mult + 1):
                # coefficient of t**(mult - j) in a_ser * inv
                idx = mult - j
                coef = sum(
                    (a_ser[i] if i < len(a_ser) else Fraction(0)) * inv[idx - i]
                    for i in range(idx + 1)
                )
                if coef:
                    principal[(alpha, j)] = coef
    if mode == "q":
        for (pole, j) in [k for k in principal if k[0] == 0]:
            laurent[-j] = laurent.get(-j, Fraction(0)) + principal.pop((pole, j))
    return RatPF(laurent, principal)
