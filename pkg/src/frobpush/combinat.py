"""Exact integer combinatorics underlying every multiplicity in the catalog.

The single most important quantity is ``composition_count(i, m, d, q)``: the
number of ordered (d+1)-tuples with entries in [0, q-1] summing to m + i*q,
where q = p^e is a prime power.  It is computed through an alternating
binomial sum and checked against ``composition_count_oracle``, which extracts
the same coefficient from the polynomial (1 + t + ... + t^{q-1})^{d+1} by
direct convolution.  Everything is plain ``int`` arithmetic; the counts grow
like q^d and overflow fixed-width integers almost immediately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import accumulate
from typing import NamedTuple

from .errors import InvalidParameterError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimePower:
    """A prime power q = p^e with p prime and e >= 1.

    Inputs are tiny (p and e both fit comfortably in machine words), so
    primality is checked by trial division; q itself may be huge.
    """

    p: int
    e: int
    q: int = field(init=False)

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise InvalidParameterError(f"p must be prime; got p={self.p}")
        if self.e < 1:
            raise InvalidParameterError(f"e must satisfy e >= 1; got e={self.e}")
        object.__setattr__(self, "q", self.p**self.e)

    def __repr__(self) -> str:
        return f"PrimePower(p={self.p}, e={self.e}, q={self.q})"


class FloorResidue(NamedTuple):
    floor_part: int
    residue: int


def floor_residue(n: int, q: int) -> FloorResidue:
    """Euclidean split n = floor_part*q + residue with 0 <= residue <= q-1.

    Holds for negative n as well: floor_residue(-6, 4) == (-2, 2).
    """
    if q <= 0:
        raise InvalidParameterError(f"modulus must be positive; got q={q}")
    fl, r = divmod(n, q)
    return FloorResidue(fl, r)


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), defined as 0 whenever k < 0, k > n or n < 0.

    The zero convention is load-bearing: the alternating sums below index
    past their valid ranges on purpose.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def composition_count(i: int, m: int, d: int, fp: PrimePower) -> int:
    """Number of (d+1)-tuples in [0, q-1]^{d+1} summing to m + i*q.

    Evaluated by the alternating closed form
    sum_{j=0}^{i} (-1)^{i-j} C(d+1, i-j) C(j*q + m + d, d);
    returns 0 for i < 0, and vanishes exactly outside
    0 <= m + i*q <= (d+1)(q-1).
    """
    q = fp.q
    if not 0 <= m <= q - 1:
        raise InvalidParameterError(f"m must satisfy 0 <= m <= q-1; got m={m}, q={q}")
    if d < 0:
        raise InvalidParameterError(f"d must satisfy d >= 0; got d={d}")
    if i < 0:
        return 0
    total = 0
    for j in range(i + 1):
        term = binom(d + 1, i - j) * binom(j * q + m + d, d)
        if (i - j) % 2:
            total -= term
        else:
            total += term
    return total


def bounded_power_coefficients(q: int, parts: int) -> list[int]:
    """Coefficient list of (1 + t + ... + t^{q-1})^{parts}.

    Computed by repeated convolution with a sliding window of prefix sums,
    so the result is independent of the closed form it is used to check.
    """
    if q < 1:
        raise InvalidParameterError(f"q must satisfy q >= 1; got q={q}")
    if parts < 0:
        raise InvalidParameterError(f"parts must satisfy parts >= 0; got {parts}")
    coeffs = [1]
    for _ in range(parts):
        prefix = list(accumulate(coeffs))
        top = len(coeffs) - 1
        out = []
        for s in range(len(coeffs) + q - 1):
            hi = min(s, top)
            lo = s - q + 1
            window = prefix[hi] - (prefix[lo - 1] if lo >= 1 else 0)
            out.append(window)
        coeffs = out
    return coeffs


def composition_count_oracle(i: int, m: int, d: int, fp: PrimePower) -> int:
    """Same count as ``composition_count`` by direct coefficient extraction.

    Intended for small q^{d+1} budgets; used as the independent oracle in
    differential tests.
    """
    q = fp.q
    if not 0 <= m <= q - 1:
        raise InvalidParameterError(f"m must satisfy 0 <= m <= q-1; got m={m}, q={q}")
    if d < 0:
        raise InvalidParameterError(f"d must satisfy d >= 0; got d={d}")
    n = m + i * q
    if n < 0:
        return 0
    table = bounded_power_coefficients(q, d + 1)
    return table[n] if n < len(table) else 0


def eulerian(d: int, i: int) -> int:
    """Eulerian number A(d, i) = sum_{j=0}^{i} (-1)^j C(d+1, j) (i-j)^d.

    Satisfies sum_{i=0}^{d} A(d, i) = d! and A(d, 0) = 0 for d >= 1; the
    alternating sum vanishes on its own outside 1 <= i <= d.
    """
    if d < 1:
        raise InvalidParameterError(f"d must satisfy d >= 1; got d={d}")
    if i < 0:
        return 0
    total = 0
    for j in range(i + 1):
        term = binom(d + 1, j) * (i - j) ** d
        if j % 2:
            total -= term
        else:
            total += term
    return total


def sum_identity_holds(m: int, d: int, fp: PrimePower) -> bool:
    """True iff the counts over i = 0..d for a fixed residue m add up to q^d."""
    total = sum(composition_count(i, m, d, fp) for i in range(d + 1))
    return total == fp.q**d


def shifted_sum_identity_holds(l: int, d: int, fp: PrimePower) -> bool:
    """Identity tying a full residue sweep in dimension d-1 to dimension d.

    Checks, for 1 <= l <= d,
    sum_{j=0}^{q-1} count(l-1, j; d-1) ==
        count(l, 0; d) - count(l, 0; d-1) + count(l-1, 0; d-1).
    """
    if not 1 <= l <= d:
        raise InvalidParameterError(f"l must satisfy 1 <= l <= d; got l={l}, d={d}")
    lhs = sum(composition_count(l - 1, j, d - 1, fp) for j in range(fp.q))
    rhs = (
        composition_count(l, 0, d, fp)
        - composition_count(l, 0, d - 1, fp)
        + composition_count(l - 1, 0, d - 1, fp)
    )
    return lhs == rhs
