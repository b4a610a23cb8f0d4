"""Closed-form parameters of C_{D_a}, moment identities and Johnson bound I.

Every case table is first written over messages: one row per nonzero b,
giving wt(c_b) and how many b produce it.  A row of weight 0 means part of
the message space maps to the zero codeword; :func:`fold_message_rows`
divides that kernel out, which is how the dimension drop at m/h = 2, a = 0
and the degenerate m = 3, h = 1 code come out of the same formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charsums import jacobi2
from .errors import ConsistencyError, ParameterError
from .gf2m import _check_proper_divisor

CASES = ("odd", "two", "two-mod-four", "zero-mod-four")


@dataclass
class CasePrediction:
    case: str
    n: int
    k: int
    dist: dict[int, int]  # includes weight 0 -> 1

    @property
    def counts(self) -> dict[int, int]:
        return self.dist

    def nonzero(self) -> dict[int, int]:
        return {w: c for w, c in sorted(self.dist.items()) if w}


@dataclass
class MomentReport:
    p0_ok: bool
    p1_ok: bool
    p2_ok: bool | None  # None when dual distance >= 3 is not established
    p0: tuple[int, int]
    p1: tuple[int, int]
    p2: tuple[Fraction, Fraction] | None

    @property
    def ok(self) -> bool:
        return self.p0_ok and self.p1_ok and self.p2_ok is not False


def classify_case(m: int, h: int) -> str:
    _check_proper_divisor(m, h)
    r = m // h
    if r % 2:
        return "odd"
    if r == 2:
        return "two"
    return "two-mod-four" if r % 4 == 2 else "zero-mod-four"


def _message_rows(m: int, h: int, a: int) -> tuple[str, int, list[tuple[int, int]]]:
    """(case, length, [(weight, number of nonzero b)])."""
    case = classify_case(m, h)
    sa = (-1) ** a
    if case == "odd":
        j = jacobi2(m // h) ** h
        n = 2 ** (m - 1) + sa * j * 2 ** ((m + h - 2) // 2) + a - 1
        rows = [
            (2 ** (m - 2), 2 ** (m - h - 1) - 1 + j * 2 ** ((m - h - 2) // 2)),
            (2 ** (m - 2) + sa * j * 2 ** ((m + h - 2) // 2),
             2 ** (m - h - 1) - j * 2 ** ((m - h - 2) // 2)),
            (2 ** (m - 2) + sa * j * 2 ** ((m + h - 4) // 2), 2 ** m - 2 ** (m - h)),
        ]
    elif case == "two":
        n = 2 ** (m - 1) + a - 1
        if a == 0:
            # b = 1 annihilates every coordinate; the rest have weight 2^(m-2)
            rows = [(0, 1), (2 ** (m - 2), 2 ** m - 2)]
        else:
            rows = [(2 ** (m - 1), 1), (2 ** (m - 2), 2 ** m - 2)]
    elif case == "two-mod-four":
        e = m // 2
        n = 2 ** (m - 1) + a - 1
        rows = [
            (2 ** (m - 2), 2 ** m - 2 ** (m - 2 * h) - 1),
            (2 ** (m - 2) - 2 ** (e + h - 2), 2 ** (m - 2 * h - 1) + sa * 2 ** (e - h - 1)),
            (2 ** (m - 2) + 2 ** (e + h - 2), 2 ** (m - 2 * h - 1) - sa * 2 ** (e - h - 1)),
        ]
    else:
        e = m // 2
        # (-1)^((m+4a)/4) with 4 | m
        s = (-1) ** (m // 4) * sa
        s4 = (-1) ** (m // 4)
        n = 2 ** (m - 1) - s * 2 ** (e + h - 1) + a - 1
        rows = [
            (2 ** (m - 2) - s * 2 ** (e + h - 2), 2 ** m - 2 ** (m - 2 * h)),
            (2 ** (m - 2), 2 ** (m - 2 * h - 1) - s4 * 2 ** (e - h - 1) - 1),
            (2 ** (m - 2) - s * 2 ** (e + h - 1), 2 ** (m - 2 * h - 1) + s4 * 2 ** (e - h - 1)),
        ]
    return case, n, rows


def fold_message_rows(m: int, rows: list[tuple[int, int]]) -> tuple[int, dict[int, int]]:
    """Turn per-message rows over F_q^* into (k, code distribution)."""
    per_message: dict[int, int] = {0: 1}
    for w, c in rows:
        if c < 0:
            raise ConsistencyError(f"negative multiplicity {c} at weight {w}")
        if w < 0:
            raise ConsistencyError(f"negative weight {w}")
        if c:
            per_message[w] = per_message.get(w, 0) + c
    if sum(per_message.values()) != 2 ** m:
        raise ConsistencyError("multiplicities do not cover the message space")
    kernel = per_message[0]
    if kernel & (kernel - 1):
        raise ConsistencyError(f"kernel size {kernel} is not a power of two")
    dist = {}
    for w, c in sorted(per_message.items()):
        if c % kernel:
            raise ConsistencyError(f"multiplicity {c} at weight {w} not divisible by {kernel}")
        dist[w] = c // kernel
    return m - (kernel.bit_length() - 1), dist


def predicted_code(m: int, h: int, a: int) -> CasePrediction:
    if a not in (0, 1):
        raise ParameterError(f"a must be 0 or 1, got {a}")
    case, n, rows = _message_rows(m, h, a)
    k, dist = fold_message_rows(m, rows)
    if max(dist) > n:
        raise ConsistencyError(f"weight {max(dist)} exceeds length {n}")
    return CasePrediction(case, n, k, dist)


def pless_check(dist, dual_ge_3: bool | None = None) -> MomentReport:
    """First three Pless power moments for a binary [n, k] code.

    P0: sum A_w = 2^k.  P1: sum w A_w = n 2^(k-1) (no zero coordinate).
    P2: sum w^2 A_w = n(n+1) 2^(k-2), asserted only when ``dual_ge_3``.
    ``dist`` is anything with ``counts``, ``n`` and ``k``.
    """
    counts, n, k = dist.counts, dist.n, dist.k
    s0 = sum(counts.values())
    s1 = sum(w * c for w, c in counts.items())
    s2 = sum(w * w * c for w, c in counts.items())
    r0 = 2 ** k
    # the zero code has only zero coordinates, so P1 and P2 hold vacuously
    if k == 0:
        r1 = Fraction(s1)
        r2 = Fraction(s2)
    else:
        r1 = Fraction(n * 2 ** k, 2)
        r2 = Fraction(n * (n + 1) * 2 ** k, 4)
    p2 = None
    p2_ok = None
    if dual_ge_3:
        p2 = (Fraction(s2), r2)
        p2_ok = s2 == r2
    return MomentReport(s0 == r0, s1 == r1, p2_ok, (s0, r0), (s1, r1), p2)


def johnson_bound_1(n: int, d: int, w: int):
    """Johnson bound I on a binary constant-weight code of length n, minimum
    distance d = 2 delta and weight w: floor(n delta / (w^2 - w n + n delta))
    when the denominator is positive, else the string "inapplicable".

    delta is d/2 taken exactly, so an odd d (a single-word code) is allowed.
    """
    if not (isinstance(n, int) and isinstance(d, int) and isinstance(w, int)):
        raise ParameterError("n, d, w must be integers")
    if not n >= w >= 1 or d < 1:
        raise ParameterError(f"need n >= w >= 1 and d >= 1, got n={n}, d={d}, w={w}")
    delta = Fraction(d, 2)
    den = w * w - w * n + n * delta
    if den <= 0:
        return "inapplicable"
    return int(n * delta // den)
