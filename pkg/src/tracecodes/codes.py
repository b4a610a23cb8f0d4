"""Defining sets D_a and the codes C_{D_a} they generate.

For a in {0, 1}, D_a = {x != 0 : Tr(x^(2^h+1) + x) = a}, listed in ascending
integer order.  The codeword for a message b is (Tr(b d_1), ..., Tr(b d_n)).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .charsums import quadratic_power_table, trace_dual_map, walsh_hadamard, weil_sum_brute
from .errors import ParameterError
from .gf2m import Field, _check_proper_divisor

# rows of b processed per block during enumeration
_BLOCK = 256


@dataclass(frozen=True)
class DefiningSet:
    m: int
    h: int
    a: int
    elements: np.ndarray = dc_field(repr=False, compare=False)

    @property
    def params(self) -> tuple[int, int, int]:
        return self.m, self.h, self.a

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class Codeword:
    bits: np.ndarray = dc_field(repr=False)
    weight: int


@dataclass
class WeightDistribution:
    counts: dict[int, int]
    n: int
    k: int
    d: int | None  # None for the zero code

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.counts.items())

    def nonzero(self) -> dict[int, int]:
        return {w: c for w, c in sorted(self.counts.items()) if w}

    def polynomial(self) -> str:
        """Weight enumerator, e.g. ``1+36x^96+448x^112``."""
        parts = []
        for w, c in self.pairs():
            parts.append(str(c) if w == 0 else f"{c}x^{w}")
        return "+".join(parts)


def _check_a(a: int):
    if a not in (0, 1):
        raise ParameterError(f"a must be 0 or 1, got {a}")


def defining_value_bits(field: Field, h: int) -> np.ndarray:
    """Tr(x^(2^h+1) + x) for every x."""
    xs = field.elements()
    return field.trace_many(quadratic_power_table(field, h) ^ xs)


def defining_set(field: Field, h: int, a: int) -> DefiningSet:
    _check_proper_divisor(field.m, h)
    _check_a(a)
    bits = defining_value_bits(field, h)
    bits[0] = 2  # drop x = 0
    elems = np.flatnonzero(bits == a).astype(np.int64)
    elems.flags.writeable = False
    return DefiningSet(field.m, h, a, elems)


def count_N(field: Field, h: int, a: int) -> int:
    """|{x : Tr(x^(2^h+1) + x) = a}|, zero included."""
    _check_proper_divisor(field.m, h)
    _check_a(a)
    return int(np.count_nonzero(defining_value_bits(field, h) == a))


def count_N_formula(field: Field, h: int, a: int) -> int:
    """N_a = 2^(m-1) + (-1)^a S_h(1,1) / 2 with the sum brute-forced."""
    s = weil_sum_brute(field, h, 1, 1)
    return 2 ** (field.m - 1) + (-1) ** a * s // 2


def count_Nab(field: Field, h: int, a: int, b: int) -> int:
    """|{x : Tr(x^(2^h+1) + x) = a and Tr(b x) = 0}|."""
    if b == 0:
        raise ParameterError("b must be nonzero")
    _check_proper_divisor(field.m, h)
    _check_a(a)
    xs = field.elements()
    ok = (defining_value_bits(field, h) == a) & (field.trace_many(field.mul_many(xs, b)) == 0)
    return int(np.count_nonzero(ok))


def count_Nab_formula(field: Field, h: int, a: int, b: int) -> int:
    if b == 0:
        raise ParameterError("b must be nonzero")
    s = weil_sum_brute(field, h, 1, 1) + weil_sum_brute(field, h, 1, b ^ 1)
    return 2 ** (field.m - 2) + (-1) ** a * s // 4


def codeword(field: Field, dset: DefiningSet, b: int) -> Codeword:
    bits = field.trace_many(field.mul_many(dset.elements, b))
    return Codeword(bits, int(bits.sum()))


def codeword_blocks(field: Field, dset: DefiningSet, block: int = _BLOCK):
    """Yield (b values, bit matrix) covering every b in the field."""
    d = dset.elements
    if field.has_tables:
        logd = field._log[d]
    for start in range(0, field.q, block):
        bs = np.arange(start, min(start + block, field.q), dtype=np.int64)
        if field.has_tables:
            prod = field._exp[field._log[bs][:, None] + logd[None, :]]
            prod[bs == 0] = 0
            bits = field.trace_table[prod]
        else:
            bits = field.trace_many(field.mul_many(bs[:, None], d[None, :]))
        yield bs, bits


def message_weights(field: Field, dset: DefiningSet) -> np.ndarray:
    """wt(c_b) for every b, indexed by b, by direct trace-table lookups."""
    out = np.empty(field.q, dtype=np.int64)
    for bs, bits in codeword_blocks(field, dset):
        out[bs] = bits.sum(axis=1, dtype=np.int64)
    return out


def message_weights_walsh(field: Field, elements) -> np.ndarray:
    """wt(c_b) for every b via a Walsh-Hadamard transform.

    With Tr(b d) = parity(b & t(d)), wt(c_b) = (n - W(b)) / 2 where W is the
    transform of the multiplicity function of t over the coordinates.
    """
    elements = np.asarray(elements, dtype=np.int64)
    counts = np.bincount(trace_dual_map(field)[elements], minlength=field.q)
    return (len(elements) - walsh_hadamard(counts)) // 2


def enumerate_code(field: Field, dset: DefiningSet) -> tuple[WeightDistribution, np.ndarray]:
    """Enumerate the codeword of every b.

    Returns the code's distribution, with each distinct codeword counted
    once and the dimension taken from the number of distinct codewords,
    together with the per-message weights wt(c_b) indexed by b.
    """
    n = len(dset)
    seen = set()
    counts: dict[int, int] = {}
    weights = np.empty(field.q, dtype=np.int64)
    for bs, bits in codeword_blocks(field, dset):
        packed = np.packbits(bits, axis=1)
        wts = bits.sum(axis=1, dtype=np.int64)
        weights[bs] = wts
        for row, w in zip(packed, wts.tolist()):
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                counts[w] = counts.get(w, 0) + 1
    size = len(seen)
    k = size.bit_length() - 1
    if size != 1 << k:
        raise AssertionError(f"{size} distinct codewords is not a power of two")
    nonzero = [w for w in counts if w]
    dist = WeightDistribution(dict(sorted(counts.items())), n, k, min(nonzero) if nonzero else None)
    return dist, weights


def weight_distribution(field: Field, dset: DefiningSet) -> WeightDistribution:
    """Exact distribution of C_{D_a} by enumerating all 2^m messages."""
    return enumerate_code(field, dset)[0]


def distribution_from_weights(weights: np.ndarray, n: int) -> WeightDistribution:
    """Fold per-message weights into a code distribution by linearity: the
    zero-weight messages form the kernel, and every codeword is hit by
    exactly |kernel| messages."""
    values, mult = np.unique(weights, return_counts=True)
    table = dict(zip(values.tolist(), mult.tolist()))
    kernel = table.get(0, 0)
    total = int(mult.sum())
    if kernel == 0 or total % kernel:
        raise AssertionError("weights do not come from a linear map")
    counts = {w: c // kernel for w, c in sorted(table.items())}
    k = (total // kernel).bit_length() - 1
    nonzero = [w for w in counts if w]
    return WeightDistribution(counts, n, k, min(nonzero) if nonzero else None)


def dual_distance_at_least_3(elements: DefiningSet | Sequence[int]) -> bool:
    """Generator-matrix columns nonzero and pairwise distinct."""
    if isinstance(elements, DefiningSet):
        elements = elements.elements
    vals = [int(x) for x in elements]
    return 0 not in vals and len(set(vals)) == len(vals)


def generator_matrix(field: Field, dset: DefiningSet) -> np.ndarray:
    """m x n matrix whose column i holds the polynomial-basis bits of d_i."""
    d = dset.elements
    return ((d[None, :] >> np.arange(field.m)[:, None]) & 1).astype(np.uint8)
