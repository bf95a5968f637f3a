"""Integer relations among complex numbers by LLL reduction."""

import itertools
import logging
from typing import List, Sequence, Tuple

import mpmath  # type: ignore
from mpmath import mp
from sympy import QQ, ZZ  # type: ignore
from sympy.polys.matrices import DomainMatrix  # type: ignore

logger = logging.getLogger(__name__)

LLL_DELTA = QQ(99, 100)
ENUMERATED_ROWS = 8


def reduced_relations(values: Sequence, scale_digits: int) -> List[Tuple[int, ...]]:
    """Short integer vectors c with sum c_k v_k small, shortest first.

    Each v_k contributes the row e_k + S*(Re v_k, Im v_k) with S = 10^scale_digits;
    the reduced basis is returned with the embedding columns stripped.
    """
    n = len(values)
    scale = mp.mpf(10) ** scale_digits
    rows = []
    for k, v in enumerate(values):
        v = mp.mpc(v)
        row = [ZZ(0)] * n
        row[k] = ZZ(1)
        row.append(ZZ(int(mp.nint(scale * v.real))))
        row.append(ZZ(int(mp.nint(scale * v.imag))))
        rows.append(row)

    basis = DomainMatrix(rows, (n, n + 2), ZZ).lll(delta=LLL_DELTA).to_list()
    vectors = [tuple(int(c) for c in row[:n]) for row in basis]
    vectors.sort(key=lambda vec: sum(c * c for c in vec))
    return vectors


def candidate_relations(
    values: Sequence, scale_digits: int, rows: int = ENUMERATED_ROWS
) -> List[Tuple[int, ...]]:
    """Reduced vectors plus sums and differences of pairs among the first rows."""
    basis = reduced_relations(values, scale_digits)[:rows]
    seen = set()
    out: List[Tuple[int, ...]] = []

    def offer(vec: Tuple[int, ...]):
        if any(vec):
            first = next(c for c in vec if c)
            if first < 0:
                vec = tuple(-c for c in vec)
            if vec not in seen:
                seen.add(vec)
                out.append(vec)

    for vec in basis:
        offer(vec)
    for u, v in itertools.combinations(basis, 2):
        offer(tuple(a + b for a, b in zip(u, v)))
        offer(tuple(a - b for a, b in zip(u, v)))
    return out


def residual(coefficients: Sequence[int], values: Sequence) -> mpmath.mpf:
    return abs(mp.fsum(c * mp.mpc(v) for c, v in zip(coefficients, values)))
