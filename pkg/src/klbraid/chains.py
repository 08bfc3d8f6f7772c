"""The index set of partition chains behind the closed coefficient formula.

A chain triple for (n, i) is (Lambda, A, Xi) with Lambda = (lam_1, ..., lam_q)
a chain of integer partitions, A and Xi integer vectors of the same length,
subject to eight conditions (labelled i..viii in validation reports):

    (i)    lam_1 is a partition of n
    (ii)   lam_j is a partition of length(lam_{j-1}) for j > 1
    (iii)  alpha_1 + xi_1 = n - 1 - i
    (iv)   alpha_j + xi_j = length(lam_{j-1}) - 1 - xi_{j-1} for j > 1
    (v)    0 <= alpha_j <= size(lam_j) - length(lam_j) for all j
    (vi)   xi_j = 0 whenever length(lam_j) = 1
    (vii)  0 <= xi_j < (length(lam_j) - 1) / 2 whenever length(lam_j) >= 2
    (viii) xi_j = 0 exactly at the last position j = q

Conditions (iii)/(iv) make each xi_j the coefficient index of a smaller
coefficient C_{length(lam_j), xi_j}, and (vii) is that coefficient's degree
bound; a chain keeps going while xi stays positive and stops the moment it
hits zero.  Note (v) forces every lam_j to have at least one block of size
2 or more whenever alpha demands headroom; in particular the chain for
(2, 0) is unique and the all-singletons start is impossible.

Enumeration is a depth-first walk over lam_1 with the (alpha, xi) split
window computed from (v) and (vii); positive xi recurses into the index set
for (length(lam_1), xi_1), which is memoized, so shared tails are built
once.  Output is sorted into a canonical order: by chain length q, then by
the partition chain in reverse lexicographic order, then by A.
"""

from __future__ import annotations

import threading
from collections.abc import Iterator
from dataclasses import dataclass

from .partitions import IntPartition, partitions_of


@dataclass(frozen=True)
class KLChainTriple:
    """One chain triple (Lambda, A, Xi)."""

    Lambda: tuple[IntPartition, ...]
    A: tuple[int, ...]
    Xi: tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.Lambda)

    def __str__(self):
        lams = ", ".join(str(lam) for lam in self.Lambda)
        a = ", ".join(str(x) for x in self.A)
        xi = ", ".join(str(x) for x in self.Xi)
        return f"(Lambda=[{lams}], A=[{a}], Xi=[{xi}])"

    def to_json_obj(self) -> dict:
        return {
            "lambda": [lam.to_json_obj() for lam in self.Lambda],
            "alpha": list(self.A),
            "xi": list(self.Xi),
        }


AXIOM_IDS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")


@dataclass
class AxiomReport:
    """Per-condition validation outcome for one candidate triple."""

    n: int
    i: int
    results: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, ok in self.results.items() if not ok]

    def __bool__(self):
        return self.passed


def xi_upper_bound(length: int) -> int:
    """Largest xi allowed by (vi)/(vii) for a partition of this length."""
    if length < 2:
        return 0
    return (length - 2) // 2


def validate_triple(triple: KLChainTriple, n: int, i: int) -> AxiomReport:
    """Check all eight conditions; shape mismatches fail every dependent check."""
    lams, alphas, xis = triple.Lambda, triple.A, triple.Xi
    q = len(lams)
    shapes_ok = q >= 1 and len(alphas) == q and len(xis) == q
    res = {}
    if not shapes_ok:
        res = {key: False for key in AXIOM_IDS}
        return AxiomReport(n=n, i=i, results=res)
    res["i"] = lams[0].size == n
    res["ii"] = all(lams[j].size == lams[j - 1].length for j in range(1, q))
    res["iii"] = alphas[0] + xis[0] == n - 1 - i
    res["iv"] = all(
        alphas[j] + xis[j] == lams[j - 1].length - 1 - xis[j - 1] for j in range(1, q)
    )
    res["v"] = all(0 <= alphas[j] <= lams[j].size - lams[j].length for j in range(q))
    res["vi"] = all(xis[j] == 0 for j in range(q) if lams[j].length == 1)
    res["vii"] = all(
        0 <= xis[j] and 2 * xis[j] < lams[j].length - 1
        for j in range(q)
        if lams[j].length >= 2
    )
    res["viii"] = all((xis[j] == 0) == (j == q - 1) for j in range(q))
    return AxiomReport(n=n, i=i, results=res)


def canonical_key(triple: KLChainTriple):
    return (
        triple.q,
        tuple(tuple(-b for b in lam.blocks) for lam in triple.Lambda),
        triple.A,
    )


_memo: dict[tuple[int, int], tuple[KLChainTriple, ...]] = {}
_memo_lock = threading.RLock()


def _k_list(n: int, i: int) -> tuple[KLChainTriple, ...]:
    key = (n, i)
    got = _memo.get(key)
    if got is not None:
        return got
    with _memo_lock:
        got = _memo.get(key)
        if got is not None:
            return got
        target = n - 1 - i
        out = []
        for lam1 in partitions_of(n):
            headroom = lam1.size - lam1.length
            for xi1 in range(xi_upper_bound(lam1.length) + 1):
                alpha1 = target - xi1
                if not 0 <= alpha1 <= headroom:
                    continue
                if xi1 == 0:
                    out.append(KLChainTriple((lam1,), (alpha1,), (0,)))
                else:
                    # (vii) guarantees the sub-problem is in range:
                    # xi1 < (length - 1)/2
                    for tail in _k_list(lam1.length, xi1):
                        out.append(
                            KLChainTriple(
                                (lam1,) + tail.Lambda,
                                (alpha1,) + tail.A,
                                (xi1,) + tail.Xi,
                            )
                        )
        out.sort(key=canonical_key)
        result = tuple(out)
        _memo[key] = result
        return result


def enumerate_K(n: int, i: int) -> Iterator[KLChainTriple]:
    """All chain triples for (n, i), in canonical order.

    Defined for n >= 2 and 0 <= i < (n - 1)/2 (the coefficient's degree
    window); other arguments are rejected.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if i < 0 or 2 * i >= n - 1:
        raise ValueError(f"coefficient index {i} outside [0, (n-1)/2) for n={n}")
    return iter(_k_list(n, i))


# --- empirical report on the closed form for xi ---------------------------

@dataclass
class ReadingStats:
    agree: int = 0
    disagree: int = 0
    examples: list[tuple[KLChainTriple, int, int, int]] = None  # (triple, j, want, got)

    def __post_init__(self):
        if self.examples is None:
            self.examples = []


@dataclass
class XiFormulaReport:
    n: int
    i: int
    positions: int
    readings: dict[str, ReadingStats]


def _xi_closed_corrected(triple: KLChainTriple, j: int) -> int:
    # Unrolling (iv) from the terminal xi_q = 0 gives, for 1 <= j <= q:
    # xi_j = sum_{d=0}^{q-j-1} (-1)^d length(lam_{j+d})
    #        + sum_{d=1}^{q-j} (-1)^d alpha_{j+d}
    #        - (1 - (-1)^(q-j)) / 2
    q = triple.q
    s = 0
    for d in range(q - j):
        s += (-1) ** d * triple.Lambda[j - 1 + d].length
    for d in range(1, q - j + 1):
        s += (-1) ** d * triple.A[j - 1 + d]
    s -= (1 - (-1) ** (q - j)) // 2
    return s


def _xi_closed_literal(triple: KLChainTriple, j: int) -> int:
    # Variant reading in which both sums repeat a fixed term (the summation
    # index never reaches the summand) and the parity correction carries the
    # opposite sign inside.  Kept only so the report can show it failing.
    q = triple.q
    s = 0
    if j < q:
        l_next = triple.Lambda[j].length
        a_next = triple.A[j]
        for d in range(q - j):
            s += (-1) ** d * l_next
        for _ in range(1, q - j + 1):
            s += (-1) ** j * a_next
    s -= (1 + (-1) ** (q - j)) // 2
    return s


_XI_READINGS = {
    "corrected": _xi_closed_corrected,
    "literal": _xi_closed_literal,
}


def verify_xi_closed_form(n: int, i: int, max_examples: int = 5) -> XiFormulaReport:
    """Evaluate candidate closed forms for xi_j against every enumerated chain.

    Purely observational: the enumeration never consults these formulas, and
    nothing downstream gates on this report.
    """
    readings = {name: ReadingStats() for name in _XI_READINGS}
    positions = 0
    for triple in enumerate_K(n, i):
        for j in range(1, triple.q + 1):
            positions += 1
            want = triple.Xi[j - 1]
            for name, fn in _XI_READINGS.items():
                got = fn(triple, j)
                stats = readings[name]
                if got == want:
                    stats.agree += 1
                else:
                    stats.disagree += 1
                    if len(stats.examples) < max_examples:
                        stats.examples.append((triple, j, want, got))
    return XiFormulaReport(n=n, i=i, positions=positions, readings=readings)
