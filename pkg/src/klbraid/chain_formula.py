"""The closed chain-sum formula for braid Kazhdan-Lusztig coefficients.

Each chain triple (Lambda, A, Xi) contributes the product over its links

    m(lam_j) * sum over (d_1..d_l) of prod_k s(b_k, d_k)

where the inner sum runs over compositions with 1 <= d_k <= b_k summing to
alpha_j + length(lam_j), m is the set-partition multiplicity and s is the
signed Stirling number of the first kind.  Summing term values over the
whole index set gives C_{n,i} without ever touching the recursion; the two
routes agreeing is one of the package's core cross-checks.

``symbolic_expansion`` renders the same sum grouped by the top partition
lam_1, in the shape of a worked table: ``m(3+1)s(3,3)s(1,1)`` style tokens,
with parenthesized multi-composition sums, plus exact per-group subtotals.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .chains import KLChainTriple, enumerate_K
from .errors import InternalConsistencyError
from .partitions import IntPartition, bounded_compositions, multiplicity
from .stirling import stirling_first


@dataclass
class FactorBreakdown:
    """Audit record for one link of a chain term."""

    lam: IntPartition
    m_value: int
    total: int
    compositions: tuple[tuple[tuple[int, ...], int], ...] | None
    inner_sum: int


@dataclass
class TermBreakdown:
    """A chain term's value, with optional per-link audit detail."""

    triple: KLChainTriple
    factors: tuple[FactorBreakdown, ...] | None
    value: int


def term_value(triple: KLChainTriple, audit: bool = False) -> TermBreakdown:
    """Evaluate one chain term exactly.

    With ``audit=True`` every composition and its signed Stirling product is
    retained; otherwise only the value is kept.  A link whose composition
    set comes out empty is a degenerate (invalid) triple and raises.
    """
    value = 1
    factors = [] if audit else None
    for lam, alpha in zip(triple.Lambda, triple.A):
        m = multiplicity(lam)
        total = alpha + lam.length
        inner = 0
        comps = [] if audit else None
        seen = False
        for comp in bounded_compositions(lam, total):
            seen = True
            prod = 1
            for b, d in zip(lam.blocks, comp):
                prod *= stirling_first(b, d)
            inner += prod
            if audit:
                comps.append((comp, prod))
        if not seen:
            raise InternalConsistencyError(
                f"degenerate link {lam} with total {total}: no compositions"
            )
        value *= m * inner
        if audit:
            factors.append(
                FactorBreakdown(
                    lam=lam,
                    m_value=m,
                    total=total,
                    compositions=tuple(comps),
                    inner_sum=inner,
                )
            )
    return TermBreakdown(
        triple=triple, factors=tuple(factors) if audit else None, value=value
    )


def kl_coeff_via_chains(n: int, i: int) -> int:
    """C_{n,i} as the plain sum of chain term values.

    Same domain as the enumeration: n >= 2, 0 <= i < (n-1)/2.  Degree
    positions outside that window are not meaningful here (use the recursion,
    which just reads off a zero coefficient).
    """
    return sum(term_value(t).value for t in enumerate_K(n, i))


# --- worked-table rendering -------------------------------------------------

def _stirling_tokens(lam: IntPartition, comp: tuple[int, ...]) -> str:
    return "".join(f"s({b},{d})" for b, d in zip(lam.blocks, comp))


def _factor_text(fb: FactorBreakdown) -> str:
    head = f"m({fb.lam})"
    rendered = [_stirling_tokens(fb.lam, comp) for comp, _ in fb.compositions]
    if len(rendered) == 1:
        return head + rendered[0]
    # collapse repeated products, keeping first-appearance order
    counts: dict[str, int] = {}
    for r in rendered:
        counts[r] = counts.get(r, 0) + 1
    pieces = [(f"{c} {r}" if c > 1 else r) for r, c in counts.items()]
    return head + "(" + " + ".join(pieces) + ")"


def term_text(breakdown: TermBreakdown) -> str:
    """Token rendering of one audited chain term, links concatenated."""
    if breakdown.factors is None:
        raise ValueError("term_text needs an audited breakdown")
    return "".join(_factor_text(fb) for fb in breakdown.factors)


@dataclass
class ExpansionGroup:
    lambda1: IntPartition
    terms: list[tuple[TermBreakdown, str]]
    value: int


@dataclass
class SymbolicExpansion:
    n: int
    i: int
    groups: list[ExpansionGroup]
    total: int

    def to_json_obj(self) -> list[dict]:
        out = []
        for g in self.groups:
            terms = []
            for tb, text in g.terms:
                obj = tb.triple.to_json_obj()
                obj["text"] = text
                obj["value"] = str(tb.value)
                terms.append(obj)
            out.append(
                {
                    "lambda1": g.lambda1.to_json_obj(),
                    "terms": terms,
                    "value": str(g.value),
                }
            )
        return out

    def render_text(self) -> str:
        lines = [f"C({self.n},{self.i}) grouped by the top partition:"]
        width = max(len(str(g.lambda1)) for g in self.groups)
        for g in self.groups:
            first = True
            for tb, text in g.terms:
                label = str(g.lambda1) if first else ""
                lines.append(f"  {label:<{width}}  {text} = {tb.value}")
                first = False
            if len(g.terms) > 1:
                lines.append(f"  {'':<{width}}  group value = {g.value}")
        lines.append(f"total = {self.total}")
        return "\n".join(lines)


def symbolic_expansion(n: int, i: int) -> SymbolicExpansion:
    """The full audited sum for (n, i), grouped by lam_1 in canonical order."""
    groups: list[ExpansionGroup] = []
    for triple in enumerate_K(n, i):
        tb = term_value(triple, audit=True)
        text = term_text(tb)
        lam1 = triple.Lambda[0]
        if groups and groups[-1].lambda1 == lam1:
            groups[-1].terms.append((tb, text))
            groups[-1].value += tb.value
        else:
            groups.append(ExpansionGroup(lambda1=lam1, terms=[(tb, text)], value=tb.value))
    # enumeration is sorted by (q, Lambda, A), so one lam_1 may appear in
    # several runs; merge runs while keeping first-appearance order
    merged: dict[IntPartition, ExpansionGroup] = {}
    order: list[IntPartition] = []
    for g in groups:
        if g.lambda1 in merged:
            merged[g.lambda1].terms.extend(g.terms)
            merged[g.lambda1].value += g.value
        else:
            merged[g.lambda1] = g
            order.append(g.lambda1)
    final = [merged[lam] for lam in order]
    return SymbolicExpansion(
        n=n, i=i, groups=final, total=sum(g.value for g in final)
    )


def group_values(n: int, i: int) -> dict[tuple[int, ...], int]:
    """Per-lam_1 subtotals, keyed by block tuple; handy for table checks."""
    return {g.lambda1.blocks: g.value for g in symbolic_expansion(n, i).groups}
