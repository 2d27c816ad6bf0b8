"""Approximate counting through nested-set reduction.

A counting problem is reduced to a chain of shrinking sets whose final
size is known.  Each level contributes the fraction of uniform draws that
survive into the next level; the product of those fractions estimates the
terminal-to-initial size ratio, and its relative variance is bounded in
closed form.  Feeding independent product estimates into the two-stage
mean estimator yields a certified approximate count.  Posets and their
linear extensions provide the worked, desk-scale instance, with exact
enumeration as the oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .estimator import ApproxSpec, Mode, estimate_mean

DESK_SCALE_LIMIT = 10

__all__ = [
    "DESK_SCALE_LIMIT",
    "PosetSizeError",
    "NestedChain",
    "ProductEstimateSource",
    "product_estimate",
    "product_variance_bound",
    "Poset",
    "linext_count_exact",
    "linext_uniform_sample",
    "linext_chain",
    "linext_approx_count",
    "eps_prime",
    "gibbs_combine",
]


class PosetSizeError(ValueError):
    """Enumeration-backed operations are capped at DESK_SCALE_LIMIT elements."""


# A sampler draws `size` membership indicators for its level: each entry is 1
# when a fresh uniform draw from the level's set lands in the next level.
Sampler = Callable[[np.random.Generator, tuple[int, ...]], np.ndarray]


@dataclass(frozen=True)
class NestedChain:
    """Chain of shrinking sets, one membership sampler per level.

    `known_terminal` is the exact size of the final set and
    `max_inverse_ratio` bounds every level: each survival ratio is at least
    1 / max_inverse_ratio.
    """

    samplers: tuple[Sampler, ...]
    known_terminal: float
    max_inverse_ratio: float

    def __post_init__(self) -> None:
        if len(self.samplers) < 1:
            raise ValueError("a chain needs at least one level")
        if not self.known_terminal > 0.0:
            raise ValueError("known_terminal must be positive")
        if not self.max_inverse_ratio >= 1.0:
            raise ValueError("max_inverse_ratio must be at least 1")

    @property
    def k(self) -> int:
        return len(self.samplers)


def product_estimate(chain: NestedChain, m_per_level: int, seed: int) -> float:
    """One unbiased estimate of (terminal size / initial size).

    Draws m_per_level membership indicators per level and multiplies the
    level averages.  A zero average at any level makes the product 0, which
    is a legal sample; resampling it away would bias the estimator.
    """
    m_per_level = int(m_per_level)
    if m_per_level < 1:
        raise ValueError("m_per_level must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=int(seed)))
    estimate = 1.0
    for sampler in chain.samplers:
        estimate *= float(np.mean(sampler(rng, (m_per_level,))))
    return estimate


def product_variance_bound(k: int, max_inverse_ratio: float, m: int) -> float:
    """Relative-variance bound exp(k (M - 1) / m) - 1 for the product estimate,
    valid whenever every level ratio is at least 1/M."""
    if int(k) < 1:
        raise ValueError("k must be >= 1")
    if not max_inverse_ratio >= 1.0:
        raise ValueError("max_inverse_ratio must be at least 1")
    if int(m) < 1:
        raise ValueError("m must be >= 1")
    return math.expm1(int(k) * (max_inverse_ratio - 1.0) / int(m))


class ProductEstimateSource:
    """Stream of independent product estimates for one chain.

    Each draw costs k * m_per_level membership indicators; take(n) vectorises
    the whole batch.  Mirrors the SampleSource protocol (take / sibling) so
    the stream can drive estimate_mean directly.
    """

    def __init__(self, chain: NestedChain, m_per_level: int, seed: int, replicate_index: int = 0):
        if int(m_per_level) < 1:
            raise ValueError("m_per_level must be >= 1")
        self.chain = chain
        self.m_per_level = int(m_per_level)
        self.seed = int(seed)
        self.replicate_index = int(replicate_index)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.replicate_index,))
        self._rng = np.random.Generator(np.random.PCG64(sequence))

    def take(self, n: int) -> np.ndarray:
        n = int(n)
        if n < 0:
            raise ValueError("draw count must be nonnegative")
        out = np.ones(n)
        for sampler in self.chain.samplers:
            out *= sampler(self._rng, (n, self.m_per_level)).mean(axis=1)
        return out

    def sibling(self, replicate_index: int) -> "ProductEstimateSource":
        return ProductEstimateSource(self.chain, self.m_per_level, self.seed, replicate_index)


@dataclass(frozen=True)
class Poset:
    """Partial order on elements 1..n, stored as its full transitive closure.

    `relation` holds ordered pairs (i, j) meaning i comes before j; storage
    is irreflexive, antisymmetric, and transitively closed (validated).
    Build instances with from_pairs / from_text / from_file / chain /
    antichain rather than passing a raw closure.
    """

    n: int
    relation: frozenset

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a poset needs at least one element")
        rel = frozenset((int(i), int(j)) for i, j in self.relation)
        object.__setattr__(self, "relation", rel)
        for i, j in rel:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"pair ({i}, {j}) is outside 1..{self.n}")
            if i == j:
                raise ValueError(f"reflexive pair ({i}, {j}) is not stored")
            if (j, i) in rel:
                raise ValueError(f"antisymmetry violated by ({i}, {j}) and ({j}, {i})")
        for i, j in rel:
            for a, b in rel:
                if j == a and (i, b) not in rel:
                    raise ValueError(f"relation is not transitively closed: ({i}, {b}) missing")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Poset":
        """Build from covering (or any) pairs; computes the transitive closure
        and rejects cycles."""
        n = int(n)
        if n < 1:
            raise ValueError("a poset needs at least one element")
        closer = [[False] * (n + 1) for _ in range(n + 1)]
        for i, j in pairs:
            i, j = int(i), int(j)
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"pair ({i}, {j}) is outside 1..{n}")
            closer[i][j] = True
        for mid in range(1, n + 1):
            for a in range(1, n + 1):
                if closer[a][mid]:
                    row_mid = closer[mid]
                    row_a = closer[a]
                    for b in range(1, n + 1):
                        if row_mid[b]:
                            row_a[b] = True
        for a in range(1, n + 1):
            if closer[a][a]:
                raise ValueError(f"order contains a cycle through element {a}")
        rel = frozenset(
            (a, b) for a in range(1, n + 1) for b in range(1, n + 1) if closer[a][b]
        )
        return cls(n, rel)

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_pairs(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls.from_pairs(n, [])

    @classmethod
    def from_text(cls, text: str) -> "Poset":
        """Parse the plain-text format: first line n, then one `i j` pair per line."""
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty poset description")
        try:
            n = int(lines[0])
        except ValueError:
            raise ValueError(f"first line must be the element count, got {lines[0]!r}") from None
        pairs = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"expected `i j` pair, got {ln!r}")
            pairs.append((int(parts[0]), int(parts[1])))
        return cls.from_pairs(n, pairs)

    @classmethod
    def from_file(cls, path) -> "Poset":
        with open(path, "r", encoding="ascii") as fh:
            return cls.from_text(fh.read())


def _check_desk_scale(p: Poset) -> None:
    if p.n > DESK_SCALE_LIMIT:
        raise PosetSizeError(
            f"enumeration-backed operations are capped at {DESK_SCALE_LIMIT} elements, got {p.n}"
        )


def _predecessor_masks(p: Poset) -> list[int]:
    """Bit mask of predecessors for each element; bit e-1 stands for element e."""
    masks = [0] * (p.n + 1)
    for i, j in p.relation:
        masks[j] |= 1 << (i - 1)
    return masks


@lru_cache(maxsize=256)
def _extensions(p: Poset) -> np.ndarray:
    """All linear extensions in lexicographic order, one permutation per row."""
    _check_desk_scale(p)
    preds = _predecessor_masks(p)
    rows: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def grow(placed_mask: int) -> None:
        if len(prefix) == p.n:
            rows.append(tuple(prefix))
            return
        for e in range(1, p.n + 1):
            bit = 1 << (e - 1)
            if placed_mask & bit or (preds[e] & placed_mask) != preds[e]:
                continue
            prefix.append(e)
            grow(placed_mask | bit)
            prefix.pop()

    grow(0)
    return np.array(rows, dtype=np.int8)


def linext_count_exact(p: Poset) -> int:
    """Exact number of linear extensions via dynamic programming over downsets."""
    _check_desk_scale(p)
    preds = _predecessor_masks(p)
    counts = np.zeros(1 << p.n, dtype=np.int64)
    counts[0] = 1
    for mask in range(1 << p.n):
        here = counts[mask]
        if here == 0:
            continue
        for e in range(1, p.n + 1):
            bit = 1 << (e - 1)
            if not mask & bit and (preds[e] & mask) == preds[e]:
                counts[mask | bit] += here
    return int(counts[-1])


def linext_uniform_sample(p: Poset, seed: int) -> tuple[int, ...]:
    """One uniformly random linear extension (enumeration plus a uniform index)."""
    _check_desk_scale(p)
    exts = _extensions(p)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=int(seed)))
    row = exts[int(rng.integers(0, len(exts)))]
    return tuple(int(x) for x in row)


def _restricted_extensions(p: Poset, remaining: tuple[int, ...]) -> np.ndarray:
    """Extensions of the subposet induced on `remaining`, in original labels."""
    relabel = {e: idx + 1 for idx, e in enumerate(remaining)}
    sub_pairs = [
        (relabel[i], relabel[j]) for i, j in p.relation if i in relabel and j in relabel
    ]
    sub = Poset.from_pairs(len(remaining), sub_pairs)
    back = np.array([0] + list(remaining), dtype=np.int8)
    return back[_extensions(sub)]


def _sampler_from_flags(flags: np.ndarray) -> Sampler:
    count = len(flags)

    def sampler(rng: np.random.Generator, size) -> np.ndarray:
        return flags[rng.integers(0, count, size=size)]

    return sampler


@lru_cache(maxsize=64)
def linext_chain(p: Poset) -> NestedChain:
    """Self-reduction chain for counting linear extensions.

    At each level, among the remaining elements that can occupy the highest
    unfilled position (no remaining element is required after them), the one
    with the smallest label is pinned there; the level's sampler draws a
    uniform extension of the remaining subposet and reports whether that
    element indeed comes last.  Every level's survival ratio is at least
    1/n, and the terminal set holds exactly one extension.
    """
    _check_desk_scale(p)
    samplers: list[Sampler] = []
    remaining = tuple(range(1, p.n + 1))
    for _ in range(p.n):
        exts = _restricted_extensions(p, remaining)
        live = set(remaining)
        blocked = {i for i, j in p.relation if i in live and j in live}
        pinned = min(e for e in remaining if e not in blocked)
        flags = np.ascontiguousarray(exts[:, -1] == pinned)
        samplers.append(_sampler_from_flags(flags))
        remaining = tuple(e for e in remaining if e != pinned)
    return NestedChain(
        samplers=tuple(samplers),
        known_terminal=1.0,
        max_inverse_ratio=float(p.n),
    )


def linext_approx_count(
    p: Poset,
    epsilon: float,
    delta: float,
    m_per_level: int,
    seed: int,
    mode: Mode = Mode.STRICT,
) -> float:
    """Certified approximate count of linear extensions.

    Feeds independent product estimates from the self-reduction chain into
    the two-stage mean estimator, with the honest closed-form variance bound
    (k = M = n) as c^2, and inverts the estimated ratio.
    """
    _check_desk_scale(p)
    if p.n == 1:
        return 1.0
    chain = linext_chain(p)
    c_squared = product_variance_bound(p.n, float(p.n), m_per_level)
    spec = ApproxSpec(epsilon, delta, math.sqrt(c_squared))
    source = ProductEstimateSource(chain, m_per_level, seed)
    report = estimate_mean(source, spec, mode)
    return chain.known_terminal / report.mu_hat


def eps_prime(epsilon: float) -> float:
    """Accuracy each factor of a quotient needs so the combined estimate
    meets relative accuracy epsilon.

    Equals (sqrt(1 + epsilon^2) - 1) / epsilon, evaluated in the
    cancellation-free form epsilon / (1 + sqrt(1 + epsilon^2)).
    """
    if not (0.0 < epsilon <= 1.0):
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon!r}")
    return epsilon / (1.0 + math.sqrt(1.0 + epsilon * epsilon))


def gibbs_combine(mu_w: float, mu_v: float, epsilon: float) -> float:
    """Combine two positive factor estimates into a quotient estimate.

    Returns (mu_w / mu_v) / sqrt(1 + epsilon^2).  If each input is within
    relative eps_prime(epsilon) of its true mean, the result is within
    relative epsilon of the true quotient: the deflation compensates the
    asymmetric blow-up that division inflicts on relative errors.
    """
    if not (math.isfinite(mu_w) and mu_w > 0.0):
        raise ValueError(f"mu_w must be positive and finite, got {mu_w!r}")
    if not (math.isfinite(mu_v) and mu_v > 0.0):
        raise ValueError(f"mu_v must be positive and finite, got {mu_v!r}")
    if not (0.0 <= epsilon <= 1.0):
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon!r}")
    return (mu_w / mu_v) / math.sqrt(1.0 + epsilon * epsilon)
