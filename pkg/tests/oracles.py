"""Frozen reference values and independent brute-force oracles.

The constants were computed once with mpmath at 50-digit precision and are
stored to 17 significant digits.  The helpers re-derive quantities through
a deliberately different, slower route than the library uses, so the two
sides stay independent.
"""

from __future__ import annotations

import itertools

import numpy as np

from relmean import Poset

# psi values
PSI_ONE = 0.91629073187415507  # ln(2.5)
PSI_LOWER_ONE = 0.69314718055994531  # -ln(0.5)

# stage parameters at epsilon=0.1, delta=0.05, c=1
EPSILON1_BASE = 0.22360679774997897  # sqrt(0.05)
K_BASE = 160
M_BASE_PAPER = 3
M_BASE_STRICT = 5
N_BASE = 974
TOTAL_BASE = 1454

# stage parameters at epsilon=0.2, delta=0.1, c=1
N_SECOND = 231
TOTAL_SECOND = 471

# median-failure bound at nu^2 = 1/8
MOM_EIGHTH_R1 = 0.035996470825312576
MOM_EIGHTH_R2 = 0.011135840020970981
MOM_EIGHTH_R3 = 0.0039779141950104124

# draw-count lower bound at epsilon=0.1, delta=0.05, c=1
LOWER_BOUND_BASE = 229.81737539818798

# quotient-combination constants
EPS_PRIME_ONE = 0.41421356237309505  # sqrt(2) - 1
EPS_PRIME_TENTH = 0.049875621120890270
VARBOUND_3_2_30 = 0.10517091807564762  # exp(0.1) - 1

# distribution facts
LOGNORMAL_RELVAR_S1 = 1.7182818284590452  # e - 1
PARETO_MEAN_2P5 = 5.0 / 3.0
PARETO_VAR_2P5 = 20.0 / 9.0
TWO_E = 5.4365636569180905
LOGNORMAL_SHAPE_RELVAR_2E = 1.3645493043705863  # sqrt(ln(1 + 2e))


def count_extensions_bruteforce(p: Poset) -> int:
    """Count linear extensions by checking every permutation."""
    total = 0
    for perm in itertools.permutations(range(1, p.n + 1)):
        position = {e: idx for idx, e in enumerate(perm)}
        if all(position[i] < position[j] for i, j in p.relation):
            total += 1
    return total


def poset_family(seed: int = 2024, count: int = 60, max_n: int = 7) -> list[Poset]:
    """Deterministic family of small posets: named shapes plus random orders.

    Random orders are generated over a hidden shuffled total order, which
    guarantees acyclicity before the transitive closure is taken.
    """
    family = [
        Poset.chain(1),
        Poset.chain(4),
        Poset.antichain(4),
        Poset.from_pairs(4, [(1, 2), (3, 4)]),
        Poset.from_pairs(2, [(1, 2)]),
        Poset.antichain(3),
        Poset.from_pairs(5, [(1, 2), (1, 3), (2, 4), (3, 4)]),  # diamond plus isolated 5
        Poset.from_pairs(6, [(1, 4), (2, 4), (3, 4)]),  # three below one
    ]
    rng = np.random.default_rng(seed)
    while len(family) < count:
        n = int(rng.integers(2, max_n + 1))
        hidden = [int(v) for v in rng.permutation(n) + 1]
        pairs = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.35:
                    pairs.append((hidden[i], hidden[j]))
        family.append(Poset.from_pairs(n, pairs))
    return family


def median_of_means_reference(draws, k: int, m: int) -> float:
    """Plain-python group means and middle order statistic."""
    draws = [float(v) for v in draws]
    assert len(draws) == k * m
    means = []
    for g in range(m):
        block = draws[g * k : (g + 1) * k]
        means.append(sum(block) / k)
    return sorted(means)[m // 2]


def relvar_with_se(samples: np.ndarray) -> tuple[float, float]:
    """Empirical relative variance and a delta-method standard error."""
    samples = np.asarray(samples, dtype=float)
    n = len(samples)
    mean = samples.mean()
    var = samples.var()
    centred = samples - mean
    fourth = np.mean(centred**4)
    var_of_var = max(fourth - var * var, 0.0) / n
    var_of_mean = var / n
    relvar = var / (mean * mean)
    se = np.sqrt(
        var_of_var / mean**4 + 4.0 * var * var * var_of_mean / mean**6
    )
    return float(relvar), float(se)
