"""Approximate counting at desk scale: linear extensions of a poset.

The count is rebuilt from a chain of easier instances: repeatedly pin the
element that may sit in the highest free slot and measure what fraction of
uniform extensions agrees.  The product of those fractions estimates
1/count with a closed-form variance bound, so the mean estimator can
certify the result; exact enumeration cross-checks it.
"""

from relmean import Poset, linext_approx_count, linext_count_exact, linext_uniform_sample

posets = {
    "chain 1<2<3<4": Poset.chain(4),
    "two 2-chains (1<2, 3<4)": Poset.from_pairs(4, [(1, 2), (3, 4)]),
    "antichain on 4": Poset.antichain(4),
    "diamond (1<2<4, 1<3<4)": Poset.from_pairs(4, [(1, 2), (1, 3), (2, 4), (3, 4)]),
}

print("A few uniform extensions of the diamond:")
for seed in range(4):
    print("  ", linext_uniform_sample(posets["diamond (1<2<4, 1<3<4)"], seed))
print()

print(f"{'poset':30s} {'exact':>6} {'estimate':>9} {'rel err':>8}")
for name, p in posets.items():
    exact = linext_count_exact(p)
    approx = linext_approx_count(p, epsilon=0.2, delta=0.1, m_per_level=100, seed=7)
    print(f"{name:30s} {exact:6d} {approx:9.3f} {abs(approx - exact) / exact:8.2%}")

print()
print("The estimate is certified: off by more than 20% in at most 10% of runs.")
