"""Tolerable excess noise, and how it shrinks with distance.

The threshold is the largest excess noise at which the optimized key rate is
still positive.  Catalysis buys roughly half again as much noise tolerance at
short range (about 0.015 against 0.011).
"""

from mdicvqkd import ChannelScenario, noise_threshold

beta = 0.95

print("asymmetric case, V = 2.5 (catalysed) / 1.4 (original)")
print("L(km)   xi_max catalysed   xi_max original")
for distance in (1.0, 5.0, 10.0, 20.0, 30.0):
    scen = ChannelScenario.for_case("asym", distance, xi=0.0)
    thr_zpc = noise_threshold(2.5, "zpc", scen, beta)
    thr_orig = noise_threshold(1.4, "original", scen, beta)
    print(f"{distance:5.1f}  {thr_zpc:17.5f}  {thr_orig:16.5f}")

print("\nsymmetric case, V = 2.6 / 1.5")
print("L(km)   xi_max catalysed   xi_max original")
for distance in (0.2, 0.5, 1.0, 2.0):
    scen = ChannelScenario.for_case("sym", distance, xi=0.0)
    thr_zpc = noise_threshold(2.6, "zpc", scen, beta)
    thr_orig = noise_threshold(1.5, "original", scen, beta)
    print(f"{distance:5.1f}  {thr_zpc:17.5f}  {thr_orig:16.5f}")
