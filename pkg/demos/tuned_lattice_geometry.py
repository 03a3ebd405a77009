"""
When do the tuned tubes stop overlapping?
=========================================

The tuned bush spaces its centres delta^{-3/2} apart in x and 1 apart in t.
Dilating every tube by M = delta^{-1/4} should keep them disjoint once delta
is small, and the margin is delta^{-3/2} against 2 delta^{-5/4}.  We scan
dyadic delta and count the net frequencies whose dilated tubes collide.
"""
from mixdec.geometry import TunedLattice, build_net, tuned_ball_membership, tuned_tubes_pairwise_disjoint

for k in range(3, 7):
    delta = 2.0 ** -k
    lat = TunedLattice(delta, 1)
    net = build_net(delta, 1).points
    M = delta ** -0.25
    overlap = sum(not tuned_tubes_pairwise_disjoint(lat, w, M) for w in net)
    alone = sum(own and not foreign for own, foreign in (tuned_ball_membership(lat, w, M) for w in net))
    print(f"delta=1/{2**k:<3d} centres={len(lat):5d} overlapping={overlap:3d}/{len(net)} "
          f"balls only in own tube={alone}/{len(net)} margin={delta**-1.5 - 2 * delta**-1.25:+.1f}")

# with M = 1 the tubes are already disjoint at delta = 1/8
lat = TunedLattice(1 / 8, 2)
print(all(tuned_tubes_pairwise_disjoint(lat, w, 1.0) for w in build_net(1 / 8, 2).points))
