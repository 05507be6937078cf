"""Genus-6 two-ray game: weights of C₀ and the induced log-canonical alpha.

    python3 scripts/genus6_two_ray.py [--max-beta 8] [--step 1/2]
"""

import argparse
from fractions import Fraction

from syzstab import divisors as D
from syzstab import gallery as G
from syzstab.stability import hm_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-beta", type=Fraction, default=Fraction(8))
    ap.add_argument("--step", type=Fraction, default=Fraction(1, 2))
    args = ap.parse_args()

    rep = hm_report(G.get("C0").obj, G.RHO_SIGMA0)
    print(f"C0 under rho={G.RHO_SIGMA0}: mu02={rep.mu02} mu12={rep.mu12} wall={rep.wall_beta}")
    print(f"{'beta':>6} {'weight':>7} {'slope':>9} {'alpha':>9}  verdict")
    beta = args.step
    while beta <= args.max_beta:
        s = D.slope(D.polarization(beta))
        print(f"{str(beta):>6} {str(rep.weight_at(beta)):>7} {str(s):>9} {str(D.alpha_of_beta(beta)):>9}  {rep.verdict_at(beta)}")
        beta += args.step
    print(f"alpha -> {D.alpha_limit()} as beta -> infinity")


if __name__ == "__main__":
    main()
