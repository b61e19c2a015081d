"""Print finitized characters next to their product formulas for a range of cutoffs.

    python3 scripts/character_tables.py --max-L 4 --vars 2
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from etaxi import characters as ch
from etaxi.fock import NS, R


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-L", type=int, default=4)
    ap.add_argument("--vars", type=int, default=2)
    ap.add_argument("--t", default="2", help="deformation parameter for the D_0(t) character")
    args = ap.parse_args()
    ok = True
    for sector in (NS, R):
        for L in range(args.max_L + 1):
            spec = ch.CharacterSpec(sector, L, args.vars)
            brute, prod = ch.char_bruteforce(spec), ch.char_product(spec)
            ok &= brute == prod
            print(f"{sector.tag} L={L}: {len(brute.terms)} monomials, {brute.evaluate_at_ones()} diagrams, match={brute == prod}")
        t = Fraction(args.t)
        brute, prod = ch.char_D0t(t, sector, min(args.max_L, 4))
        ok &= brute == prod
        print(f"{sector.tag} D_0({t}): {brute}")
        if t * t != 1:
            print(f"{sector.tag} continuum prefactor exponent: {ch.continuum_prefactor(t, sector)}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
