"""Parallel-band rotors and satellite companions.

Run with:  python3 demos/04_parallel_and_satellites.py

Type-2 rotors carry two strand ends per sector edge.  The parallel
3-rotor family wires three flat bands through the disk (pattern: cups,
ring, or pinwheel); its rotant closure has the same bracket as the
original (the `4.4` registry row).  Satellite operations (2-cable with
twists, Whitehead double) applied coherently to both members of a
3-rotant pair keep their Jones polynomials equal up to a signed monomial
±A^e, recorded per trial as the `jones_ratio` (the `4.5` row).
"""

import random

from rotorlab import (
    BandPattern, SatelliteSpec, bracket, build_parallel_3rotor, parse_poly,
    random_stator, rotant_pair, run_satellite_check, to_pd_text,
)


def main():
    rng = random.Random(7)
    for pattern in (BandPattern.cups(), BandPattern.ring(),
                    BandPattern.pinwheel(1), BandPattern.pinwheel(-1)):
        rotor = build_parallel_3rotor(pattern).tangle
        label = pattern.kind
        if pattern.kind == "pinwheel":
            label += "+" if pattern.chirality > 0 else "-"
        print(f"parallel 3-rotor, pattern {label:<9}: "
              f"{len(rotor.crossings)} crossings, "
              f"{len(rotor.boundary)} boundary ends")
        for _ in range(3):
            stator = random_stator(len(rotor.boundary), budget=5, rng=rng)
            left, right = rotant_pair(rotor, stator, n=3, k=2)
            bl, br = bracket(left).poly, bracket(right).poly
            assert bl == br, f"bracket changed under a {pattern.kind} rotant"
        print("  3 random stators: bracket(L) == bracket(L') every time. OK")
    print()

    for sat in (SatelliteSpec("2-cable", twists=1),
                SatelliteSpec("whitehead", clasp_sign=-1)):
        report = run_satellite_check(sat, trials=6, seed=11,
                                     fundamental_budget=1, budget=1)
        print(f"satellite {sat.pattern} "
              f"(twists={sat.twists}, clasp={sat.clasp_sign}):")
        print("  " + report.summary().replace("\n", "\n  "))
        assert report.passed
        ratios = sorted({t.jones_ratio for t in report.trials
                         if t.status == "ok"})
        print(f"  jones ratios seen: {ratios}")
        for text in ratios:
            ratio = parse_poly(text, ("A",))
            assert len(ratio.terms) == 1 and ratio.terms[0][1] in (1, -1), \
                "ratio must be a single signed monomial"
        print("  every ratio is a signed monomial ±A^e.  OK")
        print()

    # One concrete pair, printed small: a cable of a rotant pair.
    print("example satellite closure PDs (2-cable, first trial style):")
    rng = random.Random(3)
    rotor = build_parallel_3rotor(BandPattern.cups()).tangle
    stator = random_stator(12, budget=2, rng=rng)
    left, right = rotant_pair(rotor, stator, n=3, k=2)
    print(f"  L  : {to_pd_text(left)[:72]}...")
    print(f"  L' : {to_pd_text(right)[:72]}...")


if __name__ == "__main__":
    main()
