"""Generalized rotants and mod-n* congruence checking.

Run with:  python3 demos/03_generalized_rotants.py

For an n-fold rotor glued to an arbitrary stator, rotating the rotor by
a flip is only guaranteed to preserve the bracket for small n.  The
guaranteed floor for every n is a congruence: writing n* for the product
of the distinct primes dividing n (the radical), the brackets of the two
rotants agree coefficientwise mod n*.  The verification harness asserts
exactly that floor on seeded random families; this demo runs the `4.2a`
registry row at composite n and unpacks what one trial recorded.

(Random small instances usually satisfy the full integer equality too —
genuinely inequal rotant pairs are engineered objects, not 2-crossing
accidents — so the congruence assertion is the honest testable claim.)
"""

from rotorlab import CheckSpec, parse_poly, radical, run_check


def main():
    # What "agree mod n*" means, on a toy polynomial pair.
    p = parse_poly("3*A^4 - 5*A^-2 + 6", ("A",))
    q = parse_poly("-3*A^4 + A^-2", ("A",))
    print("toy reduction:")
    print(f"  p           = {p}")
    print(f"  q           = {q}")
    print(f"  p mod 6     = {p.reduce_mod(6)}")
    print(f"  q mod 6     = {q.reduce_mod(6)}")
    print(f"  p == q mod 6 ? {p.reduce_mod(6) == q.reduce_mod(6)}")
    print()

    for n in (4, 6):
        n_star = radical(n)
        assert n_star == (2 if n == 4 else 6)
        spec = CheckSpec("4.2a", n=n, k=1, budget=6, fundamental_budget=2,
                         trials=12, seed=42)
        report = run_check(spec)
        print(f"run_check 4.2a, n = {n}  (n* = {n_star}):")
        print("  " + report.summary().replace("\n", "\n  "))
        assert report.passed, "modular congruence must hold on every trial"

        # Unpack the first completed trial's bracket record.
        trial = next(t for t in report.trials if t.status == "ok")
        entry = trial.invariants["bracket"]
        print(f"  trial {trial.index}: modulus {trial.modulus}")
        print(f"    bracket(L)        : {entry['left']}")
        print(f"    bracket(L')       : {entry['right']}")
        print(f"    reduced mod {n_star}     : {entry['left_reduced']}  ==  "
              f"{entry['right_reduced']}")
        print()


if __name__ == "__main__":
    main()
