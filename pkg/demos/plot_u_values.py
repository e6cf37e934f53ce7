"""
Solving u + 1/u = 1/2 modulo p
==============================

For primes p = 17 mod 60 the equation has a solution, and the three Fermat
primes 17, 257 and 65537 give small worked cases.
"""

from scharlau.modp import fermat_primes_satisfy_congruence, primes_17_mod_60, solve_u

for p in (17, 257, 65537):
    s = solve_u(p)
    print(f"p={p:>6}  u={s.u.residue:>6}  1/u={s.u_inv.residue:>6}  1/2={s.half.residue}")

# every Fermat prime from 17 on lands in the right residue class
print(fermat_primes_satisfy_congruence(4))

# and the solution exists for every such prime, not only the Fermat ones
primes = primes_17_mod_60(20000)
for p in primes:
    solve_u(p).check()
print(len(primes), "primes = 17 mod 60 below 20000, each one solvable")
