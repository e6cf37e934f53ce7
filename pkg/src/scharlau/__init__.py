"""Exact computation of the Scharlau invariant of finite groups.

The package verifies that the order of SL2(Z/p) lies in its Scharlau ideal
for primes p = 17 (mod 60) and computes the invariant of small groups by
exact lattice reduction in the integral group ring.
"""
from .errors import ScharlauError
from .groupring import RingElement, centralize, class_sum, maschke, set_sum
from .groups import (FiniteGroup, Partition, Subgroup, builtin, centralizer, conjugacy_classes,
                     find_partition, left_cosets, prime_order_subgroups, set_stabilizer)
from .ideal import (IdealLattice, compute_invariant, invariant_from_constraints,
                    partition_witness)
from .modp import ModPElement, Prime, legendre, solve_u, sqrt_mod
from .sl2 import ClassLabel, Mat2, build_specials, class_size, classify, enumerate_sl2
from .verify import verify_direct, verify_symbolic

__version__ = "0.1.0"
