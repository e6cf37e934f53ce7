"""
An exact identity in Z[SL2(Z/17)]
=================================

Three subsets are built from V (order 3), W and a diagonal matrix Delta.
After centralizing, a small integer combination of them collapses to a
multiple of the identity, which shows that 4896 = 16*17*18 lies in the ideal.
"""

from scharlau.verify import sl2_group, verify_direct, verify_symbolic

report, cert = verify_direct(17)
print(report.render())

# The same coefficients drop out of closed formulas without building the group.
print(report.same_result(verify_symbolic(17)))

# Every term of the certificate is a coset of <V> or <T>, so the sum is a
# witness that can be re-checked independently.
G = sl2_group(17)
text = cert.render(G)
print("\n".join(text.splitlines()[:8]))
print("...")
print(text.splitlines()[-1])
