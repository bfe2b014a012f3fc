"""The twelve-dimensional example that separates the three notions.

On 2x2 matrices over the strictly upper triangular 3x3 algebra, the
map that swaps the two diagonal corners and kills the rest satisfies
the triple-bracket centralizer identity for free (every triple product
vanishes), yet it is not a Lie centralizer, and no central multiple
plus center-valued correction can reproduce it.
"""

from lietriple.algebra import center, double_commutator, find_unit
from lietriple.catalog import example_1_2
from lietriple.centralizers import IdentityKind, is_identity_member, solve_identity_space
from lietriple.properness import Infeasible, is_proper_direct

ex = example_1_2()
alg = ex.gma.algebra
print("dimension:", alg.dim, " unit:", find_unit(alg))

# Every triple bracket vanishes, so the triple identity costs nothing.
basis = alg.basis()
assert all(
    double_commutator(x, y, z).is_zero()
    for x in basis for y in basis for z in basis
)
print("all", len(basis) ** 3, "double commutators vanish")
print("the solved triple-centralizer space is everything:",
      solve_identity_space(alg, IdentityKind.LIE_TRIPLE_CENTRALIZER).dim, "= 144")

# ... but the plain bracket identity fails at a concrete pair.
phi, a0, b0 = ex.phi, ex.a0, ex.b0
print("\nswap map in the triple space:",
      bool(is_identity_member(alg, IdentityKind.LIE_TRIPLE_CENTRALIZER, phi)))
lhs = phi(a0 * b0 - b0 * a0)
rhs = phi(a0) * b0 - b0 * phi(a0)
print("phi([A0, B0]) =", lhs)
print("[phi(A0), B0] =", rhs)
print("Lie centralizer identity fails:", lhs != rhs)

# The center kills everything by multiplication, so any candidate
# splitting must push phi itself into the center -- and it will not go.
print("\ncenter dimension:", center(alg).dim)
res = is_proper_direct(alg, phi, probes=[a0])
assert isinstance(res, Infeasible)
print("properness verdict: infeasible")
print("witness element:", res.witness_element)
print("its image:", res.witness_image)
print("image lies in the center:",
      center(alg).contains_vector(res.witness_image.coords))
