"""Tour of the exact linear algebra layer.

Everything is a Fraction; subspaces carry canonical echelon bases so
that equal spaces literally print the same grid.
"""

from fractions import Fraction

from lietriple.linalg import Matrix, Subspace, kernel, rref, solve

# Row reduction never rounds: pivots can be any rational.
m = Matrix([[Fraction(1, 2), Fraction(1, 3)], [2, 4], [1, 2]])
print("matrix:")
print(m)
print("rref:")
print(rref(m))

# Kernels come back as canonical subspaces.
k = kernel(Matrix([[1, 2, 3], [2, 4, 6]]))
print("\nkernel of a rank-one matrix:", k)
for v in k.basis:
    print("  basis vector:", v)

# Solving reports the echelon particular solution and the full kernel.
particular, homogeneous = solve(Matrix([[1, 1, 0], [0, 1, 1]]), (3, 5))
print("\nparticular solution:", particular)
print("homogeneous space:", homogeneous)

# The subspace lattice: sums, intersections, dimension bookkeeping.
u = Subspace(3, [(1, 1, 0), (0, 0, 1)])
w = Subspace(3, [(1, 0, 0)])
print("\ndim(U) =", u.dim, " dim(W) =", w.dim)
print("dim(U + W) =", u.sum(w).dim)
print("dim(U /\\ W) =", u.intersect(w).dim)
print("modular identity holds:",
      u.sum(w).dim == u.dim + w.dim - u.intersect(w).dim)

# Canonical bases make equality a plain grid comparison.
same = Subspace(3, [(2, 2, 0), (1, 1, 1)])
print("\nU built from different spanning sets equals U:", same == u)
