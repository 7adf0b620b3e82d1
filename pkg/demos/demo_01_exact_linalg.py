"""
Exact linear algebra over Q and F_p
===================================

Ranks, kernels and homology of small complexes, computed without floating
point.  The same matrix can have different rank over different fields.
"""

from reflexdga.linalg import QQ, FieldSpec, SparseMatrix, homology_at, kernel_basis, rank

F2 = FieldSpec.prime(2)

############################################################
# A matrix whose rank depends on the characteristic

m = [[2, 0], [0, 1]]
print("rank over Q  :", rank(SparseMatrix.from_dense(m, QQ)))
print("rank over F_2:", rank(SparseMatrix.from_dense(m, F2)))

############################################################
# Kernels come back as sparse vectors {column: coefficient}

for v in kernel_basis(SparseMatrix.from_dense([[1, 1, 0]], F2)):
    print("kernel vector", v)

############################################################
# Homology of 0 -> k --(1 1)^T--> k^2 --(1 -1)--> k -> 0

d0 = SparseMatrix.from_dense([[1], [1]])
d1 = SparseMatrix.from_dense([[1, -1]])
print("H at the middle:", homology_at(d0, d1))
