"""Brute-force Hochschild (co)homology of ungraded k[x]/x^2 with sympy.

Deliberately shares no code with the package: unnormalized complexes,
dense sympy matrices, textbook formulas with no grading signs.
"""

from itertools import product

import sympy

BASIS = (0, 1)  # 1, x


def mul(i, j):
    """Product of basis elements as {index: coeff}."""
    if i + j >= 2:
        return {}
    return {i + j: 1}


def _cochain_differential(n):
    """delta: Hom(A^n, A) -> Hom(A^{n+1}, A) as a dense matrix."""
    src = list(product(product(BASIS, repeat=n), BASIS))   # (word, value) basis of Hom
    tgt = list(product(product(BASIS, repeat=n + 1), BASIS))
    tpos = {c: k for k, c in enumerate(tgt)}
    M = sympy.zeros(len(tgt), len(src))
    for col, (w0, v0) in enumerate(src):
        # f = delta_{w0} * v0 ; evaluate delta f on every word of length n+1
        for w in product(BASIS, repeat=n + 1):
            out = {}

            def add(vec, c):
                for k, a in vec.items():
                    out[k] = out.get(k, 0) + c * a

            if w[1:] == w0:
                add(mul(w[0], v0), 1)
            for i in range(n):
                for l, c in mul(w[i], w[i + 1]).items():
                    if w[:i] + (l,) + w[i + 2:] == w0:
                        add({v0: 1}, (-1) ** (i + 1) * c)
            if w[:-1] == w0:
                add(mul(v0, w[-1]), (-1) ** (n + 1))
            for k, a in out.items():
                if a:
                    M[tpos[(w, k)], col] += a
    return M, len(src), len(tgt)


def hh_cohomology_dims(top):
    dims = {}
    ranks = {}
    for n in range(top + 1):
        M, s, _ = _cochain_differential(n)
        ranks[n] = M.rank()
        dims[n] = s
    return {n: dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(top + 1)}


def _chain_differential(n):
    """b: A^{n+1} -> A^n (n >= 1)."""
    src = list(product(BASIS, repeat=n + 1))
    tgt = list(product(BASIS, repeat=n))
    tpos = {c: k for k, c in enumerate(tgt)}
    M = sympy.zeros(len(tgt), len(src))
    for col, w in enumerate(src):
        for i in range(n):
            for l, c in mul(w[i], w[i + 1]).items():
                M[tpos[w[:i] + (l,) + w[i + 2:]], col] += (-1) ** i * c
        for l, c in mul(w[n], w[0]).items():
            M[tpos[(l,) + w[1:n]], col] += (-1) ** n * c
    return M


def hh_homology_dims(top):
    ranks = {n: _chain_differential(n).rank() for n in range(1, top + 2)}
    return {n: 2 ** (n + 1) - ranks[n + 1] - (ranks[n] if n >= 1 else 0) for n in range(top + 1)}


if __name__ == "__main__":
    print(hh_cohomology_dims(4), hh_homology_dims(4))
