"""Independent brute-force reimplementations used as test oracles.

Nothing here touches the numpy fast path: distances come straight from the
space's table, and every quantity is rebuilt with plain loops.
"""

from fractions import Fraction


def _xi(space, a, b):
    return space.table[a][b]


def point_to_set_bruteforce(space, a, B):
    best = None
    for b in B:
        d = _xi(space, a, b)
        if best is None or d < best:
            best = d
    return best


def excess_bruteforce(A, B):
    space = A.space
    worst = None
    for a in A:
        d = point_to_set_bruteforce(space, a, B)
        if worst is None or d > worst:
            worst = d
    return worst


def hausdorff_bruteforce(U, V):
    a = excess_bruteforce(U, V)
    b = excess_bruteforce(V, U)
    return a if a >= b else b


def _third(x):
    return x / 3 if not isinstance(x, int) else Fraction(x, 3)


def mt_bruteforce(family, image, u, v):
    """Seven-term maximum, written out term by term."""
    H = hausdorff_bruteforce
    U, V = family[u], family[v]
    TU, TV = family[image[u]], family[image[v]]
    TTU = family[image[image[u]]]
    t1 = H(U, V)
    t2 = H(U, TU)
    t3 = H(V, TV)
    t4 = H(TU, TV)
    t5 = H(TTU, V)
    t6 = H(TTU, TV)
    t7 = _third(H(V, TU) + H(U, TV))
    return max([t1, t2, t3, t4, t5, t6, t7])


def ns_bruteforce(family, image, u, v):
    """Three-term rational maximum, unreduced."""
    H = hausdorff_bruteforce
    U, V = family[u], family[v]
    SU, SV = family[image[u]], family[image[v]]
    huv = H(U, V)
    factor = 1 + H(U, SU)
    t1 = H(U, SV) * factor / (2 * (1 + huv))
    t2 = H(V, SV) * factor / (1 + huv)
    t3 = H(V, SU) * factor / (1 + huv)
    return max([t1, t2, t3])


def transitive_closure(n, edges):
    """Warshall boolean closure: reach[i][j] iff a path of >= 1 edge exists."""
    reach = [[False] * n for _ in range(n)]
    for i, j in edges:
        reach[i][j] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    return reach
