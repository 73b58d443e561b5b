"""Finite root system generation from Cartan matrices.

Roots are integer vectors in the simple-root basis; the inner product is
the symmetrized Cartan matrix. Used to materialize the exceptional
catalog entries and to locate the compact / Levi subsystems that fix
their two-sided multiplicities.
"""

from __future__ import annotations

from fractions import Fraction

_CARTAN = {
    # Bourbaki numbering
    "A": lambda n: [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
                     for j in range(n)] for i in range(n)],
    "D": lambda n: [[_d_entry(i, j, n) for j in range(n)] for i in range(n)],
    "E": lambda n: [[_e_entry(i, j, n) for j in range(n)] for i in range(n)],
    "F": lambda n: [[_f_entry(i, j) for j in range(4)] for i in range(4)],
    "G": lambda n: [[2, -1], [-3, 2]],
    "B": lambda n: [[_b_entry(i, j, n) for j in range(n)] for i in range(n)],
    "C": lambda n: [[_c_entry(i, j, n) for j in range(n)] for i in range(n)],
}


def _chain(i, j):
    return -1 if abs(i - j) == 1 else (2 if i == j else 0)


def _b_entry(i, j, n):
    # B_n: alpha_n short; a_{n-1,n} = -2... Bourbaki: <a_{n-1}, a_n^v> = -2
    if i == n - 2 and j == n - 1:
        return -2
    if i == n - 1 and j == n - 2:
        return -1
    return _chain(i, j)


def _c_entry(i, j, n):
    if i == n - 2 and j == n - 1:
        return -1
    if i == n - 1 and j == n - 2:
        return -2
    return _chain(i, j)


def _d_entry(i, j, n):
    # chain on 1..n-1 with alpha_n attached to alpha_{n-2}
    if {i, j} == {n - 3, n - 1}:
        return -1
    if i == n - 1 or j == n - 1:
        return 2 if i == j else 0
    return _chain(i, j)


def _e_entry(i, j, n):
    # Bourbaki E_n: chain 1-3-4-5-...-n, node 2 attached to 4
    edges = {(0, 2), (2, 3), (3, 4), (1, 3)}
    for k in range(4, n - 1):
        edges.add((k, k + 1))
    if i == j:
        return 2
    return -1 if (i, j) in edges or (j, i) in edges else 0


def _f_entry(i, j):
    # F4: 1 - 2 => 3 - 4, alpha_1, alpha_2 long
    if i == j:
        return 2
    if {i, j} == {0, 1} or {i, j} == {2, 3}:
        return -1
    if (i, j) == (1, 2):
        return -2
    if (i, j) == (2, 1):
        return -1
    return 0


def cartan_matrix(typ: str, rank: int):
    return _CARTAN[typ](rank)


def symmetrized_gram(typ: str, rank: int):
    """d_i * a_ij with d chosen so the matrix is symmetric."""
    a = cartan_matrix(typ, rank)
    n = rank
    d = [Fraction(1)] * n
    # propagate scale along edges: d_i a_ij = d_j a_ji
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if a[i][j] and d[i] * a[i][j] != d[j] * a[j][i]:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    changed = True
    return [[d[i] * a[i][j] for j in range(n)] for i in range(n)]


def generate_roots(typ: str, rank: int) -> list[tuple[int, ...]]:
    """All roots as integer vectors in the simple-root basis."""
    a = cartan_matrix(typ, rank)
    simple = [tuple(1 if k == i else 0 for k in range(rank))
              for i in range(rank)]
    roots = set(simple)
    frontier = set(simple)
    # close under reflections s_j(r) = r - <r, alpha_j^v> alpha_j
    while frontier:
        nxt = set()
        for r in frontier:
            for j in range(rank):
                c = sum(r[i] * a[i][j] for i in range(rank))
                refl = tuple(r[k] - (c if k == j else 0) for k in range(rank))
                if refl not in roots:
                    roots.add(refl)
                    nxt.add(refl)
        frontier = nxt
    return sorted(roots)


ROOT_COUNT = {("A", 1): 2, ("A", 2): 6, ("E", 6): 72, ("E", 7): 126,
              ("E", 8): 240, ("F", 4): 48, ("G", 2): 12, ("C", 3): 18,
              ("D", 5): 40, ("B", 4): 32}


def subsystem_closure(typ: str, rank: int, sub_simples) -> set:
    """Roots of the subsystem generated by the given (possibly non-simple)
    roots: the intersection of the full system with their span, kept
    reflection-closed inside the full system."""
    roots = generate_roots(typ, rank)
    gram = symmetrized_gram(typ, rank)

    def ip(u, v):
        return sum(Fraction(u[i]) * gram[i][j] * v[j]
                   for i in range(rank) for j in range(rank))

    closure = set(tuple(s) for s in sub_simples)
    for s in sub_simples:
        closure.add(tuple(-x for x in s))
    changed = True
    while changed:
        changed = False
        for s in list(closure):
            ss = ip(s, s)
            for r in list(closure):
                c = 2 * ip(r, s) / ss
                refl = tuple(r[k] - int(c) * s[k] for k in range(rank))
                if refl not in closure:
                    closure.add(refl)
                    changed = True
        # close under addition within the root system
        for r in list(closure):
            for s in list(closure):
                t = tuple(r[k] + s[k] for k in range(rank))
                if t in closure:
                    continue
                if any(t) and tuple(t) in set(roots):
                    closure.add(t)
                    changed = True
    return closure


def highest_root(typ: str, rank: int):
    roots = generate_roots(typ, rank)
    gram = symmetrized_gram(typ, rank)

    def height(r):
        return sum(r)

    return max(roots, key=height)
