"""Brute-force references that share no code with the package."""
import itertools


def naive_sequence(q, coeffs, seed, n):
    """s_0, ..., s_{r+n-1} straight from the recurrence with list indexing."""
    r = len(coeffs)
    s = list(seed)
    for k in range(n):
        s.append(sum(coeffs[j] * s[k + j] for j in range(r)) % q)
    return s


def lookahead(q, coeffs, state, count=None):
    r = len(coeffs)
    count = r if count is None else count
    return tuple(naive_sequence(q, coeffs, state, count)[r:])


def naive_period(q, coeffs, seed):
    s = list(seed)
    start = tuple(seed)
    t = 0
    while True:
        s = s[1:] + [sum(c * x for c, x in zip(coeffs, s)) % q]
        t += 1
        if tuple(s) == start:
            return t


def det_mod(matrix, q):
    """Leibniz expansion; fine for r <= 6."""
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= matrix[i][perm[i]]
        total += term
    return total % q


def poly_eval(terms, state, m):
    """terms: {exponent tuple: coeff}."""
    total = 0
    for exps, c in terms.items():
        term = c
        for x, e in zip(state, exps):
            term *= x**e
        total += term
    return total % m


def is_irreducible(q, coeffs):
    """Monic z^r + ... is irreducible iff no monic factor of degree 1..r//2 divides it."""
    r = len(coeffs)
    target = list(coeffs) + [1]  # ascending, monic
    for d in range(1, r // 2 + 1):
        for low in itertools.product(range(q), repeat=d):
            divisor = list(low) + [1]
            rem = target[:]
            for shift in range(len(rem) - len(divisor), -1, -1):
                lead = rem[shift + d]
                if lead:
                    for i, c in enumerate(divisor):
                        rem[shift + i] = (rem[shift + i] - lead * c) % q
            if not any(rem[:d]):
                return False
    return True


def valid_polys(q, r):
    return [c for c in itertools.product(range(q), repeat=r) if c[0] != 0]


def all_states(q, r):
    return list(itertools.product(range(q), repeat=r))
