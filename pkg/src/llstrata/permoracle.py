"""Independent ground truth for the stratum degrees: exact counts of
transitive factorizations in the symmetric group.

A query asks for tuples (alpha, beta, tau_1, ..., tau_s) with alpha of a
fixed cycle type (profile over infinity), beta of a fixed cycle type
(profile over the degenerate value), each tau_i a transposition, product
tau_s ... tau_1 beta alpha = identity (rightmost factor acts first), and
the generated subgroup transitive.  The normalized count divides by n!.

The search fixes one canonical alpha per class and multiplies by the
class size; it backtracks over beta and the transpositions with parity,
distance and connectivity pruning.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

DEFAULT_SHEET_LIMIT = 7


def identity(n):
    return tuple(range(n))


def compose(p, q):
    """(p o q)(i) = p[q[i]]; q acts first."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycles(p):
    """Cycle decomposition as a list of tuples."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def cycle_type(p):
    """Sorted (non-increasing) cycle lengths of a permutation."""
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def num_cycles(p):
    seen = [False] * len(p)
    count = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        count += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
    return count


def canonical_of_type(parts, n):
    """The permutation with cycles (0..p1-1)(p1..p1+p2-1)... of the type."""
    if sum(parts) != n:
        raise ValueError("cycle type must sum to n")
    img = list(range(n))
    start = 0
    for p in parts:
        for i in range(p):
            img[start + i] = start + (i + 1) % p
        start += p
    return tuple(img)


def conjugacy_class_size(parts):
    n = sum(parts)
    mult = {}
    denom = 1
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
        denom *= p
    for c in mult.values():
        denom *= factorial(c)
    return factorial(n) // denom


@lru_cache(maxsize=None)
def _perms_of_type(n, parts):
    return tuple(p for p in permutations(range(n)) if cycle_type(p) == parts)


@dataclass(frozen=True)
class FactorizationQuery:
    """A genus-zero transitive factorization counting problem."""

    n: int
    alpha_type: tuple
    beta_type: tuple
    s: int

    def __post_init__(self):
        for name in ("alpha_type", "beta_type"):
            parts = tuple(sorted(getattr(self, name), reverse=True))
            object.__setattr__(self, name, parts)
            if sum(parts) != self.n:
                raise ValueError(f"{name} must sum to n = {self.n}")
        balance = (self.n - len(self.alpha_type)) \
            + (self.n - len(self.beta_type)) + self.s
        if balance != 2 * self.n - 2:
            raise ValueError(
                f"genus-0 branching balance violated: {balance} != {2 * self.n - 2}")


def _count_for_beta(n, g, s, base_parent, base_ncomp, transitive):
    """Number of transposition sequences (tau_1..tau_s) with
    tau_s ... tau_1 = g, optionally requiring that the sequence together
    with the base partition connects everything."""
    transpositions = [(i, j) for i in range(n) for j in range(i + 1, n)]

    def find(parent, i):
        while parent[i] != i:
            i = parent[i]
        return i

    def rec(h, s_rem, parent, ncomp):
        d = n - num_cycles(h)
        if d > s_rem or (s_rem - d) % 2:
            return 0
        if transitive and ncomp - 1 > s_rem:
            return 0
        if s_rem == 0:
            return 1  # pruning already forces h = id and ncomp = 1
        total = 0
        for i, j in transpositions:
            h2 = list(h)
            h2[i], h2[j] = h2[j], h2[i]
            ri, rj = find(parent, i), find(parent, j)
            if ri != rj:
                child = list(parent)
                child[ri] = rj
                total += rec(tuple(h2), s_rem - 1, child, ncomp - 1)
            else:
                total += rec(tuple(h2), s_rem - 1, parent, ncomp)
        return total

    return rec(g, s, base_parent, base_ncomp)


def count_factorizations(query, require_transitive=True, cache=None):
    """Normalized count (1/n! times the raw tuple count) for a query."""
    if query.n > DEFAULT_SHEET_LIMIT:
        raise ValueError(f"sheet count {query.n} over limit {DEFAULT_SHEET_LIMIT}")
    if cache is not None and require_transitive:
        hit = cache.get(query)
        if hit is not None:
            return hit
    n = query.n
    alpha = canonical_of_type(query.alpha_type, n)
    raw = 0
    for beta in _perms_of_type(n, query.beta_type):
        g = inverse(compose(beta, alpha))
        parent = list(range(n))

        def union(i, j):
            while parent[i] != parent[parent[i]]:
                parent[i] = parent[parent[i]]
            ri, rj = i, j
            while parent[ri] != ri:
                ri = parent[ri]
            while parent[rj] != rj:
                rj = parent[rj]
            if ri != rj:
                parent[ri] = rj
                return True
            return False

        ncomp = n
        for perm in (alpha, beta):
            for cyc in cycles(perm):
                for a, b in zip(cyc, cyc[1:]):
                    if union(a, b):
                        ncomp -= 1
        raw += _count_for_beta(n, g, query.s, parent, ncomp, require_transitive)
    raw *= conjugacy_class_size(query.alpha_type)
    normalized = Fraction(raw, factorial(n))
    if cache is not None and require_transitive:
        cache.put(query, raw, normalized)
    return normalized


def oracle_for_stratum(family, mu, cache=None):
    """Build and run the factorization query matching a primitive stratum.

    Raises ValueError when the branching profile over the degenerate value
    does not fit on the sheets (the stratum is empty for a trivial reason).
    """
    if family.kind == "laurent":
        n = family.k + family.l
        alpha = (family.k, family.l)
    else:
        n = family.n + 1
        alpha = (n,)
    degenerate = [m + 1 for m in mu.parts]
    pad = n - sum(degenerate)
    if pad < 0:
        raise ValueError(
            f"profile {degenerate} does not fit on {n} sheets: empty stratum")
    beta = tuple(sorted(degenerate + [1] * pad, reverse=True))
    s = family.param_count - mu.size
    query = FactorizationQuery(n=n, alpha_type=tuple(sorted(alpha, reverse=True)),
                               beta_type=beta, s=s)
    return query, count_factorizations(query, cache=cache)


class OracleCache:
    """Line-delimited JSON cache of factorization counts, keyed by
    (n, alpha, beta, s); rationals serialized as strings."""

    def __init__(self, path=None):
        self.path = path
        self.entries = {}
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    key = (rec["n"], tuple(rec["alpha"]), tuple(rec["beta"]), rec["s"])
                    self.entries[key] = Fraction(rec["normalized"])

    @staticmethod
    def _key(query):
        return (query.n, query.alpha_type, query.beta_type, query.s)

    def get(self, query):
        return self.entries.get(self._key(query))

    def put(self, query, raw, normalized):
        key = self._key(query)
        if key in self.entries:
            return
        self.entries[key] = normalized
        if self.path:
            rec = {"n": query.n, "alpha": list(query.alpha_type),
                   "beta": list(query.beta_type), "s": query.s,
                   "tuples": str(raw), "normalized": str(normalized)}
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec) + "\n")
