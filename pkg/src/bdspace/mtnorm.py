"""Mixed Tsirelson norms by interval dynamic programming.

The norming set W[(A_{l_j}, theta_j)] contains the signed unit
functionals and every theta_j-weighted sum of at most l_j successive
members.  The implicit norm is computed exactly by a DP over contiguous
windows of the support: because the admissible families constrain only
cardinality and successiveness, and the norm is monotone under support
restriction, an optimal decomposition may be taken to consist of
intervals of the support.  The brute-force successive-subset oracle in
the test suite checks exactly this reduction.

Ties among optimal trees are broken towards the lexicographically
smallest (weight index, split points), so results are reproducible.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import IndexOutOfSchedule
from .funcs import Func


@dataclass(frozen=True)
class MTParams:
    pairs: tuple                   # ((l_j, theta_j), ...) 1-based by position
    excluded: Optional[int] = None
    tag: str = "explicit"

    def __post_init__(self):
        thetas = [th for _, th in self.pairs]
        if any(not 0 < th < 1 for th in thetas):
            raise ValueError("weights must lie in (0, 1)")
        if any(thetas[i] <= thetas[i + 1] for i in range(len(thetas) - 1)):
            raise ValueError("weights must be strictly decreasing")
        if any(l < 1 for l, _ in self.pairs):
            raise ValueError("cardinality caps must be positive")

    @classmethod
    def from_schedule(cls, schedule, factor=4, excluded=None, length=None):
        """(l_j, theta_j) = (factor * n_j, 1/m_j) along the schedule."""
        k = length or len(schedule.m)
        pairs = tuple((factor * schedule.n[j], Fraction(1, schedule.m[j]))
                      for j in range(k))
        return cls(pairs=pairs, excluded=excluded,
                   tag="schedule:%dn" % factor)

    def cap(self, j):
        if not 1 <= j <= len(self.pairs):
            raise IndexOutOfSchedule("no parameter pair at index %d" % j)
        return self.pairs[j - 1][0]

    def theta(self, j):
        if not 1 <= j <= len(self.pairs):
            raise IndexOutOfSchedule("no parameter pair at index %d" % j)
        return self.pairs[j - 1][1]

    def active_indices(self, support_size):
        """All j with l_j < |supp| plus the first j with l_j >= |supp|.

        Later indices are dominated: their weight is smaller and every
        piece value is capped by the ell_1 bound already attained by the
        first all-covering index.
        """
        out = []
        for j in range(1, len(self.pairs) + 1):
            if j == self.excluded:
                continue
            out.append(j)
            if self.cap(j) >= support_size:
                break
        return out


@dataclass(frozen=True)
class Leaf:
    sign: int
    k: int

    def to_json(self):
        return {"leaf": {"sign": self.sign, "k": self.k}}


@dataclass(frozen=True)
class Node:
    j: int
    children: tuple

    def to_json(self):
        return {"j": self.j, "children": [c.to_json() for c in self.children]}


def tree_support(tree):
    if isinstance(tree, Leaf):
        return (tree.k, tree.k)
    lo = min(tree_support(c)[0] for c in tree.children)
    hi = max(tree_support(c)[1] for c in tree.children)
    return (lo, hi)


def tree_action(tree, params):
    """The functional the tree denotes, as a Func over coordinates."""
    if isinstance(tree, Leaf):
        return Func.unit(tree.k, Fraction(tree.sign))
    out = Func()
    for c in tree.children:
        out.accumulate(tree_action(c, params))
    return out.scaled(params.theta(tree.j))


def verify_norming_tree(tree, params):
    """(ok, reason): structural membership of the tree in the norming set."""
    if isinstance(tree, Leaf):
        if tree.sign not in (1, -1):
            return False, "leaf sign %r not +-1" % (tree.sign,)
        return True, ""
    if isinstance(tree, Node):
        if not 1 <= tree.j <= len(params.pairs):
            return False, "weight index %r outside parameter list" % (tree.j,)
        if tree.j == params.excluded:
            return False, "weight index %d is excluded" % tree.j
        if not 1 <= len(tree.children) <= params.cap(tree.j):
            return False, ("node with %d children exceeds cap l_%d = %d"
                           % (len(tree.children), tree.j, params.cap(tree.j)))
        prev_hi = None
        for c in tree.children:
            ok, reason = verify_norming_tree(c, params)
            if not ok:
                return False, reason
            lo, hi = tree_support(c)
            if prev_hi is not None and lo <= prev_hi:
                return False, "children supports not successive"
            prev_hi = hi
        return True, ""
    return False, "not a tree node"


def mt_norm(x, params):
    """Exact mixed Tsirelson norm of a finitely supported rational vector.

    x is a mapping coordinate -> rational.  Returns (value, tree) where
    the tree is an attaining member of the norming set; the zero vector
    yields (0, None).
    """
    entries = {int(k): Fraction(v) for k, v in dict(x).items() if v}
    if not entries:
        return Fraction(0), None
    pos = sorted(entries)
    vals = [entries[p] for p in pos]
    memo = {}

    def window(i, k):
        """(value, decision) for the support window [i, k)."""
        key = (i, k)
        if key in memo:
            return memo[key]
        best_val = None
        best_key = None
        best_dec = None
        for t in range(i, k):
            v = abs(vals[t])
            cand_key = (0, (t,))
            if best_val is None or v > best_val or (v == best_val
                                                    and cand_key < best_key):
                best_val, best_key = v, cand_key
                best_dec = ("leaf", t)
        size = k - i
        for j in params.active_indices(size):
            cap = params.cap(j)
            theta = params.theta(j)
            if cap >= size:
                # singleton split attains the ell_1 bound
                v = theta * sum(abs(vals[t]) for t in range(i, k))
                cuts = tuple(range(i + 1, k))
                cand_key = (j, cuts)
            else:
                v, cuts = best_split(i, k, cap)
                v = theta * v
                cand_key = (j, cuts)
            if v > best_val or (v == best_val and cand_key < best_key):
                best_val, best_key = v, cand_key
                best_dec = ("node", j, cand_key[1])
        memo[key] = (best_val, best_dec)
        return memo[key]

    split_memo = {}

    def best_split(i, k, pieces):
        """Max sum of window norms over exactly min(pieces, k-i) intervals.

        Returns (value, interior cut tuple); refining a split never
        decreases the sum (triangle inequality), so the maximal piece
        count is optimal.
        """
        pieces = min(pieces, k - i)
        key = (i, k, pieces)
        if key in split_memo:
            return split_memo[key]
        if pieces == 1:
            out = (window(i, k)[0], ())
        else:
            best = None
            for cut in range(i + 1, k - pieces + 2):
                head = window(i, cut)[0]
                tail_v, tail_cuts = best_split(cut, k, pieces - 1)
                cand = (head + tail_v, (cut,) + tail_cuts)
                if best is None or cand[0] > best[0] or (
                        cand[0] == best[0] and cand[1] < best[1]):
                    best = cand
            out = best
        split_memo[key] = out
        return out

    def build(i, k):
        _, dec = window(i, k)
        if dec[0] == "leaf":
            t = dec[1]
            return Leaf(sign=1 if vals[t] >= 0 else -1, k=pos[t])
        _, j, cuts = dec
        bounds = [i] + list(cuts) + [k]
        children = tuple(build(bounds[r], bounds[r + 1])
                         for r in range(len(bounds) - 1))
        return Node(j=j, children=children)

    value, _ = window(0, len(pos))
    return value, build(0, len(pos))


def mt_norm_exhaustive(x, params, cap=500000):
    """Brute-force oracle: enumerate every norming tree over subsets.

    Independent of the DP above: pieces are arbitrary successive subsets
    of the support, not just intervals, so agreement of the two routes is
    evidence for the interval-decomposition reduction.  Only usable for
    tiny supports; `cap` bounds the number of recursive evaluations.
    """
    entries = {int(k): Fraction(v) for k, v in dict(x).items() if v}
    if not entries:
        return Fraction(0)
    coords = tuple(sorted(entries))
    memo = {}
    budget = [cap]

    def pieces(pool, max_count):
        """Ordered tuples of disjoint successive nonempty subsets of pool."""
        if max_count == 0 or not pool:
            yield ()
            return
        n = len(pool)
        for first_lo in range(n):
            # the first piece starts at pool[first_lo]
            rest = pool[first_lo + 1:]
            for mask in range(1 << len(rest)):
                piece = (pool[first_lo],) + tuple(
                    c for i, c in enumerate(rest) if mask >> i & 1)
                tail_pool = tuple(c for c in rest if c > piece[-1])
                for tail in pieces(tail_pool, max_count - 1):
                    yield (piece,) + tail

    def best(pool):
        if pool in memo:
            return memo[pool]
        budget[0] -= 1
        if budget[0] < 0:
            raise RuntimeError("exhaustive oracle budget exceeded")
        out = max(abs(entries[c]) for c in pool)
        for j in range(1, len(params.pairs) + 1):
            if j == params.excluded:
                continue
            theta = params.theta(j)
            cap_j = min(params.cap(j), len(pool))
            for split in pieces(pool, cap_j):
                if not split:
                    continue
                if len(split) == 1 and split[0] == pool:
                    # theta < 1, so a one-piece self-split never improves
                    continue
                v = theta * sum(best(p) for p in split)
                if v > out:
                    out = v
        memo[pool] = out
        return out

    return best(coords)
