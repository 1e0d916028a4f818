"""Concrete index-set generators and element forging.

Two disciplines are supported.  "BmT" admits every weight m_j^{-1} with
the plain two-family recursion; "XK" restricts stage membership by parity
(even weights carry net payloads, odd weights carry single coded
evaluation functionals).  Stage generation enumerates Delta_{q} literally
from the recursion, with the payload families B_{n,p} supplied by a
NetPolicy; the full factorial-denominator nets are combinatorially
explosive, so the default policy is signed units.

Forging interns sparse towers above the enumerated prefix: even-weight
chains with prescribed cuts and payloads, and odd-weight chains following
the sigma-coding.
"""

import itertools
from fractions import Fraction
from math import factorial

from .errors import (BDSpaceError, CombinatorialBlowup, CutTooSmall,
                     NetTooLarge, StageOverflow, WeightMismatch)
from .funcs import Func
from .registry import BASE, BMT, ENFORCE, TYPE1, TYPE2, XK


# -- net policies -------------------------------------------------------------

class SignedUnits:
    """B_{n,p} = {+-e*_eta : eta in Gamma_n \\ Gamma_p}."""

    kind = "signed_units"

    def describe(self):
        return "units"

    def elements(self, registry, n, p):
        out = []
        for eta in registry.gammas_up_to(n):
            if registry.rank_of(eta) > p:
                out.append(Func.unit(eta, Fraction(1), role="net"))
                out.append(Func.unit(eta, Fraction(-1), role="net"))
        return out


class DyadicAverages:
    """Signed units plus 2^{-ceil(log2 K')}-weighted signed sums, K' <= K."""

    kind = "dyadic_averages"

    def __init__(self, K, cap=100000):
        self.K = K
        self.cap = cap

    def describe(self):
        return "dyadic:%d" % self.K

    def elements(self, registry, n, p):
        window = [g for g in registry.gammas_up_to(n) if registry.rank_of(g) > p]
        out = []
        for size in range(1, self.K + 1):
            if size > len(window):
                break
            weight = Fraction(1, 1 << (size - 1).bit_length())
            for combo in itertools.combinations(window, size):
                for signs in itertools.product((1, -1), repeat=size):
                    if len(out) >= self.cap:
                        raise NetTooLarge(
                            "dyadic net over window of %d exceeds cap %d"
                            % (len(window), self.cap))
                    out.append(Func(((g, weight * s) for g, s in zip(combo, signs)),
                                    role="net"))
        return out


class PaperFactorial:
    """All rational vectors with denominators dividing N_n! and ell_1-norm <= 1.

    N_n defaults to n itself; a cap guards the lattice enumeration.
    """

    kind = "paper_factorial"

    def __init__(self, n_of=None, cap=100000):
        self.n_of = n_of or (lambda n: n)
        self.cap = cap

    def describe(self):
        return "paper"

    def elements(self, registry, n, p):
        window = [g for g in registry.gammas_up_to(n) if registry.rank_of(g) > p]
        denom = factorial(self.n_of(n))
        out = []

        def rec(idx, budget, acc):
            if idx == len(window):
                if acc:
                    if len(out) >= self.cap:
                        raise NetTooLarge(
                            "factorial net over window of %d exceeds cap %d"
                            % (len(window), self.cap))
                    out.append(Func(((g, Fraction(a, denom)) for g, a in acc),
                                    role="net"))
                return
            rec(idx + 1, budget, acc)
            for a in range(1, budget + 1):
                for sa in (a, -a):
                    rec(idx + 1, budget - a, acc + [(window[idx], sa)])

        rec(0, denom, [])
        return out


def net_elements(registry, n, p, policy):
    """The family B_{n,p} under the given policy."""
    if not 0 <= p < n:
        raise ValueError("need 0 <= p < n")
    if n > registry.max_rank() and n > registry.generated_stage:
        raise StageOverflow("Gamma_%d not materialized" % n)
    return policy.elements(registry, n, p)


# -- stage generation ----------------------------------------------------------

def generate_stage(registry, q, policy=None):
    """Materialize Delta_q per the registry's discipline; returns new ids."""
    policy = policy or SignedUnits()
    if q != registry.generated_stage + 1:
        raise StageOverflow(
            "stages below %d must be generated first (have %d)"
            % (q, registry.generated_stage))
    if q == 1:
        gid = registry.base()
        registry.generated_stage = 1
        return [gid]

    n = q - 1
    sched = registry.schedule
    new_ids = []
    seen = set()
    budget = registry.stage_cap

    def admit(family, **kw):
        if len(registry) >= budget:
            raise CombinatorialBlowup(
                "stage %d exceeds cap %d while emitting %s"
                % (q, budget, family), family=family)
        gid = registry.intern(rank=q, **kw)
        if gid not in seen and registry.records[gid].rank == q:
            seen.add(gid)
            new_ids.append(gid)

    nets = {}

    def net(p):
        if p not in nets:
            nets[p] = net_elements(registry, n, p, policy)
        return nets[p]

    if registry.discipline == BMT:
        for j in range(1, min(n + 1, len(sched.m)) + 1):
            for b in net(0):
                admit("Type1 weight m_%d" % j, kind=TYPE1, weight_index=j,
                      payload=b)
        for p in range(1, n):
            for j in range(1, min(p, len(sched.m)) + 1):
                for xi in registry.stage(p):
                    rec = registry.records[xi]
                    if (rec.kind == BASE or rec.weight_index != j
                            or rec.age >= sched.length_value(j)):
                        continue
                    for b in net(p):
                        admit("Type2 weight m_%d cut %d" % (j, p), kind=TYPE2,
                              weight_index=j, predecessor=xi, payload=b)
    else:
        # even-weight Type1
        for j in range(1, (n + 1) // 2 + 1):
            if 2 * j > len(sched.m):
                break
            for b in net(0):
                admit("even Type1 weight m_%d" % (2 * j), kind=TYPE1,
                      weight_index=2 * j, payload=b)
        # even-weight Type2
        for p in range(1, n):
            for j in range(1, p // 2 + 1):
                if 2 * j > len(sched.m):
                    break
                for xi in registry.stage(p):
                    rec = registry.records[xi]
                    if (rec.kind == BASE or rec.weight_index != 2 * j
                            or rec.age >= sched.length_value(2 * j)):
                        continue
                    for b in net(p):
                        admit("even Type2 weight m_%d cut %d" % (2 * j, p),
                              kind=TYPE2, weight_index=2 * j, predecessor=xi,
                              payload=b)
        # odd-weight Type1: single targets of weight index = 2 mod 4
        for j in range(1, (n + 2) // 2 + 1):
            w = 2 * j - 1
            if w > len(sched.m):
                break
            for eta in registry.gammas_up_to(n):
                erec = registry.records[eta]
                if erec.weight_index is None or erec.weight_index % 4 != 2:
                    continue
                if registry.odd_guard == ENFORCE:
                    nj = sched.length_value(w)
                    if sched.m[erec.weight_index - 1] <= nj * nj:
                        continue
                admit("odd Type1 weight m_%d" % w, kind=TYPE1, weight_index=w,
                      payload=Func.unit(eta))
        # odd-weight Type2: coded targets
        for p in range(1, n):
            for j in range(1, (p + 1) // 2 + 1):
                w = 2 * j - 1
                if w > len(sched.m):
                    break
                for xi in registry.stage(p):
                    rec = registry.records[xi]
                    if (rec.kind == BASE or rec.weight_index != w
                            or rec.age >= sched.length_value(w)):
                        continue
                    coded = 4 * registry.sigma(xi)
                    if coded > len(sched.m):
                        continue
                    for eta in registry.gammas_up_to(n):
                        erec = registry.records[eta]
                        if erec.rank <= p or erec.weight_index != coded:
                            continue
                        admit("odd Type2 weight m_%d cut %d" % (w, p),
                              kind=TYPE2, weight_index=w, predecessor=xi,
                              payload=Func.unit(eta))

    registry.generated_stage = q
    return new_ids


def generate_up_to(registry, n, policy=None):
    """Generate all stages up to n; returns ids of Gamma_n."""
    for q in range(registry.generated_stage + 1, n + 1):
        generate_stage(registry, q, policy)
    return registry.gammas_up_to(n)


# -- forging -------------------------------------------------------------------

def forge_even(registry, j, cuts, payloads):
    """Intern an even-weight chain with analysis rows (p_r, b*_r); returns gamma.

    The chain has weight m_{2j}^{-1}; cuts are the p_r, strictly
    increasing, and payload r must live in the window (p_{r-1}, p_r - 1].
    """
    cuts = list(cuts)
    payloads = list(payloads)
    if not cuts or len(cuts) != len(payloads):
        raise ValueError("need equally many cuts and payloads, at least one")
    if any(cuts[i] >= cuts[i + 1] for i in range(len(cuts) - 1)):
        raise ValueError("cuts must be strictly increasing")
    if cuts[0] < 2 * j:
        raise CutTooSmall("first cut %d below weight index %d" % (cuts[0], 2 * j))
    gid = registry.intern(kind=TYPE1, rank=cuts[0], weight_index=2 * j,
                          payload=payloads[0])
    for p, b in zip(cuts[1:], payloads[1:]):
        gid = registry.intern(kind=TYPE2, rank=p, weight_index=2 * j,
                              predecessor=gid, payload=b)
    return gid


def forge_odd_chain(registry, j0, targets):
    """Intern the odd-weight chain of weight m_{2j0-1}^{-1} through the
    given (cut p_i, target eta_i) pairs; the coding rules are enforced by
    the registry."""
    targets = list(targets)
    if not targets:
        raise ValueError("need at least one (cut, target) pair")
    w = 2 * j0 - 1
    p1, eta1 = targets[0]
    if p1 < w:
        raise CutTooSmall("first cut %d below weight index %d" % (p1, w))
    gid = registry.intern(kind=TYPE1, rank=p1, weight_index=w,
                          payload=Func.unit(eta1))
    for p, eta in targets[1:]:
        gid = registry.intern(kind=TYPE2, rank=p, weight_index=w,
                              predecessor=gid, payload=Func.unit(eta))
    return gid


# -- the tree-like check ---------------------------------------------------------

def _odd_chain(registry, gid):
    """[(xi_i, eta_i)] along the chain of an odd-weight element."""
    rec = registry.record(gid)
    if rec.weight_index is None or rec.weight_index % 2 == 0:
        raise WeightMismatch("element %d does not have odd weight" % gid)
    chain = []
    while True:
        (eta,) = rec.payload
        chain.append((rec.id, eta))
        if rec.kind == TYPE1:
            break
        rec = registry.record(rec.predecessor)
    chain.reverse()
    return chain


def check_treelike(registry, gamma, gamma2):
    """The branching index l of two same-odd-weight chains.

    Returns the unique 1 <= l <= age(shorter) such that the chains agree
    strictly below l and the shorter chain's targets above l have weights
    disjoint from all of the longer chain's target weights.
    """
    ra, rb = registry.record(gamma), registry.record(gamma2)
    if ra.weight_index != rb.weight_index:
        raise WeightMismatch("weights m_%s and m_%s differ"
                             % (ra.weight_index, rb.weight_index))
    long_chain = _odd_chain(registry, gamma)
    short_chain = _odd_chain(registry, gamma2)
    if len(short_chain) > len(long_chain):
        long_chain, short_chain = short_chain, long_chain
    long_weights = {registry.record(eta).weight_index for _, eta in long_chain}
    valid = []
    for l in range(1, len(short_chain) + 1):
        if any(short_chain[i][0] != long_chain[i][0] for i in range(l - 1)):
            continue
        if any(registry.record(short_chain[i - 1][1]).weight_index in long_weights
               for i in range(l + 1, len(short_chain) + 1)):
            continue
        valid.append(l)
    if len(valid) != 1:
        raise BDSpaceError(
            "tree-like branching index not unique for (%d, %d): %r"
            % (gamma, gamma2, valid))
    return valid[0]
