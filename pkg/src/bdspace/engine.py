"""The triangular-basis recursion over a registry.

Provides the BD-functionals c*_gamma, the unit-triangular dual basis
d*_gamma = e*_gamma - c*_gamma, the ell_1-side basis projections
P*_{(p,q]}, the biorthogonal vectors d_gamma (columns of the inverse
stage matrix), extension operators, and evaluation analyses.

All functionals are Funcs in e*-coordinates.  X-side vectors are Points:
coefficient vectors in the d-basis with a lazily grown cache of their
e-coordinates x(gamma).  Everything is exact rational.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BaseHasNoAnalysis, StageOverflow
from .funcs import Func
from .registry import BASE, TYPE1, TYPE2


@dataclass
class Point:
    """X-side vector: d-basis coefficients plus cached e-coordinates."""
    d_coords: Func = field(default_factory=Func)
    e_cache: dict = field(default_factory=dict)

    def copy(self):
        return Point(d_coords=self.d_coords.copy(), e_cache=dict(self.e_cache))

    def is_zero(self):
        return not self.d_coords

    def scaled(self, scalar):
        scalar = Fraction(scalar)
        return Point(d_coords=self.d_coords.scaled(scalar),
                     e_cache={k: scalar * v for k, v in self.e_cache.items()})

    def __add__(self, other):
        out = Point(d_coords=self.d_coords + other.d_coords)
        # keep only cache entries both summands know
        for k, v in self.e_cache.items():
            if k in other.e_cache:
                out.e_cache[k] = v + other.e_cache[k]
        return out

    def __sub__(self, other):
        return self + other.scaled(-1)


@dataclass(frozen=True)
class AnalysisRow:
    index: int          # r, starting at 1
    cut: int            # p_r = rank of xi_r
    payload: Func       # b*_r
    node: int           # xi_r


@dataclass
class StageMatrix:
    stage: int
    ids: list                    # Gamma_N in (rank, id) order
    rows: dict                   # xi -> d*_xi as Func (e*-coordinates)
    columns: dict                # gamma -> d_gamma restricted to Gamma_N

    def biorthogonality_defects(self):
        """All (xi, gamma) with <d*_xi, d_gamma> != delta -- empty when exact."""
        defects = []
        for xi in self.ids:
            row = self.rows[xi]
            for gamma in self.ids:
                val = row.dot(self.columns[gamma])
                if val != (1 if xi == gamma else 0):
                    defects.append((xi, gamma, val))
        return defects


class Engine:
    """Memoized functional calculus over one registry."""

    def __init__(self, registry):
        self.registry = registry
        self._c_star = {}
        self._d_star = {}
        self._prefix = {}  # (q, gid) -> P*_{(0,q]} e*_gid

    # -- BD-functionals and the dual basis ------------------------------------

    def c_star(self, gid):
        memo = self._c_star
        if gid in memo:
            return memo[gid]
        rec = self.registry.record(gid)
        if rec.kind == BASE:
            out = Func(role="bd")
        else:
            beta = self.registry.schedule.weight_value(rec.weight_index)
            tail = rec.payload - self.project_prefix(rec.cut, rec.payload)
            out = tail.scaled(beta)
            if rec.kind == TYPE2:
                out.iadd(rec.predecessor, Fraction(1))
            out.role = "bd"
        memo[gid] = out
        return out

    def d_star(self, gid):
        memo = self._d_star
        if gid in memo:
            return memo[gid]
        out = self.c_star(gid).scaled(-1)
        out.iadd(gid, Fraction(1))
        out.role = "dual-basis"
        memo[gid] = out
        return out

    # -- ell_1-side projections ------------------------------------------------

    def prefix_estar(self, q, gid):
        """P*_{(0,q]} e*_gid, memoized."""
        if q <= 0:
            return Func()
        key = (q, gid)
        memo = self._prefix
        if key in memo:
            return memo[key]
        rec = self.registry.record(gid)
        if rec.rank <= q:
            out = Func.unit(gid)
        else:
            out = Func()
            for hid, coef in self.c_star(gid).items():
                out.accumulate(self.prefix_estar(q, hid), coef)
        memo[key] = out
        return out

    def project_prefix(self, q, f):
        """P*_{(0,q]} f for any Func f."""
        out = Func(role=f.role)
        for gid, coef in f.items():
            out.accumulate(self.prefix_estar(q, gid), coef)
        return out

    def project_l1(self, interval, f):
        """P*_I f for a rank interval I = (lo, hi]; hi=None means infinity."""
        lo, hi = interval
        if hi is None:
            return f - self.project_prefix(lo, f)
        if hi <= lo:
            return Func(role=f.role)
        return self.project_prefix(hi, f) - self.project_prefix(lo, f)

    def project_open(self, lo, hi, f):
        """P*_{(lo, hi)} f over the open rank interval, i.e. ranks lo+1 .. hi-1."""
        return self.project_l1((lo, hi - 1), f)

    # -- evaluation analyses ----------------------------------------------------

    def evaluation_analysis(self, gid):
        """The rows (p_r, b*_r, xi_r) of the chain ending at gid."""
        rec = self.registry.record(gid)
        if rec.kind == BASE:
            raise BaseHasNoAnalysis("element %d is the Base element" % gid)
        chain = []
        cur = rec
        while True:
            chain.append(cur)
            if cur.kind == TYPE1:
                break
            cur = self.registry.record(cur.predecessor)
        chain.reverse()
        return [AnalysisRow(index=r + 1, cut=c.rank, payload=c.payload, node=c.id)
                for r, c in enumerate(chain)]

    def analysis_identity_sides(self, gid, tail_variant=False):
        """(e*_gid, reconstruction) for the evaluation-analysis identity.

        tail_variant=False uses the windows P*_{(p_{r-1}, p_r)}, otherwise the
        tails P*_{(p_{r-1}, infinity)}; both must reproduce e*_gid exactly.
        """
        rows = self.evaluation_analysis(gid)
        rec = self.registry.record(gid)
        beta = self.registry.schedule.weight_value(rec.weight_index)
        rhs = Func()
        prev_cut = 0
        for row in rows:
            rhs.accumulate(self.d_star(row.node))
            if tail_variant:
                piece = row.payload - self.project_prefix(prev_cut, row.payload)
            else:
                piece = self.project_open(prev_cut, row.cut, row.payload)
            rhs.accumulate(piece, beta)
            prev_cut = row.cut
        return Func.unit(gid), rhs

    # -- points ---------------------------------------------------------------

    def evaluate(self, point, stage):
        """Fill point.e_cache with x(gamma) for every gamma of rank <= stage."""
        cache = point.e_cache
        for gid in self.registry.gammas_up_to(stage):
            if gid in cache:
                continue
            val = point.d_coords.get(gid, Fraction(0))
            cs = self.c_star(gid)
            if cs:
                val = val + cs.dot(cache)
            cache[gid] = val
        return cache

    def value(self, point, gid):
        """x(gamma) for one element."""
        if gid not in point.e_cache:
            self.evaluate(point, self.registry.rank_of(gid))
        return point.e_cache[gid]

    def pair(self, f, point):
        """<f, x> for a Func f against a Point x."""
        if f:
            self.evaluate(point, max(self.registry.rank_of(g) for g in f))
        return f.dot(point.e_cache)

    def ran(self, point):
        """Smallest rank interval [lo, hi] covering the d-support; None if zero."""
        if point.is_zero():
            return None
        ranks = [self.registry.rank_of(g) for g in point.d_coords]
        return (min(ranks), max(ranks))

    def fdd_project(self, interval, point):
        """P_I x: keep d-coordinates with rank in (lo, hi] (hi=None: infinity)."""
        lo, hi = interval
        keep = self.point_from_d(
            {g: c for g, c in point.d_coords.items()
             if lo < self.registry.rank_of(g) and (hi is None or self.registry.rank_of(g) <= hi)})
        return keep

    def point_from_d(self, d_coords):
        return Point(d_coords=Func(d_coords))

    def eval_after_projection(self, gid, s, point):
        """<e*_gamma, P_{(s, infinity)} x> computed on the ell_1 side."""
        f = self.project_l1((s, None), Func.unit(gid))
        return self.pair(f, point)

    def extend(self, q, u, stage):
        """i_q(u): the unique vector in span{d_gamma : gamma in Gamma_q}
        whose restriction to Gamma_q equals u; e-cache filled to `stage`."""
        if q > max(self.registry.max_rank(), self.registry.generated_stage):
            raise StageOverflow("stage %d not materialized" % q)
        u_full = {g: Fraction(v) for g, v in u.items() if v}
        d = Func()
        for gid in self.registry.gammas_up_to(q):
            val = u_full.get(gid, Fraction(0)) - self.c_star(gid).dot(u_full)
            if val:
                d[gid] = val
        point = Point(d_coords=d)
        self.evaluate(point, max(q, stage))
        return point

    def range_and_local_support(self, point):
        """(range interval, local support at q = max ran x)."""
        rng = self.ran(point)
        if rng is None:
            return None, set()
        q = rng[1]
        if any(self.registry.rank_of(g) > q for g in point.e_cache):
            pass  # extra cached stages are harmless
        self.evaluate(point, q)
        support = {g for g in self.registry.gammas_up_to(q)
                   if point.e_cache.get(g)}
        return rng, support

    # -- stage matrices and operator norms --------------------------------------

    def stage_matrix(self, n):
        if n < 1 or (n > self.registry.max_rank()
                     and n > self.registry.generated_stage):
            raise StageOverflow("Gamma_%d not materialized" % n)
        ids = self.registry.gammas_up_to(n)
        rows = {gid: self.d_star(gid) for gid in ids}
        columns = {}
        for gamma in ids:
            col = {}
            for xi in ids:
                val = Fraction(1) if xi == gamma else Fraction(0)
                for delta, coef in rows[xi].items():
                    if delta != xi and delta in col:
                        val -= coef * col[delta]
                if val:
                    col[xi] = val
            columns[gamma] = col
        return StageMatrix(stage=n, ids=ids, rows=rows, columns=columns)

    def basis_constant(self, n):
        """max_q ||P*_{(0,q]}||_{ell_1 -> ell_1} over Gamma_n, exact."""
        if n < 1 or (n > self.registry.max_rank()
                     and n > self.registry.generated_stage):
            raise StageOverflow("Gamma_%d not materialized" % n)
        best = Fraction(0)
        for gid in self.registry.gammas_up_to(n):
            for q in range(1, n + 1):
                best = max(best, self.prefix_estar(q, gid).l1())
        return best

    def fdd_row_norms(self, n, matrix=None):
        """Stage-n max-row-sums of every P_{(p,q]} and every tail P_{(p,inf)}.

        Returns ({(p, q): value}, {p: value}).  The matrix of P_I in
        e-coordinates over Gamma_n is sum over xi with rank in I of the
        outer product d_gamma-column x d*_xi-row.
        """
        sm = matrix or self.stage_matrix(n)
        ids = sm.ids
        # prefix[q] maps gamma -> {delta: entry} for P_{(0,q]}
        running = {g: {} for g in ids}
        prefix_rowsums = {0: {g: Fraction(0) for g in ids}}
        prefix_rows = {0: {g: {} for g in ids}}
        for q in range(1, n + 1):
            for xi in self.registry.stage(q):
                col = sm.columns[xi]
                row = sm.rows[xi]
                for gamma, bval in col.items():
                    tgt = running[gamma]
                    for delta, aval in row.items():
                        v = tgt.get(delta, Fraction(0)) + bval * aval
                        if v:
                            tgt[delta] = v
                        else:
                            tgt.pop(delta, None)
            prefix_rows[q] = {g: dict(r) for g, r in running.items()}
        interval_sums = {}
        for p in range(0, n + 1):
            for q in range(p + 1, n + 1):
                best = Fraction(0)
                for g in ids:
                    hi, lo = prefix_rows[q][g], prefix_rows[p][g]
                    keys = set(hi) | set(lo)
                    s = sum((abs(hi.get(k, Fraction(0)) - lo.get(k, Fraction(0)))
                             for k in keys), Fraction(0))
                    best = max(best, s)
                interval_sums[(p, q)] = best
        tail_sums = {}
        for p in range(0, n + 1):
            best = Fraction(0)
            for g in ids:
                row = prefix_rows[p][g]
                s = Fraction(0)
                for k in set(row) | {g}:
                    ident = Fraction(1) if k == g else Fraction(0)
                    s += abs(ident - row.get(k, Fraction(0)))
                best = max(best, s)
            tail_sums[p] = best
        return interval_sums, tail_sums
