"""The Gamma registry: interned construction elements with ranks and weights.

Every element gamma of the index set is one of

  Base    -- the single element of Delta_1,
  Type1   -- (rank, weight m_j^{-1}, payload b*), age 1,
  Type2   -- (rank, predecessor xi, weight m_j^{-1}, payload b*), extending
             the chain of xi by one link,

where the payload b* is a Func of ell_1-norm at most 1 supported in the
window Gamma_{rank-1} \\ Gamma_cut.  Interning validates all structural
invariants, is idempotent on identical drafts, and assigns ids densely in
insertion order.  The canonical total order on elements is (rank, id).

Odd-weight discipline ("XK"): elements of odd weight carry a single unit
payload e*_eta whose weight is pinned down by the sigma-coding; this is
what makes odd-weight chains tree-like.  sigma assigns the smallest unused
positive integer exceeding rank/4, on first demand rather than at intern
time -- injective, deterministic in demand order, and small enough that
coded even weights stay within reach of toy schedules.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .errors import (AgeOverflow, OddWeightRuleViolation, ScheduleViolation,
                     StageOverflow, SupportOutOfWindow, UnknownGamma,
                     WeightMismatch)
from .funcs import Func, frac_str

BASE = "Base"
TYPE1 = "Type1"
TYPE2 = "Type2"

XK = "XK"
BMT = "BmT"

ENFORCE = "enforce"
WAIVE = "waive"


@dataclass(frozen=True)
class ElementRecord:
    id: int
    rank: int
    kind: str
    weight_index: Optional[int] = None
    age: Optional[int] = None
    cut: int = 0
    predecessor: Optional[int] = None
    payload: Optional[Func] = None
    sigma: Optional[int] = None

    def is_odd_weight(self):
        return self.weight_index is not None and self.weight_index % 2 == 1


class Registry:
    """Single-writer arena of ElementRecords over a fixed schedule."""

    def __init__(self, schedule, discipline=XK, odd_guard=WAIVE, stage_cap=20000):
        if discipline not in (XK, BMT):
            raise ValueError("unknown discipline %r" % discipline)
        self.schedule = schedule
        self.discipline = discipline
        self.odd_guard = odd_guard
        self.stage_cap = stage_cap
        self.records = []
        self._by_key = {}
        self._stages = {}
        self._sigma_used = set()
        self.generated_stage = 0
        self.waivers = []

    # -- lookups -------------------------------------------------------------

    def record(self, gid):
        if not isinstance(gid, int) or not 0 <= gid < len(self.records):
            raise UnknownGamma("no element with id %r" % (gid,))
        return self.records[gid]

    def rank_of(self, gid):
        return self.record(gid).rank

    def sigma(self, gid):
        """The sigma-code of an element, assigned on first demand."""
        rec = self.record(gid)
        if rec.sigma is None:
            rec = replace(rec, sigma=self._next_sigma(rec.rank))
            self.records[gid] = rec
        return rec.sigma

    def __len__(self):
        return len(self.records)

    def stage(self, q):
        """Ids of Delta_q (insertion order)."""
        return list(self._stages.get(q, ()))

    def gammas_up_to(self, n):
        """Ids of Gamma_n in the canonical (rank, id) order."""
        out = []
        for q in sorted(self._stages):
            if q > n:
                break
            out.extend(self._stages[q])
        return out

    def max_rank(self):
        return max(self._stages) if self._stages else 0

    def count_up_to(self, n):
        return sum(len(v) for q, v in self._stages.items() if q <= n)

    # -- interning -----------------------------------------------------------

    def base(self):
        """The unique element of Delta_1 (interned on first use)."""
        key = (BASE, 1, None, 0, None, None)
        if key in self._by_key:
            return self._by_key[key]
        return self._admit(key, ElementRecord(id=len(self.records), rank=1,
                                              kind=BASE))

    def intern(self, kind, rank, weight_index=None, cut=0, predecessor=None,
               payload=None, _bypass_stage_guard=False):
        """Validate a draft element and return its id (idempotent)."""
        if kind == BASE:
            if rank != 1:
                raise ScheduleViolation("Base elements live in Delta_1 only")
            return self.base()
        if kind not in (TYPE1, TYPE2):
            raise ValueError("unknown kind %r" % kind)
        if rank < 2:
            raise ScheduleViolation("Type1/Type2 elements need rank >= 2")
        if weight_index is None:
            raise WeightMismatch("missing weight index")
        self.schedule.weight_value(weight_index)  # IndexOutOfSchedule if bad
        if weight_index > rank:
            raise ScheduleViolation(
                "weight index %d exceeds rank %d" % (weight_index, rank))
        payload = Func(payload or (), role="net")
        for gid in payload:
            self.record(gid)  # UnknownGamma if dangling
        if payload.l1() > 1:
            raise SupportOutOfWindow("payload ell_1-norm exceeds 1")

        if kind == TYPE1:
            if predecessor is not None or cut != 0:
                raise ScheduleViolation("Type1 elements have no predecessor and cut 0")
            age = 1
        else:
            pred = self.record(predecessor) if predecessor is not None else None
            if pred is None:
                raise UnknownGamma("Type2 element without predecessor")
            if pred.kind == BASE:
                raise WeightMismatch("Base element cannot head a chain")
            if pred.weight_index != weight_index:
                raise WeightMismatch(
                    "chain weight m_%d != predecessor weight m_%s"
                    % (weight_index, pred.weight_index))
            cut = pred.rank
            if not cut < rank:
                raise ScheduleViolation("cut %d must be below rank %d" % (cut, rank))
            age = pred.age + 1
            if age > self.schedule.length_value(weight_index):
                raise AgeOverflow(
                    "age %d exceeds n_%d = %d"
                    % (age, weight_index, self.schedule.length_value(weight_index)))

        for gid in payload:
            r = self.rank_of(gid)
            if not cut < r <= rank - 1:
                raise SupportOutOfWindow(
                    "payload id %d has rank %d outside (%d, %d]"
                    % (gid, r, cut, rank - 1))

        if self.discipline == XK and weight_index % 2 == 1:
            self._check_odd_rules(kind, weight_index, predecessor, payload)

        key = (kind, rank, weight_index, cut, predecessor,
               frozenset(payload.items()))
        if key in self._by_key:
            return self._by_key[key]
        if rank <= self.generated_stage and not _bypass_stage_guard:
            raise StageOverflow(
                "rank %d is inside the enumerated prefix (stage %d); "
                "forged towers must sit above it" % (rank, self.generated_stage))
        rec = ElementRecord(id=len(self.records), rank=rank, kind=kind,
                            weight_index=weight_index, age=age, cut=cut,
                            predecessor=predecessor, payload=payload)
        return self._admit(key, rec)

    def _check_odd_rules(self, kind, weight_index, predecessor, payload):
        if len(payload) != 1 or set(payload.values()) != {Fraction(1)}:
            raise OddWeightRuleViolation(
                "odd-weight payload must be a single evaluation functional e*_eta")
        (eta,) = payload
        eta_rec = self.record(eta)
        if eta_rec.weight_index is None:
            raise OddWeightRuleViolation("odd-weight target eta must carry a weight")
        if kind == TYPE1:
            if eta_rec.weight_index % 4 != 2:
                raise OddWeightRuleViolation(
                    "first odd link needs target weight index = 2 mod 4, got %d"
                    % eta_rec.weight_index)
            m_eta = self.schedule.m[eta_rec.weight_index - 1]
            n_j = self.schedule.length_value(weight_index)
            if m_eta <= n_j * n_j:
                if self.odd_guard == ENFORCE:
                    raise OddWeightRuleViolation(
                        "guard m_%d = %d <= n_%d^2 = %d"
                        % (eta_rec.weight_index, m_eta, weight_index, n_j * n_j))
                self.waivers.append(
                    ("odd_type1_guard", eta_rec.weight_index, weight_index))
        else:
            coded = 4 * self.sigma(predecessor)
            if eta_rec.weight_index != coded:
                raise OddWeightRuleViolation(
                    "target weight index %d != 4*sigma(xi) = %d"
                    % (eta_rec.weight_index, coded))

    def _admit(self, key, rec):
        self.records.append(rec)
        self._by_key[key] = rec.id
        self._stages.setdefault(rec.rank, []).append(rec.id)
        return rec.id

    def _next_sigma(self, rank):
        v = rank // 4 + 1
        while v in self._sigma_used:
            v += 1
        self._sigma_used.add(v)
        return v

    # -- integrity -----------------------------------------------------------

    def revalidate(self):
        """Re-check every record invariant; returns the number of records."""
        seen_sigma = set()
        for rec in self.records:
            if rec.sigma is not None:
                assert rec.sigma not in seen_sigma, "sigma not injective"
                assert 4 * rec.sigma > rec.rank, "sigma too small"
                seen_sigma.add(rec.sigma)
            if rec.kind == BASE:
                assert rec.rank == 1 and rec.payload is None
                continue
            assert rec.weight_index is not None and rec.weight_index <= rec.rank
            if rec.kind == TYPE1:
                assert rec.age == 1 and rec.cut == 0 and rec.predecessor is None
            else:
                pred = self.record(rec.predecessor)
                assert pred.weight_index == rec.weight_index
                assert rec.cut == pred.rank and rec.age == pred.age + 1
                assert rec.age <= self.schedule.length_value(rec.weight_index)
            assert rec.payload.l1() <= 1
            for gid in rec.payload:
                assert rec.cut < self.rank_of(gid) <= rec.rank - 1
        return len(self.records)

    # -- export --------------------------------------------------------------

    def export_stage_table(self, n):
        rows = []
        for gid in self.gammas_up_to(n):
            rec = self.records[gid]
            rows.append({
                "id": rec.id,
                "rank": rec.rank,
                "kind": rec.kind,
                "weight_index": rec.weight_index,
                "age": rec.age,
                "cut": rec.cut,
                "predecessor": rec.predecessor,
                "payload": (sorted((k, frac_str(v)) for k, v in rec.payload.items())
                            if rec.payload is not None else None),
                "sigma": rec.sigma,
            })
        return rows
