"""Machine-checkable certificates and the run ledger.

A Certificate binds a named claim to the exact inputs it was checked
against (as a content digest), the exact rational values computed, and a
verdict.  Serialization is canonical -- sorted keys, rationals as "p/q",
no timestamps -- so re-running a suite with identical inputs reproduces
every certificate byte for byte.

Verdicts:

  verified  -- the claim's prerequisites hold under the echoed schedule
               and the exact check passed;
  reported  -- the value was computed but the claim is not decidable at
               this scale (stage truncation, toy schedule, or missing
               growth prerequisites), so it carries no pass/fail weight;
  violated  -- an exact check failed.

Exit-code discipline: a run fails iff it emitted at least one violated
certificate; reported rows never affect the exit code.
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .funcs import frac_str

VERIFIED = "verified"
REPORTED = "reported"
VIOLATED = "violated"

_VERDICTS = (VERIFIED, REPORTED, VIOLATED)


def _canon(obj):
    """Recursively canonicalize: Fractions to "p/q", tuples to lists."""
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are not certifiable; use Fraction")
    if hasattr(obj, "to_json"):
        return _canon(obj.to_json())
    raise TypeError("cannot canonicalize %r" % (obj,))


def canonical_json(obj):
    """Deterministic JSON bytes: sorted keys, no whitespace variance."""
    return json.dumps(_canon(obj), sort_keys=True,
                      separators=(",", ":")).encode("ascii")


def inputs_digest(inputs):
    """sha256 hex digest of the canonical JSON of the inputs mapping."""
    return hashlib.sha256(canonical_json(inputs)).hexdigest()


@dataclass(frozen=True)
class Certificate:
    claim_id: str
    claim: str
    schedule: dict
    inputs_digest: str
    values: dict
    verdict: str
    stage: Optional[int] = None
    net_policy: Optional[str] = None
    odd_guard: Optional[str] = None
    seed: Optional[int] = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in _VERDICTS:
            raise ValueError("verdict %r not in %r" % (self.verdict, _VERDICTS))

    def to_json(self):
        return {
            "claim_id": self.claim_id,
            "claim": self.claim,
            "schedule": _canon(self.schedule),
            "inputs_digest": self.inputs_digest,
            "values": _canon(self.values),
            "verdict": self.verdict,
            "stage": self.stage,
            "net_policy": self.net_policy,
            "odd_guard": self.odd_guard,
            "seed": self.seed,
            "detail": _canon(self.detail),
        }

    def to_bytes(self):
        return canonical_json(self.to_json())


def make_certificate(claim_id, claim, schedule, inputs, values, verdict,
                     **kw):
    """Build a Certificate, digesting the inputs mapping."""
    sched = schedule.to_json() if hasattr(schedule, "to_json") else dict(schedule)
    return Certificate(claim_id=claim_id, claim=claim, schedule=sched,
                       inputs_digest=inputs_digest(inputs),
                       values=_canon(values), verdict=verdict, **kw)


def emit_certificate(cert, sink):
    """Append one canonical JSON line to a writable text sink."""
    sink.write(cert.to_bytes().decode("ascii"))
    sink.write("\n")


class Ledger:
    """Collects certificates; optionally mirrors them to a JSON-lines file."""

    def __init__(self, path=None):
        self.path = path
        self.certificates = []

    def add(self, cert):
        self.certificates.append(cert)
        if self.path is not None:
            with open(self.path, "a") as fh:
                emit_certificate(cert, fh)
        return cert

    def counts(self):
        out = {v: 0 for v in _VERDICTS}
        for c in self.certificates:
            out[c.verdict] += 1
        return out

    @property
    def violated(self):
        return [c for c in self.certificates if c.verdict == VIOLATED]

    def exit_code(self):
        return 1 if self.violated else 0


def read_ledger(path):
    """Parse a JSON-lines ledger back into plain dicts."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out
