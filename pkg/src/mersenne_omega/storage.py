"""Persistent factor cache, known-factor ingestion, and report rendering.

Cache file format (single JSON document, UTF-8, trailing newline):

    {"version": 1,
     "entries": [{"n": 29,
                  "factors": [["233", 1], ["1103", 1], ["2089", 1]],
                  "cofactor": "...",          # present only when partial
                  "status": "complete"}]}

Primes and cofactors are decimal strings so arbitrary precision survives
any JSON parser; entries are sorted by n and keys have a fixed order, so
serialization is canonical.  Every entry is re-verified on load (product
reconstruction and primality of the listed primes) — the file is never
trusted.

Known-factor import format: text lines "n factor" in decimal, '#' lines
are comments, blank lines are ignored.
"""

from __future__ import annotations

import enum
import json
import threading
from dataclasses import dataclass
from pathlib import Path

from .arith import Verdict, is_probable_prime, mersenne
from .factoring import Factorization

__all__ = [
    "CACHE_VERSION",
    "CacheError",
    "FactorCache",
    "load_cache",
    "save_cache",
    "ImportSummary",
    "import_known_factors",
    "ReportKind",
    "Report",
    "render_report",
    "export_report",
]

CACHE_VERSION = 1


class CacheError(Exception):
    """Cache file failed to parse or verify."""


def _prime_like(x: int) -> bool:
    return is_probable_prime(x) is not Verdict.COMPOSITE


class FactorCache:
    """In-memory map from index n to the known factorization of 2^n - 1.

    Reads need no lock; merges are serialized and union factor knowledge
    per entry: exponents are recomputed against 2^n - 1, so merging an
    entry twice is idempotent and known primes are never lost.
    """

    def __init__(self) -> None:
        self._entries: dict[int, Factorization] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactorCache):
            return NotImplemented
        return self._entries == other._entries

    def get(self, n: int) -> Factorization | None:
        return self._entries.get(n)

    def indices(self) -> list[int]:
        return sorted(self._entries)

    def merge(self, n: int, factorization: Factorization) -> Factorization:
        return self.add_primes(n, factorization.primes())

    def add_primes(self, n: int, primes) -> Factorization:
        """Fold newly learned prime divisors of 2^n - 1 into the entry.

        A prime whose cofactor turns out prime itself completes the
        entry.  Claimed primes that do not divide 2^n - 1 are dropped.
        """
        with self._lock:
            target = mersenne(n)
            existing = self._entries.get(n)
            known = set(existing.primes()) if existing is not None else set()
            known.update(primes)
            factors = []
            cofactor = target
            for p in sorted(known):
                e = 0
                while cofactor % p == 0:
                    cofactor //= p
                    e += 1
                if e:
                    factors.append((p, e))
            if cofactor > 1 and _prime_like(cofactor):
                factors.append((cofactor, 1))
                factors.sort()
                cofactor = 1
            entry = Factorization(target, tuple(factors), cofactor)
            self._entries[n] = entry
            return entry

    def _install_verified(self, n: int, entry: Factorization) -> None:
        self._entries[n] = entry


def _verify_entry(n: int, factors, cofactor: int, status: str) -> Factorization:
    entry = Factorization(mersenne(n), factors, cofactor)
    if not entry.reconstructs():
        raise ValueError("factor product does not reconstruct 2^n - 1")
    if entry.status != status:
        raise ValueError(f"status {status!r} disagrees with cofactor")
    for p, _ in factors:
        if not _prime_like(p):
            raise ValueError(f"listed factor {p} is composite")
    return entry


def load_cache(path) -> FactorCache:
    """Parse and verify a cache file.  Raises CacheError on parse failure
    or when any entry fails verification (all offending n are listed)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != CACHE_VERSION:
        raise CacheError(f"{path}: missing or unsupported cache version")
    cache = FactorCache()
    problems = []
    for raw in doc.get("entries", []):
        try:
            n = int(raw["n"])
            factors = tuple((int(p), int(e)) for p, e in raw["factors"])
            cofactor = int(raw.get("cofactor", "1"))
            entry = _verify_entry(n, factors, cofactor, raw["status"])
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"n={raw.get('n', '?')}: {exc}")
            continue
        cache._install_verified(n, entry)
    if problems:
        raise CacheError(f"{path}: rejected entries: " + "; ".join(problems))
    return cache


def save_cache(cache: FactorCache, path) -> None:
    """Write the canonical JSON form (stable ordering, trailing newline)."""
    entries = []
    for n in cache.indices():
        f = cache.get(n)
        entry: dict = {
            "n": n,
            "factors": [[str(p), e] for p, e in f.factors],
        }
        if f.cofactor != 1:
            entry["cofactor"] = str(f.cofactor)
        entry["status"] = f.status
        entries.append(entry)
    doc = {"version": CACHE_VERSION, "entries": entries}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class ImportSummary:
    lines_total: int
    accepted: int
    rejected: tuple[tuple[int, str], ...]  # (line number, reason)

    @property
    def rejected_count(self) -> int:
        return len(self.rejected)


def import_known_factors(path, cache: FactorCache) -> ImportSummary:
    """Merge an external "n factor" table into the cache.

    Each factor must divide 2^n - 1 and pass the primality check before
    it is merged (exponents are determined by repeated division inside
    the merge).  Bad lines are reported and skipped; the import goes on.
    """
    accepted = 0
    rejected = []
    lines_total = 0
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            lines_total += 1
            fields = stripped.split()
            if len(fields) != 2:
                rejected.append((line_no, "expected two fields: n factor"))
                continue
            try:
                n, factor = int(fields[0]), int(fields[1])
            except ValueError:
                rejected.append((line_no, "fields must be decimal integers"))
                continue
            if n < 1:
                rejected.append((line_no, "n must be >= 1"))
                continue
            if factor < 2 or mersenne(n) % factor != 0:
                rejected.append((line_no, f"{factor} does not divide 2^{n} - 1"))
                continue
            if not _prime_like(factor):
                rejected.append((line_no, f"{factor} is composite"))
                continue
            cache.add_primes(n, (factor,))
            accepted += 1
    return ImportSummary(lines_total, accepted, tuple(rejected))


class ReportKind(enum.Enum):
    CENSUS_CSV = "census_csv"
    CLASSIFICATION_JSON = "classification_json"
    SUITE_JSON = "suite_json"


@dataclass(frozen=True)
class Report:
    kind: ReportKind
    payload: object


_CENSUS_COLUMNS = (
    "n",
    "d_n",
    "omega_n",
    "bigomega_n",
    "omega_M",
    "bound_prop2",
    "bound_divisors",
    "hw_value",
    "lemma6_holds",
    "final_holds",
    "complete",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_report(report: Report) -> str:
    """Canonical text form: CSV with the fixed column set for a census,
    JSON with insertion-ordered keys otherwise.  Always newline-terminated."""
    if report.kind is ReportKind.CENSUS_CSV:
        lines = [",".join(_CENSUS_COLUMNS)]
        for r in report.payload:
            lines.append(
                ",".join(
                    _cell(v)
                    for v in (
                        r.n,
                        r.d_n,
                        r.omega_n,
                        r.bigomega_n,
                        r.omega_M,
                        r.bound_prop2,
                        r.bound_divisors,
                        r.hw_value,
                        r.lemma6_holds,
                        r.final_inequality_holds,
                        r.complete,
                    )
                )
            )
        return "\n".join(lines) + "\n"
    return json.dumps(report.payload, indent=2, ensure_ascii=False) + "\n"


def export_report(report: Report, path) -> None:
    Path(path).write_text(render_report(report), encoding="utf-8")
