import json

import pytest

from mersenne_omega import (
    CacheError,
    FactorCache,
    Report,
    ReportKind,
    export_report,
    factor_mersenne,
    import_known_factors,
    load_cache,
    render_report,
    run_census,
    save_cache,
)
from mersenne_omega.census import CensusConfig
from mersenne_omega.factoring import Budget, Factorization


@pytest.fixture
def populated_cache():
    cache = FactorCache()
    for n in (6, 11, 29):
        factor_mersenne(n, cache=cache)
    factor_mersenne(101, budget=Budget(rho_iterations_max=4, trial_division_bound=100), cache=cache)
    return cache


def test_save_load_round_trip(populated_cache, tmp_path):
    path = tmp_path / "cache.json"
    save_cache(populated_cache, path)
    loaded = load_cache(path)
    assert loaded == populated_cache
    assert loaded.get(29).factors == ((233, 1), (1103, 1), (2089, 1))
    assert loaded.get(101).status == "partial"


def test_save_load_save_byte_identity(populated_cache, tmp_path):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    save_cache(populated_cache, p1)
    save_cache(load_cache(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_empty_cache_round_trip(tmp_path):
    path = tmp_path / "empty.json"
    save_cache(FactorCache(), path)
    assert len(load_cache(path)) == 0


def test_load_verifies_entries(tmp_path):
    path = tmp_path / "bad.json"
    doc = {
        "version": 1,
        "entries": [
            {"n": 29, "factors": [["233", 1], ["1103", 1], ["2089", 1]], "status": "complete"},
            {"n": 11, "factors": [["23", 1], ["91", 1]], "status": "complete"},
        ],
    }
    path.write_text(json.dumps(doc))
    with pytest.raises(CacheError) as exc:
        load_cache(path)
    assert "n=11" in str(exc.value)


def test_load_rejects_composite_listed_prime(tmp_path):
    path = tmp_path / "bad.json"
    doc = {
        "version": 1,
        "entries": [
            {"n": 11, "factors": [["2047", 1]], "status": "complete"},
        ],
    }
    path.write_text(json.dumps(doc))
    with pytest.raises(CacheError) as exc:
        load_cache(path)
    assert "2047" in str(exc.value)


def test_load_rejects_wrong_status(tmp_path):
    path = tmp_path / "bad.json"
    doc = {
        "version": 1,
        "entries": [
            {"n": 11, "factors": [["23", 1]], "cofactor": "89", "status": "complete"},
        ],
    }
    path.write_text(json.dumps(doc))
    with pytest.raises(CacheError):
        load_cache(path)


def test_load_rejects_bad_version_and_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"version": 99, "entries": []}')
    with pytest.raises(CacheError):
        load_cache(path)
    path.write_text("{nope")
    with pytest.raises(CacheError):
        load_cache(path)


def test_load_accepts_partial_entry(tmp_path):
    path = tmp_path / "partial.json"
    doc = {
        "version": 1,
        "entries": [
            {"n": 29, "factors": [["233", 1]], "cofactor": "2304167", "status": "partial"},
        ],
    }
    path.write_text(json.dumps(doc))
    cache = load_cache(path)
    entry = cache.get(29)
    assert entry.status == "partial"
    assert entry.cofactor == 2304167


def test_merge_is_monotone_and_idempotent():
    cache = FactorCache()
    cache.add_primes(11, (23,))
    first = cache.get(11)
    # the prime cofactor 89 is absorbed, completing the entry
    assert first.factors == ((23, 1), (89, 1))
    assert first.complete
    again = cache.merge(11, first)
    assert again == first
    # re-adding a known prime changes nothing
    cache.add_primes(11, (23,))
    assert cache.get(11) == first


def test_merge_drops_non_divisors():
    cache = FactorCache()
    entry = cache.add_primes(11, (10, 23))
    assert entry.primes() == (23, 89)


def test_concurrent_merges_are_consistent():
    from concurrent.futures import ThreadPoolExecutor

    cache = FactorCache()
    primes_29 = (233, 1103, 2089)
    with ThreadPoolExecutor(max_workers=8) as pool:
        futures = [pool.submit(cache.add_primes, 29, (p,)) for p in primes_29 * 10]
        futures += [pool.submit(cache.add_primes, 11, (23,)) for _ in range(10)]
        for f in futures:
            f.result()
    assert cache.get(29).factors == ((233, 1), (1103, 1), (2089, 1))
    assert cache.get(29).complete
    assert cache.get(11).factors == ((23, 1), (89, 1))


def test_import_known_factors(tmp_path):
    table = tmp_path / "known.txt"
    table.write_text("# factors of 2^n - 1\n\n11 23\n11 10\n49 4432676798593\n")
    cache = FactorCache()
    summary = import_known_factors(table, cache)
    assert summary.accepted == 2
    assert summary.rejected_count == 1
    assert summary.rejected[0][0] == 4  # line number of "11 10"
    assert cache.get(11).factors == ((23, 1), (89, 1))
    assert cache.get(49).factors == ((127, 1), (4432676798593, 1))


def test_import_rejects_malformed_lines(tmp_path):
    table = tmp_path / "known.txt"
    table.write_text("11\nx y\n0 3\n11 2047\n")
    cache = FactorCache()
    summary = import_known_factors(table, cache)
    assert summary.accepted == 0
    assert summary.rejected_count == 4


def test_import_is_idempotent(tmp_path):
    table = tmp_path / "known.txt"
    table.write_text("11 23\n29 233\n29 1103\n")
    cache = FactorCache()
    import_known_factors(table, cache)
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    save_cache(cache, p1)
    import_known_factors(table, cache)
    save_cache(cache, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_census_csv_report(tmp_path):
    records, _ = run_census(CensusConfig(2, 4))
    text = render_report(Report(ReportKind.CENSUS_CSV, records))
    lines = text.splitlines()
    assert len(lines) == 4  # header + one row per index
    assert lines[0] == (
        "n,d_n,omega_n,bigomega_n,omega_M,bound_prop2,bound_divisors,"
        "hw_value,lemma6_holds,final_holds,complete"
    )
    assert lines[1].startswith("2,2,1,1,1,1,1,,,")
    assert text.endswith("\n")
    out = tmp_path / "census.csv"
    export_report(Report(ReportKind.CENSUS_CSV, records), out)
    assert out.read_text(encoding="utf-8") == text


def test_json_report_key_order_is_stable(tmp_path):
    payload = {"n": 10, "matched_clause": "T3_i", "consistent": True}
    text = render_report(Report(ReportKind.CLASSIFICATION_JSON, payload))
    assert text.index('"n"') < text.index('"matched_clause"') < text.index('"consistent"')
    assert text.endswith("\n")


def test_factorization_status_serialization(populated_cache, tmp_path):
    path = tmp_path / "cache.json"
    save_cache(populated_cache, path)
    doc = json.loads(path.read_text())
    by_n = {e["n"]: e for e in doc["entries"]}
    assert by_n[29]["status"] == "complete"
    assert "cofactor" not in by_n[29]
    assert by_n[101]["status"] == "partial"
    assert int(by_n[101]["cofactor"]) > 1
    assert by_n[101]["cofactor"].isdigit()
    # entries sorted by n, primes as decimal strings
    assert list(by_n) == sorted(by_n)
    assert by_n[29]["factors"][0] == ["233", 1]
