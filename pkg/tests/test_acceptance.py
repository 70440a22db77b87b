"""Exit criteria for the package, one test per criterion.

A PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""

import json
import math
import random
import time
from collections import Counter

import pytest

from casecount import Clustering, Side, ReportOptions, classify_all, compare, load_merged, render_summary
from casecount.cli import main
from casecount.ingest import write_single
from casecount.oracle import brute_force_classify, perturb, random_clustering, random_edit_script, random_pair

criterion = pytest.mark.criterion


def _instances(seed, n):
    rng = random.Random(seed)
    return [random_pair(rng, max_refs=50, max_clusters=10) for _ in range(n)]


@criterion(1, "worked-example golden counts, |V|, TWI, runtime < 1 s")
def test_criterion_01_table1_golden(table1_path):
    start = time.perf_counter()
    r = compare(*load_merged(table1_path))
    elapsed = time.perf_counter() - start
    p = r.profile
    assert (p.rc, p.cc1, p.sc1, p.cc2, p.sc2) == (16, 7, 2, 8, 3)
    assert r.forward.as_tuple() == (2, 2, 1, 2)
    assert r.reverse.as_tuple() == (2, 3, 1, 2)
    assert r.v == 11
    assert abs(r.twi - 0.6804) <= 0.0001
    assert elapsed < 1.0


@criterion(2, "summary report reproduces the reference block verbatim")
def test_criterion_02_summary_block(table1_path, data_dir):
    golden = (data_dir / "table1_summary.txt").read_text()
    text = render_summary(compare(*load_merged(table1_path)), ReportOptions())
    assert text.startswith(golden)
    for line in ("Unchanged (Case 1): 2", "Merged (Case 2): 2", "Partitioned (Case 3): 1",
                 "Overlapping (Case 4): 2", "Unchanged (Case 5): 2", "Merged (Case 6): 3",
                 "Partitioned (Case 7): 1", "Overlapping (Case 8): 2", "ER1 clusters: 7",
                 "ER2 clusters: 8", "Total clusters: 15", "ER1 Singletons: 2", "ER2 Singletons: 3"):
        assert line in golden.splitlines()
    extra = text[len(golden):]
    assert "TWI: 0.68" in extra and "Non-empty intersections (|V|): 11" in extra


@criterion(3, "exhaustiveness and UC+MC+PC+OC = CC1 on 1000 random instances")
def test_criterion_03_exhaustive():
    failures = 0
    for baseline, counterpart in _instances(3, 1000):
        classifications, counts = classify_all(baseline, counterpart)
        seen = Counter(c.cluster for c in classifications)
        if set(seen) != set(baseline.members) or max(seen.values()) != 1:
            failures += 1
        if counts.total != baseline.n_clusters:
            failures += 1
    assert failures == 0


@criterion(4, "classify_all equals the brute-force classifier on 200+ instances")
def test_criterion_04_oracle_equivalence():
    mismatches = sum(classify_all(a, b)[1] != brute_force_classify(a, b) for a, b in _instances(4, 500))
    assert mismatches == 0


@criterion(5, "forward UC = reverse UC and TWI(A,B) = TWI(B,A)")
def test_criterion_05_symmetry():
    for a, b in _instances(3, 1000):
        ab, ba = compare(a, b), compare(b, a)
        assert ab.forward.uc == ab.reverse.uc
        assert ab.twi == ba.twi


@criterion(6, "perturbation ground truth on 100+ edit scripts; pure merge/split closures")
def test_criterion_06_perturbation():
    rng = random.Random(6)
    checked = 0
    for kind in ("merge", "split", "move", "mixed"):
        for _ in range(60):
            base = random_clustering(rng, rng.randint(10, 80), rng.randint(3, 25))
            script = random_edit_script(base, rng, kind, n_edits=rng.randint(1, 5))
            counterpart, expected = perturb(base, script)
            _, counts = classify_all(base, counterpart)
            assert counts == expected
            if kind == "merge":
                assert counts.pc == counts.oc == 0
            if kind == "split":
                assert counts.mc == counts.oc == 0
            checked += 1
    assert checked >= 100


@criterion(7, "identical inputs give TWI = 1.0; one cluster vs 16 singletons gives 0.25")
def test_criterion_07_twi_extremes(table1):
    baseline = table1[0]
    same = compare(baseline, baseline.with_side(Side.COUNTERPART))
    assert same.twi == 1.0
    assert same.forward.uc == same.profile.cc1 == same.profile.cc2
    refs = [str(i) for i in range(1, 17)]
    worst = compare(Clustering(Side.BASELINE, dict.fromkeys(refs, "all")),
                    Clustering(Side.COUNTERPART, {r: r for r in refs}))
    assert worst.twi == 0.25 == 1 / math.sqrt(16)


@criterion(8, "byte-identical compare output; sweep order kept under parallel runs")
def test_criterion_08_determinism(table1_path, tmp_path, capsys):
    outputs = {}
    for fmt in ("text", "json"):
        runs = []
        for i in range(2):
            out = tmp_path / f"{fmt}{i}"
            assert main(["compare", str(table1_path), "--format", fmt, "--out", str(out)]) == 0
            runs.append(out.read_bytes())
        assert runs[0] == runs[1]
        outputs[fmt] = runs[0]
    json.loads(outputs["json"])

    rng = random.Random(8)
    base = random_clustering(rng, 300, 80)
    write_single(tmp_path / "base.csv", base)
    names = []
    for i in range(6):
        variant, _ = perturb(base, random_edit_script(base, rng, "mixed", n_edits=3))
        write_single(tmp_path / f"var{i}.csv", variant)
        names.append(str(tmp_path / f"var{i}.csv"))
    names.reverse()
    capsys.readouterr()
    assert main(["sweep", str(tmp_path / "base.csv"), *names, "--jobs", "4"]) == 0
    rows = capsys.readouterr().out.splitlines()[1:]
    assert [r.split()[0] for r in rows] == [f"var{i}" for i in range(5, -1, -1)]


@criterion(9, "compare on 1,000,000 references in under 10 s")
def test_criterion_09_scale():
    n = 1_000_000
    refs = [f"r{i:07d}" for i in range(n)]
    start = time.perf_counter()
    # size-4 baseline clusters; the counterpart merges pairs, splits some, 1 in 13 straddles
    first = {r: f"a{i // 4}" for i, r in enumerate(refs)}
    second = {r: f"b{i // 8}" if i % 13 else f"s{i // 3}" for i, r in enumerate(refs)}
    r = compare(Clustering(Side.BASELINE, first), Clustering(Side.COUNTERPART, second))
    elapsed = time.perf_counter() - start
    print(f"\n1M-reference compare (build + compare): {elapsed:.2f} s, |V|={r.v}")
    assert r.profile.rc == n
    assert r.forward.total == r.profile.cc1
    assert elapsed < 10.0
