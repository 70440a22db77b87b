import random
import warnings

import pytest

from casecount import (
    DroppedReferences,
    DuplicateReference,
    DuplicateRow,
    EmptyInput,
    IngestOptions,
    IngestWarning,
    ParseError,
    ReferenceSetMismatch,
    compare,
    load_merged,
    load_split,
    write_merged,
)
from casecount.oracle import brute_force_classify, perturb, random_clustering, random_edit_script

SPLIT = IngestOptions(format="split")


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_table1_merged(table1_path, table1):
    baseline, counterpart = load_merged(table1_path)
    assert baseline.n_clusters == 7
    assert counterpart.n_clusters == 8
    assert (baseline, counterpart) == table1


def test_one_row(tmp_path):
    f = write(tmp_path / "one.csv", "RecID,ER1,ER2\n1,a,x\n")
    baseline, counterpart = load_merged(f)
    assert dict(baseline.members) == {"a": ("1",)}
    assert dict(counterpart.members) == {"x": ("1",)}


def test_split_equals_merged(data_dir, table1_path):
    merged = load_merged(table1_path)
    split = load_split(data_dir / "table1_er1.csv", data_dir / "table1_er2.csv", SPLIT)
    assert merged == split


def test_generated_file_round_trips(tmp_path):
    rng = random.Random(11)
    base = random_clustering(rng, 200, 70)
    counterpart, _ = perturb(base, random_edit_script(base, rng, "mixed", n_edits=6))
    path = tmp_path / "gen.csv"
    write_merged(path, base, counterpart)
    loaded = load_merged(path)
    assert loaded[0].member_sets() == base.member_sets()
    assert loaded[1].member_sets() == counterpart.member_sets()
    assert len(path.read_text().splitlines()) == 201


def _drop_16(data_dir, tmp_path):
    lines = (data_dir / "table1_er2.csv").read_text().splitlines()
    return write(tmp_path / "er2.csv", "\n".join(l for l in lines if not l.startswith("16,")) + "\n")


def test_missing_reference_strict(data_dir, tmp_path):
    er2 = _drop_16(data_dir, tmp_path)
    with pytest.raises(ReferenceSetMismatch) as info:
        load_split(data_dir / "table1_er1.csv", er2, SPLIT)
    assert "'16'" in str(info.value)
    assert info.value.only_baseline == ("16",)
    assert info.value.only_counterpart == ()


def test_missing_reference_intersect(data_dir, tmp_path):
    er2 = _drop_16(data_dir, tmp_path)
    opts = IngestOptions(format="split", missing_policy="intersect")
    with pytest.warns(DroppedReferences) as record:
        baseline, counterpart = load_split(data_dir / "table1_er1.csv", er2, opts)
    dropped = [w for w in record if issubclass(w.category, DroppedReferences)]
    assert len(dropped) == 1
    assert dropped[0].message.references == ("16",)
    assert baseline.n_references == counterpart.n_references == 15
    result = compare(baseline, counterpart)
    # hand-classified: g={14,15} still meets u and v; z={4..7} now spans c and d
    assert result.forward.as_tuple() == (2, 2, 1, 2)
    assert result.reverse.as_tuple() == (2, 2, 1, 2)
    assert result.v == 10
    assert (result.profile.cc2, result.profile.sc2) == (7, 2)
    assert brute_force_classify(baseline, counterpart) == result.forward


def test_mismatch_message_caps_listed_ids(tmp_path):
    a = write(tmp_path / "a.csv", "id,c\n" + "".join(f"{i},k\n" for i in range(30)))
    b = write(tmp_path / "b.csv", "id,c\n0,k\n")
    with pytest.raises(ReferenceSetMismatch) as info:
        load_split(a, b, SPLIT)
    message = str(info.value)
    assert "only in ER1: 29" in message
    assert "(19 more)" in message


def test_quoting_crlf_and_blank_lines(tmp_path):
    f = tmp_path / "q.csv"
    f.write_bytes(b'RecID,ER1,ER2\r\n"1","a, b","x"\r\n\r\n"2","say ""hi""",y\r\n')
    baseline, counterpart = load_merged(f)
    assert baseline.assignment == {"1": "a, b", "2": 'say "hi"'}
    assert counterpart.assignment == {"1": "x", "2": "y"}


def test_no_header_and_delimiter(tmp_path):
    f = write(tmp_path / "t.tsv", "1\ta\tx\n2\ta\tx\n")
    baseline, _ = load_merged(f, IngestOptions(delimiter="\t", has_header=False))
    assert baseline.members == {"a": ("1", "2")}


@pytest.mark.parametrize("bad", ['"', "\n", ";;", ""])
def test_bad_delimiter(bad):
    with pytest.raises(ValueError):
        IngestOptions(delimiter=bad)


def test_blank_field_is_parse_error(tmp_path):
    f = write(tmp_path / "b.csv", "RecID,ER1 ClusterID,ER2 ClusterID\n1,a,x\n2, ,y\n")
    with pytest.raises(ParseError) as info:
        load_merged(f)
    assert info.value.row == 3
    assert info.value.column == "ER1 ClusterID"
    assert "b.csv" in str(info.value)


def test_short_row_is_parse_error(tmp_path):
    f = write(tmp_path / "s.csv", "RecID,ER1,ER2\n1,a\n")
    with pytest.raises(ParseError) as info:
        load_merged(f)
    assert info.value.row == 2
    assert "expected 3 fields" in str(info.value)


def test_extra_columns_warn_once(tmp_path):
    f = write(tmp_path / "e.csv", "RecID,ER1,ER2,note\n1,a,x,n1\n2,a,x,n2\n")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        load_merged(f)
    assert len([w for w in caught if issubclass(w.category, IngestWarning)]) == 1


def test_empty_file(tmp_path):
    with pytest.raises(EmptyInput):
        load_merged(write(tmp_path / "e.csv", ""))
    with pytest.raises(EmptyInput):
        load_merged(write(tmp_path / "h.csv", "RecID,ER1,ER2\n"))


def test_duplicate_reference_names_rows(tmp_path):
    f = write(tmp_path / "d.csv", "RecID,ER1,ER2\n1,a,x\n2,b,y\n1,c,x\n")
    with pytest.raises(DuplicateReference) as info:
        load_merged(f)
    assert "'1'" in str(info.value)
    assert "row 2" in str(info.value) and "row 4" in str(info.value)


def test_duplicate_row_policy(tmp_path):
    f = write(tmp_path / "d.csv", "RecID,ER1,ER2\n1,a,x\n1,a,x\n")
    with pytest.raises(DuplicateRow):
        load_merged(f)
    with pytest.warns(IngestWarning):
        baseline, _ = load_merged(f, IngestOptions(duplicate_policy="lenient"))
    assert baseline.n_references == 1


def test_whitespace_is_stripped(tmp_path):
    f = write(tmp_path / "w.csv", "RecID,ER1,ER2\n 1 , a ,x\n")
    baseline, _ = load_merged(f)
    assert baseline.assignment == {"1": "a"}
