# tests/test_corpus.py

import json
from datetime import timezone
import pytest
from data.corpus import import_tweet_csv, load_corpus, write_corpus
from utils.exceptions import DataError


def _write_lines(path, objects):
    lines = [o if isinstance(o, str) else json.dumps(o) for o in objects]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


ALICE = {"account_id": "alice", "label": "human", "tweets": [{"text": "hi there", "created_at": "2019-03-01T10:00:00Z"}]}
BOT = {"account_id": "b1", "label": "bot", "screen_name": "x8830291", "tweets": [{"text": ":) #win"}]}


def test_two_valid_lines(tmp_path):
    load = load_corpus(_write_lines(tmp_path / "c.jsonl", [ALICE, BOT]))
    assert [r.account_id for r in load.records] == ["alice", "b1"]
    assert load.issues == []
    assert load.records[0].tweets[0].created_at.tzinfo == timezone.utc


def test_blank_lines_are_ignored(tmp_path):
    load = load_corpus(_write_lines(tmp_path / "c.jsonl", [ALICE, "", "   ", BOT]))
    assert len(load.records) == 2


def test_strict_mode_aborts_with_line_number(tmp_path):
    path = _write_lines(tmp_path / "c.jsonl", [ALICE, {"label": "bot", "tweets": []}, BOT])
    with pytest.raises(DataError, match="line 2"):
        load_corpus(path, strict=True)


def test_lenient_mode_skips_and_reports(tmp_path):
    path = _write_lines(tmp_path / "c.jsonl", [ALICE, {"label": "bot", "tweets": []}, "{broken", BOT])
    load = load_corpus(path, strict=False)
    assert [r.account_id for r in load.records] == ["alice", "b1"]
    assert [issue.line for issue in load.issues] == [2, 3]
    assert "account_id" in load.issues[0].message
    assert "invalid JSON" in load.issues[1].message


def test_duplicate_account_id(tmp_path):
    path = _write_lines(tmp_path / "c.jsonl", [ALICE, ALICE])
    with pytest.raises(DataError, match="duplicate id"):
        load_corpus(path)
    load = load_corpus(path, strict=False)
    assert len(load.records) == 1
    assert "first seen on line 1" in load.issues[0].message


def test_unknown_label_rejected(tmp_path):
    path = _write_lines(tmp_path / "c.jsonl", [dict(ALICE, label="cyborg")])
    with pytest.raises(DataError, match="label"):
        load_corpus(path)


def test_missing_file(tmp_path):
    with pytest.raises(DataError, match="cannot read"):
        load_corpus(tmp_path / "absent.jsonl")


def test_write_then_load_preserves_records(tmp_path, small_corpus):
    path = tmp_path / "out.jsonl"
    write_corpus(small_corpus, path)
    assert load_corpus(path).records == small_corpus


def test_import_tweet_csv_groups_by_account(tmp_path):
    path = tmp_path / "tweets.csv"
    path.write_text(
        "account_id,label,screen_name,text,created_at,likes\n"
        "a,human,alice,hello world,2019-03-01T10:00:00Z,3\n"
        "b,bot,,#deal now,,\n"
        "a,,,second tweet,,0\n",
        encoding="utf-8",
    )
    records = import_tweet_csv(path)
    assert [r.account_id for r in records] == ["a", "b"]
    assert records[0].label == "human"
    assert records[0].screen_name == "alice"
    assert [t.text for t in records[0].tweets] == ["hello world", "second tweet"]
    assert records[0].tweets[0].likes == 3
    assert records[1].tweets[0].created_at is None


def test_import_tweet_csv_requires_text_column(tmp_path):
    path = tmp_path / "tweets.csv"
    path.write_text("account_id,label\na,human\n", encoding="utf-8")
    with pytest.raises(DataError, match="text"):
        import_tweet_csv(path)


def test_import_tweet_csv_conflicting_label(tmp_path):
    path = tmp_path / "tweets.csv"
    path.write_text("account_id,label,text\na,human,one\na,bot,two\n", encoding="utf-8")
    with pytest.raises(DataError, match="line 3: conflicting label"):
        import_tweet_csv(path)


def test_invalid_utf8_line(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_bytes(json.dumps(ALICE).encode("utf-8") + b'\n{"account_id": "\xc3("}\n' + json.dumps(BOT).encode("utf-8") + b"\n")
    with pytest.raises(DataError, match="line 2: invalid UTF-8"):
        load_corpus(path)
    load = load_corpus(path, strict=False)
    assert [r.account_id for r in load.records] == ["alice", "b1"]
    assert [issue.line for issue in load.issues] == [2]


def test_line_separator_inside_tweet_text(tmp_path):
    record = dict(ALICE, tweets=[{"text": "one\u2028two"}])
    path = tmp_path / "c.jsonl"
    path.write_text(json.dumps(record, ensure_ascii=False) + "\n", encoding="utf-8")
    assert load_corpus(path).records[0].tweets[0].text == "one\u2028two"


def test_import_tweet_csv_invalid_utf8(tmp_path):
    path = tmp_path / "tweets.csv"
    path.write_bytes(b"account_id,text\na1,caf\xe9\n")
    with pytest.raises(DataError, match="not valid UTF-8"):
        import_tweet_csv(path)
