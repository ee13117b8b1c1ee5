import numpy as np
import pytest

from augtest import tv_distance
from augtest.errors import (
    DomainOverflow,
    DuplicateKey,
    EmptyBatch,
    FormatError,
    MalformedLine,
)
from augtest.ingest import KeyMap, ingest_chunk, load_keymap, parse_chunk_line, save_keymap


def test_basic_chunk():
    km = KeyMap()
    d = ingest_chunk(["a\t1", "b\t1"], km, final_n=4)
    assert np.allclose(d.probs, [0.5, 0.5, 0.0, 0.0])
    assert km.n == 2


def test_empty_chunk_raises():
    with pytest.raises(EmptyBatch):
        ingest_chunk([], KeyMap(), final_n=2)
    with pytest.raises(EmptyBatch):
        ingest_chunk(["a\t0"], KeyMap(), final_n=2)


def test_shared_keys_get_stable_indices():
    km = KeyMap()
    d1 = ingest_chunk(["a\t3", "b\t1"], km)
    d2 = ingest_chunk(["c\t1", "a\t1"], km, final_n=km.n + 1)
    assert km.get("a") == 1
    assert d1.probs[0] == 0.75
    assert d2.probs[0] == 0.5  # same index for "a" in both chunks


def test_repeated_key_counts_are_summed():
    d = ingest_chunk(["a\t1", "a\t2", "b\t1"], KeyMap())
    assert np.allclose(d.probs, [0.75, 0.25])


def test_malformed_lines():
    for bad in ("a 1", "a\tb\tc", "a\tx", "a\t-1"):
        with pytest.raises(MalformedLine):
            parse_chunk_line(bad)


def test_domain_overflow():
    km = KeyMap()
    with pytest.raises(DomainOverflow):
        ingest_chunk(["a\t1", "b\t1", "c\t1"], km, final_n=2)


def test_tv_invariant_under_line_reordering():
    km1, km2 = KeyMap(), KeyMap()
    chunk_a = ["x\t5", "y\t2", "z\t3"]
    chunk_b = ["y\t1", "w\t4", "x\t1"]
    d1a = ingest_chunk(chunk_a, km1, 4)
    d1b = ingest_chunk(chunk_b, km1, 4)
    d2a = ingest_chunk(list(reversed(chunk_a)), km2, 4)
    d2b = ingest_chunk(list(reversed(chunk_b)), km2, 4)
    assert tv_distance(d1a, d1b) == pytest.approx(tv_distance(d2a, d2b), abs=1e-12)


def test_keymap_roundtrip(tmp_path):
    km = KeyMap()
    for key in ("alpha", "beta", "gamma"):
        km.index(key)
    path = tmp_path / "keys.tsv"
    save_keymap(km, path)
    assert load_keymap(path) == km


def test_keymap_load_errors(tmp_path):
    path = tmp_path / "keys.tsv"
    path.write_text("a\t1\na\t2\n")
    with pytest.raises(DuplicateKey):
        load_keymap(path)
    path.write_text("a\t1\nb\t3\n")
    with pytest.raises(FormatError):
        load_keymap(path)
    path.write_text("")
    assert load_keymap(path) == KeyMap()
