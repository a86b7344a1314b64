"""Single-file persistence for the sentence index.

Container layout: magic bytes "SIDX1", then three length-prefixed
sections in fixed order (store, postings, layers), each a UTF-8 JSON
payload. The magic carries the format version; readers reject anything
else.
"""

from __future__ import annotations

import json
import struct
from typing import BinaryIO

from ..errors import InputError
from ..textcore import AnnotationSpan, SentenceRecord, Token
from .index import SentenceIndex

__all__ = ["save_index", "load_index", "dump_postings_json"]

MAGIC = b"SIDX1"
_SECTIONS = ("store", "postings", "layers")


def _write_section(f: BinaryIO, name: str, payload: dict | list) -> None:
    raw = json.dumps(payload, ensure_ascii=False, sort_keys=True).encode("utf-8")
    name_bytes = name.encode("utf-8")
    f.write(struct.pack("<B", len(name_bytes)))
    f.write(name_bytes)
    f.write(struct.pack("<Q", len(raw)))
    f.write(raw)


def _read_exact(f: BinaryIO, size: int) -> bytes:
    data = f.read(size)
    if len(data) != size:
        raise InputError("index file truncated", code="index.bad-file")
    return data


def _read_section(f: BinaryIO, expected_name: str):
    (name_len,) = struct.unpack("<B", _read_exact(f, 1))
    name = _read_exact(f, name_len).decode("utf-8")
    if name != expected_name:
        raise InputError(f"expected section {expected_name!r}, found {name!r}", code="index.bad-file")
    (size,) = struct.unpack("<Q", _read_exact(f, 8))
    return json.loads(_read_exact(f, size).decode("utf-8"))


def save_index(index: SentenceIndex, path: str) -> None:
    store_payload = [
        {
            "id": sid,
            "text": rec.text,
            "tokens": [[t.surface, t.start, t.end] for t in rec.tokens],
            "layers": {
                layer: [[s.first_token, s.last_token, s.tag] for s in spans]
                for layer, spans in rec.layers.items()
            },
        }
        for sid, rec in ((sid, index.store[sid]) for sid in index.sorted_ids())
    ]
    postings_payload = {
        term: [[sid, list(positions)] for sid, positions in entries]
        for term, entries in index.postings.items()
    }
    layers_payload = {
        layer: {
            tag: [[sid, [list(span) for span in spans]] for sid, spans in entries]
            for tag, entries in tags.items()
        }
        for layer, tags in index.layer_postings.items()
    }
    with open(path, "wb") as f:
        f.write(MAGIC)
        _write_section(f, "store", store_payload)
        _write_section(f, "postings", postings_payload)
        _write_section(f, "layers", layers_payload)


def load_index(path: str) -> SentenceIndex:
    with open(path, "rb") as f:
        magic = f.read(len(MAGIC))
        if magic != MAGIC:
            raise InputError("not a sentence index file (bad magic)", code="index.bad-file")
        store_payload = _read_section(f, "store")
        postings_payload = _read_section(f, "postings")
        layers_payload = _read_section(f, "layers")

    store = {}
    for item in store_payload:
        rec = SentenceRecord(
            id=item["id"],
            text=item["text"],
            tokens=tuple(Token(s, a, b) for s, a, b in item["tokens"]),
            layers={
                layer: tuple(AnnotationSpan(first, last, tag) for first, last, tag in spans)
                for layer, spans in item["layers"].items()
            },
        )
        store[rec.id] = rec
    postings = {
        term: tuple((sid, tuple(positions)) for sid, positions in entries)
        for term, entries in postings_payload.items()
    }
    layer_postings = {
        layer: {
            tag: tuple((sid, tuple(tuple(span) for span in spans)) for sid, spans in entries)
            for tag, entries in tags.items()
        }
        for layer, tags in layers_payload.items()
    }
    index = SentenceIndex(store=store, postings=postings, layer_postings=layer_postings)
    index.validate()
    return index


def dump_postings_json(index: SentenceIndex) -> dict:
    """Debug view of the postings as plain JSON-ready data."""
    return {
        "sentence_count": index.sentence_count,
        "term_count": index.term_count,
        "terms": {
            term: [{"id": sid, "positions": list(positions)} for sid, positions in entries]
            for term, entries in sorted(index.postings.items())
        },
        "layers": {
            layer: {
                tag: [
                    {"id": sid, "spans": [list(span) for span in spans]}
                    for sid, spans in entries
                ]
                for tag, entries in sorted(tags.items())
            }
            for layer, tags in sorted(index.layer_postings.items())
        },
    }
