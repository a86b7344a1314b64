"""Fetch the 20-group newsgroup benchmark corpus into the local cache.

Downloads the canonical by-date tarball, strips headers, quoted replies
and signature blocks from each post, and writes train.jsonl/test.jsonl of
{"text", "label"} records to the target directory (default: the location
eval-20ng and the acceptance battery look in, see README). Labels follow
the alphabetical order of the group names.

The reference numbers in the acceptance battery were measured on the
widely redistributed pre-stripped snapshot of this corpus; refetching
cleans the raw posts with this package's own strippers, so scores can
shift by a little either way.

Usage: python3 scripts/fetch_20ng.py [target_dir]
"""

from __future__ import annotations

import io
import json
import os
import sys
import tarfile
import urllib.request
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from argmine.newsgroups import clean_post

URLS = [
    "http://qwone.com/~jason/20Newsgroups/20news-bydate.tar.gz",
    "https://ndownloader.figshare.com/files/5975967",
]

DEFAULT_DIR = os.environ.get(
    "ARGMINE_20NG_DIR", os.path.expanduser("~/.cache/argmine/20newsgroups")
)


def download() -> bytes:
    last: Exception | None = None
    for url in URLS:
        try:
            print(f"downloading {url} ...")
            with urllib.request.urlopen(url, timeout=120) as response:
                return response.read()
        except Exception as exc:
            print(f"  failed: {exc}")
            last = exc
    raise SystemExit(f"could not download the corpus from any mirror: {last}")


def main() -> None:
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(DEFAULT_DIR)
    target.mkdir(parents=True, exist_ok=True)

    blob = download()
    print(f"extracting {len(blob):,} bytes ...")
    # split name -> group name -> list of (doc id, cleaned text)
    splits: dict[str, dict[str, list[tuple[str, str]]]] = {"train": {}, "test": {}}
    with tarfile.open(fileobj=io.BytesIO(blob), mode="r:gz") as archive:
        for member in archive.getmembers():
            if not member.isfile():
                continue
            parts = Path(member.name).parts
            if len(parts) != 3:
                continue
            split = parts[0].rsplit("-", 1)[-1]
            if split not in splits:
                continue
            handle = archive.extractfile(member)
            if handle is None:
                continue
            text = clean_post(handle.read().decode("latin-1"))
            splits[split].setdefault(parts[1], []).append((parts[2], text))

    groups = sorted(set(splits["train"]) | set(splits["test"]))
    if len(groups) != 20:
        raise SystemExit(f"expected 20 groups in the archive, found {len(groups)}")
    label_of = {group: i for i, group in enumerate(groups)}

    for split, by_group in splits.items():
        path = target / f"{split}.jsonl"
        n = 0
        with open(path, "w", encoding="utf-8") as out:
            for group in groups:
                for _, text in sorted(by_group.get(group, [])):
                    out.write(
                        json.dumps({"text": text, "label": label_of[group]}) + "\n"
                    )
                    n += 1
        print(f"wrote {n} records to {path}")
    print("group label order:")
    for group, label in label_of.items():
        print(f"  {label:2d} {group}")


if __name__ == "__main__":
    main()
