"""Build the order-10 census source corpus (all 2-connected, min-degree-3
graphs on 10 vertices with 20..30 edges, up to isomorphism) as a graph6
file plus coverage manifest.

Usage: python tests/build_order10_corpus.py [workdir]

Phase A streams augmentation candidates into invariant-keyed bucket
files; phase B deduplicates each bucket by isomorphism in parallel and
concatenates the survivors.  Both phases skip work already on disk, so
the script can resume after interruption.
"""

from __future__ import annotations

import glob
import hashlib
import json
import multiprocessing as mp
import os
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

import corpusgen  # noqa: E402


def log(msg: str) -> None:
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", flush=True)


def phase_a(bucket_dir: str) -> None:
    marker = os.path.join(bucket_dir, "PHASE_A_DONE")
    if os.path.exists(marker):
        log("phase A already done")
        return
    log("phase A: generating candidates (order-9 universe first)")
    t0 = time.time()
    written = corpusgen.write_order10_candidates(bucket_dir)
    with open(marker, "w") as f:
        f.write(str(written))
    log(f"phase A done: {written} candidates in {time.time() - t0:.0f}s")


def _dedup_one(path: str) -> str:
    from linkless.g6 import encode_g6

    out_path = path + ".dedup"
    if os.path.exists(out_path + ".done"):
        return out_path
    graphs = corpusgen.dedup_bucket(path)
    with open(out_path, "wb") as f:
        for g in graphs:
            f.write(encode_g6(g) + b"\n")
    with open(out_path + ".done", "w") as f:
        f.write(str(len(graphs)))
    return out_path


def phase_b(bucket_dir: str, out_path: str, jobs: int) -> None:
    buckets = sorted(glob.glob(os.path.join(bucket_dir, "bucket_*.g6")))
    log(f"phase B: dedup {len(buckets)} buckets with {jobs} workers")
    t0 = time.time()
    with mp.Pool(jobs) as pool:
        done = 0
        for _ in pool.imap_unordered(_dedup_one, buckets):
            done += 1
            if done % 32 == 0:
                log(f"  {done}/{len(buckets)} buckets")
    total = 0
    sha = hashlib.sha256()
    with open(out_path, "wb") as out:
        for b in buckets:
            with open(b + ".dedup", "rb") as f:
                data = f.read()
            out.write(data)
            sha.update(data)
            total += data.count(b"\n")
    manifest = {
        "n": 10,
        "min_edges": 20,
        "max_edges": 30,
        "min_degree": 3,
        "max_degree": None,
        "min_connectivity": 2,
        "count": total,
        "sha256": sha.hexdigest(),
        "generator": "tests/build_order10_corpus.py (vertex augmentation)",
    }
    with open(out_path + ".manifest.json", "w") as f:
        json.dump(manifest, f, indent=2)
    log(f"phase B done: {total} graphs in {time.time() - t0:.0f}s -> {out_path}")


def main() -> None:
    workdir = sys.argv[1] if len(sys.argv) > 1 else "/root/corpus10"
    os.makedirs(workdir, exist_ok=True)
    bucket_dir = os.path.join(workdir, "buckets")
    os.makedirs(bucket_dir, exist_ok=True)
    out_path = os.path.join(workdir, "source10.g6")
    if os.path.exists(out_path + ".manifest.json"):
        log("corpus already built")
        return
    phase_a(bucket_dir)
    phase_b(bucket_dir, out_path, jobs=max(1, (os.cpu_count() or 2)))
    log("all done")


if __name__ == "__main__":
    main()
