"""File-level pipeline: parallel filtering, sharding, manifests, resume.

Inputs and outputs are graph6 files.  Every run emits a manifest recording
the sieve, per-stage counts, digests of the files touched, wall time and
worker count, so long jobs can be audited and re-run; census runs are
sharded and completed shards are skipped on resume by digest check.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing as mp
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from . import __version__
from .errors import IncompleteSource, LinklessError
from .g6 import G6Error, decode_g6, encode_g6
from .graph import Graph
from .linking import is_maxnil, is_nil_linking
from .minors import has_k6_minor
from .planarity import apex_report
from .search import (
    CensusResult,
    SieveSpec,
    _check_coverage,
    census,
    census_disposition,
    default_sieve,
)

TIMEOUT_CODE = -1


class GraphTimeout(LinklessError):
    """A per-graph operation exceeded its time budget."""


def sha256_of_file(path: str) -> str:
    sha = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            sha.update(chunk)
    return sha.hexdigest()


def read_g6_lines(path: str) -> list[bytes]:
    from .g6 import HEADER

    out = []
    with open(path, "rb") as f:
        for raw in f:
            line = raw.rstrip(b"\r\n")
            if line.startswith(HEADER):
                line = line[len(HEADER):]
            if line:
                out.append(line)
    return out


@dataclass
class RunManifest:
    """Audit record of one pipeline run."""

    command: str
    sieve: Optional[dict]
    input_digest: Optional[str]
    output_digest: Optional[str]
    stage_counts: dict
    wall_time_s: float
    jobs: int
    version: str = __version__
    timeouts: list = field(default_factory=list)

    def save(self, path: str) -> None:
        with open(path, "w") as f:
            json.dump(self.__dict__, f, indent=2, sort_keys=True)
            f.write("\n")

    @staticmethod
    def load(path: str) -> "RunManifest":
        with open(path) as f:
            return RunManifest(**json.load(f))


def load_source_manifest(g6_path: str, verify_digest: bool = True) -> dict:
    """Load and verify the coverage manifest of an externally generated
    source (sidecar <path>.manifest.json).  Raises IncompleteSource when
    the manifest is missing or does not match the file."""
    mpath = g6_path + ".manifest.json"
    if not os.path.exists(mpath):
        raise IncompleteSource(f"no coverage manifest at {mpath}")
    with open(mpath) as f:
        declared = json.load(f)
    if verify_digest and "sha256" in declared:
        actual = sha256_of_file(g6_path)
        if actual != declared["sha256"]:
            raise IncompleteSource(
                f"{g6_path}: digest {actual[:12]}.. != declared "
                f"{declared['sha256'][:12]}.."
            )
    if "count" in declared:
        actual_count = len(read_g6_lines(g6_path))
        if actual_count != declared["count"]:
            raise IncompleteSource(
                f"{g6_path}: {actual_count} records != declared {declared['count']}"
            )
    return declared


# -- worker plumbing ---------------------------------------------------------------

_WORKER_STATE: dict = {}


def _init_worker(kind: str, sieve_dict: Optional[dict], timeout_s: Optional[float]):
    _WORKER_STATE["kind"] = kind
    _WORKER_STATE["sieve"] = SieveSpec(**sieve_dict) if sieve_dict else None
    _WORKER_STATE["timeout"] = timeout_s


def _deadline_check_factory(timeout_s: Optional[float]):
    if timeout_s is None:
        return None
    t_end = time.monotonic() + timeout_s

    def check():
        if time.monotonic() > t_end:
            raise GraphTimeout()

    return check


def _predicate_value(kind: str, g: Graph, timeout_s: Optional[float]) -> bool:
    check = _deadline_check_factory(timeout_s)
    if kind == "k6-minor-free":
        for comp in g.components():
            if comp.bit_count() < 6:
                continue
            sub, _ = g.induced(comp)
            if has_k6_minor(sub, deadline_check=check):
                return False
        return True
    if kind == "nil":
        return is_nil_linking(g)
    if kind == "maxnil":
        return is_maxnil(g)
    if kind == "non-apex":
        return not apex_report(g).is_apex
    raise ValueError(f"unknown predicate {kind!r}")


def _filter_worker(item: tuple[int, bytes]) -> tuple[int, int]:
    idx, line = item
    sieve = _WORKER_STATE["sieve"]
    kind = _WORKER_STATE["kind"]
    try:
        g = decode_g6(line)
    except G6Error:
        return idx, 2  # malformed
    if sieve is not None and not sieve.admits(g):
        return idx, 3  # sieve reject
    try:
        return idx, 1 if _predicate_value(kind, g, _WORKER_STATE["timeout"]) else 0
    except GraphTimeout:
        return idx, TIMEOUT_CODE


MALFORMED_CODE = -2


def _census_worker(item: tuple[int, bytes]) -> tuple[int, int]:
    idx, line = item
    try:
        g = decode_g6(line)
    except G6Error:
        return idx, MALFORMED_CODE
    try:
        return idx, census_disposition(g, _WORKER_STATE["sieve"])
    except GraphTimeout:
        return idx, TIMEOUT_CODE


# -- filter / shard ----------------------------------------------------------------


def filter_file(
    input_path: str,
    output_path: str,
    predicate: str,
    sieve: Optional[SieveSpec] = None,
    jobs: int = 1,
    timeout_per_graph: Optional[float] = None,
) -> RunManifest:
    """Keep the input graphs satisfying the predicate, in input order.

    Re-running with identical inputs produces byte-identical output.
    Malformed lines are counted and dropped, never fatal.  Timed-out
    graphs are dropped from the output and listed in the manifest.
    """
    t0 = time.time()
    lines = read_g6_lines(input_path)
    init = (predicate, sieve.as_dict() if sieve else None, timeout_per_graph)
    results: dict[int, int] = {}
    if jobs <= 1:
        _init_worker(*init)
        for item in enumerate(lines):
            idx, code = _filter_worker(item)
            results[idx] = code
    else:
        with mp.Pool(jobs, initializer=_init_worker, initargs=init) as pool:
            for idx, code in pool.imap(_filter_worker, list(enumerate(lines)), 64):
                results[idx] = code
    counts = {"input": len(lines), "kept": 0, "rejected": 0, "malformed": 0,
              "sieve_reject": 0}
    timeouts = []
    with open(output_path, "wb") as out:
        for idx, line in enumerate(lines):
            code = results[idx]
            if code == 1:
                out.write(line + b"\n")
                counts["kept"] += 1
            elif code == 0:
                counts["rejected"] += 1
            elif code == 2:
                counts["malformed"] += 1
            elif code == 3:
                counts["sieve_reject"] += 1
            elif code == TIMEOUT_CODE:
                timeouts.append(idx + 1)
    manifest = RunManifest(
        command=f"filter --predicate {predicate}",
        sieve=sieve.as_dict() if sieve else None,
        input_digest=sha256_of_file(input_path),
        output_digest=sha256_of_file(output_path),
        stage_counts=counts,
        wall_time_s=round(time.time() - t0, 3),
        jobs=jobs,
        timeouts=timeouts,
    )
    manifest.save(output_path + ".manifest.json")
    return manifest


def shard_file(input_path: str, shard_size: int, out_dir: str) -> dict:
    """Split a graph6 file into numbered shards; concatenation in shard
    order reproduces the input records exactly."""
    if shard_size < 1:
        raise ValueError("shard_size must be >= 1")
    os.makedirs(out_dir, exist_ok=True)
    base = os.path.splitext(os.path.basename(input_path))[0]
    lines = read_g6_lines(input_path)
    shards = []
    for i in range(0, max(len(lines), 1), shard_size):
        chunk = lines[i:i + shard_size]
        if not chunk and shards:
            break
        path = os.path.join(out_dir, f"{base}.{len(shards):04d}.g6")
        with open(path, "wb") as f:
            for line in chunk:
                f.write(line + b"\n")
        shards.append({"path": path, "count": len(chunk),
                       "sha256": sha256_of_file(path)})
    manifest = {
        "command": "shard",
        "input": input_path,
        "input_digest": sha256_of_file(input_path),
        "shard_size": shard_size,
        "shards": shards,
        "version": __version__,
    }
    with open(os.path.join(out_dir, f"{base}.shards.json"), "w") as f:
        json.dump(manifest, f, indent=2)
    return manifest


# -- census with resume --------------------------------------------------------------


def census_file(
    n: int,
    source_paths: Sequence[str],
    jobs: int = 1,
    workdir: Optional[str] = None,
    shard_size: int = 200_000,
    sieve: Optional[SieveSpec] = None,
    triangulation_path: Optional[str] = None,
    prev_maxnil_path: Optional[str] = None,
    require_manifest: bool = True,
    timeout_per_graph: Optional[float] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> tuple[CensusResult, RunManifest]:
    """Run the order-n census over graph6 source files.

    Sources must carry coverage manifests matching the sieve (else
    IncompleteSource).  Dispositions are computed shard by shard; each
    finished shard is persisted in `workdir` keyed by its digest, so an
    interrupted run resumes where it stopped and reruns are deterministic
    for any worker count.
    """
    t0 = time.time()
    sieve = sieve or default_sieve(n)
    if require_manifest:
        for path in source_paths:
            _check_coverage(sieve, load_source_manifest(path))

    all_lines: list[bytes] = []
    for path in source_paths:
        all_lines.extend(read_g6_lines(path))

    dispositions = [0] * len(all_lines)
    timeouts: list[int] = []
    init = ("census", sieve.as_dict(), timeout_per_graph)
    for start in range(0, max(len(all_lines), 1), shard_size):
        chunk = all_lines[start:start + shard_size]
        if not chunk:
            break
        shard_id = start // shard_size
        digest = hashlib.sha256(b"\n".join(chunk)).hexdigest()
        cache_path = (
            os.path.join(workdir, f"census{n}.shard{shard_id:04d}.json")
            if workdir
            else None
        )
        codes: Optional[list[int]] = None
        if cache_path and os.path.exists(cache_path):
            with open(cache_path) as f:
                saved = json.load(f)
            if saved.get("digest") == digest:
                codes = saved["codes"]
                if progress:
                    progress(f"shard {shard_id}: resumed from cache")
        if codes is None:
            codes = [0] * len(chunk)
            items = list(enumerate(chunk))
            if jobs <= 1:
                _init_worker(*init)
                for idx, code in map(_census_worker, items):
                    codes[idx] = code
            else:
                with mp.Pool(jobs, initializer=_init_worker, initargs=init) as pool:
                    for idx, code in pool.imap(_census_worker, items, 64):
                        codes[idx] = code
            if cache_path:
                os.makedirs(workdir, exist_ok=True)
                tmp = cache_path + ".tmp"
                with open(tmp, "w") as f:
                    json.dump({"digest": digest, "codes": codes}, f)
                os.replace(tmp, cache_path)
            if progress:
                progress(f"shard {shard_id}: {len(chunk)} graphs done")
        for i, code in enumerate(codes):
            if code == TIMEOUT_CODE:
                timeouts.append(start + i + 1)
            elif code == MALFORMED_CODE:
                raise IncompleteSource(
                    f"malformed graph6 record at line {start + i + 1}"
                )
            dispositions[start + i] = code

    if timeouts:
        raise IncompleteSource(
            f"{len(timeouts)} graphs timed out; rerun with a larger budget "
            f"(first lines: {timeouts[:5]})"
        )

    graphs = (decode_g6(line) for line in all_lines)
    triangulations = None
    if triangulation_path:
        triangulations = [decode_g6(l) for l in read_g6_lines(triangulation_path)]
    prev_maxnil = None
    if prev_maxnil_path:
        prev_maxnil = [decode_g6(l) for l in read_g6_lines(prev_maxnil_path)]
    result = census(
        n,
        graphs,
        sieve=sieve,
        triangulations=triangulations,
        prev_maxnil=prev_maxnil,
        dispositions=dispositions,
    )
    input_digest = hashlib.sha256(b"\n".join(all_lines)).hexdigest()
    manifest = RunManifest(
        command=f"census -n {n}",
        sieve=sieve.as_dict(),
        input_digest=input_digest,
        output_digest=None,
        stage_counts=result.stage_counts,
        wall_time_s=round(time.time() - t0, 3),
        jobs=jobs,
    )
    return result, manifest


def write_survivors(result: CensusResult, path: str) -> str:
    """Write census survivors sorted by (edge count, graph6 bytes)."""
    with open(path, "wb") as f:
        for g in result.survivors:
            f.write(encode_g6(g) + b"\n")
    return sha256_of_file(path)
