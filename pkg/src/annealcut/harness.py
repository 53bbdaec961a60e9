"""Benchmark driver: known-best tables, single runs, suites, CSV, and instance fetching."""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import os
import shutil
import tempfile
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .annealer import AnnealParams, anneal, write_trace
from .graph import GraphFormatError, cut_value, read_graph, write_assignment

logger = logging.getLogger(__name__)

CSV_HEADER = [
    "instance", "seed", "heat_max", "heat_step", "iterations",
    "best_objective", "best_known", "gap", "wall_time_s",
]
HEURISTICS = ("ss", "circut", "vnspr", "sa")
OUTPUT_SUFFIXES = {".sol", ".trace", ".csv", ".json", ".md", ".part"}


class VerificationError(RuntimeError):
    """A reported objective does not match an independent re-evaluation."""


class FetchError(RuntimeError):
    pass


@dataclass(frozen=True)
class KnownBest:
    ss: int | None = None
    circut: int | None = None
    vnspr: int | None = None
    sa: int | None = None

    @property
    def best_known(self) -> int | None:
        values = [x for x in (self.ss, self.circut, self.vnspr, self.sa) if x is not None]
        return max(values) if values else None


class KnownBestTable(dict):
    """Maps lower-case instance names to :class:`KnownBest` rows."""

    def best_known(self, name):
        entry = self.get(instance_name(name))
        return None if entry is None else entry.best_known


def _optional_int(tok, lineno):
    tok = tok.strip()
    if not tok:
        return None
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError(f"malformed value {tok!r}", lineno) from None


def parse_known_best(text) -> KnownBestTable:
    """Parse ``instance,ss,circut,vnspr,sa`` rows; ``#`` lines are comments."""
    table = KnownBestTable()
    header_seen = False
    for lineno, line in enumerate(io.StringIO(text), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = next(csv.reader([line]))
        if not header_seen:
            header_seen = True
            if [c.strip().lower() for c in row] != ["instance", *HEURISTICS]:
                raise GraphFormatError(f"unexpected header {row}", lineno)
            continue
        if len(row) != 5:
            raise GraphFormatError(f"expected 5 columns, got {len(row)}", lineno)
        name = instance_name(row[0].strip())
        if not name:
            raise GraphFormatError("missing instance name", lineno)
        if name in table:
            raise GraphFormatError(f"duplicate instance {name!r}", lineno)
        table[name] = KnownBest(*(_optional_int(tok, lineno) for tok in row[1:]))
    return table


def load_known_best(path=None) -> KnownBestTable:
    """Load a known-best CSV; ``None`` loads the bundled table of 88 instances."""
    if path is None:
        text = resources.files("annealcut").joinpath("data/known_best.csv").read_text()
    else:
        text = Path(path).read_text()
    return parse_known_best(text)


def instance_name(path) -> str:
    name = os.path.basename(os.fspath(path)).lower()
    root, ext = os.path.splitext(name)
    # torus names such as "toursg3-8" carry no extension; keep dotted stems intact
    return root if ext and not ext[1:].isdigit() else name


def instance_set(name) -> int | None:
    """Benchmark set (1, 2 or 3) a standard instance name belongs to."""
    name = instance_name(name)
    if name.startswith("sg3dl"):
        return 2
    if name.startswith("tours"):
        return 3
    if name.startswith("g") and name[1:].isdigit():
        return 1
    return None


@dataclass
class BenchmarkRecord:
    instance: str
    seed: int
    heat_max: float
    heat_step: float
    iterations: int
    best_objective: int
    best_known: int | None
    wall_time: float

    @property
    def gap(self) -> int | None:
        return None if self.best_known is None else self.best_known - self.best_objective


def run_instance(path, params: AnnealParams | None = None, *, known_best=None,
                 assignment_out=None, trace_out=None, cancel=None) -> BenchmarkRecord:
    """Anneal one instance file, re-verify the best cut, and write artifacts."""
    params = params or AnnealParams()
    graph = read_graph(path)
    result = anneal(graph, params, cancel=cancel)
    check = cut_value(graph, result.best_assignment)
    if check != result.best_objective:
        raise VerificationError(
            f"{path}: reported objective {result.best_objective} but assignment evaluates to {check}"
        )
    if assignment_out is not None:
        write_assignment(result.best_assignment, assignment_out)
    if trace_out is not None:
        write_trace(result.improvement_trace, trace_out)
    name = instance_name(path)
    return BenchmarkRecord(
        instance=name,
        seed=params.seed,
        heat_max=params.schedule.heat_max,
        heat_step=params.schedule.heat_step,
        iterations=result.iterations_executed,
        best_objective=result.best_objective,
        best_known=None if known_best is None else known_best.best_known(name),
        wall_time=result.wall_time,
    )


@dataclass
class SuiteResult:
    records: list[BenchmarkRecord]
    skipped: list[tuple[str, str]] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def summary(self):
        return summarize(self.records)


def _candidate_files(directory):
    return sorted(
        p for p in Path(directory).iterdir()
        if p.is_file() and not p.name.startswith(".") and p.suffix.lower() not in OUTPUT_SUFFIXES
    )


def run_suite(directory, params: AnnealParams | None = None, jobs: int | None = None, *,
              known_best=None, out_dir=None, cancel=None) -> SuiteResult:
    """Run every instance in ``directory``, one run each.

    Instance ``i`` (in sorted file order) runs with seed ``params.seed + i``.
    Unparsable files are skipped and listed; a verification failure is kept
    in ``failures`` rather than aborting the other runs.
    """
    params = params or AnnealParams()
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"{directory} is not a directory")
    files = _candidate_files(directory)
    skipped, jobs_list = [], []
    for index, path in enumerate(files):
        try:
            read_graph(path)
        except (GraphFormatError, UnicodeDecodeError, ValueError) as exc:
            logger.warning("skipping %s: %s", path, exc)
            skipped.append((str(path), str(exc)))
            continue
        jobs_list.append((path, replace(params, seed=params.seed + index)))
    if not jobs_list:
        raise ValueError(f"no parsable instances in {directory}")
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)

    def one(item):
        path, run_params = item
        stem = instance_name(path)
        try:
            return run_instance(
                path, run_params, known_best=known_best,
                assignment_out=None if out_dir is None else Path(out_dir) / f"{stem}.sol",
                trace_out=None if out_dir is None else Path(out_dir) / f"{stem}.trace",
                cancel=cancel,
            )
        except VerificationError as exc:
            return exc

    workers = jobs or os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        outcomes = list(pool.map(one, jobs_list))
    records, failures = [], []
    for (path, _), out in zip(jobs_list, outcomes):
        if isinstance(out, VerificationError):
            failures.append((str(path), str(out)))
        else:
            records.append(out)
    return SuiteResult(records, skipped, failures)


def summarize(records) -> dict:
    """Per-set counts of instances where the run matched or beat the best-known value.

    Keys are set numbers (or ``None`` for unrecognised names); each value has
    ``instances``, ``with_reference``, ``matched`` (gap <= 0) and ``improved``
    (gap < 0).
    """
    out = {}
    for rec in records:
        bucket = out.setdefault(
            instance_set(rec.instance),
            {"instances": 0, "with_reference": 0, "matched": 0, "improved": 0},
        )
        bucket["instances"] += 1
        gap = rec.gap
        if gap is None:
            continue
        bucket["with_reference"] += 1
        bucket["matched"] += gap <= 0
        bucket["improved"] += gap < 0
    return out


def format_summary(summary) -> str:
    lines = ["set  instances  with_ref  matched  improved"]
    for key in sorted(summary, key=lambda k: (k is None, k or 0)):
        s = summary[key]
        label = "-" if key is None else str(key)
        lines.append(
            f"{label:<4} {s['instances']:>9} {s['with_reference']:>9} {s['matched']:>8} {s['improved']:>9}"
        )
    return "\n".join(lines) + "\n"


def _blank(x):
    return "" if x is None else x


def emit_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([
            r.instance, r.seed, repr(float(r.heat_max)), repr(float(r.heat_step)), r.iterations,
            r.best_objective, _blank(r.best_known), _blank(r.gap), f"{r.wall_time:.3f}",
        ])
    return buf.getvalue()


def parse_csv(text) -> list[BenchmarkRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    records = []
    for row in reader:
        if not row:
            continue
        rec = BenchmarkRecord(
            instance=row[0],
            seed=int(row[1]),
            heat_max=float(row[2]),
            heat_step=float(row[3]),
            iterations=int(row[4]),
            best_objective=int(row[5]),
            best_known=int(row[6]) if row[6] else None,
            wall_time=float(row[8]),
        )
        if (str(rec.gap) if rec.gap is not None else "") != row[7]:
            raise ValueError(f"gap column {row[7]!r} inconsistent for {rec.instance}")
        records.append(rec)
    return records


def summarize_csv(text) -> dict:
    return summarize(parse_csv(text))


@dataclass(frozen=True)
class ManifestEntry:
    name: str
    url: str
    sha256: str


@dataclass
class FetchReport:
    present: list[str] = field(default_factory=list)
    downloaded: list[str] = field(default_factory=list)
    quarantined: list[str] = field(default_factory=list)
    failed: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.quarantined and not self.failed


def read_manifest(path) -> list[ManifestEntry]:
    """Manifest lines are ``name,url,sha256``; blank and ``#`` lines are ignored."""
    path = Path(path)
    if not path.is_file():
        raise FetchError(f"manifest {path} not found")
    entries = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = [c.strip() for c in next(csv.reader([line]))]
        if row == ["name", "url", "sha256"]:
            continue
        if len(row) != 3 or not all(row):
            raise FetchError(f"{path}:{lineno}: expected 'name,url,sha256'")
        name, url, digest = row
        if os.path.basename(name) != name or name in (".", ".."):
            raise FetchError(f"{path}:{lineno}: instance name {name!r} must be a bare file name")
        entries.append(ManifestEntry(name, url, digest.lower()))
    return entries


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _quarantine(path, dest) -> Path:
    qdir = Path(dest) / "quarantine"
    qdir.mkdir(exist_ok=True)
    target = qdir / Path(path).name
    os.replace(path, target)
    return target


def fetch_instances(manifest, destination, *, offline=False, timeout=60.0) -> FetchReport:
    """Download missing instance files and verify every file's SHA-256.

    Verified files are never rewritten. Files that fail verification are
    moved to ``destination/quarantine``. With ``offline`` no network access
    is attempted and missing files are reported as failures.
    """
    entries = read_manifest(manifest)
    dest = Path(destination)
    dest.mkdir(parents=True, exist_ok=True)
    report = FetchReport()
    for entry in entries:
        target = dest / entry.name
        if target.exists():
            if sha256_file(target) == entry.sha256:
                report.present.append(entry.name)
                continue
            logger.warning("checksum mismatch for existing %s; quarantining", target)
            _quarantine(target, dest)
            report.quarantined.append(entry.name)
            continue
        if offline:
            report.failed.append((entry.name, "missing (offline)"))
            continue
        fd, tmp = tempfile.mkstemp(dir=dest, prefix=f".{entry.name}.", suffix=".part")
        try:
            with os.fdopen(fd, "wb") as out, urllib.request.urlopen(entry.url, timeout=timeout) as resp:
                shutil.copyfileobj(resp, out)
        except OSError as exc:
            os.unlink(tmp)
            report.failed.append((entry.name, f"download failed: {exc}"))
            continue
        if sha256_file(tmp) != entry.sha256:
            final = Path(tmp).with_name(entry.name)
            os.replace(tmp, final)
            _quarantine(final, dest)
            report.quarantined.append(entry.name)
            continue
        os.replace(tmp, target)
        report.downloaded.append(entry.name)
    return report
