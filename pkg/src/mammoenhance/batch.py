"""Manifest-driven batch enhancement and the MSE/PSNR report."""

from __future__ import annotations

import csv
import enum
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO, Union

from .enhance import EnhanceParams, enhance_pipeline
from .metrics import PeakConvention, compare, format_psnr
from .pgm import PgmError, PgmVariant, decode_pgm, encode_pgm
from .raster import RasterError

MANIFEST_HEADER = ("image_id", "class", "abnormality", "tissue", "filename")
REPORT_HEADER = ("image_id", "mse", "psnr_db")
OUTPUT_SUFFIX = "_neg_histeq.pgm"


class ImageClass(enum.Enum):
    NORM = "NORM"
    MALIGNANT = "MALIGNANT"


class Abnormality(enum.Enum):
    NONE = "NONE"
    MICROCALCIFICATION = "MICROCALCIFICATION"
    CIRCUMSCRIBED_MASSES = "CIRCUMSCRIBED_MASSES"


class Tissue(enum.Enum):
    F = "F"  # fatty
    G = "G"  # fatty-glandular
    D = "D"  # dense-glandular


class ManifestError(ValueError):
    pass


class MissingHeader(ManifestError):
    pass


class BadEnum(ManifestError):
    pass


class DuplicateId(ManifestError):
    pass


class InconsistentRow(ManifestError):
    pass


class FileMissing(OSError):
    pass


class OutputDirUnwritable(OSError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    image_id: str
    image_class: ImageClass
    abnormality: Abnormality
    tissue: Tissue
    filename: str

    def __post_init__(self) -> None:
        if not self.image_id:
            raise ManifestError("image_id must be nonempty")
        if self.image_class is ImageClass.NORM and self.abnormality is not Abnormality.NONE:
            raise InconsistentRow(
                f"{self.image_id}: NORM entry cannot have abnormality {self.abnormality.value}"
            )


@dataclass(frozen=True)
class ReportRow:
    image_id: str
    mse: float
    psnr_db: float


@dataclass(frozen=True)
class FailureRecord:
    image_id: str
    cause: str
    message: str


@dataclass
class BatchReport:
    params: EnhanceParams
    peak: PeakConvention
    rows: list[ReportRow] = field(default_factory=list)
    failures: list[FailureRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _parse_enum(kind: type[enum.Enum], token: str, line: int, column: str):
    try:
        return kind(token.strip().upper())
    except ValueError:
        allowed = ", ".join(m.value for m in kind)
        raise BadEnum(f"line {line}: bad {column} {token!r} (allowed: {allowed})") from None


def load_manifest(text: Union[str, TextIO]) -> list[ManifestEntry]:
    """Parse a manifest CSV with header ``image_id,class,abnormality,tissue,filename``."""
    stream = io.StringIO(text) if isinstance(text, str) else text
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != MANIFEST_HEADER:
        raise MissingHeader(f"expected header {','.join(MANIFEST_HEADER)}, got {header!r}")
    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(MANIFEST_HEADER):
            raise ManifestError(f"line {line}: expected {len(MANIFEST_HEADER)} fields, got {len(row)}")
        image_id, cls, abn, tissue, filename = (c.strip() for c in row)
        if image_id in seen:
            raise DuplicateId(f"line {line}: duplicate image_id {image_id!r}")
        entry = ManifestEntry(
            image_id,
            _parse_enum(ImageClass, cls, line, "class"),
            _parse_enum(Abnormality, abn, line, "abnormality"),
            _parse_enum(Tissue, tissue, line, "tissue"),
            filename,
        )
        seen.add(image_id)
        entries.append(entry)
    return entries


def output_name(image_id: str) -> str:
    return image_id.lower() + OUTPUT_SUFFIX


def _process_entry(
    entry: ManifestEntry, in_dir: Path, out_dir: Path, params: EnhanceParams, peak: PeakConvention
) -> Union[ReportRow, FailureRecord]:
    src = in_dir / entry.filename
    try:
        data = src.read_bytes()
    except FileNotFoundError:
        return FailureRecord(entry.image_id, FileMissing.__name__, f"{src} not found")
    except OSError as exc:
        return FailureRecord(entry.image_id, type(exc).__name__, str(exc))
    try:
        original = decode_pgm(data)
    except (PgmError, RasterError) as exc:
        return FailureRecord(entry.image_id, "DecodeError", f"{type(exc).__name__}: {exc}")
    enhanced = enhance_pipeline(original, params)
    (out_dir / output_name(entry.image_id)).write_bytes(encode_pgm(enhanced, PgmVariant.BINARY_P5))
    m = compare(original, enhanced, peak)
    return ReportRow(entry.image_id, m.mse, m.psnr_db)


def run_batch(
    manifest: Sequence[ManifestEntry],
    in_dir: Union[str, os.PathLike],
    out_dir: Union[str, os.PathLike],
    params: EnhanceParams = EnhanceParams(),
    peak: PeakConvention = PeakConvention.PAPER,
    jobs: int = 1,
) -> BatchReport:
    """Enhance every manifest entry and collect metrics in manifest order.

    Per-entry failures (missing file, undecodable PGM) are recorded in
    ``report.failures`` and do not stop the batch. An output directory that
    cannot be created or written raises :class:`OutputDirUnwritable`.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    in_dir, out_dir = Path(in_dir), Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputDirUnwritable(f"cannot create {out_dir}: {exc}") from exc
    if not os.access(out_dir, os.W_OK):
        raise OutputDirUnwritable(f"{out_dir} is not writable")

    def work(entry: ManifestEntry):
        return _process_entry(entry, in_dir, out_dir, params, peak)

    if jobs == 1:
        results = [work(e) for e in manifest]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, manifest))

    report = BatchReport(params, peak)
    for r in results:
        if isinstance(r, ReportRow):
            report.rows.append(r)
        else:
            report.failures.append(r)
    return report


def _write_csv(header: Iterable[str], rows: Iterable[Iterable[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def emit_report_csv(report: BatchReport) -> str:
    return _write_csv(
        REPORT_HEADER,
        ((r.image_id, f"{r.mse:.2f}", format_psnr(r.psnr_db)) for r in report.rows),
    )


def emit_failures_csv(report: BatchReport) -> str:
    return _write_csv(
        ("image_id", "cause", "message"),
        ((f.image_id, f.cause, f.message) for f in report.failures),
    )
