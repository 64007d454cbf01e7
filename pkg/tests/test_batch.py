from importlib import resources

import numpy as np
import pytest

from mammoenhance.batch import (
    Abnormality,
    BadEnum,
    BatchReport,
    DuplicateId,
    ImageClass,
    InconsistentRow,
    ManifestError,
    MissingHeader,
    OutputDirUnwritable,
    ReportRow,
    Tissue,
    emit_report_csv,
    load_manifest,
    output_name,
    run_batch,
)
from mammoenhance.enhance import EnhanceParams
from mammoenhance.metrics import INFINITE, PeakConvention
from mammoenhance.pgm import decode_pgm, write_pgm
from mammoenhance.raster import new_image

HEADER = "image_id,class,abnormality,tissue,filename\n"


def test_manifest_valid_rows():
    entries = load_manifest(
        HEADER + "MDB231,MALIGNANT,MICROCALCIFICATION,F,mdb231.pgm\nMDB006,NORM,NONE,F,mdb006.pgm\n"
    )
    assert [e.image_id for e in entries] == ["MDB231", "MDB006"]
    e = entries[0]
    assert (e.image_class, e.abnormality, e.tissue, e.filename) == (
        ImageClass.MALIGNANT,
        Abnormality.MICROCALCIFICATION,
        Tissue.F,
        "mdb231.pgm",
    )


@pytest.mark.parametrize(
    "text, exc",
    [
        ("", MissingHeader),
        ("MDB006,NORM,NONE,F,mdb006.pgm\n", MissingHeader),
        (HEADER + "MDB006,NORM,MICROCALCIFICATION,F,x.pgm\n", InconsistentRow),
        (HEADER + "MDB006,BENIGN,NONE,F,x.pgm\n", BadEnum),
        (HEADER + "MDB006,NORM,NONE,Q,x.pgm\n", BadEnum),
        (HEADER + "MDB006,MALIGNANT,CALC,F,x.pgm\n", BadEnum),
        (HEADER + "A,NORM,NONE,F,a.pgm\nA,NORM,NONE,G,b.pgm\n", DuplicateId),
        (HEADER + ",NORM,NONE,F,a.pgm\n", ManifestError),
        (HEADER + "A,NORM,NONE\n", ManifestError),
    ],
)
def test_manifest_errors(text, exc):
    with pytest.raises(exc):
        load_manifest(text)


def test_bundled_manifest_matches_corpus_grouping():
    text = resources.files("mammoenhance").joinpath("data/table1_manifest.csv").read_text()
    entries = load_manifest(text)
    assert len(entries) == 8
    by_id = {e.image_id: e for e in entries}
    assert by_id["MDB231"].abnormality is Abnormality.MICROCALCIFICATION
    assert by_id["MDB028"].abnormality is Abnormality.CIRCUMSCRIBED_MASSES
    assert {i for i, e in by_id.items() if e.image_class is ImageClass.NORM} == {"MDB003", "MDB006", "MDB007"}


def test_emit_report_formatting():
    report = BatchReport(EnhanceParams(), PeakConvention.PAPER)
    assert emit_report_csv(report) == "image_id,mse,psnr_db\n"
    report.rows.append(ReportRow("MDB003", 50.35, 31.1448))
    report.rows.append(ReportRow("X", 0.0, INFINITE))
    assert emit_report_csv(report) == "image_id,mse,psnr_db\nMDB003,50.35,31.145\nX,0.00,inf\n"


def test_empty_batch(tmp_path):
    report = run_batch([], tmp_path, tmp_path / "out")
    assert report.rows == [] and report.ok


def test_single_constant_image(tmp_path):
    write_pgm(tmp_path / "c.pgm", new_image(8, 8, 255, [200] * 64))
    entries = load_manifest(HEADER + "C1,NORM,NONE,F,c.pgm\n")
    report = run_batch(entries, tmp_path, tmp_path / "out")
    out = decode_pgm((tmp_path / "out" / output_name("C1")).read_bytes())
    assert out.pixels.tolist() == [255] * 64
    assert len(report.rows) == 1
    assert report.rows[0].mse == (200 - 255) ** 2


def test_missing_and_corrupt_entries_recorded(tmp_path):
    rng = np.random.default_rng(3)
    lines = [HEADER]
    for i in range(8):
        name = f"img{i}.pgm"
        lines.append(f"ID{i},NORM,NONE,F,{name}\n")
        if i == 5:
            continue  # missing
        if i == 2:
            (tmp_path / name).write_bytes(b"P5\n4 4\n255\n\x00")
            continue
        write_pgm(tmp_path / name, new_image(4, 4, 255, rng.integers(0, 256, 16)))
    report = run_batch(load_manifest("".join(lines)), tmp_path, tmp_path / "out", jobs=3)
    assert [r.image_id for r in report.rows] == ["ID0", "ID1", "ID3", "ID4", "ID6", "ID7"]
    causes = {f.image_id: f.cause for f in report.failures}
    assert causes == {"ID2": "DecodeError", "ID5": "FileMissing"}
    assert "TruncatedPayload" in report.failures[0].message


def test_output_dir_unwritable(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OutputDirUnwritable):
        run_batch([], tmp_path, blocker / "sub")


def test_levels_and_peak_are_applied(tmp_path):
    rng = np.random.default_rng(11)
    write_pgm(tmp_path / "a.pgm", new_image(16, 16, 255, rng.integers(0, 256, 256)))
    entries = load_manifest(HEADER + "A,NORM,NONE,D,a.pgm\n")
    report = run_batch(entries, tmp_path, tmp_path / "o", EnhanceParams(levels=16), PeakConvention.CONVENTIONAL)
    out = decode_pgm((tmp_path / "o" / "a_neg_histeq.pgm").read_bytes())
    assert out.pixels.max() == 15
    assert report.peak is PeakConvention.CONVENTIONAL
