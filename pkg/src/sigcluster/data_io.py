"""Loading benchmark datasets from delimited text and persisting results.

Two small CSVs ship with the package (UCI iris and wheat-seeds); their
manifests are available through :func:`bundled_manifest`. Result records
are written as JSON (schema-versioned) or CSV with a fixed column order;
both formats round-trip exactly through :func:`read_results`.
"""

import csv
import dataclasses
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .dataset import Dataset
from .errors import EmptyDatasetError, MissingLabelColumnError, ParseError

RESULTS_SCHEMA_VERSION = 1

# fixed CSV column order for result records
RESULT_FIELDS = (
    "method", "dataset", "separation", "success_rate",
    "k_mean", "k_std", "vi_mean", "vi_std", "ari_mean", "ari_std",
    "mean_time_s", "runs", "seed",
)


@dataclass(frozen=True)
class DatasetManifest:
    """Where and how to read one delimited dataset.

    ``label_column`` is a header name or 0-based index (None for
    unlabeled data); ``standardize`` asks the loader for per-column
    mean-0/std-1 features, and is recorded by the benchmark so results
    state which setting produced them. ``expected_k`` is the ground-truth
    number of classes when known.
    """

    name: str
    path: str
    label_column: int | str | None = None
    delimiter: str = ","
    has_header: bool = True
    standardize: bool = False
    expected_k: int | None = None

    def __post_init__(self):
        if self.expected_k is not None and self.expected_k < 1:
            raise ValueError("expected_k must be at least 1 when present")


def load_csv(manifest: DatasetManifest) -> Dataset:
    """Parse the manifest's file into a Dataset.

    Any unparseable numeric cell aborts the load with a ParseError naming
    the 1-based row and column. Rows are kept in file order.

    Raises
    ------
    EmptyDatasetError
        If no data rows are present.
    MissingLabelColumnError
        If the configured label column cannot be resolved.
    ParseError
        On the first bad numeric cell.
    """
    path = Path(manifest.path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=manifest.delimiter)
        rows = [row for row in reader if row and any(cell.strip() for cell in row)]

    header = None
    if manifest.has_header:
        if not rows:
            raise EmptyDatasetError(f"{path}: file is empty")
        header = [h.strip() for h in rows[0]]
        rows = rows[1:]
    if not rows:
        raise EmptyDatasetError(f"{path}: no data rows")

    ncols = len(rows[0])
    label_idx = None
    if manifest.label_column is not None:
        if isinstance(manifest.label_column, str):
            if header is None or manifest.label_column not in header:
                raise MissingLabelColumnError(
                    f"{path}: no column named {manifest.label_column!r}"
                )
            label_idx = header.index(manifest.label_column)
        else:
            label_idx = int(manifest.label_column)
            if label_idx < 0:
                label_idx += ncols
            if not 0 <= label_idx < ncols:
                raise MissingLabelColumnError(
                    f"{path}: label column index {manifest.label_column} "
                    f"out of range for {ncols} columns"
                )

    features = []
    labels = [] if label_idx is not None else None
    for r, row in enumerate(rows, start=2 if manifest.has_header else 1):
        if len(row) != ncols:
            raise ParseError(
                f"{path}: row {r} has {len(row)} cells, expected {ncols}",
                row=r, column=None,
            )
        feat = []
        for c, cell in enumerate(row):
            if c == label_idx:
                labels.append(cell.strip())
                continue
            try:
                feat.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"{path}: cannot parse cell {cell.strip()!r} "
                    f"at row {r}, column {c + 1}",
                    row=r, column=c + 1,
                ) from None
        features.append(feat)

    data = Dataset(
        rows=np.asarray(features, dtype=np.float64),
        labels=np.asarray(labels) if labels is not None else None,
        name=manifest.name,
    )
    return data.standardized() if manifest.standardize else data


def bundled_manifest(name: str) -> DatasetManifest:
    """Manifest for a dataset shipped with the package: iris or seeds.

    iris keeps raw features (all lengths in cm); seeds is standardized
    because its seven features mix units and scales.
    """
    base = resources.files("sigcluster").joinpath("data")
    manifests = {
        "iris": DatasetManifest(
            name="iris", path=str(base / "iris.csv"),
            label_column="species", expected_k=3, standardize=False,
        ),
        "seeds": DatasetManifest(
            name="seeds", path=str(base / "seeds.csv"),
            label_column="variety", expected_k=3, standardize=True,
        ),
    }
    if name not in manifests:
        raise ValueError(f"no bundled dataset {name!r}; have {sorted(manifests)}")
    return manifests[name]


def _record_to_dict(record) -> dict:
    if dataclasses.is_dataclass(record) and not isinstance(record, type):
        record = dataclasses.asdict(record)
    return dict(record)


def write_results(records, path, format: str = "json") -> None:
    """Write benchmark records to ``path`` as JSON or CSV.

    JSON carries a schema_version envelope; CSV uses the fixed
    RESULT_FIELDS column order with empty cells for absent fields. An
    empty record list produces a valid empty document either way.
    """
    records = [_record_to_dict(r) for r in records]
    path = Path(path)
    if format == "json":
        doc = {"schema_version": RESULTS_SCHEMA_VERSION, "records": records}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    elif format == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(RESULT_FIELDS)
            for rec in records:
                writer.writerow([
                    "" if rec.get(f) is None else repr(rec[f]) if isinstance(rec[f], float) else rec[f]
                    for f in RESULT_FIELDS
                ])
    else:
        raise ValueError(f"unknown format {format!r}; use 'json' or 'csv'")


def read_results(path, format: str | None = None) -> list[dict]:
    """Read records written by :func:`write_results` (format from suffix
    when not given). Numeric fields come back as float/int, absent CSV
    cells as None."""
    path = Path(path)
    if format is None:
        format = "csv" if path.suffix.lower() == ".csv" else "json"
    if format == "json":
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("schema_version") != RESULTS_SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version in {path}")
        return doc["records"]
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            rec = {}
            for key, val in row.items():
                if val == "" or val is None:
                    rec[key] = None
                else:
                    try:
                        num = float(val)
                        rec[key] = int(num) if num.is_integer() and key in ("runs", "seed") else num
                    except ValueError:
                        rec[key] = val
            records.append(rec)
    return records
