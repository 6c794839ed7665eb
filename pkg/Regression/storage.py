"""
Dataset and result persistence.

Dataset CSV: header `y,x1,...,xn`, one row per sample. Generation metadata
(theta_true, v, outlier_mask, seed, noise model) goes to a JSON sidecar next
to it: `data.csv` -> `data.meta.json`.
"""
import io
import json
from dataclasses import asdict
from pathlib import Path

import numpy as np
import pandas as pd
from django.conf import settings

from Regression.exceptions import DimensionError
from Regression.models import NoiseModel, RegressionDataset


def float_format():
    return settings.CORRENTROPY.get('CSV_FLOAT_FORMAT', '%.17g')


def sidecar_path(path):
    path = Path(path)
    return path.with_name(path.stem + ".meta.json")


def dataset_frame(ds):
    frame = pd.DataFrame(ds.X.T, columns=[f"x{i + 1}" for i in range(ds.n)])
    frame.insert(0, "y", ds.y)
    return frame


def dataset_metadata(ds):
    meta = {"seed": ds.seed}
    if ds.theta_true is not None:
        meta["theta_true"] = ds.theta_true.tolist()
    if ds.v is not None:
        meta["v"] = ds.v.tolist()
    if ds.outlier_mask is not None:
        meta["outlier_mask"] = ds.outlier_mask.astype(int).tolist()
    if ds.noise is not None:
        meta["noise"] = asdict(ds.noise)
    return meta


def write_dataset(ds, path):
    path = Path(path)
    path.write_text(frame_to_csv(dataset_frame(ds)), encoding="utf8")
    sidecar_path(path).write_text(to_json(dataset_metadata(ds)), encoding="utf8")


def _regressor_columns(frame):
    columns = [column for column in frame.columns if column.startswith("x")]
    if not columns:
        raise DimensionError("CSV has no regressor columns x1..xn.")
    return sorted(columns, key=lambda name: int(name[1:]))


def read_dataset(path):
    path = Path(path)
    frame = pd.read_csv(path, dtype=np.float64)
    if "y" not in frame.columns:
        raise DimensionError(f"{path} has no 'y' column.")
    X = frame[_regressor_columns(frame)].to_numpy().T
    meta = {}
    if sidecar_path(path).exists():
        meta = json.loads(sidecar_path(path).read_text(encoding="utf8"))
    noise = NoiseModel(**meta["noise"]) if "noise" in meta else None
    return RegressionDataset(
        X=X,
        y=frame["y"].to_numpy(),
        theta_true=meta.get("theta_true"),
        v=meta.get("v"),
        outlier_mask=meta.get("outlier_mask"),
        seed=meta.get("seed"),
        noise=noise,
    )


def read_matrix(path):
    """Regressor matrix (n x N) from a dataset CSV or a standalone x1..xn CSV."""
    frame = pd.read_csv(path, dtype=np.float64)
    return frame[_regressor_columns(frame)].to_numpy().T


def frame_to_csv(frame):
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=float_format(), lineterminator="\n")
    return buffer.getvalue()


def to_json(data):
    return json.dumps(data, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")
