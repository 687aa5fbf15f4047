"""Configuration documents, data ingestion and artifact paths."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .config import (
    SCHEMA_VERSION,
    canonical_json,
    parse_model_config,
    model_to_config,
    spec_to_config,
    load_model,
    load_bundled_model,
)

# noinspection PyUnresolvedReferences
from .data_table import DataTable, load_csv, write_csv

# noinspection PyUnresolvedReferences
from .utils import build_artifact_path
