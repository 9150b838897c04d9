import json
import os
from pathlib import Path
from string import Template
from typing import Any, Dict, Iterable

import pandas as pd
import yaml

from regime_market.core.exceptions import ConfigFileNotFound, ConfigValidationError, FileOperationError
from regime_market.utils.CustomLogger import CustomLogger

logger = CustomLogger("FileUtils")


def load_yaml_config(config_path: Path) -> Dict[str, Any]:
    """Loads a YAML file, substituting ${VAR_NAME} placeholders from the environment."""
    config_path = Path(config_path)
    if not config_path.is_file():
        raise ConfigFileNotFound(str(config_path))

    raw_config = config_path.read_text(encoding="utf-8")
    config_str = Template(raw_config).safe_substitute(os.environ)
    try:
        data = yaml.safe_load(config_str)
    except yaml.YAMLError as e:
        raise ConfigValidationError(config_path.name, str(e)) from e
    if not isinstance(data, dict):
        raise ConfigValidationError(config_path.name, "top level must be a mapping")
    return data


def ensure_dir(directory: Path) -> Path:
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise FileOperationError("create directory", str(directory), str(e)) from e
    return directory


def write_frame(frame: pd.DataFrame, file_path: Path) -> Path:
    """Writes a DataFrame as CSV. Floats keep pandas' shortest round-trip repr."""
    ensure_dir(file_path.parent)
    try:
        frame.to_csv(file_path, index=False, lineterminator="\n")
    except OSError as e:
        raise FileOperationError("write", str(file_path), str(e)) from e
    return file_path


def write_json(file_path: Path, content: Any) -> Path:
    ensure_dir(file_path.parent)
    try:
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(content, f, indent=4, sort_keys=True, ensure_ascii=False)
            f.write("\n")
    except OSError as e:
        raise FileOperationError("write", str(file_path), str(e)) from e
    return file_path


def write_jsonl(file_path: Path, records: Iterable[Dict[str, Any]]) -> int:
    """Writes one JSON object per line. Returns the number of records written."""
    ensure_dir(file_path.parent)
    count = 0
    try:
        with open(file_path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(json.dumps(record, sort_keys=True) + "\n")
                count += 1
    except OSError as e:
        raise FileOperationError("write", str(file_path), str(e)) from e
    logger.info_print(f"Wrote {count} records to {file_path}")
    return count
