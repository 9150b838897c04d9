import platform
from pathlib import Path
from typing import Any, Dict, Iterable

import numpy as np
import pandas as pd
import scipy
from pydantic import BaseModel

import regime_market
from regime_market.schemas.config_schema import config_hash
from regime_market.utils.file_utils import write_json

MANIFEST_NAME = "manifest.json"


def package_versions() -> Dict[str, str]:
    return {
        "regime_market": regime_market.__version__,
        "numpy": np.__version__,
        "pandas": pd.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
    }


def build_manifest(command: str, config: BaseModel, seeds: Iterable[int], **extra: Any) -> Dict[str, Any]:
    """
    What a run needs to be reproduced: the command, the hash of the validated
    config it executed, its seeds and the library versions.

    No wall-clock fields, so reruns write identical files.
    """
    manifest = {
        "command": command,
        "config_hash": config_hash(config),
        "config_version": getattr(config, "config_version", None),
        "seeds": sorted(set(seeds)),
        "versions": package_versions(),
    }
    manifest.update(extra)
    return manifest


def write_manifest(out_dir: Path, command: str, config: BaseModel, seeds: Iterable[int], **extra: Any) -> Path:
    return write_json(Path(out_dir) / MANIFEST_NAME, build_manifest(command, config, seeds, **extra))
