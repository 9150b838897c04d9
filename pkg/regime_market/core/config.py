# regime_market/core/config.py

from pathlib import Path
from pydantic_settings import BaseSettings, SettingsConfigDict
from regime_market.core.exceptions import FileOperationError
from regime_market.utils.CustomLogger import CustomLogger

APP_BASE_DIR = Path(__file__).resolve().parent.parent
BASE_DIR = APP_BASE_DIR.parent

# Shipped, versioned YAML defaults
CONFIG_DIR = APP_BASE_DIR / "config"
DEFAULT_EXPERIMENT_CONFIG = CONFIG_DIR / "default_experiment.yaml"
DEFAULT_CALIBRATION_CONFIG = CONFIG_DIR / "default_calibration.yaml"


class Settings(BaseSettings):
    # Values come from the environment or a local .env file
    model_config = SettingsConfigDict(env_file='.env', env_file_encoding='utf-8', extra='ignore')

    # --- Output ---
    OUTPUT_DIR: Path = Path("process_outputs")
    LOG_DIR: Path = Path("process_outputs") / "process_logs"
    LOG_TO_FILE: bool = True
    DEBUG: bool = False

    # --- Simulation defaults ---
    DEFAULT_DT: float = 1.0
    DEFAULT_LATENCY_NS: int = 1_000

    # Process pool size for seeds / calibration trials, 1 = serial
    WORKERS: int = 1

    EXPERIMENT_CONFIG_PATH: Path = DEFAULT_EXPERIMENT_CONFIG
    CALIBRATION_CONFIG_PATH: Path = DEFAULT_CALIBRATION_CONFIG


settings = Settings()

logger = CustomLogger("Config")

# Sub-folders of an experiment output directory
RESULT_SUBDIRS = ("fills", "l1", "episodes")


def initialize_output_directories(out_dir: Path) -> Path:
    """
    Creates the output directory of a run and its sub-folders.

    Args:
        out_dir: Base directory for everything a command writes.
    """
    logger.info_print(f"Initializing output directories under {out_dir} ...")
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for sub in RESULT_SUBDIRS:
            (out_dir / sub).mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.error_print(f"Failed to create output directories: {e}")
        raise FileOperationError("create directory", str(out_dir), str(e)) from e
    return out_dir
