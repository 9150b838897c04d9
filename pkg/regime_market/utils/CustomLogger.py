from pathlib import Path
import datetime

# One log file per process start, shared by every logger instance
_RUN_STAMP = datetime.datetime.now().strftime("%d_%m_%Y_%H_%M")


class CustomLogger:
    def __init__(self, name: str):
        self.name = name
        self._log_file: Path | None = None

    @staticmethod
    def _settings():
        # Imported lazily: core.config itself owns a CustomLogger
        from regime_market.core.config import settings
        return settings

    @property
    def log_file(self) -> Path:
        if self._log_file is None:
            self._log_file = Path(self._settings().LOG_DIR) / f"PLogs_{_RUN_STAMP}.txt"
        return self._log_file

    def _log_message(self, text: str):
        if not self._settings().LOG_TO_FILE:
            return
        try:
            self.log_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.log_file, 'a', encoding='utf-8') as f:
                f.write(text + '\n')
        except OSError as e:
            print(f"CRITICAL LOGGING FAILURE: cannot write to {self.log_file}. Error: {e}")

    def _emit(self, prefix: str, text):
        line = f"{prefix}-[{self.name}]: {text}"
        print(line)
        self._log_message(line)

    def debug_print(self, text):
        if self._settings().DEBUG:
            self._emit("DB", text)

    def info_print(self, text):
        self._emit("IO", text)

    def warning_print(self, text):
        self._emit("WR", text)

    def error_print(self, text):
        self._emit("ER", text)
