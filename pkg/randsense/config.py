"""Runtime configuration management for RandSense."""

import os
from dataclasses import dataclass
from typing import Any, Dict, Optional

from randsense.utils.validators import validate_log_level


@dataclass
class Config:
    """
    Runtime settings for RandSense.

    These control how experiments run (logging, threads, output location),
    never what they compute: results depend only on the experiment document
    and its seed.
    """

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None
    json_logs: bool = False

    # Execution
    threads: int = 1
    output_dir: str = "./output"

    # Dimensions used by --full-scale
    full_scale_n_tx: int = 64
    full_scale_n_rx: int = 32

    @classmethod
    def from_env(cls) -> "Config":
        """
        Create configuration from environment variables.

        Environment variables:
        - RANDSENSE_LOG_LEVEL: Logging level (DEBUG, INFO, WARNING, ERROR)
        - RANDSENSE_LOG_FILE: Log file path (omit or "none" for console only)
        - RANDSENSE_JSON_LOGS: Emit one JSON object per log line (true/false)
        - RANDSENSE_THREADS: Worker threads for parallel loops (-1 for all cores)
        - RANDSENSE_OUTPUT_DIR: Directory for relative output paths
        """
        log_file = os.getenv("RANDSENSE_LOG_FILE")
        if not log_file or log_file.lower() == "none":
            log_file = None

        json_logs = os.getenv("RANDSENSE_JSON_LOGS", "false").lower() in ("true", "1", "yes")

        return cls(
            log_level=os.getenv("RANDSENSE_LOG_LEVEL", "INFO").upper(),
            log_file=log_file,
            json_logs=json_logs,
            threads=int(os.getenv("RANDSENSE_THREADS", "1")),
            output_dir=os.getenv("RANDSENSE_OUTPUT_DIR", "./output"),
        )

    def validate(self) -> tuple[bool, Optional[str]]:
        """
        Validate configuration settings.

        Returns:
            Tuple of (is_valid, error_message)
        """
        is_valid, error = validate_log_level(self.log_level)
        if not is_valid:
            return False, error

        if self.threads == 0 or self.threads < -1:
            return False, f"threads must be positive or -1, got {self.threads}"

        if self.full_scale_n_tx < 1 or self.full_scale_n_rx < 1:
            return False, "full-scale dimensions must be positive"

        return True, None

    def resolve_output(self, path: str) -> str:
        """Anchor a relative output path at ``output_dir``."""
        if os.path.isabs(path) or os.path.dirname(path):
            return path
        return os.path.join(self.output_dir, path)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert configuration to dictionary.

        Returns:
            Dictionary representation of configuration
        """
        return {
            "log_level": self.log_level,
            "log_file": self.log_file,
            "json_logs": self.json_logs,
            "threads": self.threads,
            "output_dir": self.output_dir,
            "full_scale_n_tx": self.full_scale_n_tx,
            "full_scale_n_rx": self.full_scale_n_rx,
        }


# Global configuration instance
_global_config: Optional[Config] = None


def get_config() -> Config:
    """
    Get the global configuration instance.

    If not initialized, creates a new configuration from environment variables.

    Returns:
        Global Config instance
    """
    global _global_config
    if _global_config is None:
        _global_config = Config.from_env()
    return _global_config


def set_config(config: Config) -> None:
    """
    Set the global configuration instance.

    Args:
        config: Configuration instance to set as global
    """
    global _global_config
    _global_config = config


def reset_config() -> None:
    """Reset the global configuration instance."""
    global _global_config
    _global_config = None
