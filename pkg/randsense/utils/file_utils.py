"""File operation utilities for RandSense."""

from pathlib import Path


def ensure_parent_directory(path: str) -> str:
    """
    Ensure the parent directory of a file path exists.

    Args:
        path: File path

    Returns:
        The file path, unchanged
    """
    parent = Path(path).parent
    if not parent.exists():
        parent.mkdir(parents=True, exist_ok=True)
    return path


def sibling_path(path: str, suffix: str) -> str:
    """
    Build a path next to ``path`` whose stem carries an extra suffix.

    ``sibling_path("out/snr_sweep.csv", "timing")`` gives ``out/snr_sweep.timing.csv``.

    Args:
        path: Base file path
        suffix: Text inserted between stem and extension

    Returns:
        Derived file path
    """
    path_obj = Path(path)
    extension = path_obj.suffix or ".csv"
    return str(path_obj.with_name(f"{path_obj.stem}.{suffix}{extension}"))
