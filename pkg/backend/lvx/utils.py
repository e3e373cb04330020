import hashlib
import logging
import os
import subprocess

from django.conf import settings

logger = logging.getLogger(__name__)


def resolve_seed(cli_seed=None, file_seed=None):
    """
    Resolve the run seed.

    Precedence is CLI flag, then config file, then the LVX_SEED environment
    variable, then the settings default.

    Args:
        cli_seed: Seed passed on the command line, or None
        file_seed: Seed read from a config file, or None

    Returns:
        int seed
    """
    for candidate in (cli_seed, file_seed, os.environ.get("LVX_SEED")):
        if candidate is not None and candidate != "":
            return int(candidate)
    return int(settings.LVX["SEED"])


def fold_seed(seed, fold):
    """Per-fold seed; identical whether folds run serially or in parallel."""
    return int(seed) ^ int(fold)


def arrays_checksum(arrays):
    digest = hashlib.sha256()
    for array in arrays:
        digest.update(array.tobytes())
    return digest.hexdigest()


def git_describe():
    """
    Describe the working tree for run manifests.

    Returns:
        The `git describe` string, or "unknown" outside a git checkout
    """
    try:
        result = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=settings.BASE_DIR,
            capture_output=True,
            text=True,
            timeout=10,
        )
    except (OSError, subprocess.SubprocessError) as e:
        logger.warning(f"git describe failed: {e}")
        return "unknown"

    if result.returncode != 0:
        return "unknown"
    return result.stdout.strip() or "unknown"
