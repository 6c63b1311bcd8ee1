"""Version tracking for the level-shift toolkit."""
import subprocess
from pathlib import Path
from typing import Optional

BASE_VERSION = "0.1.0"
REPO_ROOT = Path(__file__).resolve().parent.parent

def get_git_commit_hash() -> Optional[str]:
    """Get the short git commit hash of the checkout, if there is one."""
    try:
        result = subprocess.run(['git', 'rev-parse', 'HEAD'],
                              capture_output=True, text=True, timeout=5, cwd=REPO_ROOT)
        if result.returncode == 0:
            return result.stdout.strip()[:8]
    except Exception:
        pass
    return None

def get_version() -> str:
    """Version string shown by `--version`; the commit hash is appended when known."""
    commit_hash = get_git_commit_hash()
    return f"{BASE_VERSION}+{commit_hash}" if commit_hash else BASE_VERSION
