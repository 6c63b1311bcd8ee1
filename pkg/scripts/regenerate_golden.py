#!/usr/bin/env python3
"""
Golden Snapshot Script

Rewrites the committed shift-table snapshot from the default CODATA constants.
Run it only after the level invariants pass; the snapshot is what the golden
test compares byte for byte.
"""

import argparse
import sys
from pathlib import Path

# Add the project root to the Python path
project_root = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(project_root))

from src.constants import default_constants
from src.report import SweepSpec, emit, sweep

GOLDEN_DIR = project_root / "golden"
GOLDEN_SPECS = {
    "sweep_z1-10_n3.csv": SweepSpec(z_min=1, z_max=10, n_max=3, output_format="csv"),
}

def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--check", action="store_true", help="compare instead of writing; exit 1 on mismatch")
    args = parser.parse_args()

    GOLDEN_DIR.mkdir(exist_ok=True)
    constants = default_constants()
    mismatches = 0
    for name, spec in GOLDEN_SPECS.items():
        path = GOLDEN_DIR / name
        data = emit(sweep(spec, constants), spec.output_format, destination=None)
        if args.check:
            if not path.exists() or path.read_bytes() != data:
                print(f"❌ {name} differs from a fresh sweep")
                mismatches += 1
            else:
                print(f"✅ {name} matches")
        else:
            path.write_bytes(data)
            print(f"✅ Wrote {name} ({len(data)} bytes)")
    return 1 if mismatches else 0

if __name__ == "__main__":
    sys.exit(main())
