#!/usr/bin/env python3
"""
Run the dilute spectra command-line tool
"""

import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from dilute_spectra import __version__
from dilute_spectra.cli import main
from dilute_spectra.config import get_settings

if __name__ == "__main__":
    settings = get_settings()

    if len(sys.argv) == 1:
        print("=" * 60)
        print(f"{settings.app_name} v{__version__}")
        print("=" * 60)
        print("Commands: masses, amplitudes, verify, bethe, scan, perturbations, checksum")
        print(f"Results directory: {settings.output_dir}")
        print("=" * 60)
        print("\nExample: python run.py masses --p 1e-6 --format csv\n")

    raise SystemExit(main())
