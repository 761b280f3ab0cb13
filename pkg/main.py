"""renyi-sharp - main entry point

Runs the command-line interface without installing the package:

    python main.py bound --theorem h2-hhalf --value 1.2 --n 8
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))

from renyisharp.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
