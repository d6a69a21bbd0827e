"""
Entry script for gradeval
Runs the command-line front end, or every demo config with --demo
"""
import sys
from pathlib import Path

# Add project to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from cli import main  # noqa: E402
from utils.config import DEMO_DATA_DIR, REPORTS_DIR  # noqa: E402

EXIT_LABELS = {0: "success", 1: "error", 2: "accuracy target missed"}


def print_header(text):
    """Print formatted header"""
    print("\n" + "=" * 70)
    print(f"  {text}")
    print("=" * 70 + "\n")


def run_demo() -> int:
    """Run each demo config, writing reports under reports/"""
    print_header("GRADEVAL - DEMO CONFIGS")
    configs = sorted(DEMO_DATA_DIR.glob("*.json"))
    if not configs:
        print(f"No demo configs found in {DEMO_DATA_DIR}")
        return 1

    worst = 0
    for path in configs:
        if path.stem.startswith("benchmark") and "--with-benchmark" not in sys.argv:
            print(f">>> {path.name}: skipped (pass --with-benchmark to run 300 trials)")
            continue
        out = REPORTS_DIR / f"{path.stem}_report.json"
        code = main(["--config", str(path), "--out", str(out)])
        print(f">>> {path.name}: {EXIT_LABELS.get(code, code)} -> {out}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    if "--demo" in sys.argv:
        sys.exit(run_demo())
    sys.exit(main())
