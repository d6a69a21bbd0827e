"""
Test script to verify the gradeval installation
"""
import sys
from pathlib import Path

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

print("=" * 60)
print("gradeval - Installation Test")
print("=" * 60)
print()

# Test 1: Python version
print("[1/6] Checking Python version...")
if sys.version_info >= (3, 10):
    print(f"✓ Python {sys.version.split()[0]} (OK)")
else:
    print(f"✗ Python {sys.version.split()[0]} (Need 3.10+)")
    sys.exit(1)
print()

# Test 2: Core dependencies
print("[2/6] Checking core dependencies...")
required_packages = [
    'numpy',
    'scipy',
    'pandas',
    'pydantic',
    'dotenv',
    'tqdm',
]

missing = []
for package in required_packages:
    try:
        __import__(package)
        print(f"  ✓ {package}")
    except ImportError:
        print(f"  ✗ {package} (MISSING)")
        missing.append(package)

if missing:
    print(f"\n⚠️  Missing packages: {', '.join(missing)}")
    print("Run: pip install -r requirements.txt")
    sys.exit(1)
print("✓ All core packages installed")
print()

# Test 3: Project structure
print("[3/6] Verifying project structure...")
required_dirs = ['simcore', 'operators', 'oracles', 'gradient', 'pipelines', 'costmodel', 'cli', 'utils', 'demo_data']
required_files = ['run_gradeval.py', 'requirements.txt', 'README.md']

structure_ok = True
for name in required_dirs:
    ok = (project_root / name).exists()
    print(f"  {'✓' if ok else '✗'} {name}/")
    structure_ok &= ok
for name in required_files:
    ok = (project_root / name).exists()
    print(f"  {'✓' if ok else '✗'} {name}")
    structure_ok &= ok
print("✓ Project structure verified" if structure_ok else "✗ Project structure incomplete")
print()

# Test 4: Package imports
print("[4/6] Testing package imports...")
try:
    import simcore, operators, oracles, gradient, pipelines, costmodel, cli  # noqa: E401,F401
    from utils import config, main_logger  # noqa: F401
    print("✓ All packages imported successfully")
except ImportError as e:
    print(f"✗ Import failed: {e}")
    sys.exit(1)
print()

# Test 5: Cost model
print("[5/6] Evaluating a cost query...")
try:
    from costmodel import query_cost
    record = query_cost("kRDM", {'N': 10, 'k': 1, 'epsilon': 0.1}).get('gradient')
    print(f"✓ kRDM gradient cost {record.symbolic} = {record.value:g}")
except Exception as e:
    print(f"✗ Cost query failed: {e}")
print()

# Test 6: Tiny end-to-end estimate
print("[6/6] Estimating <Z> on |0> ...")
try:
    from operators import Observable, ObservableSet
    from oracles import StatePrepOracle
    from pipelines import estimate_expectations

    report = estimate_expectations(
        ObservableSet([Observable("Z", "Z")]),
        StatePrepOracle.from_basis("0"),
        epsilon=0.1,
        delta=1 / 3,
        seed=1,
    )
    print(f"✓ estimate {report.estimates[0]:.4f} (reference {report.references[0]:.1f}), "
          f"{report.ledger.u_psi_queries} U_psi queries")
except Exception as e:
    print(f"✗ Functionality test failed: {e}")
print()

print("=" * 60)
print("Installation Test Summary")
print("=" * 60)
print()
print("Next steps:")
print("  1. Run the demo configs: python run_gradeval.py --demo")
print("  2. Run the tests:        pytest -m 'not slow'")
print()
print("=" * 60)
