"""
Installation Verification Script
Checks required files and imports, then screens a tiny generated dataset
"""

import os
import sys

print("=" * 70)
print("🔍 albscreen Installation Verification")
print("=" * 70)

# Check files exist
required_files = [
    "main.py",
    "albscreen/__init__.py",
    "albscreen/core/kernel.py",
    "albscreen/core/bandwidth.py",
    "albscreen/core/alb.py",
    "albscreen/core/cutoff.py",
    "albscreen/core/ttest.py",
    "albscreen/core/bayes.py",
    "albscreen/core/simgen.py",
    "albscreen/core/metrics.py",
    "albscreen/core/dataio.py",
    "albscreen/core/experiments.py",
    "albscreen/commands/__init__.py",
]

print("\n📁 Checking files...")
all_exist = True
for file in required_files:
    if os.path.exists(file):
        print(f"  ✅ {file}")
    else:
        print(f"  ❌ {file} - MISSING!")
        all_exist = False

if not all_exist:
    print("\n❌ Some files are missing!")
    sys.exit(1)

print("\n✅ All files present!")

print("\n🔄 Checking imports...")
try:
    import joblib, numpy, pandas, pydantic, pydantic_settings, scipy, sklearn  # noqa: F401
    print("  ✅ Third-party packages")

    from albscreen.core.alb import alb_all
    from albscreen.core.cutoff import zero_select
    from albscreen.core.simgen import generate
    from albscreen.schemas.simulation_schemas import ScenarioConfig
    print("  ✅ albscreen modules")

    sim = generate(ScenarioConfig(scenario="shape", m=10, n=10, p=20, r=0.5, seed=1))
    report = zero_select(alb_all(sim.dataset))
    print(f"  ✅ Smoke screen kept {report.n_selected} of 20 features")

    print("\n✅ All imports successful!")

except Exception as e:
    print(f"\n❌ Import error: {e}")
    sys.exit(1)

print("\n" + "=" * 70)
print("✅ Installation verification PASSED!")
print("=" * 70)
print("\n🚀 Ready to run: python main.py --help")
