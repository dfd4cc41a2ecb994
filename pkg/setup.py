#!/usr/bin/env python3
"""
Bootstrap for the coring workbench.
Creates .env, installs the requirements, then runs the catalog, the fault fixtures and the tests once.
"""

import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent


def run_command(args, description, quiet=True):
    """Run a subprocess from the project root; print its output only on failure."""
    print(f"🔄 {description}...")
    result = subprocess.run(args, cwd=ROOT, capture_output=quiet, text=True)
    if result.returncode == 0:
        print(f"✅ {description}")
        return True
    print(f"❌ {description} exited with {result.returncode}")
    for stream in (result.stdout, result.stderr):
        if stream:
            print(stream.rstrip())
    return False


def ensure_env_file():
    env_file = ROOT / ".env"
    template_file = ROOT / "env.template"
    if env_file.exists():
        print("✅ .env already present, leaving it alone")
        return True
    if not template_file.exists():
        print("❌ env.template is missing")
        return False
    env_file.write_text(template_file.read_text(encoding="utf-8"), encoding="utf-8")
    print("📝 .env created from env.template")
    return True


def install_requirements():
    if sys.prefix == getattr(sys, "base_prefix", sys.prefix):
        print("⚠️  Not inside a virtual environment; python -m venv venv is recommended")
    return run_command(
        [sys.executable, "-m", "pip", "install", "-r", "requirements.txt"],
        "Installing requirements",
    )


def validate_config():
    env = dict(os.environ, CONFIG_VALIDATE_ON_IMPORT="1")
    result = subprocess.run([sys.executable, "-c", "import app.config"], cwd=ROOT, env=env, capture_output=True, text=True)
    if result.returncode == 0:
        print("✅ Configuration is valid")
        return True
    print("❌ Configuration rejected:")
    print(result.stderr.strip().splitlines()[-1] if result.stderr.strip() else "unknown error")
    return False


def check_catalog():
    return run_command([sys.executable, "-m", "app.cli", "check"], "Checking the built-in catalog")


def check_faults():
    return run_command([sys.executable, "-m", "app.cli", "catalog", "--faults"], "Running the fault fixtures")


def run_tests():
    return run_command([sys.executable, "-m", "pytest", "-q", "tests"], "Running the test suite")


STEPS = [
    ("Environment file", ensure_env_file),
    ("Requirements", install_requirements),
    ("Configuration", validate_config),
    ("Catalog", check_catalog),
    ("Fault fixtures", check_faults),
    ("Tests", run_tests),
]


def main():
    print("🚀 Coring Workbench Setup")
    print("=" * 40)
    print(f"📁 Project root: {ROOT}")

    completed = 0
    for title, step in STEPS:
        print(f"\n--- {title} ---")
        if not step():
            break
        completed += 1

    print("\n" + "=" * 40)
    if completed == len(STEPS):
        print("🎉 Workbench ready")
        print("\nTry:")
        print("  python start.py check --select 'coring:laws'")
        print("  python -m app.cli construct comatrix --sigma Row --name C")
        print("  python -m app.cli check --format json --select 'adjunction:*'")
        return 0

    print(f"⚠️  Stopped after {completed}/{len(STEPS)} steps; fix the error above and rerun")
    return 1


if __name__ == "__main__":
    sys.exit(main())
