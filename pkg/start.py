#!/usr/bin/env python3
"""
Startup script for the coring workbench.
This script handles environment setup and hands the arguments to the CLI.
"""

import sys
from pathlib import Path

# Add the current directory to Python path
current_dir = Path(__file__).parent
sys.path.insert(0, str(current_dir))

# Load environment variables from .env file if it exists
env_file = current_dir / ".env"
if env_file.exists():
    from dotenv import load_dotenv
    load_dotenv(env_file)
    print(f"Loaded environment variables from {env_file}", file=sys.stderr)

if __name__ == "__main__":
    try:
        from app.cli import main

        sys.exit(main(sys.argv[1:] or ["check"]))

    except KeyboardInterrupt:
        print("\nStopped by user.", file=sys.stderr)
        sys.exit(130)
