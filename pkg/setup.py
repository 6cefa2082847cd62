"""Bootstrap a ratiopick checkout: venv, requirements and a .env with the sweep defaults."""

import shutil
import subprocess
import sys
import venv
from pathlib import Path

ROOT = Path(__file__).resolve().parent
VENV_DIR = ROOT / "venv"


def venv_python(venv_dir: Path = VENV_DIR) -> Path:
    if sys.platform == "win32":
        return venv_dir / "Scripts" / "python.exe"
    return venv_dir / "bin" / "python"


def main() -> None:
    if sys.version_info < (3, 9):
        sys.exit("ratiopick needs Python 3.9 or newer")

    if not VENV_DIR.exists():
        print(f"Creating virtual environment in {VENV_DIR}")
        venv.create(VENV_DIR, with_pip=True)

    requirements = ROOT / "requirements.txt"
    try:
        subprocess.check_call(
            [str(venv_python()), "-m", "pip", "install", "-r", str(requirements)]
        )
    except subprocess.CalledProcessError as e:
        sys.exit(f"Installing {requirements.name} failed with exit code {e.returncode}")

    env_file = ROOT / ".env"
    if not env_file.exists():
        shutil.copyfile(ROOT / ".env.template", env_file)
        print("Wrote .env with the default enumeration cap and sweep settings")

    print("Done. Try: python ratio_cli.py verify --trials 20 --max-N 8")


if __name__ == "__main__":
    main()
