import sys

sys.path.insert(0, "src")

from airlane.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
# python run.py plan scenario.json --out airlane_output
