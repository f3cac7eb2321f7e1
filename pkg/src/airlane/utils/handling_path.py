__all__ = [
    "get_utils_path",
    "get_package_path",
    "get_fixtures_path",
    "get_fixture_file",
]

import inspect
import os


# --------------------------------------------------
def get_utils_path():
    dir_path = os.path.dirname(os.path.abspath(inspect.getfile(inspect.currentframe())))
    return dir_path


# --------------------------------------------------
def get_package_path():
    return os.path.dirname(get_utils_path())


# --------------------------------------------------
def get_fixtures_path():
    return os.path.join(get_package_path(), "evalharness", "data")


# --------------------------------------------------
def get_fixture_file(name: str) -> str:
    filename = name if name.endswith(".json") else f"{name}.json"
    return os.path.join(get_fixtures_path(), filename)


# --------------------------------------------------
def main():
    """Make a jazz noise here"""

    print(f"Utils Path: {get_utils_path()}")
    print(f"Package Path: {get_package_path()}")
    print(f"Fixtures Path: {get_fixtures_path()}")


# --------------------------------------------------
if __name__ == "__main__":
    main()

    # From the repository root

    # poetry run python -m airlane.utils.handling_path
