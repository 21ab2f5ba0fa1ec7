import importlib


def test_import():
    pkg = importlib.import_module("slp_toolkit")
    assert hasattr(pkg, "__version__")
    assert hasattr(pkg, "cli")
