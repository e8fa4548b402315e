import pytest


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """Points FRACWAVES_OUTPUT_DIR at a fresh temporary directory."""
    monkeypatch.setenv("FRACWAVES_OUTPUT_DIR", str(tmp_path))
    return tmp_path
