import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # searches must never read or write a shared witness cache during tests
    monkeypatch.setenv("RW_CACHE_DIR", str(tmp_path / "rw-cache"))
