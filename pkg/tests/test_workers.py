import pytest

from rindler_gate.workers import THREADS_ENV, parallel_map, worker_count


def test_worker_count_from_environment(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert worker_count() == 3
    assert worker_count(5) == 5


@pytest.mark.parametrize("raw", ["0", "", "many"])
def test_worker_count_falls_back_to_all_cores(monkeypatch, raw):
    monkeypatch.setenv(THREADS_ENV, raw)
    assert worker_count() >= 1


def test_parallel_map_keeps_order():
    items = list(range(50))
    assert parallel_map(lambda x: x * x, items, max_workers=4) == [x * x for x in items]
    assert parallel_map(lambda x: x, [], max_workers=4) == []
