from corpus_builder import circulant
from spectralTools.helper import Budgets
from spectralTools.reportCache import ReportCache


def test_hits_and_misses():
    cache = ReportCache()
    g = circulant(5, [1])
    assert cache.get(g, Budgets()) is None
    cache.add(g, Budgets(), "report", "C5")
    entry = cache.get(circulant(5, [1]), Budgets())
    assert entry["report"] == "report" and entry["graph_id"] == "C5"
    assert cache.stats() == {"total_reports": 1, "hits": 1, "misses": 1}


def test_budgets_are_part_of_the_key():
    cache = ReportCache()
    g = circulant(5, [1])
    cache.add(g, Budgets(), "report", "C5")
    assert cache.get(g, Budgets(aut=8)) is None
    cache.clear()
    assert cache.stats()["total_reports"] == 0
