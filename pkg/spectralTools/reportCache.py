import hashlib
import json
from datetime import datetime
from typing import Any, Dict, Optional

from .graphCore import Multigraph, to_json
from .helper import Budgets


class ReportCache:
    """
    Central cache for bound reports.
    Keyed by the canonical graph document plus the budgets it was verified
    under, so one graph reached through two constructions is verified once.
    """

    def __init__(self):
        self.entries: Dict[str, dict] = {}  # key -> {"report", "graph_id", "_cached_at"}
        self.hits = 0
        self.misses = 0

    def _generate_id(self, g: Multigraph, budgets: Budgets) -> str:
        """Generate a stable key for a graph and budget combination."""
        key = json.dumps(
            {"graph": to_json(g), "budgets": [budgets.subsets, budgets.aut, budgets.group, budgets.aut_order]},
            sort_keys=True,
        )
        return hashlib.md5(key.encode()).hexdigest()[:16]

    def key(self, g: Multigraph, budgets: Budgets) -> str:
        return self._generate_id(g, budgets)

    def add(self, g: Multigraph, budgets: Budgets, report: Any, graph_id: str) -> str:
        """
        Store a report.

        Args:
            g: the verified graph
            budgets: budgets the report was produced under
            report: the report object
            graph_id: id of the graph the report was first computed for

        Returns:
            str: cache key
        """
        key = self._generate_id(g, budgets)
        self.entries[key] = {
            "report": report,
            "graph_id": graph_id,
            "_cached_at": datetime.now().isoformat(),
        }
        return key

    def get(self, g: Multigraph, budgets: Budgets) -> Optional[dict]:
        """Cached entry ({"report", "graph_id"}) or None."""
        entry = self.entries.get(self._generate_id(g, budgets))
        if entry is None:
            self.misses += 1
            return None
        self.hits += 1
        return entry

    def clear(self):
        self.entries = {}
        self.hits = 0
        self.misses = 0

    def stats(self) -> dict:
        """Get cache statistics."""
        return {
            "total_reports": len(self.entries),
            "hits": self.hits,
            "misses": self.misses,
        }

