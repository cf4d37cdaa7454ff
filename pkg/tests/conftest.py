from __future__ import annotations

from typing import Dict, Tuple

import pytest

from liecert.catalog import load_catalog
from liecert.liealg import simple_lie_algebra
from liecert.propp import OrbitData, OrbitReport, certify, run_pipeline
from liecert.sl2 import Characteristic

RECORDS = {r.key: r for r in load_catalog()}
ORBIT_KEYS = list(RECORDS)


class OrbitRuns:
    """Lazily computed, shared pipeline results keyed by ("E6-1", candidate)."""

    def __init__(self):
        self._data: Dict[Tuple[str, int], OrbitData] = {}
        self._reports: Dict[Tuple[str, int], OrbitReport] = {}

    def algebra(self, key: str):
        return simple_lie_algebra(RECORDS[key].algebra)

    def data(self, key: str, which: int = 0) -> OrbitData:
        if (key, which) not in self._data:
            c = Characteristic(RECORDS[key].characteristic)
            self._data[key, which] = run_pipeline(self.algebra(key), c, which)
        return self._data[key, which]

    def report(self, key: str, which: int = 0) -> OrbitReport:
        if (key, which) not in self._reports:
            self._reports[key, which] = certify(self.algebra(key), self.data(key, which))
        return self._reports[key, which]


@pytest.fixture(scope="session")
def runs() -> OrbitRuns:
    return OrbitRuns()
