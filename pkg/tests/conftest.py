from functools import lru_cache

import pytest

from sylow3 import grpzoo
from sylow3.chartab import an_table, dixon_table, sn_table
from sylow3.grpzoo import GroupSpec


@lru_cache(maxsize=None)
def table_for(name: str):
    """Small tables shared across test modules."""
    if name.startswith("S") and name[1:].isdigit():
        return sn_table(int(name[1:]))
    if name.startswith("A") and name[1:].isdigit() and int(name[1:]) >= 5:
        return an_table(int(name[1:]))
    specs = {
        "A4": GroupSpec("alt", 4),
        "C3": GroupSpec("wreath_tower", tower=(1,)),
        "C9": GroupSpec("wreath_tower", tower=(2,)),
        "C3wrC3": GroupSpec("wreath_tower", tower=(1, 1)),
        "PSL(2,7)": GroupSpec("psl", 2, 7),
        "PSL(2,8)": GroupSpec("psl", 2, 8),
        "PSL(3,4)": GroupSpec("psl", 3, 4),
        "PSU(3,2)": GroupSpec("psu", 3, 2),
        "GL(2,4)": GroupSpec("gl", 2, 4),
        "M11": GroupSpec("external", label="M11", path="m11.gens"),
    }
    spec = specs[name]
    return dixon_table(grpzoo.build(spec), name=name)


@pytest.fixture
def tables():
    return table_for


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
