import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest

from dahapoly.rootdata import build_root_system
from dahapoly.coeffs import SymbolicDomain
from dahapoly.cli import sample_rational_domain
from dahapoly import macdonald as mac


_tables = {}


def table_for(label, rank, method="auto", pins=None):
    """Session-cached Macdonald tables keyed by system and domain flavor."""
    key = (label, rank, method, tuple(sorted(pins.items())) if pins else None)
    if key not in _tables:
        rs = build_root_system(label, rank)
        dom = SymbolicDomain(rs, t_pins=pins)
        _tables[key] = mac.MacdonaldTable(dom, method=method)
    return _tables[key]


def rational_tables(label, rank, seed, points=3, tries=24):
    """Independent rational specializations, resampled past degeneracies."""
    rs = build_root_system(label, rank)
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < points:
        attempts += 1
        if attempts > tries:
            raise RuntimeError("could not sample enough generic rational points")
        dom = sample_rational_domain(rs, rng)
        out.append(mac.MacdonaldTable(dom))
    return out


def run_at_rational_points(label, rank, seed, check, points=3, tries=24):
    """Run `check(table)` at `points` independent rational specializations,
    resampling whenever a specialization hits a declared degeneracy."""
    rs = build_root_system(label, rank)
    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < points:
        attempts += 1
        if attempts > tries:
            raise RuntimeError("too many degenerate specializations")
        dom = sample_rational_domain(rs, rng)
        tab = mac.MacdonaldTable(dom)
        try:
            check(tab)
        except (ZeroDivisionError, mac.EigenvalueCollision):
            continue
        done += 1
    return done


@pytest.fixture(scope="session")
def a1_sym():
    return table_for("A", 1)


@pytest.fixture(scope="session")
def a2_sym():
    return table_for("A", 2)
