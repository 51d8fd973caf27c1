"""Worked configurations shipped with the package.

Each graph and tableau also exists as a JSON file under ``relgt/data`` so the
CLI can be pointed at them; :func:`write_data` regenerates those files.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .graph import TriGraph, finite_dimensional_graph, generic_graph, verma_graph
from .tableau import Tableau

PI, SQRT2 = "pi", "sqrt2"


def _t(*rows) -> Tableau:
    return Tableau.from_rows(rows)


GRAPHS = {
    # the two graphs used to contrast satisfaction and realization
    "realize_left": TriGraph(3, [((3, 2), (2, 2)), ((2, 2), (3, 3))]),
    "realize_right": TriGraph(3, []),
    # the four classical families, n = 4
    "finite_dim_n4": finite_dimensional_graph(4),
    "generic_n4": generic_graph(4),
    "verma_n4": verma_graph(4),
    "cuspidal_n4": TriGraph(4, [
        ((4, 2), (3, 2)), ((4, 3), (3, 3)),
        ((3, 2), (4, 3)), ((3, 2), (2, 2)), ((3, 3), (4, 4)),
        ((2, 2), (3, 3)),
    ]),
    # graph used to illustrate G(L) and Gbar
    "closure_n4": TriGraph(4, [
        ((4, 3), (3, 3)),
        ((3, 2), (2, 2)), ((3, 2), (4, 3)), ((3, 3), (4, 4)),
        ((2, 1), (3, 2)), ((2, 1), (1, 1)), ((2, 2), (3, 3)),
        ((1, 1), (2, 2)),
    ]),
    # the two classified modules
    "lattice_n3": TriGraph(3, [((3, 2), (2, 2)), ((2, 2), (3, 3))]),
    "lattice_n4": TriGraph(4, [
        ((3, 2), (2, 2)),
        ((2, 1), (3, 2)), ((2, 1), (1, 1)),
        ((1, 1), (2, 2)),
    ]),
}

TABLEAUX = {
    "t1": _t([PI, 2, 1], [2, 2], [0]),
    "t2": _t([PI, 2, 1], [SQRT2, 2], [0]),
    "closure_n4_tableau": _t([PI, PI, 0, -1], [PI, 2, 0], [3, 2], [3]),
    "lattice_n3_seed": _t([PI, 2, 1], [PI + "+2", 2], [0]),
    "lattice_n4_seed": _t([PI, 1, 0, SQRT2], [PI, 2, SQRT2], [3, 2], [3]),
}

# shift used for the maximal-chain illustration on lattice_n4
CHAIN_SHIFT_N4 = "0,0,0,0|-1,-1,-1|1,-1|-1"


def data_dir() -> Path:
    return Path(str(resources.files("relgt") / "data"))


def bundled_path(name: str) -> Path | None:
    """Path of a bundled JSON file by basename (``"lattice_n3.json"``), if it exists."""
    p = data_dir() / Path(name).name
    return p if p.is_file() else None


def write_data(target: Path | None = None) -> list[Path]:
    target = target or data_dir()
    target.mkdir(parents=True, exist_ok=True)
    out = []
    for name, g in GRAPHS.items():
        p = target / f"{name}.json"
        p.write_text(json.dumps(g.to_json(), indent=1) + "\n")
        out.append(p)
    for name, t in TABLEAUX.items():
        p = target / f"{name}.json"
        p.write_text(json.dumps(t.to_json(), indent=1) + "\n")
        out.append(p)
    return out
