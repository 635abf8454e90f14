import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import networkx as nx
import pandas as pd

from spectralTools.errors import GraphFormatError
from spectralTools.graphCore import Multigraph, from_edge_list, from_networkx, save_graph, validate_regular
from spectralTools.symmetryTool import PermGroup, cayley_graph, translation_group

# role: "theorem" entries must pass both endpoints, "control" entries are inapplicable
ODD_CYCLES = [5, 7, 9, 11, 13, 15]
COMPLETE = [4, 5, 6, 7, 8]
CIRCULANTS = [
    (7, [1, 2]),
    (8, [1, 2]),
    (8, [1, 4]),
    (9, [1, 3]),
    (10, [1, 4]),
    (11, [1, 3]),
    (12, [1, 4]),
    (13, [1, 5]),
    (16, [1, 6]),
]
CAYLEY = [
    ("cay-cyclic6", "cyclic:6", "+1,-1,+2,-2"),
    ("cay-cyclic9", "cyclic:9", "+1,-1,+3,-3"),
    ("cay-dihedral5", "dihedral:5", "r1,r4,s0"),
    ("cay-dihedral6", "dihedral:6", "r1,r5,r2,r4,s0"),
    ("cay-symmetric3", "symmetric:3", "(0 1),(0 1 2),(0 2 1)"),
    ("cay-c3xc4", "product:(cyclic:3,cyclic:4)", "1*0,2*0,0*1,0*3"),
    ("cay-c3xc8", "product:(cyclic:3,cyclic:8)", "1*0,2*0,0*1,0*7"),
    ("cay-symmetric4", "symmetric:4", "(0 1 2),(0 2 1),(0 1 2 3),(0 3 2 1)"),
]


@dataclass(frozen=True)
class CorpusEntry:
    graph_id: str
    family: str
    role: str                              # "theorem" or "control"
    graph: Multigraph
    certificate: Optional[PermGroup] = None


def circulant(n: int, jumps: Sequence[int]) -> Multigraph:
    """Circulant graph C_n(jumps); a jump of n/2 contributes one edge per pair."""
    if n < 1:
        raise GraphFormatError(f"circulant needs n >= 1, got {n}", op="circulant")
    return from_networkx(nx.circulant_graph(n, list(jumps)))


def complete_graph(n: int) -> Multigraph:
    return from_networkx(nx.complete_graph(n))


def complete_bipartite(a: int, b: int) -> Multigraph:
    return from_networkx(nx.complete_bipartite_graph(a, b))


def petersen() -> Multigraph:
    """Outer 5-cycle 0..4, spokes i - i+5, inner pentagram on 5..9."""
    return from_networkx(nx.petersen_graph())


def joined_k4_minus_edge() -> Multigraph:
    """Two copies of K4 - e joined at their degree-2 vertices: cubic, not vertex-transitive."""
    edges = []
    for base in (0, 4):
        edges += [(base + u, base + v, 1) for u in range(4) for v in range(u + 1, 4) if (u, v) != (2, 3)]
    edges += [(2, 6, 1), (3, 7, 1)]
    return from_edge_list(8, edges)


def generate_corpus() -> List[CorpusEntry]:
    entries = []
    for n in ODD_CYCLES:
        entries.append(CorpusEntry(f"C{n}", "odd cycle", "theorem", circulant(n, [1])))
    for n in COMPLETE:
        entries.append(CorpusEntry(f"K{n}", "complete", "theorem", complete_graph(n)))
    entries.append(CorpusEntry("petersen", "petersen", "theorem", petersen()))
    for n, jumps in CIRCULANTS:
        graph_id = f"circ-{n}-" + "-".join(str(s) for s in jumps)
        entries.append(CorpusEntry(graph_id, "circulant", "theorem", circulant(n, jumps)))
    for graph_id, spec, connection in CAYLEY:
        entries.append(CorpusEntry(
            graph_id, f"cayley {spec}", "theorem", cayley_graph(spec, connection), translation_group(spec)
        ))
    entries.append(CorpusEntry("C4", "even cycle", "control", circulant(4, [1])))
    entries.append(CorpusEntry("C6", "even cycle", "control", circulant(6, [1])))
    entries.append(CorpusEntry("K3,3", "complete bipartite", "control", complete_bipartite(3, 3)))
    entries.append(CorpusEntry("k4e-pair", "not vertex-transitive", "control", joined_k4_minus_edge()))
    return entries


def manifest(entries: List[CorpusEntry]) -> pd.DataFrame:
    rows = [
        {
            "graph_id": e.graph_id,
            "file": f"{e.graph_id.replace(',', '_')}.json",
            "family": e.family,
            "role": e.role,
            "n": e.graph.n,
            "d": validate_regular(e.graph),
        }
        for e in entries
    ]
    return pd.DataFrame(rows)


def write_corpus(directory: str, entries: Optional[List[CorpusEntry]] = None) -> pd.DataFrame:
    """Write one graph file per entry plus manifest.csv; returns the manifest."""
    entries = generate_corpus() if entries is None else entries
    os.makedirs(directory, exist_ok=True)
    df = manifest(entries)
    for entry, filename in zip(entries, df["file"]):
        save_graph(entry.graph, os.path.join(directory, filename))
    df.to_csv(os.path.join(directory, "manifest.csv"), index=False)
    return df


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "graphs"
    df = write_corpus(target)
    print(f"✅ {len(df)} graphs written to '{target}/'")
    print(f"Example entry : \n{df.iloc[0]}")
