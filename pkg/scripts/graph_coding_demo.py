"""Round-trip a few graphs through the tagged-module coding and lift an
isomorphism of graphs to one of the coded modules.

Run: python3 scripts/graph_coding_demo.py
"""

from ringdichotomy.amalgam import TaggedClass, grow
from ringdichotomy.coder import (
    Graph,
    build_engine,
    code_graph,
    format_graph,
    graphs_isomorphic,
    lift_graph_iso,
    recover_graph,
)
from ringdichotomy.rings import zmod


def main():
    cls = TaggedClass(zmod(2), (0,))
    engine = build_engine(grow(cls.seed(), 3), grow(cls.seed(), 3))
    print(f"engine module size {engine.module.size}, "
          f"roles {list(engine.roles)}")

    for edges in ([], [(0, 1)], [(0, 1), (1, 2)]):
        g = Graph.make(3, edges)
        tagged, roles = code_graph(engine, g)
        report = recover_graph(tagged, (0,), roles)
        print(f"graph {edges}: {len(tagged.tags)} tags, "
              f"recovered edges {list(report.graph.edges)}")

    g1 = Graph.make(3, [(0, 1), (1, 2)])
    g2 = Graph.make(3, [(0, 2), (0, 1)])
    h = graphs_isomorphic(g1, g2)
    sigma = lift_graph_iso(engine, g1, g2, h)
    print(f"vertex map {list(h)} lifts to a module map on "
          f"{len(sigma)} elements")
    print("second graph, as a graph file:")
    print(format_graph(g2), end="")


if __name__ == "__main__":
    main()
