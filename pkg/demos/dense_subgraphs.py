"""Densest subgraph, quasi-clique pruning and community search on one multilayer graph."""

from itertools import combinations

from densecores import (CommunityQuery, DensestParams, QuasiCliqueParams, community_search,
                        densest_subgraph, gen_random, MultilayerGraph, quasi_clique_enumerate,
                        quasi_clique_prune)

# sparse random layers, plus a 6-vertex group that is a clique in three of them
R = gen_random("multilayer", 60, 4, 0.05, seed=3)
edges = [(u, v, l) for l in range(R.num_layers) for u, v in R.edges(l)]
edges += [(u, v, l) for l in (0, 1, 3) for u, v in combinations(range(10, 16), 2)]
G = MultilayerGraph.from_edges(edges, vertices=range(60), layers=range(4))
print(f"{G.n} vertices, {G.num_layers} layers, {sum(G.m_per_layer)} edges")

# beta trades density against the number of layers that support it
for beta in (0.0, 0.5, 1.0, 2.0):
    res = densest_subgraph(G, DensestParams(beta))
    print(f"beta={beta}: delta={res.delta:.3f} on {len(res.vertices)} vertices, "
          f"layers {list(res.support_layers)}, at least {res.guarantee:.3g} of the optimum")

# pruning discards vertices that cannot sit in any frequent quasi-clique
params = QuasiCliqueParams(gamma=0.8, min_size=4, min_sup=0.75)
kept = quasi_clique_prune(G, params)
print(f"quasi-clique pruning keeps {kept.size} of {G.n} vertices")
found = quasi_clique_enumerate(G, params, kept)
print(f"{len(found)} quasi-cliques inside it, largest {G.labels_of(found[-1])}")

# community around a query vertex, scored by its minimum degree across layers
seed_vertex = int(kept[0]) if kept.size else 0
res = community_search(G, CommunityQuery((seed_vertex,), beta=1.0))
print(f"community of {G.labels[seed_vertex]}: {len(res.vertices)} vertices, mu={res.mu:.2f}, "
      f"vector {res.vector}")
