"""Span-cores: which groups stay cohesive, and for how long."""

from densecores import (gen_random, maximal_span_cores, parse_temporal, span_cores_all,
                        span_statistics)

G = parse_temporal("""\
a b 0
b c 0
a c 0
a b 1
b c 1
a c 1
a b 2
""")
for c in span_cores_all(G):
    print(f"k={c.k} span={c.span} {G.labels_of(c.vertices)}")
print("maximal:", [(c.k, c.span) for c in maximal_span_cores(G)])

# denser random snapshots; short spans have many edges in common, long ones few
R = gen_random("temporal", 100, 20, 0.3, seed=2)
stats = span_statistics(maximal_span_cores(R))
print(f"{stats.total} maximal span-cores")
for length, count in stats.histogram.items():
    print(f"  span length {length}: {count} cores")
for k, longest in stats.max_span_by_k.items():
    print(f"  k={k} survives at most {longest} consecutive snapshots")
