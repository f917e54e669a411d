"""Find two opposed camps in a signed graph and compare with the planted truth."""

import numpy as np

from densecores import (brute_force_polarity, generate_planted, leading_eigenvector,
                        parse_signed, round_deterministic, round_randomized)

# two friendly pairs that dislike each other: the ideal split is {1,2} vs {3,4}
G = parse_signed("""\
1 2 +1
3 4 +1
1 3 -1
1 4 -1
2 3 -1
2 4 -1
""")
spec = leading_eigenvector(G)
print(f"lambda1={spec.lambda1:.4f} after {spec.iterations} power steps")
for part in (round_deterministic(G, spec), round_randomized(G, spec), brute_force_polarity(G)):
    print(f"{part.algorithm:>13}: polarity {part.polarity:.3f}, "
          f"{G.labels_of(part.positive)} vs {G.labels_of(part.negative)}")

# planted camps of 15 inside 200 mostly neutral vertices
H, truth = generate_planted(200, 15, 15, 0.9, 0.9, 0.01, seed=4)
part = round_deterministic(H, leading_eigenvector(H))
found, planted = set(np.flatnonzero(part.assignment)), set(np.flatnonzero(truth))
print(f"planted: polarity {part.polarity:.2f}, recovered {len(found & planted)} of "
      f"{len(planted)}, Jaccard {len(found & planted) / len(found | planted):.2f}")
