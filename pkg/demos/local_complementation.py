"""Local complementation: same nonlocality, different-looking graphs.

Run: python demos/local_complementation.py
"""

from graphbell import evaluate, get_preset
from graphbell.correlation import clifford_lc_string, clifford_lc_transform
from graphbell.graph import generator, local_complement
from graphbell.scenario import expand

src, dst = get_preset("fig2c"), get_preset("lc5-lc")
print(f"fig2c edges: {src.graph.sorted_edges()}")
h = local_complement(src.graph, 4)
print(f"after complementing at 4: {h.sorted_edges()} (the line of 5)")
print()

# Each generator maps to a generator of the new graph, or to a product with g4.
for j in range(1, 6):
    image = clifford_lc_string(generator(src.graph, j), 4, src.graph)
    print(f"  g{j} = {generator(src.graph, j).render()}  ->  {image.render()}")
print()

moved = clifford_lc_transform(expand(src), 4, src.graph)
print(f"transformed operator equals the lc5-lc expansion: {moved == expand(dst)}")
for name in ("fig2c", "lc5-lc", "fig3c", "y6"):
    r = evaluate(get_preset(name))
    print(f"  {name:<7} quantum {r.quantum.pretty():>3}  LHV {r.bound.pretty():>4}  ratio {r.violation.pretty()}")
print("Local unitaries cannot change the ratio, and it does not change here either.")
