"""Four-, five- and six-qubit tree graphs and the cases where the construction breaks.

Run: python demos/cluster_states.py
"""

from graphbell import evaluate, get_preset
from graphbell.expr import add_qubit_extend, eval_expression
from graphbell.graph import graph_family

line4 = graph_family("line", 4)
expr = "(1+g1)g2(1+g3)g4"
print(f"Line of 4, operator {expr}:")
for line in eval_expression(expr, line4).render_lines():
    print("   ", line)

# Growing by one qubit. The new qubit has to show up in every term,
# otherwise the A/B split has nothing to act on.
cases = (
    (expr, [4], "end of the line"),
    (expr, [2], "second vertex (Y shape)"),
    ("(1+g1)g2(g3+g4)", [3, 4], "qubits 3 and 4"),
    ("g1", [4], "qubit 4, operator g1 alone"),
)
for base, attach, label in cases:
    ext = add_qubit_extend(line4, base, attach)
    print(f"{base} + qubit 5 on {label}: edges {ext.graph.sorted_edges()}, condition met: {ext.condition_met}")
print()

rows = ["lc4", "lc5", "y5", "fig2c", "box4", "box5", "box6", "y6", "y6-ardehali", "fig3a", "fig3c", "lc6", "ring6"]
print(f"{'scenario':<12} {'terms':>5} {'labels':>6} {'quantum':>8} {'LHV':>6} {'ratio':>6}")
for name in rows:
    r = evaluate(get_preset(name))
    print(f"{name:<12} {r.correlation_terms:>5} {r.label_count:>6} {r.quantum.pretty():>8} {r.bound.pretty():>6} {r.violation.pretty():>6}")
print()
print("ring6 uses the lc6 operator on a closed ring: the quantum value is the same")
print("but the extra edge lets a local model reach 8, so the ratio drops to 2.")
for name in ("box5", "box6", "y6", "fig3c"):
    print(f"{name}: {get_preset(name).notes}")
