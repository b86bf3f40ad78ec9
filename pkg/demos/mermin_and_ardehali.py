"""GHZ states as star graphs: Mermin operators and the Ardehali refinement.

Run: python demos/mermin_and_ardehali.py
"""

from graphbell import correlation_form, evaluate, get_preset
from graphbell.correlation import ardehali_substitute, to_correlation_polynomial
from graphbell.expr import eval_expression
from graphbell.graph import graph_family
from graphbell.lhv import lhv_bound

# Three qubits first, in full detail.
g = graph_family("star", 3)
poly = eval_expression("g1(1+g2)(1+g3)", g)
print("Star graph on 3 vertices, operator g1(1+g2)(1+g3) expands to:")
for line in poly.render_lines():
    print("   ", line)

corr = to_correlation_polynomial(poly)
report = lhv_bound(corr, method="exhaustive")
print(f"Every term has expectation +1 on the graph state, so the quantum value is {len(poly)}.")
print(f"Best deterministic strategy reaches {report.bound.pretty()}: {report.argmax.to_dict()}")
print()

# The family N = 3..8.
print(f"{'N':>2} {'quantum':>8} {'LHV':>6} {'ratio':>6}")
for n in range(3, 9):
    r = evaluate(get_preset(f"ghz-mermin-{n}"), method="exhaustive")
    print(f"{n:>2} {r.quantum.pretty():>8} {r.bound.pretty():>6} {r.violation.pretty():>6}")
print("Even N gains nothing over N-1. The ratio only doubles every two qubits.")
print()

# Splitting the two settings at the last qubit into A = (Z+Y)/√2, B = (Z-Y)/√2
# leaves the operator alone but gives the local model one more free choice.
s = get_preset("ghz-ardehali-4")
plain = to_correlation_polynomial(eval_expression(s.expression, s.graph))
split = ardehali_substitute(plain, 4, "Z", "Y")
print(f"N=4 before the split: {len(plain)} terms, bound {lhv_bound(plain).bound.pretty()}")
print(f"N=4 after the split:  {len(split)} terms, bound {lhv_bound(split).bound.pretty()}")
print()
print(f"{'N':>2} {'quantum':>8} {'LHV':>6} {'ratio':>6}")
for n in (4, 6, 8):
    r = evaluate(get_preset(f"ghz-ardehali-{n}"))
    print(f"{n:>2} {r.quantum.pretty():>8} {r.bound.pretty():>6} {r.violation.pretty():>6}")
print("Now even N also improves, by a factor √2.")
print(len(correlation_form(s)), "correlation terms at N=4.")
