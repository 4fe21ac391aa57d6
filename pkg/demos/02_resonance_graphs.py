"""Resonance graphs of zigzag chains are Fibonacci cubes."""
# %%
from reskit import generators
from reskit.cube import fibonacci_cube, is_daisy_cube, is_isomorphic
from reskit.io import export_dot
from reskit.resonance import build_resonance_graph

# %%
for n in range(1, 7):
    r = build_resonance_graph(generators.fibonaccene(n)).to_simple()
    f = is_isomorphic(r, fibonacci_cube(n))
    print(f"fibonaccene({n}): {r.n} matchings, isomorphic to Fibonacci cube: {f is not None}")

# %% [markdown]
# The daisy certificate gives every matching a binary code; the DOT export
# shows those codes on the nodes and the face labels on the edges.

# %%
r = build_resonance_graph(generators.fibonaccene(3))
cert = is_daisy_cube(r.to_simple())
print("maximal codes:", cert.maximal_codes)
print(export_dot(r, labels=True, certificate=cert, name="R"))
