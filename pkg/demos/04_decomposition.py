"""Forbidden edges, elementary components and a non-weakly-elementary graph."""
# %%
from reskit import generators
from reskit.cube import is_daisy_cube
from reskit.matching import elementary_decomposition
from reskit.resonance import build_resonance_graph

# %%
for name in ["bridged", "two-component", "anthracene-bridged"]:
    g = generators.generate(name)
    dec = elementary_decomposition(g)
    r = build_resonance_graph(g).to_simple()
    cert = is_daisy_cube(r)
    print(
        f"{name}: forbidden={sorted(dec.forbidden_edges)} components={len(dec.components)} "
        f"weakly elementary={dec.weakly_elementary} idim={cert.idim if cert else None}"
    )

# %% [markdown]
# The exhaustive search returns the first embedding where deleting the
# forbidden edges merges faces into a new one.  Its resonance graph falls
# apart into several pieces.

# %%
w = generators.search_non_weakly_elementary(14)
dec = elementary_decomposition(w)
print(w, "new faces:", [sorted(f) for f in dec.new_faces])
print("resonance components:", build_resonance_graph(w).to_simple().num_components())
