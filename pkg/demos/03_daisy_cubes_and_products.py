"""Daisy-cube recognition and Cartesian products."""
# %%
from reskit.cube import (
    cartesian_product,
    cycle_graph,
    daisy_from_codes,
    fibonacci_cube,
    is_daisy_cube,
    is_median_graph,
    path_graph,
    recognize_daisy,
)

# %% [markdown]
# A daisy cube is the down-closure of a few maximal codes inside a hypercube.

# %%
g = daisy_from_codes(["110", "011"])
print(g, "certificate:", is_daisy_cube(g).maximal_codes)

# %% [markdown]
# Even cycles of length six or more are partial cubes but not daisy cubes,
# and the recognizer says why.

# %%
print(recognize_daisy(cycle_graph(6))[1])

# %% [markdown]
# A product is a daisy cube exactly when its factors are; dimensions add.

# %%
p = cartesian_product(path_graph(3), fibonacci_cube(4))
cert = is_daisy_cube(p)
print("P3 x Fib4 idim:", cert.idim, "median:", is_median_graph(p))
print("C6 x K2 daisy:", is_daisy_cube(cartesian_product(cycle_graph(6), path_graph(2))) is not None)
