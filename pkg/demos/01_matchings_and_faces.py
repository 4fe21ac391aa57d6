"""Perfect matchings, resonant faces and the Fries number of small chains."""
# %%
from reskit import generators
from reskit.matching import enumerate_perfect_matchings, fries_number, resonant_faces
from reskit.plane_graph import adjacent_triples, handles

# %% [markdown]
# Naphthalene has three perfect matchings.  Each one makes some of its two
# hexagons resonant: the boundary alternates between matched and unmatched.

# %%
g = generators.naphthalene()
for m in enumerate_perfect_matchings(g):
    print("matching", m.edges, "resonant faces", sorted(resonant_faces(g, m)))

# %% [markdown]
# Anthracene has three hexagons but no matching makes all three resonant.
# The middle triple is linear: its two shared edges sit at odd distance in
# the line graph.

# %%
a = generators.anthracene()
count, witness = fries_number(a)
print("anthracene Fries number:", count, "witness:", witness.edges)
for t in adjacent_triples(a):
    print("triple", t.faces, "line distance", t.line_distance, t.classification)
for h in handles(a):
    print("handle", h.kind.value, "length", h.length)
