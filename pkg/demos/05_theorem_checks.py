"""Run every theorem check over a corpus and summarise the outcome."""
# %%
from reskit.theorems import run_corpus

# %%
report = run_corpus("chains:5+extra")
for theorem, counts in report.counts().items():
    print(f"{theorem:24s} {counts}")
print("disagreements:", len(report.disagreements))
