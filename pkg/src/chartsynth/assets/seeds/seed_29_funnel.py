# chart-type: funnel chart
import matplotlib.pyplot as plt

stages = ["Site visits", "Sign-ups", "Trials", "Purchases", "Renewals"]
counts = [5400, 2300, 1150, 520, 340]

widths = counts
lefts = [(counts[0] - w) / 2 for w in widths]

fig, ax = plt.subplots(figsize=(8, 5))
ax.barh(range(len(stages)), widths, left=lefts, color="#3a86ff", alpha=0.85)
for i, (stage, count) in enumerate(zip(stages, counts)):
    ax.text(counts[0] / 2, i, f"{stage}: {count}", ha="center", va="center",
            color="white", fontsize=9)
ax.invert_yaxis()
ax.axis("off")
ax.set_title("Subscription Funnel")
plt.tight_layout()
plt.show()
