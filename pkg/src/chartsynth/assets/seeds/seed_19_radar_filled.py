# chart-type: radar chart with area filling
import numpy as np
import matplotlib.pyplot as plt

axes_labels = ["Plot", "Pacing", "Voice", "Setting", "Dialogue"]
draft_one = [5, 4, 6, 7, 5]
draft_two = [7, 6, 7, 8, 7]

angles = np.linspace(0, 2 * np.pi, len(axes_labels), endpoint=False).tolist()
closed = angles + angles[:1]

fig, ax = plt.subplots(figsize=(6.5, 6.5), subplot_kw={"projection": "polar"})
for scores, color, label in ((draft_one, "#8d99ae", "Draft 1"), (draft_two, "#ef476f", "Draft 2")):
    ring = scores + scores[:1]
    ax.plot(closed, ring, color=color, label=label)
    ax.fill(closed, ring, color=color, alpha=0.25)
ax.set_xticks(angles)
ax.set_xticklabels(axes_labels)
ax.set_ylim(0, 9)
ax.set_title("Manuscript Review Scores")
ax.legend(loc="lower right", bbox_to_anchor=(1.15, 0.0))
plt.tight_layout()
plt.show()
