# chart-type: radar chart
import numpy as np
import matplotlib.pyplot as plt

skills = ["Speed", "Stamina", "Strength", "Agility", "Focus", "Recovery"]
athlete = [7, 8, 6, 9, 7, 8]

angles = np.linspace(0, 2 * np.pi, len(skills), endpoint=False).tolist()
scores = athlete + athlete[:1]
closed = angles + angles[:1]

fig, ax = plt.subplots(figsize=(6.5, 6.5), subplot_kw={"projection": "polar"})
ax.plot(closed, scores, "o-", color="#264653")
ax.set_xticks(angles)
ax.set_xticklabels(skills)
ax.set_ylim(0, 10)
ax.set_title("Athlete Readiness Profile")
plt.tight_layout()
plt.show()
