# chart-type: rose chart
import numpy as np
import matplotlib.pyplot as plt

directions = 12
gusts = np.array([4, 6, 9, 14, 11, 7, 5, 8, 12, 10, 6, 5], dtype=float)
angles = np.linspace(0.0, 2 * np.pi, directions, endpoint=False)

fig, ax = plt.subplots(figsize=(6.5, 6.5), subplot_kw={"projection": "polar"})
ax.bar(angles, gusts, width=2 * np.pi / directions * 0.92,
       color=plt.cm.PuBu(np.linspace(0.35, 0.95, directions)), edgecolor="white")
ax.set_theta_zero_location("N")
ax.set_theta_direction(-1)
ax.set_title("Observed Gust Frequency by Heading")
plt.tight_layout()
plt.show()
