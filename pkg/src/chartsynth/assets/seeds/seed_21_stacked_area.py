# chart-type: stacked area chart
import numpy as np
import matplotlib.pyplot as plt

days = np.arange(1, 8)
solar = np.array([4, 6, 8, 9, 10, 9, 11], dtype=float)
wind = np.array([7, 6, 5, 7, 8, 9, 7], dtype=float)
hydro = np.array([5, 5, 6, 5, 6, 6, 6], dtype=float)

fig, ax = plt.subplots(figsize=(8, 5))
ax.stackplot(days, solar, wind, hydro,
             labels=["Solar", "Wind", "Hydro"],
             colors=["#ffb703", "#8ecae6", "#219ebc"], alpha=0.9)
ax.set_title("Daily Renewable Output (GWh)")
ax.set_xlabel("Day")
ax.set_ylabel("Output")
ax.legend(loc="upper left")
plt.tight_layout()
plt.show()
