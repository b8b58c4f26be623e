# chart-type: bar chart with data annotation
import matplotlib.pyplot as plt

stations = ["Mercury", "Venus", "Terra", "Ares", "Jove"]
experiments = [18, 25, 41, 33, 12]

fig, ax = plt.subplots(figsize=(8, 5))
bars = ax.bar(stations, experiments, color="#4c72b0")
ax.bar_label(bars, padding=3)
ax.set_title("Experiments Completed per Orbital Station")
ax.set_ylabel("Experiments")
ax.set_ylim(0, 48)
plt.tight_layout()
plt.show()
