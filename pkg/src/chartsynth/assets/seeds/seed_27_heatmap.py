# chart-type: heat map
import numpy as np
import matplotlib.pyplot as plt

hours = ["8am", "10am", "12pm", "2pm", "4pm", "6pm"]
days = ["Mon", "Tue", "Wed", "Thu", "Fri"]
occupancy = np.array([
    [30, 45, 80, 75, 60, 40],
    [35, 50, 85, 78, 62, 38],
    [28, 44, 82, 80, 65, 45],
    [33, 52, 88, 83, 70, 50],
    [25, 40, 75, 70, 72, 66],
])

fig, ax = plt.subplots(figsize=(8, 4.8))
image = ax.imshow(occupancy, cmap="YlOrRd", aspect="auto")
ax.set_xticks(range(len(hours)), hours)
ax.set_yticks(range(len(days)), days)
for r in range(len(days)):
    for c in range(len(hours)):
        ax.text(c, r, occupancy[r, c], ha="center", va="center", fontsize=8)
ax.set_title("Reading Room Occupancy (%)")
plt.tight_layout()
plt.show()
