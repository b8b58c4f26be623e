# chart-type: bar chart
import matplotlib.pyplot as plt

crops = ["Wheat", "Maize", "Soy", "Barley", "Oats", "Rye"]
tonnes = [380, 540, 290, 205, 120, 85]

fig, ax = plt.subplots(figsize=(8, 5))
ax.bar(crops, tonnes, color="#55a868")
ax.set_title("Cooperative Harvest Totals")
ax.set_ylabel("Tonnes collected")
plt.tight_layout()
plt.show()
