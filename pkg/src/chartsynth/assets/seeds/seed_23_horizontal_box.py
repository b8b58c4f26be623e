# chart-type: horizontal box chart
import matplotlib.pyplot as plt

routes = {"Coastal": [42, 45, 47, 48, 51, 53, 55, 60],
          "Mountain": [55, 58, 61, 63, 66, 70, 74, 80],
          "Valley": [38, 40, 41, 43, 44, 46, 47, 52]}

fig, ax = plt.subplots(figsize=(8, 4.5))
ax.boxplot(list(routes.values()), vert=False, tick_labels=list(routes.keys()))
ax.set_title("Delivery Times by Route (minutes)")
ax.set_xlabel("Minutes")
plt.tight_layout()
plt.show()
