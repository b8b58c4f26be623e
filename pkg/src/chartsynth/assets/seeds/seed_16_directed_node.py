# chart-type: directed node chart
import matplotlib.pyplot as plt

stations = {"Mine": (0.0, 1.0), "Mill": (2.0, 2.0), "Forge": (2.2, 0.0),
            "Depot": (4.2, 1.1), "Port": (6.2, 1.0)}
routes = [("Mine", "Mill"), ("Mine", "Forge"), ("Mill", "Depot"),
          ("Forge", "Depot"), ("Depot", "Port")]

fig, ax = plt.subplots(figsize=(8, 4.5))
for start, end in routes:
    ax.annotate("", xy=stations[end], xytext=stations[start],
                arrowprops=dict(arrowstyle="-|>", color="#6c757d", lw=1.4))
for name, (x, y) in stations.items():
    ax.scatter([x], [y], s=1100, color="#343a40", zorder=3)
    ax.text(x, y, name, color="white", ha="center", va="center", fontsize=8)
ax.set_xlim(-0.8, 7.0)
ax.set_ylim(-0.8, 2.8)
ax.set_title("Ore Shipping Network")
ax.axis("off")
plt.tight_layout()
plt.show()
