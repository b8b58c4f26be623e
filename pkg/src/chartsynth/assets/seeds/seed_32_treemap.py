# chart-type: tree map
import matplotlib.pyplot as plt

holdings = [("Equities", 42, "#4c72b0"), ("Bonds", 26, "#dd8452"),
            ("Property", 17, "#55a868"), ("Cash", 9, "#c44e52"),
            ("Commodities", 6, "#8172b3")]

total = float(sum(size for _, size, _ in holdings))

fig, ax = plt.subplots(figsize=(8, 5))
x = 0.0
for name, size, color in holdings:
    width = size / total
    ax.add_patch(plt.Rectangle((x, 0.0), width, 1.0, facecolor=color, edgecolor="white", lw=2))
    ax.text(x + width / 2, 0.5, f"{name}\n{size}%", ha="center", va="center",
            color="white", fontsize=9)
    x += width
ax.set_xlim(0, 1)
ax.set_ylim(0, 1)
ax.axis("off")
ax.set_title("Portfolio Allocation")
plt.tight_layout()
plt.show()
