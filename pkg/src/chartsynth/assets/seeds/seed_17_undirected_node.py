# chart-type: undirected node chart
import matplotlib.pyplot as plt

people = {"Ana": (0, 0), "Bo": (2, 1.4), "Cy": (4, 0.2), "Dee": (1.2, -1.5),
          "Eli": (3.4, -1.3), "Fay": (5.3, -0.9)}
friendships = [("Ana", "Bo"), ("Ana", "Dee"), ("Bo", "Cy"), ("Cy", "Eli"),
               ("Dee", "Eli"), ("Eli", "Fay"), ("Bo", "Eli")]

fig, ax = plt.subplots(figsize=(7.5, 5))
for a, b in friendships:
    xa, ya = people[a]
    xb, yb = people[b]
    ax.plot([xa, xb], [ya, yb], color="#adb5bd", lw=1.5, zorder=1)
for name, (x, y) in people.items():
    ax.scatter([x], [y], s=950, color="#e76f51", zorder=2)
    ax.text(x, y, name, ha="center", va="center", fontsize=8)
ax.set_title("Study Group Connections")
ax.set_xlim(-1, 6.3)
ax.set_ylim(-2.4, 2.2)
ax.axis("off")
plt.tight_layout()
plt.show()
