# chart-type: 3D scatter chart (bubble chart)
import matplotlib.pyplot as plt

districts = ["Old Town", "Riverside", "Uptown", "Foundry", "Meadows", "Docks"]
median_rent = [1450, 1220, 1680, 980, 1100, 1300]
walk_score = [88, 74, 92, 61, 58, 79]
population = [21, 34, 18, 12, 26, 15]

fig, ax = plt.subplots(figsize=(8, 5.5))
ax.scatter(median_rent, walk_score, s=[p * 28 for p in population],
           alpha=0.55, color="#7b2cbf", edgecolor="k")
for name, x, y in zip(districts, median_rent, walk_score):
    ax.annotate(name, (x, y), textcoords="offset points", xytext=(0, 11), ha="center", fontsize=8)
ax.set_title("Districts: Rent, Walkability, Population (bubble size)")
ax.set_xlabel("Median rent ($)")
ax.set_ylabel("Walk score")
plt.tight_layout()
plt.show()
