# chart-type: line chart with data annotation
import matplotlib.pyplot as plt

years = [2016, 2017, 2018, 2019, 2020, 2021, 2022]
readers = [5.2, 5.9, 6.4, 7.8, 9.1, 8.7, 9.6]

fig, ax = plt.subplots(figsize=(8, 5))
ax.plot(years, readers, marker="o", color="#2a9d8f")
for x, y in zip(years, readers):
    ax.annotate(f"{y}", (x, y), textcoords="offset points", xytext=(0, 8), ha="center")
ax.set_title("Library Membership (millions)")
ax.set_xlabel("Year")
ax.set_ylabel("Members")
ax.set_ylim(4, 11)
plt.tight_layout()
plt.show()
