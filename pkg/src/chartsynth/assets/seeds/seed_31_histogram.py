# chart-type: histogram
import matplotlib.pyplot as plt

commute_minutes = [
    12, 14, 15, 17, 18, 18, 19, 21, 22, 22, 23, 23, 24, 25, 25, 26, 27, 27,
    28, 29, 30, 31, 31, 32, 33, 34, 35, 36, 38, 40, 42, 44, 47, 51, 55, 63,
]

fig, ax = plt.subplots(figsize=(8, 5))
ax.hist(commute_minutes, bins=9, color="#4c72b0", edgecolor="white")
ax.set_title("Commute Duration Survey")
ax.set_xlabel("Minutes")
ax.set_ylabel("Respondents")
plt.tight_layout()
plt.show()
