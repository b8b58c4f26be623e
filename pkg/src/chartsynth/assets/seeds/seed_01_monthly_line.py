# chart-type: line chart
import matplotlib.pyplot as plt

months = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug"]
arrivals = [112, 98, 134, 160, 171, 185, 214, 205]
departures = [95, 101, 120, 141, 150, 166, 190, 188]

fig, ax = plt.subplots(figsize=(8, 5))
ax.plot(months, arrivals, marker="o", color="#1f77b4", label="Arrivals")
ax.plot(months, departures, marker="s", color="#ff7f0e", label="Departures")
ax.set_title("Harbor Traffic Through the Season")
ax.set_xlabel("Month")
ax.set_ylabel("Vessels")
ax.legend()
ax.grid(alpha=0.3)
plt.tight_layout()
plt.show()
