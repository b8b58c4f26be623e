# chart-type: percentage bar chart
import numpy as np
import matplotlib.pyplot as plt

cities = ["Aria", "Brema", "Corvo", "Duna"]
bike = np.array([22.0, 31.0, 15.0, 27.0])
transit = np.array([48.0, 39.0, 52.0, 41.0])
car = np.array([30.0, 30.0, 33.0, 32.0])

total = bike + transit + car
bike_pct = 100 * bike / total
transit_pct = 100 * transit / total
car_pct = 100 * car / total

fig, ax = plt.subplots(figsize=(8, 5))
ax.bar(cities, bike_pct, label="Bike", color="#90be6d")
ax.bar(cities, transit_pct, bottom=bike_pct, label="Transit", color="#577590")
ax.bar(cities, car_pct, bottom=bike_pct + transit_pct, label="Car", color="#f3722c")
ax.set_title("Commute Mode Share")
ax.set_ylabel("Share (%)")
ax.set_ylim(0, 100)
ax.legend(loc="lower right")
plt.tight_layout()
plt.show()
