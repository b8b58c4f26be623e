# chart-type: scatter chart with smooth fitting
import numpy as np
import matplotlib.pyplot as plt

temperature = np.array([12, 14, 16, 18, 20, 22, 24, 26, 28, 30], dtype=float)
sales = np.array([18, 22, 30, 36, 48, 56, 70, 79, 95, 104], dtype=float)

coeffs = np.polyfit(temperature, sales, 2)
grid = np.linspace(temperature.min(), temperature.max(), 120)

fig, ax = plt.subplots(figsize=(7.5, 5))
ax.scatter(temperature, sales, color="#2a9d8f", s=55, label="Daily totals")
ax.plot(grid, np.polyval(coeffs, grid), color="#e76f51", lw=2, label="Quadratic fit")
ax.set_title("Iced Drinks Sold vs Temperature")
ax.set_xlabel("Afternoon high (C)")
ax.set_ylabel("Drinks sold")
ax.legend()
plt.tight_layout()
plt.show()
