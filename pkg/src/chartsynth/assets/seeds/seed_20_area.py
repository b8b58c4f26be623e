# chart-type: area chart
import numpy as np
import matplotlib.pyplot as plt

weeks = np.arange(1, 11)
visitors = np.array([3.1, 3.6, 4.2, 5.0, 5.8, 6.1, 7.0, 7.4, 8.2, 9.0])

fig, ax = plt.subplots(figsize=(8, 5))
ax.fill_between(weeks, visitors, color="#219ebc", alpha=0.55)
ax.plot(weeks, visitors, color="#023047", lw=1.5)
ax.set_title("Exhibit Foot Traffic (thousands)")
ax.set_xlabel("Week")
ax.set_ylabel("Visitors")
plt.tight_layout()
plt.show()
